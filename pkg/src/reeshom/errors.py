"""Exception types shared across the package."""


class ReesHomError(Exception):
    pass


class SchemaError(ReesHomError, ValueError):
    """Input data does not match the expected JSON schema."""


class GroupError(SchemaError):
    pass


class CellCapExceeded(ReesHomError):
    """A bar complex would need more cells in some degree than allowed."""


class UnsupportedDegreeError(ReesHomError, ValueError):
    pass


class NotNormalizedError(ReesHomError, ValueError):
    pass


class RelationError(ReesHomError, ValueError):
    """A presentation relation does not hold in the given monoid."""


def check_names(value, where: str, error: type = SchemaError) -> tuple[str, ...]:
    """A list of distinct strings, or raise ``error`` naming ``where``."""
    if not isinstance(value, (list, tuple)) or not all(isinstance(x, str) for x in value):
        raise error(f"{where} must be a list of strings")
    if len(set(value)) != len(value):
        raise error(f"{where} contains duplicate names")
    return tuple(value)


def check_table(value, where: str = "table", error: type = SchemaError) -> tuple[tuple[int, ...], ...]:
    """A square table of in-range element indices."""
    if not isinstance(value, (list, tuple)) or not value:
        raise error(f"{where} must be a nonempty list of rows")
    n = len(value)
    for i, row in enumerate(value):
        if not isinstance(row, (list, tuple)):
            raise error(f"{where} row {i} is not a list")
        if len(row) != n:
            raise error(f"{where} row {i} has length {len(row)}, expected {n}")
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < n:
                raise error(f"{where} entry ({i},{j}) = {x!r} is not an element index")
    return tuple(tuple(r) for r in value)
