"""Group backends: finite multiplication tables and finitely generated abelian groups.

Both backends expose the same small surface (``identity``, ``mul``, ``inv``,
``abelianization`` ...) so the Rees-matrix code can treat them uniformly.
Elements are ints for tables and tuples of ints for abelian groups.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb, gcd
from typing import Callable, Hashable, Iterable, Sequence

from .errors import CellCapExceeded, GroupError, UnsupportedDegreeError, check_names
from .intlin import (
    AbelianGroupStructure,
    INTEGERS,
    IntMatrix,
    smith_normal_form,
)

DEFAULT_CELL_CAP = 100_000


@dataclass(frozen=True)
class Violation:
    kind: str  # "closure", "identity", "inverse", "associativity"
    location: tuple
    message: str


def validate_group(table) -> list[Violation]:
    """Every group-axiom violation of a multiplication table; empty iff a group.

    Accepts a FiniteGroupTable or a raw square list of index rows.
    """
    rows = table.table if isinstance(table, FiniteGroupTable) else table
    if not isinstance(rows, (list, tuple)):
        return [Violation("closure", (), "table must be a list of rows")]
    n = len(rows)
    report: list[Violation] = []
    if n == 0:
        return [Violation("identity", (), "empty table has no identity")]
    for i, row in enumerate(rows):
        if not isinstance(row, (list, tuple)):
            report.append(Violation("closure", (i,), f"row {i} is not a list"))
            continue
        if len(row) != n:
            report.append(Violation("closure", (i,), f"row {i} has length {len(row)}, expected {n}"))
            continue
        for j, x in enumerate(row):
            if isinstance(x, bool) or not (isinstance(x, int) and 0 <= x < n):
                report.append(Violation("closure", (i, j), f"entry ({i},{j}) = {x!r} is not an element index"))
    if report:
        return report
    for x, y, z in itertools.product(range(n), repeat=3):
        if rows[rows[x][y]][z] != rows[x][rows[y][z]]:
            report.append(Violation(
                "associativity", (x, y, z),
                f"({x}*{y})*{z} = {rows[rows[x][y]][z]} but {x}*({y}*{z}) = {rows[x][rows[y][z]]}",
            ))
    e = _find_identity(rows)
    if e is None:
        report.append(Violation("identity", (), "no two-sided identity"))
        return report
    for x in range(n):
        if not any(rows[x][y] == e == rows[y][x] for y in range(n)):
            report.append(Violation("inverse", (x,), f"element {x} has no two-sided inverse"))
    return report


def _find_identity(rows) -> int | None:
    n = len(rows)
    for e in range(n):
        if all(rows[e][x] == x == rows[x][e] for x in range(n)):
            return e
    return None


@dataclass(frozen=True)
class AbelianizationMap:
    """Surjection G -> ab G into canonical coordinates of ``target``."""

    target: AbelianGroupStructure
    _image: Callable[[Hashable], tuple[int, ...]] = field(repr=False)

    def __call__(self, g) -> tuple[int, ...]:
        return self._image(g)

    image = __call__


class FiniteGroupTable:
    """A finite group given by its multiplication table (validated at construction)."""

    def __init__(self, table: Sequence[Sequence[int]], names: Sequence[str] | None = None):
        report = validate_group(table)
        if report:
            raise GroupError(f"not a group: {report[0].message}" + (
                f" (and {len(report) - 1} more violations)" if len(report) > 1 else ""))
        rows = tuple(tuple(r) for r in table)
        self.table = rows
        self.order = len(rows)
        self.names = (check_names(names, "element names", GroupError) if names is not None
                      else tuple(str(i) for i in range(self.order)))
        if len(self.names) != self.order:
            raise GroupError("element names must match the table size")
        self.identity = _find_identity(rows)
        self.inverse = tuple(
            next(y for y in range(self.order) if rows[x][y] == self.identity)
            for x in range(self.order)
        )
        self._index = {name: i for i, name in enumerate(self.names)}
        self._abelianization = None

    is_finite = True

    def __repr__(self):
        return f"FiniteGroupTable(order={self.order})"

    def __eq__(self, other):
        return isinstance(other, FiniteGroupTable) and self.table == other.table and self.names == other.names

    def __hash__(self):
        return hash((self.table, self.names))

    def elements(self) -> range:
        return range(self.order)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inv(self, g: int) -> int:
        return self.inverse[g]

    def contains(self, g) -> bool:
        return isinstance(g, int) and 0 <= g < self.order

    def name(self, g: int) -> str:
        return self.names[g]

    def element(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise GroupError(f"unknown group element {name!r}") from None

    def element_to_json(self, g: int):
        return self.names[g]

    def element_from_json(self, obj) -> int:
        if not isinstance(obj, str):
            raise GroupError(f"table-group elements are referenced by name, got {obj!r}")
        return self.element(obj)

    def to_json(self) -> dict:
        return {"kind": "finite_table", "elements": list(self.names), "table": [list(r) for r in self.table]}

    def to_monoid_table(self):
        from .rees import MonoidTable
        return MonoidTable(self.table, self.names)

    def abelianization(self) -> AbelianizationMap:
        if self._abelianization is None:
            self._abelianization = _table_abelianization(self)
        return self._abelianization


class FGAbelianGroup:
    """Z^free_rank + Z/d_1 + ... + Z/d_k; elements are integer tuples."""

    def __init__(self, free_rank: int = 0, torsion: Sequence[int] = ()):
        try:
            self.structure = AbelianGroupStructure(int(free_rank), tuple(torsion))
        except ValueError as exc:
            raise GroupError(str(exc)) from None
        self.free_rank = self.structure.free_rank
        self.torsion = self.structure.invariant_factors
        self.identity = (0,) * self.structure.ngens

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        return self.structure.order()

    def __repr__(self):
        return f"FGAbelianGroup({self.structure})"

    def __eq__(self, other):
        return isinstance(other, FGAbelianGroup) and self.structure == other.structure

    def __hash__(self):
        return hash(self.structure)

    def elements(self):
        if not self.is_finite:
            raise GroupError("cannot enumerate an infinite group")
        return list(itertools.product(*(range(d) for d in self.torsion)))

    def mul(self, g, h):
        return self.structure.reduce([a + b for a, b in zip(g, h)])

    def inv(self, g):
        return self.structure.reduce([-a for a in g])

    def contains(self, g) -> bool:
        return (
            isinstance(g, tuple) and len(g) == self.structure.ngens
            and all(isinstance(x, int) for x in g)
            and self.structure.reduce(g) == g
        )

    def name(self, g) -> str:
        return "(" + ",".join(str(x) for x in g) + ")"

    def element_to_json(self, g):
        return list(g)

    def element_from_json(self, obj):
        if not (isinstance(obj, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in obj)):
            raise GroupError(f"abelian-group elements are integer vectors, got {obj!r}")
        if len(obj) != self.structure.ngens:
            raise GroupError(f"element {obj!r} should have {self.structure.ngens} coordinates")
        return self.structure.reduce(obj)

    def basis_vector(self, i: int):
        v = [0] * self.structure.ngens
        v[i] = 1
        return self.structure.reduce(v)

    def to_json(self) -> dict:
        return {"kind": "fg_abelian", "free_rank": self.free_rank, "torsion": list(self.torsion)}

    def to_table(self) -> FiniteGroupTable:
        elems = self.elements()
        index = {g: i for i, g in enumerate(elems)}
        return FiniteGroupTable(
            [[index[self.mul(g, h)] for h in elems] for g in elems],
            [self.name(g) for g in elems],
        )

    def abelianization(self) -> AbelianizationMap:
        return AbelianizationMap(self.structure, lambda g: tuple(g))


def group_from_json(obj) -> FiniteGroupTable | FGAbelianGroup:
    if not isinstance(obj, dict):
        raise GroupError("group must be a JSON object")
    kind = obj.get("kind")
    if kind == "finite_table":
        if "table" not in obj:
            raise GroupError("finite_table group is missing 'table'")
        return FiniteGroupTable(obj["table"], obj.get("elements"))
    if kind == "fg_abelian":
        rank, torsion = obj.get("free_rank", 0), obj.get("torsion", [])
        if isinstance(rank, bool) or not isinstance(rank, int):
            raise GroupError("'free_rank' must be an integer")
        if not isinstance(torsion, list) or any(isinstance(d, bool) or not isinstance(d, int) for d in torsion):
            raise GroupError("'torsion' must be a list of integers")
        return FGAbelianGroup(rank, torsion)
    raise GroupError(f"unknown group kind {kind!r} (expected 'finite_table' or 'fg_abelian')")


# -- standard tables ----------------------------------------------------------

def cyclic_group(n: int) -> FiniteGroupTable:
    names = ["e"] + [f"g{i}" if i > 1 else "g" for i in range(1, n)]
    return FiniteGroupTable([[(i + j) % n for j in range(n)] for i in range(n)], names)


def trivial_group() -> FiniteGroupTable:
    return cyclic_group(1)


def permutation_group(perms: Sequence[tuple[int, ...]]) -> FiniteGroupTable:
    """Table of a group of permutations (composition: apply right factor first)."""
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[k]] for k in range(len(q)))] for q in perms] for p in perms]
    return FiniteGroupTable(table, ["".join(map(str, p)) for p in perms])


def symmetric_group(k: int) -> FiniteGroupTable:
    return permutation_group(sorted(itertools.permutations(range(k))))


def quaternion_group() -> FiniteGroupTable:
    # unit quaternions +-1, +-i, +-j, +-k as (sign, unit)
    units = "1ijk"
    prod = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for s in (1, -1) for u in units]
    index = {x: i for i, x in enumerate(elems)}

    def mul(x, y):
        s, u = prod[(x[1], y[1])]
        return (x[0] * y[0] * s, u)

    names = [("" if s == 1 else "-") + u for s, u in elems]
    return FiniteGroupTable([[index[mul(x, y)] for y in elems] for x in elems], names)


def direct_product(g: FiniteGroupTable, h: FiniteGroupTable) -> FiniteGroupTable:
    pairs = list(itertools.product(range(g.order), range(h.order)))
    index = {p: i for i, p in enumerate(pairs)}
    table = [[index[(g.mul(a, c), h.mul(b, d))] for c, d in pairs] for a, b in pairs]
    return FiniteGroupTable(table, [f"{g.name(a)}.{h.name(b)}" for a, b in pairs])


# -- subgroups and abelianization ----------------------------------------------

def subgroup_generated(group: FiniteGroupTable, gens: Iterable[int]) -> frozenset[int]:
    """Smallest subgroup containing ``gens``."""
    gens = [g for g in set(gens)]
    for g in gens:
        if not group.contains(g):
            raise GroupError(f"{g!r} is not an element of the group")
    found = {group.identity}
    frontier = [group.identity]
    # in a finite group, closing under right multiplication by generators suffices
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = group.mul(x, s)
                if y not in found:
                    found.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(found)


def commutator_subgroup(group: FiniteGroupTable) -> frozenset[int]:
    inv, mul = group.inv, group.mul
    comms = {
        mul(mul(g, h), mul(inv(g), inv(h)))
        for g in group.elements() for h in group.elements()
    }
    return subgroup_generated(group, comms)


def _table_abelianization(group: FiniteGroupTable) -> AbelianizationMap:
    k = commutator_subgroup(group)
    coset_of = {}
    reps = []
    for g in group.elements():
        if g in coset_of:
            continue
        c = len(reps)
        reps.append(g)
        for x in k:
            coset_of[group.mul(g, x)] = c
    q = len(reps)
    # ab G = Z^{cosets} / <e_x + e_y - e_{xy}>
    cols = []
    for x, y in itertools.product(range(q), repeat=2):
        col = [0] * q
        col[x] += 1
        col[y] += 1
        col[coset_of[group.mul(reps[x], reps[y])]] -= 1
        cols.append(col)
    snf = smith_normal_form(IntMatrix.from_columns(cols, rows=q))
    diag = snf.diagonal + [0] * (q - len(snf.diagonal))
    free_pos = [i for i, d in enumerate(diag) if d == 0]
    tors_pos = [i for i, d in enumerate(diag) if d > 1]
    target = AbelianGroupStructure(len(free_pos), tuple(diag[i] for i in tors_pos))
    u = snf.U.to_rows()
    images = []
    for g in group.elements():
        c = coset_of[g]
        images.append(target.reduce([u[i][c] for i in free_pos + tors_pos]))
    images = tuple(images)
    return AbelianizationMap(target, lambda g: images[g])


def abelianization(group) -> AbelianizationMap:
    return group.abelianization()


# -- homology ------------------------------------------------------------------

def _exterior_square(s: AbelianGroupStructure) -> AbelianGroupStructure:
    r, t = s.free_rank, list(s.invariant_factors)
    orders = [0] * comb(r, 2)
    orders += [d for d in t for _ in range(r)]
    orders += [gcd(a, b) for a, b in itertools.combinations(t, 2)]
    return AbelianGroupStructure.from_cyclic_orders(orders)


def _check_degree(n: int):
    if n < 0:
        raise UnsupportedDegreeError(f"degree must be nonnegative, got {n}")


def _table_cap_check(group: FiniteGroupTable, n: int, cell_cap: int):
    if group.order ** (n + 1) > cell_cap:
        raise CellCapExceeded(f"|G|^{n + 1} = {group.order ** (n + 1)} exceeds the cell cap {cell_cap}")


def group_homology(group, n: int, cell_cap: int = DEFAULT_CELL_CAP) -> AbelianGroupStructure:
    """Integral homology H_n(G) with trivial coefficients."""
    _check_degree(n)
    if n == 0:
        return INTEGERS
    if isinstance(group, FGAbelianGroup):
        s = group.structure
        if n == 1:
            return s
        if n == 2:
            return _exterior_square(s)
        if not s.invariant_factors:
            return AbelianGroupStructure.free(comb(s.free_rank, n))
        raise UnsupportedDegreeError(
            f"H_{n} of an abelian group with torsion is only supported for n <= 2"
        )
    from .bar_oracle import bar_complex
    _table_cap_check(group, n, cell_cap)
    return bar_complex(group.to_monoid_table(), n + 1, cell_cap).homology(n)


def group_cohomology(group, n: int, cell_cap: int = DEFAULT_CELL_CAP) -> AbelianGroupStructure:
    """Integral cohomology H^n(G) with trivial coefficients."""
    _check_degree(n)
    if n == 0:
        return INTEGERS
    if isinstance(group, FGAbelianGroup):
        s = group.structure
        if not s.invariant_factors:
            return AbelianGroupStructure.free(comb(s.free_rank, n))
        if n == 1:
            return AbelianGroupStructure.free(s.free_rank)
        if n == 2:
            # Hom(H_2, Z) + Ext(H_1, Z)
            return AbelianGroupStructure(comb(s.free_rank, 2), s.invariant_factors)
        raise UnsupportedDegreeError(
            f"H^{n} of an abelian group with torsion is only supported for n <= 2"
        )
    from .bar_oracle import bar_complex
    _table_cap_check(group, n, cell_cap)
    return bar_complex(group.to_monoid_table(), n + 1, cell_cap).cohomology(n)
