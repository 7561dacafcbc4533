"""Rees matrix semigroups M(G, A, B, C) and finite monoid tables.

Elements of a Rees matrix semigroup are triples ``(a, g, b)`` where ``a`` and
``b`` are positions in ``A`` and ``B`` and ``g`` is an element of the group
backend.  The sandwich matrix is indexed ``C[b][a]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Sequence

from .errors import GroupError, NotNormalizedError, SchemaError, check_names, check_table
from .groups import FGAbelianGroup, FiniteGroupTable, group_from_json


class MonoidTable:
    """A finite monoid by multiplication table; closure, identity and
    associativity are checked at construction."""

    def __init__(self, table: Sequence[Sequence[int]], names: Sequence[str] | None = None):
        rows = check_table(table)
        n = len(rows)
        for x, y, z in itertools.product(range(n), repeat=3):
            if rows[rows[x][y]][z] != rows[x][rows[y][z]]:
                raise SchemaError(f"table is not associative at ({x},{y},{z})")
        identity = next(
            (e for e in range(n) if all(rows[e][x] == x == rows[x][e] for x in range(n))),
            None,
        )
        if identity is None:
            raise SchemaError("table has no two-sided identity")
        self.table = rows
        self.order = n
        self.identity = identity
        self.names = check_names(names, "element names") if names is not None else tuple(str(i) for i in range(n))
        if len(self.names) != n:
            raise SchemaError("element names must match the table size")

    def __repr__(self):
        return f"MonoidTable(order={self.order})"

    def __eq__(self, other):
        return isinstance(other, MonoidTable) and self.table == other.table and self.names == other.names

    def __hash__(self):
        return hash((self.table, self.names))

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def element(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise SchemaError(f"unknown monoid element {name!r}") from None

    def to_json(self) -> dict:
        return {"kind": "monoid_table", "elements": list(self.names), "table": [list(r) for r in self.table]}

    @classmethod
    def from_json(cls, obj) -> "MonoidTable":
        if not isinstance(obj, dict) or "table" not in obj:
            raise SchemaError("monoid table JSON needs a 'table' field")
        return cls(obj["table"], obj.get("elements"))


def adjoin_identity(monoid: MonoidTable, name: str = "1'") -> MonoidTable:
    """M^1: a fresh identity adjoined even if M already has one."""
    n = monoid.order
    table = [list(row) + [i] for i, row in enumerate(monoid.table)]
    table.append(list(range(n + 1)))
    return MonoidTable(table, list(monoid.names) + [name])


@dataclass(frozen=True)
class ReesMatrixSemigroup:
    group: FiniteGroupTable | FGAbelianGroup
    A: tuple[str, ...]
    B: tuple[str, ...]
    C: tuple[tuple, ...]  # C[b][a]
    a0: str | None = None
    b0: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(self.A))
        object.__setattr__(self, "B", tuple(self.B))
        object.__setattr__(self, "C", tuple(tuple(row) for row in self.C))
        if not self.A or not self.B:
            raise SchemaError("index sets A and B must be nonempty")
        if len(set(self.A)) != len(self.A) or len(set(self.B)) != len(self.B):
            raise SchemaError("index names must be distinct")
        if len(self.C) != len(self.B) or any(len(row) != len(self.A) for row in self.C):
            raise SchemaError("sandwich matrix must have one row per b and one entry per a")
        for b, row in zip(self.B, self.C):
            for a, g in zip(self.A, row):
                if not self.group.contains(g):
                    raise SchemaError(f"C[{b}][{a}] = {g!r} is not a group element")
        if self.a0 is not None and self.a0 not in self.A:
            raise SchemaError(f"a0 = {self.a0!r} is not in A")
        if self.b0 is not None and self.b0 not in self.B:
            raise SchemaError(f"b0 = {self.b0!r} is not in B")

    @property
    def base_pair(self) -> tuple[str, str]:
        return (self.a0 if self.a0 is not None else self.A[0],
                self.b0 if self.b0 is not None else self.B[0])

    def a_index(self, name: str) -> int:
        try:
            return self.A.index(name)
        except ValueError:
            raise SchemaError(f"{name!r} is not in A") from None

    def b_index(self, name: str) -> int:
        try:
            return self.B.index(name)
        except ValueError:
            raise SchemaError(f"{name!r} is not in B") from None

    def entry(self, b: int, a: int):
        return self.C[b][a]

    @property
    def is_finite(self) -> bool:
        return self.group.is_finite

    def size(self) -> int:
        if not self.group.is_finite:
            raise GroupError("infinite group backend")
        return len(self.A) * self.group.order * len(self.B)

    def elements(self) -> list[tuple]:
        """All (a, g, b) triples, lexicographic in (a-index, g-index, b-index)."""
        if not self.group.is_finite:
            raise GroupError("cannot enumerate a Rees matrix semigroup over an infinite group")
        return [
            (a, g, b)
            for a in range(len(self.A))
            for g in self.group.elements()
            for b in range(len(self.B))
        ]

    def element_name(self, x) -> str:
        a, g, b = x
        return f"({self.A[a]},{self.group.name(g)},{self.B[b]})"

    def permuted(self, a_order: Sequence[int], b_order: Sequence[int]) -> "ReesMatrixSemigroup":
        """The same semigroup with A and B listed in a different order."""
        return replace(
            self,
            A=tuple(self.A[i] for i in a_order),
            B=tuple(self.B[j] for j in b_order),
            C=tuple(tuple(self.C[j][i] for i in a_order) for j in b_order),
        )

    def to_json(self) -> dict:
        g = self.group
        out = {
            "group": g.to_json(),
            "A": list(self.A),
            "B": list(self.B),
            "C": {
                b: {a: g.element_to_json(self.C[j][i]) for i, a in enumerate(self.A)}
                for j, b in enumerate(self.B)
            },
        }
        if self.a0 is not None:
            out["a0"] = self.a0
        if self.b0 is not None:
            out["b0"] = self.b0
        return out

    @classmethod
    def from_json(cls, obj) -> "ReesMatrixSemigroup":
        if not isinstance(obj, dict):
            raise SchemaError("Rees semigroup must be a JSON object")
        for key in ("group", "A", "B", "C"):
            if key not in obj:
                raise SchemaError(f"Rees semigroup is missing {key!r}")
        group = group_from_json(obj["group"])
        A, B, Cj = check_names(obj["A"], "'A'"), check_names(obj["B"], "'B'"), obj["C"]
        if not isinstance(Cj, dict):
            raise SchemaError("'C' must map b-names to {a-name: element}")
        extra = set(Cj) - set(B)
        if extra:
            raise SchemaError(f"C has rows for unknown b {sorted(extra)}")
        rows = []
        for b in B:
            row = Cj.get(b)
            if not isinstance(row, dict):
                raise SchemaError(f"C[{b!r}] is missing or not an object")
            extra = set(row) - set(A)
            if extra:
                raise SchemaError(f"C[{b!r}] has entries for unknown a {sorted(extra)}")
            out = []
            for a in A:
                if a not in row:
                    raise SchemaError(f"C[{b!r}][{a!r}] is missing")
                try:
                    out.append(group.element_from_json(row[a]))
                except GroupError as exc:
                    raise SchemaError(f"C[{b!r}][{a!r}]: {exc}") from None
            rows.append(out)
        for key in ("a0", "b0"):
            if key in obj and not isinstance(obj[key], str):
                raise SchemaError(f"{key!r} must be a name")
        return cls(group, A, B, tuple(rows), obj.get("a0"), obj.get("b0"))


def multiply(s: ReesMatrixSemigroup, x: tuple, y: tuple) -> tuple:
    """(a, g, b)(a', g', b') = (a, g C[b][a'] g', b')."""
    a, g, b = x
    a2, g2, b2 = y
    mul = s.group.mul
    return (a, mul(mul(g, s.C[b][a2]), g2), b2)


def is_normalized(s: ReesMatrixSemigroup, a0: str | None = None, b0: str | None = None) -> bool:
    da, db = s.base_pair
    i0 = s.a_index(a0 if a0 is not None else da)
    j0 = s.b_index(b0 if b0 is not None else db)
    e = s.group.identity
    return all(s.C[j0][i] == e for i in range(len(s.A))) and all(
        s.C[j][i0] == e for j in range(len(s.B))
    )


@dataclass(frozen=True)
class Relabeling:
    """The isomorphism (a, g, b) -> (a, u[a] g v[b], b) produced by ``normalize``."""

    group: object
    u: tuple
    v: tuple

    def __call__(self, x: tuple) -> tuple:
        a, g, b = x
        mul = self.group.mul
        return (a, mul(mul(self.u[a], g), self.v[b]), b)

    def is_identity(self) -> bool:
        e = self.group.identity
        return all(x == e for x in self.u) and all(x == e for x in self.v)


def normalize(s: ReesMatrixSemigroup, a0: str | None = None, b0: str | None = None):
    """Return (S', witness) with S' normalized at (a0, b0) and witness: S -> S'.

    C'[b][a] = C[b0][a0] C[b][a0]^-1 C[b][a] C[b0][a]^-1.
    """
    da, db = s.base_pair
    a0 = a0 if a0 is not None else da
    b0 = b0 if b0 is not None else db
    i0, j0 = s.a_index(a0), s.b_index(b0)
    G, C = s.group, s.C
    mul, inv = G.mul, G.inv
    corner = C[j0][i0]
    new_c = tuple(
        tuple(
            mul(mul(mul(corner, inv(C[j][i0])), C[j][i]), inv(C[j0][i]))
            for i in range(len(s.A))
        )
        for j in range(len(s.B))
    )
    u = tuple(C[j0][i] for i in range(len(s.A)))
    v = tuple(mul(C[j][i0], inv(corner)) for j in range(len(s.B)))
    return replace(s, C=new_c, a0=a0, b0=b0), Relabeling(G, u, v)


def check_isomorphism(s: ReesMatrixSemigroup, t: ReesMatrixSemigroup, phi) -> list[str]:
    """Brute-force check that ``phi`` is a bijective homomorphism S -> T."""
    problems = []
    elems = s.elements()
    images = {x: phi(x) for x in elems}
    if len(set(images.values())) != len(elems) or set(images.values()) != set(t.elements()):
        problems.append("map is not a bijection")
    for x in elems:
        for y in elems:
            if images[multiply(s, x, y)] != multiply(t, images[x], images[y]):
                problems.append(f"phi({x}*{y}) != phi({x})*phi({y})")
                if len(problems) > 10:
                    return problems
    return problems


def to_monoid_table(s: ReesMatrixSemigroup) -> MonoidTable:
    """Table of S^1: the elements of S in lexicographic order, identity last."""
    if not s.group.is_finite:
        raise GroupError("to_monoid_table needs a finite group backend")
    elems = s.elements()
    index = {x: i for i, x in enumerate(elems)}
    n = len(elems)
    table = [[index[multiply(s, x, y)] for y in elems] + [i] for i, x in enumerate(elems)]
    table.append(list(range(n + 1)))
    names = [s.element_name(x) for x in elems] + ["1"]
    return MonoidTable(table, names)


def rectangular_band(na: int, nb: int) -> ReesMatrixSemigroup:
    from .groups import trivial_group
    return ReesMatrixSemigroup(
        trivial_group(),
        tuple(f"a{i}" for i in range(na)),
        tuple(f"b{j}" for j in range(nb)),
        tuple(tuple(0 for _ in range(na)) for _ in range(nb)),
    )
