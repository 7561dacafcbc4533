"""Homology and cohomology of finite monoids from the normalized bar complex.

This is the independent ground truth that the closed-form Rees-matrix
computation is checked against.  Degree-n chains have as basis the n-tuples
of non-identity elements; tuples that would contain the identity are
dropped when boundaries are formed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import CellCapExceeded
from .groups import DEFAULT_CELL_CAP
from .intlin import AbelianGroupStructure, SparseIntMatrix
from .rees import MonoidTable, ReesMatrixSemigroup, to_monoid_table


class ChainComplex:
    """C_0 <- C_1 <- ... <- C_max with ``boundaries[n]: C_n -> C_{n-1}``.

    ``boundaries[0]`` is the zero map out of C_0.
    """

    def __init__(self, basis_sizes, boundaries):
        self.basis_sizes = tuple(basis_sizes)
        self.boundaries = tuple(boundaries)
        self.max_degree = len(self.basis_sizes) - 1
        if len(self.boundaries) != len(self.basis_sizes):
            raise ValueError("need one boundary matrix per degree")
        for n, d in enumerate(self.boundaries):
            expected_rows = self.basis_sizes[n - 1] if n else 0
            if d.shape != (expected_rows, self.basis_sizes[n]):
                raise ValueError(f"boundary {n} has shape {d.shape}, expected {(expected_rows, self.basis_sizes[n])}")
        self._divisors: dict[int, tuple[int, tuple[int, ...]]] = {}

    def invariants(self, n: int) -> tuple[int, tuple[int, ...]]:
        """(rank, non-unit elementary divisors) of ``boundaries[n]``, cached."""
        if n not in self._divisors:
            self._divisors[n] = self.boundaries[n].elementary_divisors()
        return self._divisors[n]

    def _require(self, n: int):
        if n < 0:
            raise ValueError("degree must be nonnegative")
        if n + 1 > self.max_degree:
            raise ValueError(f"degree {n} needs the complex through degree {n + 1}, have {self.max_degree}")

    def homology(self, n: int) -> AbelianGroupStructure:
        """ker(d_n) / im(d_{n+1})."""
        self._require(n)
        rank_out, _ = self.invariants(n)
        rank_in, torsion = self.invariants(n + 1)
        return AbelianGroupStructure(self.basis_sizes[n] - rank_out - rank_in, torsion)

    def cohomology(self, n: int) -> AbelianGroupStructure:
        """ker(d_{n+1}^T) / im(d_n^T) for the dual complex.

        A matrix and its transpose share rank and elementary divisors, so the
        cached invariants of d_n and d_{n+1} serve both directions.
        """
        self._require(n)
        rank_out, _ = self.invariants(n + 1)
        rank_in, torsion = self.invariants(n)
        return AbelianGroupStructure(self.basis_sizes[n] - rank_out - rank_in, torsion)

    def composition_defects(self) -> list[int]:
        """Degrees n where boundaries[n-1] @ boundaries[n] is nonzero."""
        return [
            n for n in range(2, self.max_degree + 1)
            if not (self.boundaries[n - 1] @ self.boundaries[n]).is_zero()
        ]


def cell_counts(monoid: MonoidTable, max_n: int) -> list[int]:
    k = monoid.order - 1
    return [k ** n for n in range(max_n + 1)]


def bar_complex(monoid: MonoidTable, max_n: int, cell_cap: int = DEFAULT_CELL_CAP) -> ChainComplex:
    if max_n < 0:
        raise ValueError("max_n must be nonnegative")
    sizes = cell_counts(monoid, max_n)
    for n, size in enumerate(sizes):
        if size > cell_cap:
            raise CellCapExceeded(
                f"bar complex of a {monoid.order}-element monoid has {size} cells in degree {n}, "
                f"over the cap of {cell_cap}"
            )
    e = monoid.identity
    nonid = [x for x in range(monoid.order) if x != e]
    pos = {x: i for i, x in enumerate(nonid)}
    k = len(nonid)
    # product of non-identity positions, None when it is the identity
    prod = [
        [None if monoid.table[x][y] == e else pos[monoid.table[x][y]] for y in nonid]
        for x in nonid
    ]

    def index(t):
        i = 0
        for x in t:
            i = i * k + x
        return i

    boundaries = [SparseIntMatrix(0, 1, ({},))]
    for n in range(1, max_n + 1):
        columns = []
        for t in itertools.product(range(k), repeat=n):
            col: dict[int, int] = {}

            def add(face, sign):
                i = index(face)
                v = col.get(i, 0) + sign
                if v:
                    col[i] = v
                else:
                    col.pop(i, None)

            if n > 1:
                add(t[1:], 1)
                for i in range(1, n):
                    p = prod[t[i - 1]][t[i]]
                    if p is not None:
                        add(t[:i - 1] + (p,) + t[i + 1:], -1 if i % 2 else 1)
                add(t[:-1], -1 if n % 2 else 1)
            else:
                # d(m) = [] - [] = 0
                pass
            columns.append(col)
        boundaries.append(SparseIntMatrix(sizes[n - 1], sizes[n], tuple(columns)))
    return ChainComplex(sizes, boundaries)


def _as_monoid(m) -> MonoidTable:
    if isinstance(m, ReesMatrixSemigroup):
        return to_monoid_table(m)
    return m


def monoid_homology(monoid, n: int, cell_cap: int = DEFAULT_CELL_CAP) -> AbelianGroupStructure:
    return bar_complex(_as_monoid(monoid), n + 1, cell_cap).homology(n)


def monoid_cohomology(monoid, n: int, cell_cap: int = DEFAULT_CELL_CAP) -> AbelianGroupStructure:
    return bar_complex(_as_monoid(monoid), n + 1, cell_cap).cohomology(n)


@dataclass(frozen=True)
class DegreeVerdict:
    kind: str  # "homology" or "cohomology"
    degree: int
    closed_form: dict
    oracle: AbelianGroupStructure
    verdict: str  # "match", "mismatch" or "consistent"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "degree": self.degree,
            "closed_form": self.closed_form,
            "oracle": self.oracle.to_json(),
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class VerifyReport:
    entries: tuple[DegreeVerdict, ...]
    monoid_order: int
    complex_ok: bool = True  # d o d == 0 held for every boundary pair
    notes: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return self.complex_ok and all(e.verdict != "mismatch" for e in self.entries)

    def to_json(self) -> dict:
        return {
            "monoid_order": self.monoid_order,
            "complex_ok": self.complex_ok,
            "ok": self.ok,
            "degrees": [e.to_json() for e in self.entries],
        }


def _extension_consistent(h: AbelianGroupStructure, sub: AbelianGroupStructure, quo: AbelianGroupStructure) -> bool:
    # necessary conditions for 0 -> sub -> h -> quo -> 0
    if h.free_rank != sub.free_rank + quo.free_rank:
        return False
    if len(h.invariant_factors) + h.free_rank > sub.ngens + quo.ngens:
        return False
    if h.is_finite() and sub.is_finite() and quo.is_finite():
        return h.order() == sub.order() * quo.order()
    return True


def verify_theorem_a(
    s: ReesMatrixSemigroup,
    max_n: int = 2,
    cell_cap: int = DEFAULT_CELL_CAP,
    check_complex: bool = True,
) -> VerifyReport:
    """Compare the closed forms with the bar-complex oracle in degrees 0..max_n."""
    from . import theorem_a

    monoid = to_monoid_table(s)
    cc = bar_complex(monoid, max_n + 1, cell_cap)
    entries = []
    for n in range(max_n + 1):
        closed = theorem_a.homology(s, n, cell_cap)
        oracle = cc.homology(n)
        entries.append(DegreeVerdict(
            "homology", n, closed.to_json(), oracle,
            "match" if closed.structure == oracle else "mismatch",
        ))
    for n in range(max_n + 1):
        closed = theorem_a.cohomology(s, n, cell_cap)
        oracle = cc.cohomology(n)
        if closed.structure is not None:
            verdict = "match" if closed.structure == oracle else "mismatch"
        else:
            sub, quo = closed.constituents
            verdict = "consistent" if _extension_consistent(oracle, sub, quo) else "mismatch"
        entries.append(DegreeVerdict("cohomology", n, closed.to_json(), oracle, verdict))
    complex_ok = not cc.composition_defects() if check_complex else True
    return VerifyReport(tuple(entries), monoid.order, complex_ok)
