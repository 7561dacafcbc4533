"""Exact integer linear algebra.

Smith normal form, ranks, kernel lattices and the canonical structure of
finitely generated abelian groups presented by integer matrices.  All
arithmetic uses Python integers, so nothing overflows.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        flat = []
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise ValueError(f"row {i} has length {len(row)}, expected {cols}")
            flat.extend(int(x) for x in row)
        return cls(len(rows), cols, tuple(flat))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError(f"column {j} has length {len(col)}, expected {rows}")
        return cls.from_rows(
            [[col[i] for col in columns] for i in range(rows)], cols=len(columns)
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            out[i][i] = d
        return cls.from_rows(out, cols=cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def column(self, j: int) -> list[int]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def columns(self) -> list[list[int]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(self.columns(), cols=self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        a = self.to_rows()
        bt = other.columns()
        return IntMatrix.from_rows(
            [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a],
            cols=other.cols,
        )

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError(
                f"row-count mismatch: {self.rows} vs {other.rows}"
            )
        a, b = self.to_rows(), other.to_rows()
        return IntMatrix.from_rows(
            [ra + rb for ra, rb in zip(a, b)], cols=self.cols + other.cols
        )

    def select_rows(self, indices: Iterable[int]) -> "IntMatrix":
        rows = self.to_rows()
        return IntMatrix.from_rows([rows[i] for i in indices], cols=self.cols)

    def select_columns(self, indices: Iterable[int]) -> "IntMatrix":
        cols = self.columns()
        return IntMatrix.from_columns([cols[j] for j in indices], rows=self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    def diagonal_entries(self) -> list[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    a = m.to_rows()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class AbelianGroupStructure:
    """Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... and every d_i >= 2.

    Coordinates of elements are ordered free part first, then torsion.
    """

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        object.__setattr__(self, "invariant_factors", tuple(int(d) for d in self.invariant_factors))
        for d in self.invariant_factors:
            if d < 2:
                raise ValueError(f"invariant factor {d} must be >= 2")
        for d, e in zip(self.invariant_factors, self.invariant_factors[1:]):
            if e % d:
                raise ValueError(f"invariant factors {d}, {e} break the divisibility chain")

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int]) -> "AbelianGroupStructure":
        """Canonical form of a direct sum of cyclic groups Z/n (n = 0 means Z)."""
        free = 0
        powers: dict[int, list[int]] = {}
        for n in orders:
            n = abs(int(n))
            if n == 0:
                free += 1
                continue
            for prime, e in _factorize(n).items():
                powers.setdefault(prime, []).append(prime ** e)
        length = max((len(v) for v in powers.values()), default=0)
        factors = [1] * length
        for v in powers.values():
            v.sort(reverse=True)
            for t, q in enumerate(v):
                factors[length - 1 - t] *= q
        return cls(free, tuple(factors))

    @classmethod
    def free(cls, rank: int) -> "AbelianGroupStructure":
        return cls(rank, ())

    @property
    def torsion(self) -> tuple[int, ...]:
        return self.invariant_factors

    @property
    def ngens(self) -> int:
        """Length of the coordinate vectors (free_rank + number of torsion factors)."""
        return self.free_rank + len(self.invariant_factors)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def cyclic_orders(self) -> list[int]:
        """Orders of the coordinate generators, 0 standing for infinite order."""
        return [0] * self.free_rank + list(self.invariant_factors)

    def reduce(self, vector: Sequence[int]) -> tuple[int, ...]:
        if len(vector) != self.ngens:
            raise ValueError(f"vector of length {len(vector)} for a group with {self.ngens} coordinates")
        return tuple(v % n if n else v for v, n in zip(vector, self.cyclic_orders()))

    def relation_matrix(self) -> IntMatrix:
        """ngens x k matrix whose columns are the torsion relations d_i * e_i."""
        k = len(self.invariant_factors)
        cols = []
        for i, d in enumerate(self.invariant_factors):
            col = [0] * self.ngens
            col[self.free_rank + i] = d
            cols.append(col)
        return IntMatrix.from_columns(cols, rows=self.ngens) if k else IntMatrix.zeros(self.ngens, 0)

    def direct_sum(self, *others: "AbelianGroupStructure") -> "AbelianGroupStructure":
        orders = self.cyclic_orders()
        for o in others:
            orders.extend(o.cyclic_orders())
        return AbelianGroupStructure.from_cyclic_orders(orders)

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.invariant_factors)}

    @classmethod
    def from_json(cls, obj: dict) -> "AbelianGroupStructure":
        return cls(int(obj["free_rank"]), tuple(obj.get("torsion", ())))

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"


TRIVIAL = AbelianGroupStructure()
INTEGERS = AbelianGroupStructure(1)


@dataclass(frozen=True)
class SNFResult:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return self.D.diagonal_entries()

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _snf_lists(a: list[list[int]], m: int, n: int, track: bool = True):
    """In-place Smith reduction of the m x n list matrix ``a``.

    Returns (u, v) with u * original * v == reduced, or (None, None) when
    ``track`` is false.  Pivots are chosen by minimal absolute value.
    """
    u = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    v = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if track:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if track:
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row[dst] += q * row[src]
        ra, rs = a[dst], a[src]
        for k in range(n):
            if rs[k]:
                ra[k] += q * rs[k]
        if track:
            ua, us = u[dst], u[src]
            for k in range(m):
                if us[k]:
                    ua[k] += q * us[k]

    def add_col(dst, src, q):
        for row in a:
            if row[src]:
                row[dst] += q * row[src]
        if track:
            for row in v:
                if row[src]:
                    row[dst] += q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            dirty = False
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            # a smaller remainder becomes the new pivot
            cand = None
            for i in range(t + 1, m):
                x = a[i][t]
                if x and (cand is None or abs(x) < cand[0]):
                    cand = (abs(x), "r", i)
            for j in range(t + 1, n):
                x = a[t][j]
                if x and (cand is None or abs(x) < cand[0]):
                    cand = (abs(x), "c", j)
            if cand is not None:
                if cand[1] == "r":
                    swap_rows(t, cand[2])
                else:
                    swap_cols(t, cand[2])
                continue
            p = a[t][t]
            for i in range(t + 1, m):
                row = a[i]
                bad = next((j for j in range(t + 1, n) if row[j] % p), None)
                if bad is not None:
                    add_row(t, i, 1)
                    dirty = True
                    break
            if not dirty:
                break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if track:
                u[t] = [-x for x in u[t]]
    return u, v


def smith_normal_form(m: IntMatrix) -> SNFResult:
    """Return unimodular U, V and diagonal D with U @ m @ V == D.

    The diagonal of D is nonnegative with d_1 | d_2 | ... and zeros last.
    """
    a = m.to_rows()
    u, v = _snf_lists(a, m.rows, m.cols)
    return SNFResult(
        IntMatrix.from_rows(u, cols=m.rows),
        IntMatrix.from_rows(a, cols=m.cols),
        IntMatrix.from_rows(v, cols=m.cols),
    )


def elementary_divisors(m: IntMatrix) -> list[int]:
    """Nonzero diagonal entries of the Smith form of ``m``, in chain order."""
    a = m.to_rows()
    _snf_lists(a, m.rows, m.cols, track=False)
    return [a[i][i] for i in range(min(m.rows, m.cols)) if a[i][i]]


def rational_rank(m: IntMatrix) -> int:
    return len(elementary_divisors(m))


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Columns form a Z-basis of {x : m x = 0}."""
    snf = smith_normal_form(m)
    r = snf.rank
    return snf.V.select_columns(range(r, m.cols))


def cokernel_structure(m: IntMatrix) -> AbelianGroupStructure:
    """Structure of Z^rows / (column span of m)."""
    divs = elementary_divisors(m)
    return AbelianGroupStructure(m.rows - len(divs), tuple(d for d in divs if d != 1))


def minimal_generators(group: AbelianGroupStructure) -> int:
    return group.free_rank + len(group.invariant_factors)


def subquotient_structure(gens: IntMatrix, rels: IntMatrix) -> AbelianGroupStructure:
    """Structure of Z^k / (span(gens) + span(rels)).

    With ``rels`` presenting a group Z^k / span(rels), this is the cokernel of
    the map given by ``gens`` into that group.
    """
    if gens.rows != rels.rows:
        raise ValueError(
            f"row-count mismatch: gens has {gens.rows} rows, rels has {rels.rows}"
        )
    return cokernel_structure(gens.hstack(rels))


# -- sparse elimination -------------------------------------------------------

class _SparseReducer:
    """Column-sparse integer matrix reduced by unimodular row/column operations."""

    def __init__(self, columns, nrows):
        self.cols: dict[int, dict[int, int]] = {}
        self.rows: dict[int, set[int]] = {}
        for j, col in enumerate(columns):
            c = {i: x for i, x in col.items() if x}
            if not c:
                continue
            for i in c:
                if i < 0 or i >= nrows:
                    raise ValueError(f"row index {i} out of range in column {j}")
                self.rows.setdefault(i, set()).add(j)
            self.cols[j] = c
        self.next_col = len(columns)
        self.units = 0
        self.divisors: list[int] = []

    def _pivot_cost(self, j):
        best = None
        for i, x in self.cols[j].items():
            if x == 1 or x == -1:
                r = len(self.rows[i])
                if best is None or r < best[0]:
                    best = (r, i)
        if best is None:
            return None
        return (len(self.cols[j]) - 1) * (best[0] - 1), best[1]

    def _set(self, k, i, y):
        ck = self.cols[k]
        if y:
            if i not in ck:
                self.rows[i].add(k)
            ck[i] = y
        elif i in ck:
            del ck[i]
            self.rows[i].discard(k)

    def eliminate_units(self):
        """Schur-complement away unit pivots, cheapest (Markowitz) first.

        Heap costs may be stale; they are rechecked when popped.
        """
        cols, rows = self.cols, self.rows
        heap = []
        for j in cols:
            c = self._pivot_cost(j)
            if c is not None:
                heap.append((c[0], j))
        heapq.heapify(heap)
        queued = {j for _, j in heap}
        while heap:
            cost, j = heapq.heappop(heap)
            queued.discard(j)
            if j not in cols:
                continue
            c = self._pivot_cost(j)
            if c is None:
                continue
            if c[0] > cost:
                heapq.heappush(heap, (c[0], j))
                queued.add(j)
                continue
            pi = c[1]
            col = cols[j]
            p = col[pi]
            for k in list(rows[pi]):
                if k == j:
                    continue
                ck = cols[k]
                q = ck[pi] * p  # p = +-1
                for i, x in col.items():
                    y = ck.get(i, 0) - q * x
                    if y:
                        if i not in ck:
                            rows[i].add(k)
                        ck[i] = y
                    elif i in ck:
                        del ck[i]
                        rows[i].discard(k)
                if not ck:
                    del cols[k]
                elif k not in queued:
                    heapq.heappush(heap, (0, k))
                    queued.add(k)
            for i in col:
                rows[i].discard(j)
            del cols[j]
            del rows[pi]
            self.units += 1

    def _pick_pivot(self):
        for r in [r for r, js in self.rows.items() if not js]:
            del self.rows[r]
        i = min(self.rows, key=lambda r: (len(self.rows[r]), r))
        j = min(self.rows[i], key=lambda c: (abs(self.cols[c][i]), c))
        return i, j

    def isolate(self):
        """Split one diagonal entry off the residual matrix.

        Clears the pivot row with column operations and the pivot column with
        row operations; once the row is private to the pivot column, a row
        operation only touches that column.
        """
        cols, rows = self.cols, self.rows
        i, j = self._pick_pivot()
        while True:
            p = cols[j][i]
            smaller = None
            for k in list(rows[i]):
                if k == j:
                    continue
                q = cols[k][i] // p
                for r, x in cols[j].items():
                    self._set(k, r, cols[k].get(r, 0) - q * x)
                if not cols[k]:
                    del cols[k]
                elif i in cols[k] and (smaller is None or abs(cols[k][i]) < abs(cols[smaller][i])):
                    smaller = k
            if smaller is not None:
                j = smaller
                continue
            for r in list(cols[j]):
                if r == i:
                    continue
                x = cols[j][r]
                rem = x - (x // p) * p
                self._set(j, r, rem)
                if rem and (smaller is None or abs(rem) < abs(cols[j][smaller])):
                    smaller = r
            if smaller is not None:
                i = smaller
                continue
            break
        p = abs(cols[j][i])
        del cols[j]
        del rows[i]
        if p == 1:
            self.units += 1
        else:
            self.divisors.append(p)

    def run(self) -> tuple[int, tuple[int, ...]]:
        self.eliminate_units()
        while self.cols:
            self.isolate()
        canon = AbelianGroupStructure.from_cyclic_orders(self.divisors)
        return self.units + len(self.divisors), canon.invariant_factors


def sparse_elementary_divisors(columns: Sequence[dict[int, int]], nrows: int) -> tuple[int, tuple[int, ...]]:
    """Rank and non-unit elementary divisors of a sparse column matrix.

    ``columns[j]`` maps row index to coefficient.  Unit pivots are removed by
    sparse Schur complements, which preserve elementary divisors; what is
    left is reduced with gcd column operations.
    """
    return _SparseReducer(columns, nrows).run()


@dataclass(frozen=True)
class SparseIntMatrix:
    """Integer matrix stored by columns; ``columns[j]`` maps row -> nonzero entry."""

    rows: int
    cols: int
    columns: tuple[dict[int, int], ...]

    def __post_init__(self):
        if len(self.columns) != self.cols:
            raise ValueError(f"expected {self.cols} columns, got {len(self.columns)}")

    @classmethod
    def from_dense(cls, m: IntMatrix) -> "SparseIntMatrix":
        return cls(m.rows, m.cols, tuple(
            {i: x for i, x in enumerate(col) if x} for col in m.columns()
        ))

    def to_dense(self) -> IntMatrix:
        out = [[0] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            for i, x in col.items():
                out[i][j] = x
        return IntMatrix.from_rows(out, cols=self.cols)

    def transpose(self) -> "SparseIntMatrix":
        cols: list[dict[int, int]] = [{} for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            for i, x in col.items():
                cols[i][j] = x
        return SparseIntMatrix(self.cols, self.rows, tuple(cols))

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        out = []
        for col in other.columns:
            acc: dict[int, int] = {}
            for k, y in col.items():
                for i, x in self.columns[k].items():
                    acc[i] = acc.get(i, 0) + x * y
            out.append({i: x for i, x in acc.items() if x})
        return SparseIntMatrix(self.rows, other.cols, tuple(out))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def is_zero(self) -> bool:
        return not any(self.columns)

    def elementary_divisors(self) -> tuple[int, tuple[int, ...]]:
        """(rank, non-unit elementary divisors)."""
        return sparse_elementary_divisors(self.columns, self.rows)
