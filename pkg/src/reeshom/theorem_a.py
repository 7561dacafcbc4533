"""Closed-form homology and cohomology of completely simple semigroups.

For S = M(G, A, B, C) normalized at (a0, b0), write A' = A - {a0},
B' = B - {b0} and let psi: Z[A' x B'] -> ab G send (a, b) to the class of
C[b][a].  Then

    H_0 = Z,  H_1 = coker psi,  H_2 = H_2(G) + ker psi,  H_n = H_n(G) for n >= 3.

Cohomology is computed from the dual map Psi: Hom(ab G, Z) -> Z^{A' x B'};
in degree 2 only the constituents of the extension
0 -> coker Psi -> H^2 -> H^2(G) -> 0 are known in general.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotNormalizedError, UnsupportedDegreeError
from .groups import DEFAULT_CELL_CAP, group_cohomology, group_homology
from .intlin import (
    INTEGERS,
    AbelianGroupStructure,
    IntMatrix,
    cokernel_structure,
    rational_rank,
    subquotient_structure,
)
from .rees import ReesMatrixSemigroup, is_normalized, normalize


@dataclass(frozen=True)
class PsiMap:
    matrix: IntMatrix  # one column per (a, b) in A' x B', lexicographic
    target: AbelianGroupStructure
    target_relations: IntMatrix
    pairs: tuple[tuple[str, str], ...]

    @property
    def domain_rank(self) -> int:
        return len(self.pairs)

    def kernel_rank(self) -> int:
        rels = self.target_relations
        return self.domain_rank - (
            rational_rank(self.matrix.hstack(rels)) - rational_rank(rels)
        )

    def cokernel(self) -> AbelianGroupStructure:
        return subquotient_structure(self.matrix, self.target_relations)

    def dual_matrix(self) -> IntMatrix:
        """Psi as a |A'||B'| x free_rank matrix: f -> (f(C[b][a]))_{(a,b)}."""
        free_rows = self.matrix.select_rows(range(self.target.free_rank))
        return free_rows.transpose()


@dataclass(frozen=True)
class HomologyReport:
    degree: int
    structure: AbelianGroupStructure
    clause: str

    def to_json(self) -> dict:
        return {"degree": self.degree, "group": self.structure.to_json(), "clause": self.clause}


@dataclass(frozen=True)
class CohomologyReport:
    degree: int
    structure: AbelianGroupStructure | None
    clause: str
    constituents: tuple[AbelianGroupStructure, AbelianGroupStructure] | None = None
    extension_unresolved: bool = False

    def to_json(self) -> dict:
        out = {
            "degree": self.degree,
            "group": self.structure.to_json() if self.structure is not None else None,
            "clause": self.clause,
        }
        if self.constituents is not None:
            sub, quo = self.constituents
            out["h2_constituents"] = {
                "coker_Psi": sub.to_json(),
                "H2_G": quo.to_json(),
                "extension_unresolved": self.extension_unresolved,
            }
        return out


def _normalized(s: ReesMatrixSemigroup) -> ReesMatrixSemigroup:
    a0, b0 = s.base_pair
    if s.a0 == a0 and s.b0 == b0 and is_normalized(s, a0, b0):
        return s
    return normalize(s, a0, b0)[0]


def psi_matrix(s: ReesMatrixSemigroup) -> PsiMap:
    """The map psi for a semigroup already normalized at its designated pair."""
    if s.a0 is None or s.b0 is None or not is_normalized(s, s.a0, s.b0):
        raise NotNormalizedError("psi_matrix needs a sandwich matrix normalized at its designated (a0, b0)")
    ab = s.group.abelianization()
    i0, j0 = s.a_index(s.a0), s.b_index(s.b0)
    pairs, cols = [], []
    for i, a in enumerate(s.A):
        if i == i0:
            continue
        for j, b in enumerate(s.B):
            if j == j0:
                continue
            pairs.append((a, b))
            cols.append(list(ab(s.C[j][i])))
    k = ab.target.ngens
    matrix = IntMatrix.from_columns(cols, rows=k) if cols else IntMatrix.zeros(k, 0)
    return PsiMap(matrix, ab.target, ab.target.relation_matrix(), tuple(pairs))


def homology(s: ReesMatrixSemigroup, n: int, cell_cap: int = DEFAULT_CELL_CAP) -> HomologyReport:
    if n < 0:
        raise UnsupportedDegreeError(f"degree must be nonnegative, got {n}")
    if n == 0:
        return HomologyReport(0, INTEGERS, "theorem-A:n=0")
    if n >= 3:
        return HomologyReport(n, group_homology(s.group, n, cell_cap), "theorem-A:n>=3")
    psi = psi_matrix(_normalized(s))
    if n == 1:
        return HomologyReport(1, psi.cokernel(), "theorem-A:n=1")
    h2g = group_homology(s.group, 2, cell_cap)
    return HomologyReport(
        2, h2g.direct_sum(AbelianGroupStructure.free(psi.kernel_rank())), "theorem-A:n=2"
    )


def cohomology(s: ReesMatrixSemigroup, n: int, cell_cap: int = DEFAULT_CELL_CAP) -> CohomologyReport:
    if n < 0:
        raise UnsupportedDegreeError(f"degree must be nonnegative, got {n}")
    if n == 0:
        return CohomologyReport(0, INTEGERS, "cohomology:n=0")
    if n >= 3:
        return CohomologyReport(n, group_cohomology(s.group, n, cell_cap), "cohomology:n>=3")
    psi = psi_matrix(_normalized(s))
    if n == 1:
        # ker Psi = Hom(ab G(M), Z) and ab G(M) = coker psi
        return CohomologyReport(1, AbelianGroupStructure.free(psi.cokernel().free_rank), "cohomology:n=1")
    coker = cokernel_structure(psi.dual_matrix())
    h2g = group_cohomology(s.group, 2, cell_cap)
    group_trivial = s.group.is_finite and s.group.order == 1
    if coker.is_trivial() or h2g.is_trivial() or group_trivial:
        return CohomologyReport(2, coker.direct_sum(h2g), "cohomology:n=2", (coker, h2g), False)
    return CohomologyReport(2, None, "cohomology:n=2", (coker, h2g), True)


def group_completion_ab(s: ReesMatrixSemigroup) -> AbelianGroupStructure:
    """Abelianized group completion, G / <<C[b][a]>> made abelian."""
    return homology(s, 1).structure
