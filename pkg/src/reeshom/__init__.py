"""Homology and cohomology of completely simple semigroups, with an
independent bar-complex oracle and presentation audits."""

from .bar_oracle import (
    ChainComplex,
    VerifyReport,
    bar_complex,
    monoid_cohomology,
    monoid_homology,
    verify_theorem_a,
)
from .errors import (
    CellCapExceeded,
    GroupError,
    NotNormalizedError,
    ReesHomError,
    RelationError,
    SchemaError,
    UnsupportedDegreeError,
)
from .finiteness import (
    LabeledGraph,
    Presentation,
    PrideReport,
    cayley_graph,
    fp1_check,
    gamma_s_graph,
    gm_abelianization,
    graph_first_betti,
    presentation_euler_characteristic,
    pride_check,
)
from .groups import (
    FGAbelianGroup,
    FiniteGroupTable,
    abelianization,
    cyclic_group,
    direct_product,
    group_cohomology,
    group_homology,
    subgroup_generated,
    symmetric_group,
    trivial_group,
)
from .intlin import (
    AbelianGroupStructure,
    IntMatrix,
    cokernel_structure,
    elementary_divisors,
    kernel_basis,
    minimal_generators,
    smith_normal_form,
)
from .rees import (
    MonoidTable,
    ReesMatrixSemigroup,
    adjoin_identity,
    is_normalized,
    multiply,
    normalize,
    rectangular_band,
    to_monoid_table,
)
from .theorem_a import cohomology, group_completion_ab, homology, psi_matrix

__version__ = "0.1.0"
