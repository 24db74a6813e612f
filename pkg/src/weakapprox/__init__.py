"""Weak approximation defects of tori through finite-group cohomology of lattices."""

from .abelian import (
    Cokernel,
    FiniteAbelianGroup,
    SubgroupHandle,
    annihilator,
    cokernel,
    quotient,
    subgroup_intersection,
    subgroup_sum,
)
from .cohomology import (
    CohomologyGroup,
    CohomologyMap,
    restriction,
    sha_omega,
    shift_degree,
    sylow_kernel,
    tate,
    tate_cyclic,
)
from .defect import (
    ArithmeticContext,
    DefectReport,
    Place,
    compute_S0,
    defect_dual,
    defect_primal,
    lambda_image,
    s0_reduction_check,
    verdict,
)
from .errors import ConsistencyError, InputError, SizeError, StructuralError
from .groups import (
    FiniteGroup,
    Subgroup,
    cyclic_subgroups_up_to_conjugacy,
    group_from_generators,
    is_cyclic,
    is_metacyclic,
    sylow_subgroup,
)
from .lattices import (
    GLattice,
    augmentation_kernel,
    direct_sum,
    dual,
    lattice_from_action,
    norm_one_quotient,
    permutation_lattice,
    regular_lattice,
    restrict,
    trivial_lattice,
)
from .linalg import IntegerMatrix, SmithDecomposition, hnf, kernel_basis, snf

__version__ = "0.1.0"

__all__ = [
    "annihilator",
    "ArithmeticContext",
    "augmentation_kernel",
    "CohomologyGroup",
    "CohomologyMap",
    "Cokernel",
    "cokernel",
    "compute_S0",
    "ConsistencyError",
    "cyclic_subgroups_up_to_conjugacy",
    "defect_dual",
    "defect_primal",
    "DefectReport",
    "direct_sum",
    "dual",
    "FiniteAbelianGroup",
    "FiniteGroup",
    "GLattice",
    "group_from_generators",
    "hnf",
    "InputError",
    "IntegerMatrix",
    "is_cyclic",
    "is_metacyclic",
    "kernel_basis",
    "lambda_image",
    "lattice_from_action",
    "norm_one_quotient",
    "permutation_lattice",
    "Place",
    "quotient",
    "regular_lattice",
    "restrict",
    "restriction",
    "s0_reduction_check",
    "sha_omega",
    "shift_degree",
    "SizeError",
    "SmithDecomposition",
    "snf",
    "StructuralError",
    "Subgroup",
    "subgroup_intersection",
    "subgroup_sum",
    "SubgroupHandle",
    "sylow_kernel",
    "sylow_subgroup",
    "tate",
    "tate_cyclic",
    "trivial_lattice",
    "verdict",
]
