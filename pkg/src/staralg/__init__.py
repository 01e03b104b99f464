"""Workbench for finite-dimensional complex *-algebras given by structure constants."""

from .core import (
    DEFAULT_TOL,
    Element,
    Spectrum,
    StarAlgebra,
    UnitalHull,
    ValidationReport,
    algebra_from_json,
    algebra_to_json,
    distinct_eigenvalues,
    minimal_polynomial,
    random_element,
    random_selfadjoint,
    spectrum,
    unital_hull,
    unitize,
    validate,
)
from .errors import (
    ClosureCapExceeded,
    DecompositionFailed,
    DegenerateInput,
    DegenerateRandomness,
    GroupTableError,
    IllConditioned,
    InternalInconsistency,
    MalformedInput,
    NoCStarNorm,
    NotARightIdeal,
    NotPositive,
    ParentMismatch,
    StarAlgError,
    ValidationFailed,
)
from .groups import (
    FiniteGroup,
    build_group_algebra,
    certify_group_theorem,
    cyclic_group,
    dihedral_group,
    group_from_cayley,
    group_from_json,
    group_from_permutations,
    group_to_json,
    quaternion_group,
    symmetric_group_3,
)
from .instances import (
    diagonal_algebra,
    direct_sum,
    from_matrix_basis,
    matrix_algebra,
    nilpotent_line,
    semisimple_instance,
    swap_algebra,
    unitized_nilpotent,
)
from .rickart import (
    AnnihilatorResult,
    CheckReport,
    annihilator,
    check_baer,
    check_weakly_rickart,
    is_projection,
    join,
    meet,
    orthogonal_family,
    proj_leq,
    projection_generator,
)
from .spectral import (
    SpectralDecomposition,
    cstar_norm,
    ep_witness,
    left_projection,
    positive_sqrt,
    quasi_inverse,
    right_projection,
    spectral_decompose,
)
from .stepfns import (
    ExactComplex,
    FiniteSubsets,
    StepFunction,
    UltimatelyPeriodicSets,
    coeffs_to_step,
    export_finite_backend,
    sf_add,
    sf_annihilator,
    sf_constant,
    sf_equal,
    sf_indicator,
    sf_mul,
    sf_quasi_inverse,
    sf_rp,
    sf_scale,
    sf_spectral_decompose,
    sf_star,
    sf_sub,
    sf_sup_norm,
    sf_support,
    sf_zero_set,
    step_function,
    step_to_coeffs,
)
from .structure import (
    CentralDecomposition,
    StructureReport,
    abelian_split,
    analyze,
    block_star_isomorphism,
    center,
    central_atoms,
    check_hermitian,
    check_proper,
    quotient_by_radical,
    radical,
)

__version__ = "0.1.0"
