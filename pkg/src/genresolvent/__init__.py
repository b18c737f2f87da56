"""Generalized inverses and explicit generalized resolvents of matrix pencils.

The library constructs generalized inverses of complex matrices (Moore-
Penrose or determined by a choice of complements), builds the explicit
resolvent family G(lam) = tplus (I - lam s tplus)^-1 of a pencil
lam -> t - lam*s, verifies the resolvent axioms, and decides existence via
transversality, direct sums, fixed complements, continuity, and rank
constancy. The ``genresolvent`` CLI exposes the same analyses on JSON
matrix files.
"""

__version__ = "0.1.0"

from .criteria import (
    IndexConstancyReport,
    InvertibilityReport,
    MPResolventReport,
    RankConstancyReport,
    RankProfile,
    ScanPoint,
    finite_rank_criterion,
    fredholm_criterion,
    generalized_spectrum_scan,
    invertibility_corollary,
    mp_resolvent_characterization,
    rank_profile,
    rectangular_region,
    semi_fredholm_criterion,
)
from .errors import (
    FactorizationError,
    GenResolventError,
    InvalidComplementError,
    InvalidFamilyError,
    InvalidInverseError,
    MatrixFileError,
    OutOfRadiusError,
    PerturbationTooLargeError,
    ShapeMismatchError,
    SingularSystemError,
)
from .geninv import (
    ComplementPair,
    GenInverse,
    InverseKind,
    InverseVerdict,
    MPAxiomReport,
    complements_of,
    geninv_from_complements,
    mp_inverse,
    pinv_matrix,
    user_supplied,
    verify_gen_inverse,
    verify_mp_axioms,
)
from .linalg import (
    DEFAULT_TOL,
    SubspaceBasis,
    TolerancePolicy,
    as_matrix,
    direct_sum_check,
    full_subspace,
    intersection_trivial,
    kernel_basis,
    numerical_rank,
    oblique_projector,
    op_norm2,
    projector,
    range_basis,
    rank_and_marginal,
    relative_residual,
    solve,
    solve_right,
    subspace_from_columns,
    subspace_gap,
    svd,
    zero_subspace,
)
from .matio import load_matrix, matrix_payload, save_matrix, save_report
from .perturbation import (
    EquivalenceReport,
    PerturbationClass,
    PerturbationResult,
    SplittingChecks,
    equivalence_check,
    perturbed_inverse,
    smallness_of,
    splitting_checks,
    transversal,
)
from .resolvent import (
    RADIUS_CAP,
    RADIUS_EPS,
    ContinuityReport,
    DirectSumReport,
    DiskGrid,
    ExistenceCertificate,
    FixedComplementsReport,
    Pencil,
    ProjectorPair,
    ResolventAxiomReport,
    ResolventFamily,
    build_family,
    check_resolvent_axioms,
    continuity_check,
    default_grid,
    direct_sum_criteria,
    evaluate,
    evaluate_neumann,
    existence_check,
    fixed_complements_check,
    projector_family,
    resolvent_identity_residual,
)
