"""Existence criteria by rank and subspace constancy, and the spectrum scan.

At finite dimension every matrix is a finite-rank Fredholm operator, so the
finite-rank, Fredholm and semi-Fredholm existence characterizations all
collapse to the same computation: constancy of rank (equivalently nullity,
equivalently corank) of t - lam*s across the sampled region, anchored at
lam = 0. The Moore-Penrose characterization is sharper: the pseudoinverse
family (t - lam*s)^+ is itself the resolvent exactly when the kernel and
range subspaces stay fixed, and this module computes both sides of that
equivalence independently so the agreement is a genuine cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeMismatchError, SingularSystemError
from .geninv import pinv_matrix, verify_mp_axioms
from .linalg import (
    DEFAULT_TOL,
    TolerancePolicy,
    as_matrix,
    kernel_basis,
    numerical_rank,
    op_norm2,
    range_basis,
    rank_and_marginal,
    solve,
    subspace_gap,
)
from .resolvent import DiskGrid, Pencil, _identity_residual, pair_indices

_FINITE_DIM_NOTE = (
    "at finite dimension rank-nullity makes nullity constancy, corank constancy "
    "and rank constancy the same condition"
)
_SEMI_FREDHOLM_NOTE = (
    _FINITE_DIM_NOTE + "; the finiteness qualifiers are vacuous since every "
    "subspace here is finite-dimensional"
)


@dataclass(frozen=True)
class RankProfile:
    """Rank, nullity and corank of t - lam*s at each sampled point.

    marginal flags points whose smallest retained singular value sits within
    a factor of 10 of the rank cutoff, i.e. where the integer rank is not a
    robust decision.
    """

    points: tuple[complex, ...]
    ranks: tuple[int, ...]
    nullities: tuple[int, ...]
    coranks: tuple[int, ...]
    marginal: tuple[bool, ...]

    def __post_init__(self):
        lengths = {len(self.points), len(self.ranks), len(self.nullities),
                   len(self.coranks), len(self.marginal)}
        if len(lengths) != 1:
            raise ValueError("profile lists must have equal length")


def rank_profile(p: Pencil, grid: DiskGrid, tol: TolerancePolicy = DEFAULT_TOL) -> RankProfile:
    """Numerical rank of t - lam*s at every grid point."""
    m, n = p.shape
    ranks: list[int] = []
    marginal: list[bool] = []
    for lam in grid.points:
        r, near = rank_and_marginal(p.at(lam), tol)
        ranks.append(r)
        marginal.append(near)
    return RankProfile(
        points=tuple(grid.points),
        ranks=tuple(ranks),
        nullities=tuple(n - r for r in ranks),
        coranks=tuple(m - r for r in ranks),
        marginal=tuple(marginal),
    )


def _rank_at_zero(profile: RankProfile) -> int:
    return profile.ranks[profile.points.index(0)]


@dataclass(frozen=True)
class RankConstancyReport:
    """Verdict of the rank-constancy existence criterion, with its profile."""

    verdict: bool
    profile: RankProfile


def finite_rank_criterion(
    p: Pencil, grid: DiskGrid, tol: TolerancePolicy = DEFAULT_TOL
) -> RankConstancyReport:
    """Existence iff rank(t - lam*s) equals rank(t) at every sampled point.

    Constancy is judged against the rank at lam = 0, which anchors every
    criterion in this module.
    """
    profile = rank_profile(p, grid, tol)
    anchor = _rank_at_zero(profile)
    return RankConstancyReport(
        verdict=all(r == anchor for r in profile.ranks),
        profile=profile,
    )


@dataclass(frozen=True)
class IndexConstancyReport:
    """Nullity/corank constancy verdicts (Fredholm-style criterion)."""

    nullity_constant: bool
    corank_constant: bool
    verdict: bool
    profile: RankProfile
    note: str


def fredholm_criterion(
    p: Pencil, grid: DiskGrid, tol: TolerancePolicy = DEFAULT_TOL
) -> IndexConstancyReport:
    """Existence iff nullity or corank of t - lam*s is constant on the grid."""
    profile = rank_profile(p, grid, tol)
    anchor = _rank_at_zero(profile)
    anchor_nullity = p.shape[1] - anchor
    anchor_corank = p.shape[0] - anchor
    nullity_constant = all(v == anchor_nullity for v in profile.nullities)
    corank_constant = all(v == anchor_corank for v in profile.coranks)
    # fixed shape means both constancies are the same statement as rank constancy
    assert nullity_constant == corank_constant == all(r == anchor for r in profile.ranks)
    return IndexConstancyReport(
        nullity_constant=nullity_constant,
        corank_constant=corank_constant,
        verdict=nullity_constant or corank_constant,
        profile=profile,
        note=_FINITE_DIM_NOTE,
    )


def semi_fredholm_criterion(
    p: Pencil, grid: DiskGrid, tol: TolerancePolicy = DEFAULT_TOL
) -> IndexConstancyReport:
    """Same computation as the Fredholm criterion; finiteness is automatic here."""
    report = fredholm_criterion(p, grid, tol)
    return IndexConstancyReport(
        nullity_constant=report.nullity_constant,
        corank_constant=report.corank_constant,
        verdict=report.verdict,
        profile=report.profile,
        note=_SEMI_FREDHOLM_NOTE,
    )


@dataclass(frozen=True)
class MPResolventReport:
    """Two independent views of whether (t - lam*s)^+ is the resolvent.

    kernel_gaps / range_gaps measure subspace drift of N(t-lam s), R(t-lam s)
    against lam = 0; constancy_verdict demands all gaps stay under gap_tol.
    identity_verdict checks the resolvent identity pairwise on the
    pointwise-computed pseudoinverse family itself (plus its axioms), never
    through the explicit resolvent formula, so the two verdicts are computed
    along genuinely different routes and must agree.
    """

    points: tuple[complex, ...]
    kernel_gaps: tuple[float, ...]
    range_gaps: tuple[float, ...]
    max_identity_residual: float
    max_axiom_residual: float
    constancy_verdict: bool
    identity_verdict: bool


def mp_resolvent_characterization(
    p: Pencil, grid: DiskGrid, tol: TolerancePolicy = DEFAULT_TOL, seed: int = 0
) -> MPResolventReport:
    """Evaluate both sides of the pseudoinverse-resolvent equivalence."""
    t_kernel = kernel_basis(p.t, tol)
    t_range = range_basis(p.t, tol)
    pinvs = [pinv_matrix(p.at(lam), tol) for lam in grid.points]
    scale = pinvs[grid.points.index(0)]
    kernel_gaps: list[float] = []
    range_gaps: list[float] = []
    max_axiom = 0.0
    for lam, b in zip(grid.points, pinvs):
        a = p.at(lam)
        kernel_gaps.append(subspace_gap(kernel_basis(a, tol), t_kernel))
        range_gaps.append(subspace_gap(range_basis(a, tol), t_range))
        axioms = verify_mp_axioms(a, b, tol)
        max_axiom = max(
            max_axiom,
            axioms.inner_residual,
            axioms.outer_residual,
            axioms.p_hermitian_residual,
            axioms.q_hermitian_residual,
        )
    max_identity = 0.0
    for i, j in pair_indices(len(grid.points), seed):
        res = _identity_residual(
            p.s, scale, pinvs[i], pinvs[j], grid.points[i], grid.points[j]
        )
        max_identity = max(max_identity, res)
    constancy = all(g <= tol.gap_tol for g in kernel_gaps + range_gaps)
    identity = max_identity <= tol.residual_tol and max_axiom <= tol.residual_tol
    return MPResolventReport(
        points=tuple(grid.points),
        kernel_gaps=tuple(kernel_gaps),
        range_gaps=tuple(range_gaps),
        max_identity_residual=max_identity,
        max_axiom_residual=max_axiom,
        constancy_verdict=constancy,
        identity_verdict=identity,
    )


@dataclass(frozen=True)
class InvertibilityReport:
    """Pseudoinverse-resolvent verdict for the pencil (t, I) next to plain invertibility.

    The two booleans agree: the shifted pseudoinverse family is the resolvent
    exactly when t is invertible, in which case it coincides with the
    classical resolvent and max_classical_residual records the worst
    condition-scaled deviation ||(t-lam I)^+ - (t-lam I)^-1|| / cond over the
    grid (None when t is singular).
    """

    mp_resolvent_ok: bool
    t_invertible: bool
    max_classical_residual: float | None
    mp_report: MPResolventReport


def invertibility_corollary(
    t, grid: DiskGrid, tol: TolerancePolicy = DEFAULT_TOL
) -> InvertibilityReport:
    """Decide invertibility of square t via the shifted pseudoinverse family."""
    t = as_matrix(t)
    n = t.shape[0]
    if t.shape[0] != t.shape[1]:
        raise ShapeMismatchError(f"invertibility needs a square matrix, got {t.shape}")
    pencil = Pencil(t, np.eye(n, dtype=np.complex128))
    report = mp_resolvent_characterization(pencil, grid, tol)
    invertible = numerical_rank(t, tol) == n
    worst: float | None = None
    if invertible:
        worst = 0.0
        eye = np.eye(n, dtype=np.complex128)
        for lam in grid.points:
            a = pencil.at(lam)
            try:
                classical = solve(a, eye, tol)
            except SingularSystemError:
                worst = np.inf
                break
            cond = op_norm2(a) * op_norm2(classical)
            worst = max(worst, op_norm2(pinv_matrix(a, tol) - classical) / cond)
    return InvertibilityReport(
        mp_resolvent_ok=report.constancy_verdict and report.identity_verdict,
        t_invertible=invertible,
        max_classical_residual=worst,
        mp_report=report,
    )


@dataclass(frozen=True)
class ScanPoint:
    """One sample of the rank-drop scan: rank of t - lam*s at lam."""

    lam: complex
    rank: int
    is_drop: bool


def rectangular_region(
    re_min: float, re_max: float, im_min: float, im_max: float, steps: int
) -> tuple[complex, ...]:
    """Row-major rectangular sampling of the complex plane, steps points per axis."""
    if steps < 1:
        raise ValueError("region needs at least one step per axis")
    res = np.linspace(re_min, re_max, steps)
    ims = np.linspace(im_min, im_max, steps)
    return tuple(complex(re, im) for im in ims for re in res)


def generalized_spectrum_scan(
    p: Pencil, region, tol: TolerancePolicy = DEFAULT_TOL
) -> list[ScanPoint]:
    """Rank of t - lam*s over a region; drop points mark the rank-drop locus.

    A point is a drop point when its rank falls below the maximum rank seen
    anywhere in the region (the generic value). For a pencil (t, I) with
    normal t these are exactly the sampled eigenvalues.
    """
    points = [complex(lam) for lam in region]
    if not points:
        raise ValueError("region is empty")
    ranks = [numerical_rank(p.at(lam), tol) for lam in points]
    top = max(ranks)
    return [
        ScanPoint(lam=lam, rank=r, is_drop=r < top)
        for lam, r in zip(points, ranks)
    ]
