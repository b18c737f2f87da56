"""Generalized resolvents of linear matrix pencils.

For a pencil lam -> t - lam*s and a generalized inverse tplus of t, the
family

    G(lam) = tplus @ (I - lam * s @ tplus)^-1

is defined on the open disk |lam| < 1/||s @ tplus||. On that disk G(lam) is
always an outer inverse of t - lam*s with constant range R(tplus) and
constant kernel N(tplus); it is a genuine generalized resolvent (inner and
outer axioms plus the resolvent identity

    G(lam) - G(mu) = (lam - mu) * G(lam) @ s @ G(mu))

exactly when R(t - lam*s) stays transversal to N(tplus) across the region.
This module builds and evaluates the family, verifies the three resolvent
conditions on sampled disk grids, and decides existence through the
transversality, direct-sum, fixed-complement and continuity criteria.

All grid verdicts certify the sampled points only; no interpolation between
samples is claimed.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InvalidFamilyError, OutOfRadiusError, ShapeMismatchError
from .geninv import (
    ComplementPair,
    GenInverse,
    InverseVerdict,
    user_supplied,
    verify_gen_inverse,
)
from .linalg import (
    DEFAULT_TOL,
    TolerancePolicy,
    as_matrix,
    direct_sum_check,
    intersection_trivial,
    kernel_basis,
    numerical_rank,
    op_norm2,
    range_basis,
    relative_residual,
    solve_right,
)

RADIUS_CAP = 1e12
RADIUS_EPS = 1e-14

PAIR_SAMPLE_LIMIT = 1600
PAIR_FULL_MAX_POINTS = 40


@dataclass(frozen=True)
class Pencil:
    """The pair (t, s) defining the operator family lam -> t - lam*s."""

    t: np.ndarray
    s: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "t", as_matrix(self.t))
        object.__setattr__(self, "s", as_matrix(self.s))
        if self.t.shape != self.s.shape:
            raise ShapeMismatchError(
                f"pencil operators differ in shape: {self.t.shape} vs {self.s.shape}"
            )

    @property
    def shape(self) -> tuple[int, int]:
        return self.t.shape

    def at(self, lam: complex) -> np.ndarray:
        return self.t - lam * self.s


@dataclass(frozen=True)
class DiskGrid:
    """Sample points in a closed disk around 0; 0 itself is always present."""

    radius: float
    points: tuple[complex, ...]

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("grid radius must be positive")
        pts = tuple(complex(p) for p in self.points)
        if not any(p == 0 for p in pts):
            pts = (0j,) + pts
        object.__setattr__(self, "points", pts)
        worst = max(abs(p) for p in pts)
        if worst > self.radius * (1 + 1e-12):
            raise ValueError(
                f"grid point of modulus {worst:.6g} exceeds radius {self.radius:.6g}"
            )


def default_grid(radius: float, points: int = 25) -> DiskGrid:
    """0 plus concentric rings of 8 points out to the given radius.

    25 points means three full rings; other counts fill rings of 8 and put
    the remainder on the outermost ring.
    """
    if radius <= 0:
        raise ValueError("grid radius must be positive")
    if points < 1:
        raise ValueError("grid needs at least one point")
    pts: list[complex] = [0j]
    remaining = points - 1
    rings = math.ceil(remaining / 8) if remaining else 0
    placed = 0
    for ring in range(1, rings + 1):
        count = min(8, remaining - placed)
        r = radius * ring / rings
        for j in range(count):
            pts.append(r * cmath.exp(2j * math.pi * j / count))
        placed += count
    return DiskGrid(radius=radius, points=tuple(pts))


@dataclass(frozen=True)
class ResolventFamily:
    """Everything needed to evaluate G(lam) = tplus (I - lam s tplus)^-1."""

    pencil: Pencil
    g: GenInverse
    st_plus: np.ndarray
    st_norm: float
    radius: float


def _require_matching_inverse(p: Pencil, g: GenInverse) -> None:
    if not np.array_equal(g.t, p.t):
        raise ShapeMismatchError("the inverse was built for a different operator than pencil.t")


def build_family(p: Pencil, g: GenInverse) -> ResolventFamily:
    """Assemble the resolvent family and its disk of convergence.

    The radius is 1/||s @ tplus||_2, capped at RADIUS_CAP when the product
    vanishes (constant family, infinite radius in exact arithmetic).
    """
    _require_matching_inverse(p, g)
    st_plus = p.s @ g.tplus
    st_norm = op_norm2(st_plus)
    radius = RADIUS_CAP if st_norm <= RADIUS_EPS else min(RADIUS_CAP, 1.0 / st_norm)
    return ResolventFamily(pencil=p, g=g, st_plus=st_plus, st_norm=st_norm, radius=radius)


def _require_in_radius(f: ResolventFamily, lam: complex) -> None:
    growth = abs(lam) * f.st_norm
    if growth >= 1.0:
        raise OutOfRadiusError(
            f"|lam| * ||s tplus|| = {growth:.6g} >= 1, outside the disk of convergence",
            growth,
        )


def evaluate(f: ResolventFamily, lam: complex, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """G(lam) by a direct solve against (I - lam s tplus); G(0) is tplus."""
    lam = complex(lam)
    _require_in_radius(f, lam)
    m = f.pencil.shape[0]
    return solve_right(np.eye(m, dtype=np.complex128) - lam * f.st_plus, f.g.tplus, tol)


def evaluate_neumann(f: ResolventFamily, lam: complex, terms: int) -> np.ndarray:
    """Partial geometric sum of G(lam): sum_k lam^k tplus (s tplus)^k.

    Exists solely as an independent cross-check of :func:`evaluate`; the
    truncation error is bounded by ||tplus|| r^terms / (1-r) with
    r = |lam| ||s tplus||.
    """
    if terms < 1:
        raise ValueError("the partial sum needs at least one term")
    lam = complex(lam)
    _require_in_radius(f, lam)
    term = f.g.tplus
    total = term.copy()
    step = lam * f.st_plus
    for _ in range(terms - 1):
        term = term @ step
        total += term
    return total


def resolvent_identity_residual(
    f: ResolventFamily, lam: complex, mu: complex, tol: TolerancePolicy = DEFAULT_TOL
) -> float:
    """Residual of G(lam) - G(mu) = (lam - mu) G(lam) s G(mu), relative to ||tplus||."""
    g_lam = evaluate(f, lam, tol)
    g_mu = evaluate(f, mu, tol)
    return _identity_residual(f.pencil.s, f.g.tplus, g_lam, g_mu, complex(lam), complex(mu))


def _identity_residual(
    s: np.ndarray,
    scale: np.ndarray,
    g_lam: np.ndarray,
    g_mu: np.ndarray,
    lam: complex,
    mu: complex,
) -> float:
    deviation = g_lam - g_mu - (lam - mu) * (g_lam @ s @ g_mu)
    return relative_residual(deviation, scale)


def pair_indices(count: int, seed: int = 0) -> list[tuple[int, int]]:
    """Ordered index pairs for pairwise identity checks.

    All ordered pairs for up to PAIR_FULL_MAX_POINTS points; beyond that, a
    deterministic pseudorandom subsample of PAIR_SAMPLE_LIMIT pairs keeps the
    quadratic cost bounded.
    """
    if count <= PAIR_FULL_MAX_POINTS:
        return [(i, j) for i in range(count) for j in range(count)]
    rng = np.random.default_rng(seed)
    draws = rng.integers(0, count, size=(PAIR_SAMPLE_LIMIT, 2))
    return [(int(i), int(j)) for i, j in draws]


@dataclass(frozen=True)
class ResolventAxiomReport:
    """Per-point and pairwise residuals of the three resolvent conditions.

    inner_residuals:   (t-lam s) G (t-lam s) = t-lam s, per grid point
    outer_residuals:   G (t-lam s) G = G, per grid point
    max_identity_residual: worst pairwise resolvent-identity residual
    skipped: grid points outside the disk of convergence (reported, not fatal)
    Verdicts certify the sampled points only.
    """

    points: tuple[complex, ...]
    inner_residuals: tuple[float, ...]
    outer_residuals: tuple[float, ...]
    max_identity_residual: float
    worst_pair: tuple[complex, complex] | None
    skipped: tuple[complex, ...]
    ok: bool


def check_resolvent_axioms(
    f: ResolventFamily,
    grid: DiskGrid,
    tol: TolerancePolicy = DEFAULT_TOL,
    seed: int = 0,
) -> ResolventAxiomReport:
    """Verify both inverse axioms at every grid point and the identity on pairs."""
    usable: list[complex] = []
    skipped: list[complex] = []
    for lam in grid.points:
        if abs(lam) * f.st_norm < 1.0:
            usable.append(lam)
        else:
            skipped.append(lam)
    values = [evaluate(f, lam, tol) for lam in usable]
    inner: list[float] = []
    outer: list[float] = []
    for lam, g_lam in zip(usable, values):
        a = f.pencil.at(lam)
        ga = g_lam @ a
        inner.append(relative_residual(a @ ga - a, a))
        outer.append(relative_residual(ga @ g_lam - g_lam, g_lam))
    max_identity = 0.0
    worst_pair: tuple[complex, complex] | None = None
    for i, j in pair_indices(len(usable), seed):
        res = _identity_residual(
            f.pencil.s, f.g.tplus, values[i], values[j], usable[i], usable[j]
        )
        if res > max_identity:
            max_identity = res
            worst_pair = (usable[i], usable[j])
    worst_point = max(inner + outer, default=0.0)
    ok = not skipped and max(worst_point, max_identity) <= tol.residual_tol
    return ResolventAxiomReport(
        points=tuple(usable),
        inner_residuals=tuple(inner),
        outer_residuals=tuple(outer),
        max_identity_residual=max_identity,
        worst_pair=worst_pair,
        skipped=tuple(skipped),
        ok=ok,
    )


@dataclass(frozen=True)
class ProjectorPair:
    """The idempotents p = (t-lam s) G(lam) and q = G(lam) (t-lam s).

    p projects the codomain onto R(t-lam s) along N(tplus) and q projects
    the domain onto R(tplus) along N(t-lam s) whenever the family exists at
    lam; idempotency itself holds everywhere in the disk and its residuals
    are recorded.
    """

    p_lambda: np.ndarray
    q_lambda: np.ndarray
    p_idempotency: float
    q_idempotency: float


def projector_family(
    f: ResolventFamily, lam: complex, tol: TolerancePolicy = DEFAULT_TOL
) -> ProjectorPair:
    """Compute the projector pair of the family at one point."""
    g_lam = evaluate(f, lam, tol)
    a = f.pencil.at(lam)
    p = a @ g_lam
    q = g_lam @ a
    return ProjectorPair(
        p_lambda=p,
        q_lambda=q,
        p_idempotency=relative_residual(p @ p - p, p),
        q_idempotency=relative_residual(q @ q - q, q),
    )


@dataclass(frozen=True)
class ExistenceCertificate:
    """Per-point transversality verdicts over a grid; verdict is their conjunction."""

    verdict: bool
    per_point: tuple[tuple[complex, bool], ...]
    criterion: str


def existence_check(
    p: Pencil, g: GenInverse, grid: DiskGrid, tol: TolerancePolicy = DEFAULT_TOL
) -> ExistenceCertificate:
    """Test R(t - lam s) transversal to N(tplus) at every sampled point."""
    _require_matching_inverse(p, g)
    st_norm = op_norm2(p.s @ g.tplus)
    if grid.radius * st_norm > 1.0:
        warnings.warn(
            "grid radius exceeds the family's disk of convergence; "
            "verdicts outside it do not certify existence",
            stacklevel=2,
        )
    ker_plus = kernel_basis(g.tplus, tol)
    per_point = tuple(
        (lam, intersection_trivial(range_basis(p.at(lam), tol), ker_plus, tol))
        for lam in grid.points
    )
    return ExistenceCertificate(
        verdict=all(ok for _, ok in per_point),
        per_point=per_point,
        criterion="transversality",
    )


@dataclass(frozen=True)
class FixedComplementsReport:
    """Per-point verdicts that one fixed pair (e, f) splits kernel and range."""

    per_point: tuple[tuple[complex, bool, bool], ...]
    verdict: bool


def fixed_complements_check(
    p: Pencil, c: ComplementPair, grid: DiskGrid, tol: TolerancePolicy = DEFAULT_TOL
) -> FixedComplementsReport:
    """Check domain = N(t-lam s) + e and codomain = R(t-lam s) + f on the grid."""
    m, n = p.shape
    if c.e.ambient_dim != n or c.f.ambient_dim != m:
        raise ShapeMismatchError(
            f"complements have ambient ({c.e.ambient_dim}, {c.f.ambient_dim}), "
            f"pencil needs ({n}, {m})"
        )
    rows = []
    for lam in grid.points:
        a = p.at(lam)
        domain_ok = direct_sum_check(kernel_basis(a, tol), c.e, tol)
        codomain_ok = direct_sum_check(range_basis(a, tol), c.f, tol)
        rows.append((lam, domain_ok, codomain_ok))
    return FixedComplementsReport(
        per_point=tuple(rows),
        verdict=all(d and cdom for _, d, cdom in rows),
    )


@dataclass(frozen=True)
class DirectSumReport:
    """Per-point splitting verdicts for one generalized inverse.

    domain_splits:   domain = N(t-lam s) + R(tplus)
    codomain_splits: codomain = R(t-lam s) + N(tplus)

    The for-every-inverse flavor of the criterion is obtained by invoking
    this again with further inverses and conjoining the verdicts.
    """

    per_point: tuple[tuple[complex, bool, bool], ...]
    domain_verdict: bool
    codomain_verdict: bool
    verdict: bool


def direct_sum_criteria(
    p: Pencil, g: GenInverse, grid: DiskGrid, tol: TolerancePolicy = DEFAULT_TOL
) -> DirectSumReport:
    """Check both splittings induced by g at every sampled point."""
    _require_matching_inverse(p, g)
    rng_plus = range_basis(g.tplus, tol)
    ker_plus = kernel_basis(g.tplus, tol)
    rows = []
    for lam in grid.points:
        a = p.at(lam)
        domain_ok = direct_sum_check(kernel_basis(a, tol), rng_plus, tol)
        codomain_ok = direct_sum_check(range_basis(a, tol), ker_plus, tol)
        rows.append((lam, domain_ok, codomain_ok))
    domain_verdict = all(d for _, d, _ in rows)
    codomain_verdict = all(c for _, _, c in rows)
    return DirectSumReport(
        per_point=tuple(rows),
        domain_verdict=domain_verdict,
        codomain_verdict=codomain_verdict,
        verdict=domain_verdict and codomain_verdict,
    )


@dataclass(frozen=True)
class ContinuityPointReport:
    """Continuity diagnostics of a supplied inverse family at one point."""

    lam: complex
    deviation: float
    banach_product: float
    w_invertible: bool


@dataclass(frozen=True)
class ContinuityReport:
    """Continuity surrogate for a pointwise family of generalized inverses.

    max_deviation is max ||family(lam) - family(0)|| over the grid. The
    premises hold when every kernel projector stays Banach-close to the one
    at 0 (product of norms < 1) and every correction operator
    w = I + (p_lam - p_0) p_0 is invertible; under those premises the
    transversality verdict at family(0) must come out true, and
    conclusion_consistent records that implication.
    """

    per_point: tuple[ContinuityPointReport, ...]
    max_deviation: float
    premises_ok: bool
    existence_verdict: bool
    conclusion_consistent: bool


def continuity_check(
    p: Pencil,
    inverse_family: Callable[[complex], np.ndarray] | dict,
    grid: DiskGrid,
    tol: TolerancePolicy = DEFAULT_TOL,
) -> ContinuityReport:
    """Probe whether a pointwise inverse family is continuous enough at 0.

    Every family member is verified to be a generalized inverse of
    t - lam*s before use; a failing member raises InvalidFamilyError naming
    the offending point.
    """
    lookup = inverse_family.__getitem__ if isinstance(inverse_family, dict) else inverse_family
    n = p.shape[1]
    members: dict[complex, np.ndarray] = {}
    for lam in grid.points:
        b = as_matrix(lookup(lam))
        _, _, verdict = verify_gen_inverse(p.at(lam), b, tol)
        if verdict is not InverseVerdict.GENERALIZED:
            raise InvalidFamilyError(
                f"family member at lam={lam} is not a generalized inverse of t - lam*s", lam
            )
        members[lam] = b
    b0 = members[0]
    p0 = np.eye(n, dtype=np.complex128) - b0 @ p.at(0)
    p0_norm = op_norm2(p0)
    rows = []
    for lam in grid.points:
        b = members[lam]
        p_lam = np.eye(n, dtype=np.complex128) - b @ p.at(lam)
        w = np.eye(n, dtype=np.complex128) + (p_lam - p0) @ p0
        rows.append(
            ContinuityPointReport(
                lam=lam,
                deviation=op_norm2(b - b0),
                banach_product=op_norm2(p_lam - p0) * p0_norm,
                w_invertible=numerical_rank(w, tol) == n,
            )
        )
    premises_ok = all(r.banach_product < 1.0 and r.w_invertible for r in rows)
    cert = existence_check(p, user_supplied(p.t, b0, tol), grid, tol)
    return ContinuityReport(
        per_point=tuple(rows),
        max_deviation=max(r.deviation for r in rows),
        premises_ok=premises_ok,
        existence_verdict=cert.verdict,
        conclusion_consistent=(not premises_ok) or cert.verdict,
    )
