"""Generalized inverses of complex matrices.

A generalized inverse of T is any B with T B T = T (inner axiom) and
B T B = B (outer axiom). Each one determines the projectors P = T B onto
R(T) and Q = B T along N(T), and hence the direct sums

    domain  = N(T) + R(B),      codomain = N(B) + R(T).

Conversely a choice of complements (E for N(T), F for R(T)) determines a
unique generalized inverse with R(B) = E, N(B) = F; the Moore-Penrose
inverse is the choice of orthogonal complements.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InvalidComplementError, InvalidInverseError, ShapeMismatchError
from .linalg import (
    DEFAULT_TOL,
    SubspaceBasis,
    TolerancePolicy,
    _count_above_cutoff,
    as_matrix,
    direct_sum_check,
    kernel_basis,
    range_basis,
    relative_residual,
    solve,
    svd,
)


class InverseKind(enum.Enum):
    MOORE_PENROSE = "moore-penrose"
    FROM_COMPLEMENTS = "from-complements"
    USER_SUPPLIED = "user-supplied"


class InverseVerdict(enum.Enum):
    GENERALIZED = "generalized"
    INNER_ONLY = "inner-only"
    OUTER_ONLY = "outer-only"
    NEITHER = "neither"


@dataclass(frozen=True)
class GenInverse:
    """A verified pair (t, tplus) with its cached projectors.

    p = t @ tplus projects the codomain onto R(t); q = tplus @ t projects
    the domain along N(t). Construction goes through the factory functions,
    which reject candidates violating the inner or outer axiom.
    """

    t: np.ndarray
    tplus: np.ndarray
    p: np.ndarray
    q: np.ndarray
    kind: InverseKind


def verify_gen_inverse(
    t, b, tol: TolerancePolicy = DEFAULT_TOL
) -> tuple[float, float, InverseVerdict]:
    """Relative residuals of the inner and outer axioms, and the verdict.

    inner = ||t b t - t|| / ||t||, outer = ||b t b - b|| / ||b||, each with a
    tiny floor so the zero matrix is handled. The verdict compares both
    residuals to residual_tol.
    """
    t = as_matrix(t)
    b = as_matrix(b)
    if b.shape != (t.shape[1], t.shape[0]):
        raise ShapeMismatchError(
            f"inverse of a {t.shape} matrix must have shape {(t.shape[1], t.shape[0])}, got {b.shape}"
        )
    bt = b @ t
    inner = relative_residual(t @ bt - t, t)
    outer = relative_residual(bt @ b - b, b)
    inner_ok = inner <= tol.residual_tol
    outer_ok = outer <= tol.residual_tol
    if inner_ok and outer_ok:
        verdict = InverseVerdict.GENERALIZED
    elif inner_ok:
        verdict = InverseVerdict.INNER_ONLY
    elif outer_ok:
        verdict = InverseVerdict.OUTER_ONLY
    else:
        verdict = InverseVerdict.NEITHER
    return inner, outer, verdict


@dataclass(frozen=True)
class MPAxiomReport:
    """Residuals of the four Moore-Penrose axioms and the combined verdict."""

    inner_residual: float
    outer_residual: float
    p_hermitian_residual: float
    q_hermitian_residual: float
    ok: bool


def verify_mp_axioms(t, b, tol: TolerancePolicy = DEFAULT_TOL) -> MPAxiomReport:
    """Check t b t = t, b t b = b and Hermitian-ness of t b and b t."""
    t = as_matrix(t)
    b = as_matrix(b)
    if b.shape != (t.shape[1], t.shape[0]):
        raise ShapeMismatchError(
            f"inverse of a {t.shape} matrix must have shape {(t.shape[1], t.shape[0])}, got {b.shape}"
        )
    p = t @ b
    q = b @ t
    inner = relative_residual(p @ t - t, t)
    outer = relative_residual(q @ b - b, b)
    p_herm = relative_residual(p - p.conj().T, p)
    q_herm = relative_residual(q - q.conj().T, q)
    ok = max(inner, outer, p_herm, q_herm) <= tol.residual_tol
    return MPAxiomReport(inner, outer, p_herm, q_herm, ok)


def _checked(t: np.ndarray, b: np.ndarray, kind: InverseKind, tol: TolerancePolicy) -> GenInverse:
    inner, outer, verdict = verify_gen_inverse(t, b, tol)
    if verdict is not InverseVerdict.GENERALIZED:
        raise InvalidInverseError(
            f"candidate fails the generalized-inverse axioms "
            f"(inner residual {inner:.3e}, outer residual {outer:.3e})"
        )
    return GenInverse(t=t, tplus=b, p=t @ b, q=b @ t, kind=kind)


def pinv_matrix(t, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose inverse as a bare matrix, via SVD with the shared rank cutoff.

    Singular values at or below the cutoff are zeroed, never inverted.
    """
    t = as_matrix(t)
    m, n = t.shape
    if min(m, n) == 0 or not np.any(t):
        return np.zeros((n, m), dtype=np.complex128)
    u, s, vh = svd(t)
    r = _count_above_cutoff(s, t.shape, tol)
    inv_s = np.zeros(min(m, n), dtype=np.float64)
    inv_s[:r] = 1.0 / s[:r]
    return (vh.conj().T[:, : min(m, n)] * inv_s) @ u.conj().T[: min(m, n), :]


def mp_inverse(t, tol: TolerancePolicy = DEFAULT_TOL) -> GenInverse:
    """The Moore-Penrose inverse of t, verified against all axioms."""
    t = as_matrix(t)
    return _checked(t, pinv_matrix(t, tol), InverseKind.MOORE_PENROSE, tol)


def user_supplied(t, b, tol: TolerancePolicy = DEFAULT_TOL) -> GenInverse:
    """Wrap a caller-provided inverse, rejecting it unless both axioms hold."""
    t = as_matrix(t)
    b = as_matrix(b)
    return _checked(t, b, InverseKind.USER_SUPPLIED, tol)


@dataclass(frozen=True)
class ComplementPair:
    """Complements (e, f) of the kernel and range of some matrix.

    e lives in the domain and complements N(t); f lives in the codomain and
    complements R(t). Validity is relative to t and is checked where the
    pair is consumed.
    """

    e: SubspaceBasis
    f: SubspaceBasis


def geninv_from_complements(
    t, c: ComplementPair, tol: TolerancePolicy = DEFAULT_TOL
) -> GenInverse:
    """The generalized inverse determined by complements of N(t) and R(t).

    t restricted to e is a bijection onto R(t); the inverse composes that
    bijection's inverse with the projector onto R(t) along f, yielding the
    unique generalized inverse with range e and kernel f. Solving the square
    restricted system avoids ever inverting the rank-deficient t itself.
    """
    t = as_matrix(t)
    m, n = t.shape
    ker = kernel_basis(t, tol)
    rng = range_basis(t, tol)
    if c.e.ambient_dim != n or c.f.ambient_dim != m:
        raise ShapeMismatchError(
            f"complements have ambient ({c.e.ambient_dim}, {c.f.ambient_dim}), "
            f"operator needs ({n}, {m})"
        )
    if not direct_sum_check(ker, c.e, tol):
        raise InvalidComplementError("domain split failed: N(t) + e is not the whole domain")
    if not direct_sum_check(rng, c.f, tol):
        raise InvalidComplementError("codomain split failed: R(t) + f is not the whole codomain")
    r = rng.dim
    if r == 0:
        tplus = np.zeros((n, m), dtype=np.complex128)
    else:
        # coordinates of the projector onto R(t) along f: top block of [R|F]^-1
        stacked = np.hstack([rng.basis, c.f.basis])
        coords = solve(stacked, np.eye(m, dtype=np.complex128), tol)[:r]
        # t restricted to e, expressed in R(t) coordinates; square by the split
        restricted = rng.basis.conj().T @ (t @ c.e.basis)
        tplus = c.e.basis @ solve(restricted, coords, tol)
    return _checked(t, tplus, InverseKind.FROM_COMPLEMENTS, tol)


def complements_of(g: GenInverse, tol: TolerancePolicy = DEFAULT_TOL) -> ComplementPair:
    """Read the complements (R(tplus), N(tplus)) back off a generalized inverse."""
    return ComplementPair(e=range_basis(g.tplus, tol), f=kernel_basis(g.tplus, tol))
