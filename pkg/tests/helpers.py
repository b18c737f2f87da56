"""Shared random-instance generators for the test suite.

Structured pencils are built in a common singular frame T = U D V^H,
S = U E V^H so that the singular values of t - lam*s are |d_i - lam*e_i|
and every rank decision on the sampled grids is provably far from the
cutoff:

  constant support  supp(e) inside supp(d): kernel and range never move,
                    so the resolvent family exists on the whole disk.
  switched support  one extra entry of e sits on a zero of d: the rank
                    jumps at every nonzero lam, so every criterion fails.

Generic Gaussian instances (full-rank t) are also clean: inside the disk
of convergence the rank can neither drop (outer-inverse argument) nor
exceed min(m, n).
"""

from __future__ import annotations

import numpy as np

from genresolvent import (
    ComplementPair,
    DEFAULT_TOL,
    GenInverse,
    Pencil,
    geninv_from_complements,
    kernel_basis,
    range_basis,
    subspace_from_columns,
)


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(complex_gaussian(rng, (n, n)))
    # fix the phase ambiguity so the factor is a deterministic function of the draw
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _phases(rng: np.random.Generator, count: int) -> np.ndarray:
    return np.exp(2j * np.pi * rng.uniform(0.0, 1.0, count))


def rect_diag(m: int, n: int, values: np.ndarray) -> np.ndarray:
    d = np.zeros((m, n), dtype=np.complex128)
    k = len(values)
    d[np.arange(k), np.arange(k)] = values
    return d


def framed_pencil(
    rng: np.random.Generator,
    m: int,
    n: int,
    rank: int,
    switched: bool = False,
) -> Pencil:
    """Pencil in a shared singular frame; see the module docstring."""
    k = min(m, n)
    assert 0 <= rank <= k
    assert not (switched and rank >= k)
    u = unitary(rng, m)
    v = unitary(rng, n)
    d = np.zeros(k, dtype=np.complex128)
    e = np.zeros(k, dtype=np.complex128)
    d[:rank] = rng.uniform(0.3, 2.0, rank) * _phases(rng, rank)
    e[:rank] = rng.uniform(0.2, 1.0, rank) * _phases(rng, rank)
    if switched:
        e[rank] = rng.uniform(0.5, 1.0) * _phases(rng, 1)[0]
    t = u @ rect_diag(m, n, d) @ v.conj().T
    s = u @ rect_diag(m, n, e) @ v.conj().T
    return Pencil(t, s)


def generic_full_pencil(rng: np.random.Generator, m: int, n: int) -> Pencil:
    """Full-rank Gaussian t with an unrelated Gaussian s."""
    return Pencil(complex_gaussian(rng, (m, n)), complex_gaussian(rng, (m, n)))


def random_rank_matrix(rng: np.random.Generator, m: int, n: int, rank: int) -> np.ndarray:
    """Matrix of exact numerical rank with singular values in [0.3, 2]."""
    u = unitary(rng, m)
    v = unitary(rng, n)
    d = np.zeros(min(m, n), dtype=np.complex128)
    d[:rank] = rng.uniform(0.3, 2.0, rank) * _phases(rng, rank)
    return u @ rect_diag(m, n, d) @ v.conj().T


def random_complement_inverse(
    rng: np.random.Generator, t: np.ndarray, scale: float = 0.3, tol=DEFAULT_TOL
) -> GenInverse:
    """A generalized inverse from randomly tilted complements of N(t), R(t)."""
    ker = kernel_basis(t, tol)
    row = range_basis(t.conj().T, tol)
    left_null = kernel_basis(t.conj().T, tol)
    rng_basis = range_basis(t, tol)
    r = rng_basis.dim
    n = t.shape[1]
    m = t.shape[0]
    e_cols = row.basis + ker.basis @ (scale * complex_gaussian(rng, (n - r, r)))
    f_cols = left_null.basis + rng_basis.basis @ (scale * complex_gaussian(rng, (r, m - r)))
    pair = ComplementPair(
        e=subspace_from_columns(e_cols, tol),
        f=subspace_from_columns(f_cols, tol),
    )
    return geninv_from_complements(t, pair, tol)


def perturbation_instance(rng: np.random.Generator, case: str):
    """A base matrix plus a perturbed one, with smallness < 0.9.

    'aligned'  perturbation inside the singular frame's support: the rank
               and transversality survive.
    'switched' perturbation switches on a new support entry: they break.
    'full'     full-rank base with a generic perturbation: survival is
               automatic because the smallest singular value cannot reach 0.
    """
    m = int(rng.integers(2, 7))
    n = int(rng.integers(2, 7))
    k = min(m, n)
    if case == "full":
        t = random_rank_matrix(rng, m, n, k)
        sigma_min = np.linalg.svd(t, compute_uv=False)[-1]
        delta = complex_gaussian(rng, (m, n))
        delta *= rng.uniform(0.1, 0.85) * sigma_min / np.linalg.svd(delta, compute_uv=False)[0]
        return t, t + delta
    rank = int(rng.integers(1, k))
    u = unitary(rng, m)
    v = unitary(rng, n)
    d = np.zeros(k, dtype=np.complex128)
    d[:rank] = rng.uniform(0.3, 2.0, rank) * _phases(rng, rank)
    t = u @ rect_diag(m, n, d) @ v.conj().T
    sigma_min = np.abs(d[:rank]).min()
    delta_vals = np.zeros(k, dtype=np.complex128)
    if case == "aligned":
        delta_vals[:rank] = (
            rng.uniform(0.05, 0.25, rank) * sigma_min * _phases(rng, rank) / np.sqrt(rank)
        )
    elif case == "switched":
        delta_vals[rank] = rng.uniform(0.1, 0.8) * sigma_min * _phases(rng, 1)[0]
    else:
        raise ValueError(f"unknown case {case!r}")
    return t, t + u @ rect_diag(m, n, delta_vals) @ v.conj().T
