"""Dense complex matrix helpers for small fixed-size problems.

Everything operates on numpy arrays of shape (..., n, n) with complex
entries.  Leading axes are batch axes and broadcast, so a field sampled
on a spacetime grid is just one array and every operation stays
vectorized.  Matrices here are tiny (n of a few, block assemblies a few
times that), so there is no sparse or structured path and none is
planned.

Inversion goes through LU with partial pivoting.  A matrix counts as
singular when some pivot magnitude falls below ``pivot`` times the
largest absolute row sum; that is the one gate behind every inverse in
the package, so "det M = 0" failures surface as SingularMatrixError
instead of garbage values downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "SingularMatrixError",
    "multiply",
    "invert",
    "adjoint",
    "frobenius_norm",
    "det",
    "cond_estimate",
    "identity_like",
]


@dataclass(frozen=True)
class Tolerances:
    """Central numeric gates.  Every check in the package cites these.

    inv             self-check ceiling for ||inv(a) a - I||
    residual        generic residual ceiling
    pivot           LU pivot floor, relative to the max absolute row sum
    identity        quasideterminant identity residuals
    algebraic       derivative-free invariants (unitarity, traces, ...)
    structural      values that hold to rounding
    derivative_cap  finite-difference residual cap at the default step
    asymptotic      large-|r| limit comparisons
    cond_reject     condition estimate above which random draws resample
    cond_warn       condition estimate above which chain evaluation warns
    rel_floor       denominator floor for relative residuals
    """

    inv: float = 1e-10
    residual: float = 1e-8
    pivot: float = 1e-12
    identity: float = 1e-9
    algebraic: float = 1e-10
    structural: float = 1e-12
    derivative_cap: float = 1e-5
    asymptotic: float = 1e-8
    cond_reject: float = 1e4
    cond_warn: float = 1e6
    rel_floor: float = 1e-30


DEFAULT_TOLERANCES = Tolerances()


class SingularMatrixError(ValueError):
    """Matrix singular to tolerance: an LU pivot fell below the gate."""


def _as_square(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise ValueError(f"expected square matrices, got shape {a.shape}")
    return a


def identity_like(a) -> np.ndarray:
    """Identity matrix broadcast to the batch shape of ``a``."""
    a = _as_square(a)
    n = a.shape[-1]
    out = np.zeros(a.shape, dtype=complex)
    out[...] = np.eye(n)
    return out


def multiply(a, b) -> np.ndarray:
    a = _as_square(a)
    b = _as_square(b)
    if a.shape[-1] != b.shape[-1]:
        raise ValueError(f"size mismatch: {a.shape[-1]} vs {b.shape[-1]}")
    return a @ b


def adjoint(a) -> np.ndarray:
    """Conjugate transpose on the last two axes."""
    a = np.asarray(a, dtype=complex)
    if a.ndim < 2:
        raise ValueError(f"expected matrices, got shape {a.shape}")
    return np.conj(np.swapaxes(a, -1, -2))


def frobenius_norm(a) -> np.ndarray | float:
    """Frobenius norm over the last two axes; batch shape is preserved."""
    a = np.asarray(a)
    if a.ndim < 2:
        raise ValueError("expected at least a 2-d array")
    out = np.sqrt(np.sum(np.abs(a) ** 2, axis=(-2, -1)))
    return float(out) if out.ndim == 0 else out


def _lu_pivots(a: np.ndarray):
    """Gaussian elimination with partial pivoting over the batch.

    Returns (udiag, parity) where udiag holds the n pivots of each
    matrix and parity the sign of the row permutation.  Zero pivots are
    left in place (elimination continues with a guard) so callers can
    apply their own singularity gate.
    """
    a = _as_square(a)
    batch = a.shape[:-2]
    n = a.shape[-1]
    work = a.reshape((-1, n, n)).copy()
    nb = work.shape[0]
    bidx = np.arange(nb)
    udiag = np.empty((nb, n), dtype=complex)
    parity = np.ones(nb)
    for k in range(n):
        p = np.argmax(np.abs(work[:, k:, k]), axis=1) + k
        swapped = p != k
        if swapped.any():
            row_k = work[bidx, k, :].copy()
            work[bidx, k, :] = work[bidx, p, :]
            work[bidx, p, :] = row_k
            parity[swapped] = -parity[swapped]
        piv = work[:, k, k].copy()
        udiag[:, k] = piv
        if k + 1 < n:
            safe = np.where(piv == 0, 1.0, piv)
            fac = work[:, k + 1 :, k] / safe[:, None]
            work[:, k + 1 :, k + 1 :] -= fac[:, :, None] * work[:, None, k, k + 1 :].reshape(nb, 1, n - k - 1)
    return udiag.reshape(batch + (n,)), parity.reshape(batch)


def _row_scale(a: np.ndarray) -> np.ndarray:
    # max absolute row sum, the scale the pivot gate is relative to
    return np.max(np.sum(np.abs(a), axis=-1), axis=-1)


def invert(a, tolerances: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Inverse over the batch, gated by the LU pivot floor."""
    a = _as_square(a)
    udiag, _ = _lu_pivots(a)
    scale = _row_scale(a)
    bad = np.min(np.abs(udiag), axis=-1) <= tolerances.pivot * scale
    if np.any(bad):
        count = int(np.count_nonzero(bad))
        raise SingularMatrixError(
            f"{count} matrix(es) singular to tolerance "
            f"(pivot below {tolerances.pivot:g} x max row sum)"
        )
    return np.linalg.inv(a)


def det(a) -> np.ndarray | complex:
    """Determinant over the batch via the pivoted LU factorization."""
    udiag, parity = _lu_pivots(a)
    out = parity * np.prod(udiag, axis=-1)
    return complex(out) if np.ndim(out) == 0 else out


def cond_estimate(a) -> float:
    """Cheap conditioning estimate ||a||_F ||inv(a)||_F for one matrix.

    Returns inf when the matrix fails the singularity gate.  Used for
    rejection sampling in randomized checks; not a tight 2-norm value.
    """
    a = _as_square(a)
    if a.ndim != 2:
        raise ValueError("cond_estimate takes a single matrix")
    try:
        inv = invert(a)
    except SingularMatrixError:
        return float("inf")
    return float(frobenius_norm(a) * frobenius_norm(inv))
