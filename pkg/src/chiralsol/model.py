"""Chiral model fields, the diagonal seed solution, and residual checks.

Conventions.  Light-cone coordinates are x+ = (t + x)/2 and
x- = (t - x)/2, with derivatives d+- = (d_t +- d_x)/2 taken directly in
x+- by central differences.  A solution state carries a group-valued
field g(x), currents j+(x) and j-(x), and a wave function V(lam, x)
solving the linear system

    d+ V = j+ V / (1 - lam),      d- V = j- V / (1 + lam),

with V(0, x) = g(x).  The spectral parameter must stay away from the
poles at +1 and -1.  The equations of motion are current conservation
d+ j- + d- j+ = 0 together with zero curvature
d- j+ - d+ j- + [j+, j-] = 0.

Field evaluators are batched: a SpacetimePoint may hold scalars or
same-shape arrays, and evaluators return arrays of shape
batch + (n, n).

The concrete seed here is the diagonal SU(2) solution with constant
commuting currents j+ = diag(i p, -i p), j- = diag(i q, -i q) and

    V(lam, x) = diag(w, 1/w),  w = exp i(p x+ / (1 - lam) + q x- / (1 + lam)).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .matcore import DEFAULT_TOLERANCES, Tolerances, frobenius_norm
from .report import ResidualEntry, ResidualReport, rel_residual, __version__

__all__ = [
    "SpacetimePoint",
    "lightcone",
    "SpectralPoleError",
    "ChiralState",
    "SeedSolution",
    "make_seed_su2",
    "Grid",
    "DEFAULT_GRID",
    "deriv_lightcone",
    "lax_residual",
    "eom_residual",
    "column_solution",
    "ResidualEntry",
    "ResidualReport",
]

_POLE_TOL = 1e-12


class SpacetimePoint(NamedTuple):
    """Light-cone coordinates; fields may be scalars or arrays."""

    xplus: object
    xminus: object

    def shifted(self, direction: str, h: float) -> "SpacetimePoint":
        if direction == "plus":
            return SpacetimePoint(np.asarray(self.xplus) + h, self.xminus)
        if direction == "minus":
            return SpacetimePoint(self.xplus, np.asarray(self.xminus) + h)
        raise ValueError(f"direction must be 'plus' or 'minus', got {direction!r}")


def lightcone(t, x) -> SpacetimePoint:
    """SpacetimePoint from lab coordinates (t, x)."""
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    return SpacetimePoint((t + x) / 2, (t - x) / 2)


class SpectralPoleError(ValueError):
    """Spectral parameter hit a pole of the linear system (lam = +-1)."""


def check_spectral_param(lam) -> complex:
    lam = complex(lam)
    if abs(lam - 1) < _POLE_TOL or abs(lam + 1) < _POLE_TOL:
        raise SpectralPoleError(f"spectral parameter {lam} is at a pole (+-1)")
    return lam


@dataclass(frozen=True)
class ChiralState:
    """A solution state given by its four evaluators."""

    n: int
    g: Callable[[SpacetimePoint], np.ndarray]
    j_plus: Callable[[SpacetimePoint], np.ndarray]
    j_minus: Callable[[SpacetimePoint], np.ndarray]
    V: Callable[[complex, SpacetimePoint], np.ndarray]


def _batch_shape(x: SpacetimePoint):
    return np.broadcast_shapes(np.shape(x.xplus), np.shape(x.xminus))


def _diag2(a, d) -> np.ndarray:
    a, d = np.broadcast_arrays(np.asarray(a, complex), np.asarray(d, complex))
    out = np.zeros(a.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = a
    out[..., 1, 1] = d
    return out


@dataclass(frozen=True)
class SeedSolution:
    """Diagonal SU(2) seed with constant currents."""

    p: float
    q: float
    n: int = 2

    def phase(self, x: SpacetimePoint):
        return self.p * np.asarray(x.xplus) + self.q * np.asarray(x.xminus)

    def g(self, x: SpacetimePoint) -> np.ndarray:
        w = np.exp(1j * self.phase(x))
        return _diag2(w, 1 / w)

    def j_plus(self, x: SpacetimePoint) -> np.ndarray:
        shape = _batch_shape(x)
        out = np.zeros(shape + (2, 2), dtype=complex)
        out[..., 0, 0] = 1j * self.p
        out[..., 1, 1] = -1j * self.p
        return out

    def j_minus(self, x: SpacetimePoint) -> np.ndarray:
        shape = _batch_shape(x)
        out = np.zeros(shape + (2, 2), dtype=complex)
        out[..., 0, 0] = 1j * self.q
        out[..., 1, 1] = -1j * self.q
        return out

    def V(self, lam, x: SpacetimePoint) -> np.ndarray:
        lam = check_spectral_param(lam)
        w = np.exp(
            1j
            * (
                self.p * np.asarray(x.xplus) / (1 - lam)
                + self.q * np.asarray(x.xminus) / (1 + lam)
            )
        )
        return _diag2(w, 1 / w)


def make_seed_su2(p: float, q: float) -> SeedSolution:
    p = float(p)
    q = float(q)
    if p == 0 or q == 0:
        raise ValueError("seed momenta p, q must be nonzero")
    return SeedSolution(p, q)


@dataclass(frozen=True)
class Grid:
    """Rectangular (t, x) sample grid with the finite-difference step."""

    t_min: float = -5.0
    t_max: float = 5.0
    x_min: float = -5.0
    x_max: float = 5.0
    nt: int = 41
    nx: int = 41
    h: float = 1e-4

    def __post_init__(self):
        if self.nt < 1 or self.nx < 1:
            raise ValueError("grid needs at least one point per axis")
        if self.t_max < self.t_min or self.x_max < self.x_min:
            raise ValueError("grid bounds out of order")
        if not (self.h > 0):
            raise ValueError("finite-difference step must be positive")

    def axes(self):
        return (
            np.linspace(self.t_min, self.t_max, self.nt),
            np.linspace(self.x_min, self.x_max, self.nx),
        )

    def points(self) -> SpacetimePoint:
        """All grid points as one batched SpacetimePoint, t-major."""
        t, x = self.axes()
        tt, xx = np.meshgrid(t, x, indexing="ij")
        return lightcone(tt, xx)

    def meta(self) -> dict:
        return {
            "t": [self.t_min, self.t_max, self.nt],
            "x": [self.x_min, self.x_max, self.nx],
            "h": self.h,
        }


DEFAULT_GRID = Grid()


def deriv_lightcone(f, x: SpacetimePoint, direction: str, h: float) -> np.ndarray:
    """Central O(h^2) difference of an evaluator along x+ or x-."""
    if not (h > 0):
        raise ValueError("step must be positive")
    return (f(x.shifted(direction, h)) - f(x.shifted(direction, -h))) / (2 * h)


def _worst_point(resid_norms: np.ndarray, x: SpacetimePoint):
    flat = np.argmax(resid_norms)
    idx = np.unravel_index(flat, resid_norms.shape) if resid_norms.ndim else ()
    xp = np.broadcast_to(np.asarray(x.xplus, dtype=float), resid_norms.shape)
    xm = np.broadcast_to(np.asarray(x.xminus, dtype=float), resid_norms.shape)
    return {
        "xplus": float(xp[idx]) if resid_norms.ndim else float(xp),
        "xminus": float(xm[idx]) if resid_norms.ndim else float(xm),
    }


def lax_residual(
    state,
    lam,
    grid: Grid,
    h: float | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> ResidualReport:
    """Finite-difference residual of the linear system on a grid.

    Checks d+- V - j+- V / (1 -+ lam) with the state's own currents at
    every grid point and reports the worst Frobenius norm, one entry per
    light-cone direction.
    """
    lam = check_spectral_param(lam)
    h = grid.h if h is None else h
    x = grid.points()
    v = state.V(lam, x)
    report = ResidualReport()
    for direction, j_eval, denom in (
        ("plus", state.j_plus, 1 - lam),
        ("minus", state.j_minus, 1 + lam),
    ):
        dv = deriv_lightcone(lambda y: state.V(lam, y), x, direction, h)
        resid = dv - j_eval(x) @ v / denom
        norms = np.atleast_1d(frobenius_norm(resid))
        value = float(np.max(norms))
        report.add(
            f"lax.{direction}",
            value,
            tolerances.derivative_cap,
            lam={"re": lam.real, "im": lam.imag},
            h=h,
            worst=_worst_point(np.asarray(frobenius_norm(resid)), x),
        )
    return report


def eom_residual(
    j_plus,
    j_minus,
    grid: Grid,
    h: float | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> ResidualReport:
    """Conservation and zero-curvature residuals of a current pair."""
    h = grid.h if h is None else h
    x = grid.points()
    dp_jm = deriv_lightcone(j_minus, x, "plus", h)
    dm_jp = deriv_lightcone(j_plus, x, "minus", h)
    jp = j_plus(x)
    jm = j_minus(x)
    conservation = dp_jm + dm_jp
    curvature = dm_jp - dp_jm + (jp @ jm - jm @ jp)
    report = ResidualReport()
    for name, resid in (("conservation", conservation), ("curvature", curvature)):
        norms = np.asarray(frobenius_norm(resid))
        report.add(
            f"eom.{name}",
            float(np.max(np.atleast_1d(norms))),
            tolerances.derivative_cap,
            h=h,
            worst=_worst_point(norms, x),
        )
    return report


def column_solution(state, lam, ket) -> Callable[[SpacetimePoint], np.ndarray]:
    """Column solution V(lam, x) @ ket of the linear system.

    The returned evaluator maps a SpacetimePoint to an array of shape
    batch + (n,).
    """
    lam = check_spectral_param(lam)
    ket = np.asarray(ket, dtype=complex)
    if ket.shape != (state.n,):
        raise ValueError(f"ket must have shape ({state.n},), got {ket.shape}")
    if not np.any(ket):
        raise ValueError("ket must be nonzero")

    def evaluate(x: SpacetimePoint) -> np.ndarray:
        return state.V(lam, x) @ ket

    return evaluate
