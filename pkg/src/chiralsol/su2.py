"""Closed-form SU(2) soliton fields and asymptotic limits.

For the diagonal seed with rates p, q and paired spectral data on the
unit circle at angle theta, the dressing matrix of one step collapses
to elementary functions of two linear profiles

    r = alpha x+ + beta x-,    s = p x+ + q x-,

with alpha, beta fixed by theta.  This module provides those closed
forms (one step exactly, two steps as a published-style rational
expression kept for regression comparison), the asymptotic diagonal
limits as r -> +-infinity, and helpers to pick spacetime points with
prescribed r values.

The one-step current j- below differs from a commonly printed variant
by the sign of its off-diagonal entries; the form here is the one that
matches the dressing construction to machine precision.  The two-step
rational expression does not match the construction anywhere we
evaluated it; it is exposed only so the comparison can be run and its
deviations reported.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .darboux import DarbouxChain, make_chain, su2_spectral
from .model import SpacetimePoint, make_seed_su2

__all__ = [
    "SolitonParams",
    "TwoSolitonParams",
    "RSProfile",
    "profile_coefficients",
    "rs_profile",
    "OneSolitonFields",
    "one_soliton",
    "TwoSolitonPrinted",
    "two_soliton_printed",
    "soliton_chain",
    "asymptotic_factors",
    "point_at_r",
]

_THETA_GUARD = 1e-8


def _check_theta(theta: float, guard: float = _THETA_GUARD) -> float:
    theta = float(theta)
    if abs(np.sin(theta)) < guard:
        raise ValueError(f"theta = {theta} too close to a multiple of pi")
    return theta


def _check_rate(value: float, name: str) -> float:
    value = float(value)
    if value == 0:
        raise ValueError(f"{name} must be nonzero")
    return value


@dataclass(frozen=True)
class SolitonParams:
    """Seed rates and the spectral angle of a single dressing step."""

    p: float
    q: float
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "p", _check_rate(self.p, "p"))
        object.__setattr__(self, "q", _check_rate(self.q, "q"))
        object.__setattr__(self, "theta", _check_theta(self.theta))


@dataclass(frozen=True)
class TwoSolitonParams:
    """Rates and two distinct spectral angles; angles whose unit-circle
    points collide (theta2 = +-theta1 mod 2 pi) make the construction
    singular and are rejected."""

    p: float
    q: float
    theta1: float
    theta2: float

    def __post_init__(self):
        object.__setattr__(self, "p", _check_rate(self.p, "p"))
        object.__setattr__(self, "q", _check_rate(self.q, "q"))
        object.__setattr__(self, "theta1", _check_theta(self.theta1))
        object.__setattr__(self, "theta2", _check_theta(self.theta2))
        for combo in (self.theta1 - self.theta2, self.theta1 + self.theta2):
            if abs(np.sin(combo / 2)) < _THETA_GUARD:
                raise ValueError(
                    "spectral angles collide: theta2 must differ from +-theta1 mod 2 pi"
                )

    def first(self) -> SolitonParams:
        return SolitonParams(self.p, self.q, self.theta1)

    def second(self) -> SolitonParams:
        return SolitonParams(self.p, self.q, self.theta2)


class RSProfile(NamedTuple):
    """The two linear profiles entering every closed form."""

    r: np.ndarray
    s: np.ndarray


def profile_coefficients(p: float, q: float, theta: float) -> tuple[float, float]:
    """Coefficients (alpha, beta) of r = alpha x+ + beta x-.

    alpha = i (1/(1 - mu) - 1/(1 - conj mu)) p and beta the analogue
    with 1 + mu and q, for mu = exp(i theta); both are exactly real.
    """
    mu = np.exp(1j * float(theta))
    alpha = 1j * (1 / (1 - mu) - 1 / (1 - np.conj(mu))) * p
    beta = 1j * (1 / (1 + mu) - 1 / (1 + np.conj(mu))) * q
    for value in (alpha, beta):
        if abs(value.imag) > 1e-12:
            raise AssertionError("profile coefficient came out complex")
    return float(alpha.real), float(beta.real)


def rs_profile(params: SolitonParams, x: SpacetimePoint) -> RSProfile:
    alpha, beta = profile_coefficients(params.p, params.q, params.theta)
    xp = np.asarray(x.xplus, dtype=float)
    xm = np.asarray(x.xminus, dtype=float)
    return RSProfile(r=alpha * xp + beta * xm, s=params.p * xp + params.q * xm)


class OneSolitonFields(NamedTuple):
    """Closed-form field values of one dressing step at given points."""

    s_matrix: np.ndarray
    g: np.ndarray
    j_plus: np.ndarray
    j_minus: np.ndarray


def _su2_matrix(top_left, top_right) -> np.ndarray:
    """[[w, z], [-conj z, conj w]] with batch dims leading."""
    w = np.asarray(top_left, dtype=complex)
    z = np.asarray(top_right, dtype=complex)
    row1 = np.stack([w, z], axis=-1)
    row2 = np.stack([-np.conj(z), np.conj(w)], axis=-1)
    return np.stack([row1, row2], axis=-2)


def one_soliton(params: SolitonParams, x: SpacetimePoint) -> OneSolitonFields:
    """All fields of one dressing step in elementary functions.

    S has diagonal cos theta +- i sin theta tanh r and off-diagonal
    -i sin theta sech r e^{+-is}; g is -S times the diagonal seed; the
    currents keep the [[w, z], [-conj z, conj w]] shape with

        a = i p (1 - (1 + cos theta) sech^2 r)
        b = -i p ((1 + cos theta) tanh r + i sin theta) sech r e^{is}
        c = i q (1 - (1 - cos theta) sech^2 r)
        d = -i q ((1 - cos theta) tanh r - i sin theta) sech r e^{is}
    """
    r, s = rs_profile(params, x)
    ct, st = np.cos(params.theta), np.sin(params.theta)
    th = np.tanh(r)
    sch = 1.0 / np.cosh(r)
    phase = np.exp(1j * s)

    s11 = ct + 1j * st * th
    s12 = -1j * st * sch * phase
    s21 = -1j * st * sch * np.conj(phase)
    s22 = ct - 1j * st * th
    s_matrix = np.stack(
        [np.stack([s11, s12], axis=-1), np.stack([s21, s22], axis=-1)],
        axis=-2,
    ).astype(complex)

    x_entry = -(ct + 1j * st * th)
    y_entry = 1j * st * sch * phase
    g_seed = np.zeros(np.broadcast(r, s).shape + (2, 2), dtype=complex)
    g_seed[..., 0, 0] = phase
    g_seed[..., 1, 1] = np.conj(phase)
    g = _su2_matrix(x_entry, y_entry) @ g_seed

    a = 1j * params.p * (1 - (1 + ct) * sch ** 2)
    b = -1j * params.p * ((1 + ct) * th + 1j * st) * sch * phase
    c = 1j * params.q * (1 - (1 - ct) * sch ** 2)
    d = -1j * params.q * ((1 - ct) * th - 1j * st) * sch * phase
    return OneSolitonFields(
        s_matrix=s_matrix,
        g=g,
        j_plus=_su2_matrix(a, b),
        j_minus=_su2_matrix(c, d),
    )


class TwoSolitonPrinted(NamedTuple):
    """Published-style two-step entries and their shared denominator."""

    x_entry: np.ndarray
    y_entry: np.ndarray
    denominator: np.ndarray


def two_soliton_printed(params: TwoSolitonParams, x: SpacetimePoint) -> TwoSolitonPrinted:
    """The rational two-step expression, transcribed verbatim.

    Kept as a regression target only: it disagrees with the dressing
    construction (it does not even keep |X|^2 + |Y|^2 = 1), so callers
    should treat deviations as data, not as an engine bug.  Warns when
    the shared denominator is close to zero.
    """
    r1, s1 = rs_profile(params.first(), x)
    r2, s2 = rs_profile(params.second(), x)
    c1, s1t = np.cos(params.theta1), np.sin(params.theta1)
    c2, s2t = np.cos(params.theta2), np.sin(params.theta2)
    ch1, sh1, th1 = np.cosh(r1), np.sinh(r1), np.tanh(r1)
    ch2, sh2, th2 = np.cosh(r2), np.sinh(r2), np.tanh(r2)
    sech1 = 1.0 / ch1
    sech2 = 1.0 / ch2

    denom = s2t * s1t * (sh2 * sh1 - np.cos(s2 - s1)) - (1 - c2 * c1) * ch1 * ch2
    if np.any(np.abs(denom) < 1e-6):
        warnings.warn(
            "two-step denominator nearly vanishes at some points",
            RuntimeWarning,
            stacklevel=2,
        )

    a_term = (
        c2 * ch2 * ch1
        + 1j * sh2 * sh1 * (s2t - s1t)
        - 1j * s2t * s1t ** 2 * sh1 * sech1
        - c2 * (c1 * ch1 - 1j * s1t * sh1) * (c2 * ch2 + 1j * s2t * sh2)
    )
    b_term = s2t * s1t * (
        (c1 - 1j * s1t * th1) * np.exp(1j * (s1 - s2))
        + (-2 * c2 + c1 + 1j * s1t * th1) * np.exp(-1j * (s1 - s2))
    )
    c_term = (
        -1j * s2t * ch1
        * (1 - (c1 + 1j * s1t * th1) * (2 * c2 - c1 - 1j * s1t * th1))
        * np.exp(1j * s1)
        + 1j * s1t * ch2
        * (1 + (c2 + 1j * s2t * th2) * (2 * c1 - c2 - 1j * s2t * th2))
        * np.exp(1j * s2)
        + 1j * s1t * s2t * np.exp(1j * s1)
        * (s2t * sech2 - s1t * sech1 * np.exp(1j * (s1 - s2)))
    )
    return TwoSolitonPrinted(
        x_entry=(a_term + b_term) / denom,
        y_entry=c_term / (2 * denom),
        denominator=denom,
    )


def soliton_chain(p: float, q: float, thetas) -> DarbouxChain:
    """Seed plus one paired step per angle, ready for iteration."""
    seed = make_seed_su2(p, q)
    return make_chain(seed, [su2_spectral(theta) for theta in thetas])


def asymptotic_factors(thetas, sign: int) -> tuple[np.ndarray, list[np.ndarray]]:
    """Diagonal limits of the dressing as every r_k -> sign * infinity.

    Each step's -S tends to diag(-e^{sign i theta_k}, -e^{-sign i theta_k});
    the cumulative product over K steps is

        diag((-1)^K e^{sign i sum theta}, (-1)^K e^{-sign i sum theta}),

    the factor multiplying the seed g in the far-field solution.
    """
    if sign not in (-1, 1):
        raise ValueError("sign must be +1 or -1")
    factors = [
        np.diag([-np.exp(sign * 1j * t), -np.exp(-sign * 1j * t)]).astype(complex)
        for t in thetas
    ]
    total = np.sum(np.asarray(thetas, dtype=float))
    k = len(factors)
    cumulative = np.diag(
        [(-1.0) ** k * np.exp(sign * 1j * total), (-1.0) ** k * np.exp(-sign * 1j * total)]
    ).astype(complex)
    return cumulative, factors


def point_at_r(p: float, q: float, thetas, r_targets) -> SpacetimePoint:
    """A spacetime point where every step's r profile hits its target.

    Solves the linear system alpha_k x+ + beta_k x- = r_k in the least
    squares sense and rejects inconsistent targets.  One or two angles
    give an exact solution for generic data.
    """
    thetas = list(thetas)
    targets = np.asarray(r_targets, dtype=float)
    if targets.shape != (len(thetas),):
        raise ValueError("need one target per angle")
    rows = np.array([profile_coefficients(p, q, t) for t in thetas], dtype=float)
    z, *_ = np.linalg.lstsq(rows, targets, rcond=None)
    resid = rows @ z - targets
    if np.max(np.abs(resid)) > 1e-9 * max(1.0, float(np.max(np.abs(targets)))):
        raise ValueError("profile targets are inconsistent for these angles")
    return SpacetimePoint(xplus=float(z[0]), xminus=float(z[1]))
