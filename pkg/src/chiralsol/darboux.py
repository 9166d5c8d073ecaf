"""Darboux dressing of chiral model solutions.

One step picks N spectral parameters lam_i (none at +-1) with constant
kets |i> and forms the matrix solution M whose columns are the column
solutions V(lam_i, x) |i> of the state's linear system.  With
Lam = diag(lam_i) and S = M Lam inv(M), the dressing factor lam I - S
maps solutions to solutions:

    V  ->  (lam I - S) V
    g  ->  -S g
    j+ ->  (I - S) j+ inv(I - S)
    j- ->  (I + S) j- inv(I + S)

S satisfies the algebraic conditions

    d+S (I - S) = [j+, S],      d-S (I + S) = [j-, S],

its trace and determinant are the spacetime constants tr Lam and
det Lam, and for spectral data paired as {mu, conj(mu)} with unit kets
the dressed solution stays in the unitary group.

Iteration composes steps.  Each step's matrix solution is built against
the original seed and then dressed through the factors accumulated so
far; the same objects also arise as one block quasideterminant of the
grid of matrices M_k Lam_k^i, which is checked against the product form.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .matcore import (
    DEFAULT_TOLERANCES,
    Tolerances,
    adjoint,
    det,
    frobenius_norm,
    identity_like,
    invert,
)
from .model import (
    ChiralState,
    Grid,
    ResidualReport,
    SpacetimePoint,
    check_spectral_param,
    deriv_lightcone,
)
from .quasidet import BlockGrid, deleted_submatrix, qdet_block
from .report import rel_residual

__all__ = [
    "SpectralData",
    "su2_spectral",
    "DarbouxStep",
    "make_step",
    "build_M",
    "build_S",
    "darboux_matrix",
    "step_s_matrix",
    "transform_state",
    "s_conditions_residual",
    "unitarity_checks",
    "DarbouxChain",
    "make_chain",
    "dressed_s_values",
    "ChainLevel",
    "chain_levels",
    "iterate_product",
    "iterate_qdet",
    "transform_chain",
    "ProjectorPath",
    "projector_path",
]

_PAIR_TOL = 1e-9


@dataclass(frozen=True)
class SpectralData:
    """Spectral parameters and constant kets defining one step."""

    lambdas: tuple
    kets: tuple

    def __post_init__(self):
        lambdas = tuple(check_spectral_param(l) for l in self.lambdas)
        kets = tuple(np.asarray(k, dtype=complex) for k in self.kets)
        if len(lambdas) != len(kets):
            raise ValueError("need one ket per spectral parameter")
        if not lambdas:
            raise ValueError("empty spectral data")
        n = len(lambdas)
        for k in kets:
            if k.shape != (n,):
                raise ValueError(f"kets must have shape ({n},), got {k.shape}")
            if not np.any(k):
                raise ValueError("kets must be nonzero")
        object.__setattr__(self, "lambdas", lambdas)
        object.__setattr__(self, "kets", kets)

    @property
    def n(self) -> int:
        return len(self.lambdas)

    @property
    def Lambda(self) -> np.ndarray:
        return np.diag(self.lambdas).astype(complex)


def su2_spectral(theta: float, guard: float = 1e-8) -> SpectralData:
    """Paired data {mu, conj(mu)} on the unit circle, mu = exp(i theta).

    The standard kets (1, -1) and (1, 1) make the two column solutions
    orthogonal everywhere.  Angles within ``guard`` of a multiple of pi
    put mu at a pole of the linear system and are rejected.
    """
    theta = float(theta)
    if abs(np.sin(theta)) < guard:
        raise ValueError(f"theta = {theta} too close to a multiple of pi")
    mu = np.exp(1j * theta)
    return SpectralData(
        lambdas=(mu, np.conj(mu)),
        kets=(np.array([1.0, -1.0]), np.array([1.0, 1.0])),
    )


@dataclass(frozen=True)
class DarbouxStep:
    """One dressing step: spectral data, its matrix solution evaluator,
    the diagonal spectral matrix, and the state the step applies to."""

    spectral: SpectralData
    M: Callable[[SpacetimePoint], np.ndarray]
    Lambda: np.ndarray
    base: object


def build_M(state, spectral: SpectralData) -> Callable[[SpacetimePoint], np.ndarray]:
    """Matrix solution with columns V(lam_i, x) @ ket_i."""
    if spectral.n != state.n:
        raise ValueError(
            f"spectral data size {spectral.n} does not match state size {state.n}"
        )

    def evaluate(x: SpacetimePoint) -> np.ndarray:
        cols = [state.V(lam, x) @ ket for lam, ket in zip(spectral.lambdas, spectral.kets)]
        return np.stack(cols, axis=-1)

    return evaluate


def make_step(state, spectral: SpectralData) -> DarbouxStep:
    return DarbouxStep(
        spectral=spectral,
        M=build_M(state, spectral),
        Lambda=spectral.Lambda,
        base=state,
    )


def build_S(m_value: np.ndarray, Lambda: np.ndarray) -> np.ndarray:
    """S = M Lam inv(M) from a matrix-solution value."""
    return m_value @ Lambda @ invert(m_value)


def darboux_matrix(s_value: np.ndarray, lam) -> np.ndarray:
    """Dressing factor lam I - S."""
    lam = check_spectral_param(lam)
    return lam * identity_like(s_value) - s_value


def step_s_matrix(step: DarbouxStep) -> Callable[[SpacetimePoint], np.ndarray]:
    """S as a field evaluator for one step."""

    def evaluate(x: SpacetimePoint) -> np.ndarray:
        return build_S(step.M(x), step.Lambda)

    return evaluate


def transform_state(state, step: DarbouxStep) -> ChiralState:
    """The dressed solution state of one step."""
    s_of = step_s_matrix(step)

    def v_new(lam, x):
        return darboux_matrix(s_of(x), lam) @ state.V(lam, x)

    def g_new(x):
        return -s_of(x) @ state.g(x)

    def j_plus_new(x):
        f = _current_factor(s_of(x), -1)
        return f @ state.j_plus(x) @ invert(f)

    def j_minus_new(x):
        f = _current_factor(s_of(x), +1)
        return f @ state.j_minus(x) @ invert(f)

    return ChiralState(n=state.n, g=g_new, j_plus=j_plus_new, j_minus=j_minus_new, V=v_new)


def _current_factor(s_value: np.ndarray, sign: int) -> np.ndarray:
    """I + sign * S, the conjugating factor for the currents."""
    return identity_like(s_value) + sign * s_value


def s_conditions_residual(
    step: DarbouxStep,
    grid: Grid,
    h: float | None = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> ResidualReport:
    """Residuals of the algebraic conditions on S over a grid.

    Checks d+S (I - S) - [j+, S] and d-S (I + S) - [j-, S] with central
    differences, plus the traces of d+-S which must vanish since
    tr S = tr Lam is constant.  Currents come from the step's base
    state.
    """
    h = grid.h if h is None else h
    x = grid.points()
    s_of = step_s_matrix(step)
    s = s_of(x)
    eye = identity_like(s)
    report = ResidualReport()
    for direction, j_eval, sign in (
        ("plus", step.base.j_plus, -1),
        ("minus", step.base.j_minus, +1),
    ):
        ds = deriv_lightcone(s_of, x, direction, h)
        j = j_eval(x)
        resid = ds @ (eye + sign * s) - (j @ s - s @ j)
        report.add(
            f"s_condition.{direction}",
            float(np.max(np.atleast_1d(frobenius_norm(resid)))),
            tolerances.derivative_cap,
            h=h,
        )
        trace = np.trace(ds, axis1=-2, axis2=-1)
        report.add(
            f"s_condition.trace_{direction}",
            float(np.max(np.abs(np.atleast_1d(trace)))),
            tolerances.identity,
            h=h,
        )
    return report


def _paired_mu(spectral: SpectralData) -> complex:
    """The mu of spectral data whose parameters all sit in {mu, conj(mu)}."""
    mu = spectral.lambdas[0]
    for lam in spectral.lambdas:
        if abs(lam - mu) > _PAIR_TOL and abs(lam - np.conj(mu)) > _PAIR_TOL:
            raise ValueError(
                "unitarity needs spectral parameters paired as {mu, conj(mu)}"
            )
    return mu


def unitarity_checks(
    step: DarbouxStep,
    grid: Grid,
    lam_probe: complex = 0.3 + 0.4j,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> ResidualReport:
    """Unitary-group invariants of one step over a grid.

    For paired spectral data: adj(S) + S = (mu + conj mu) I and
    adj(S) S = |mu|^2 I pointwise; the dressed g stays unitary with
    |det - 1| small when |mu| = 1; the dressed currents stay traceless;
    and adj(V(conj lam)) V(lam) stays a multiple of the identity.
    """
    mu = _paired_mu(step.spectral)
    x = grid.points()
    s = step_s_matrix(step)(x)
    eye = identity_like(s)
    report = ResidualReport()
    report.add(
        "unitarity.s_sum",
        float(np.max(np.atleast_1d(frobenius_norm(adjoint(s) + s - (mu + np.conj(mu)) * eye)))),
        tolerances.algebraic,
    )
    report.add(
        "unitarity.s_product",
        float(np.max(np.atleast_1d(frobenius_norm(adjoint(s) @ s - (mu * np.conj(mu)) * eye)))),
        tolerances.algebraic,
    )
    dressed = transform_state(step.base, step)
    g = dressed.g(x)
    report.add(
        "unitarity.g_unitary",
        float(np.max(np.atleast_1d(frobenius_norm(adjoint(g) @ g - eye)))),
        tolerances.algebraic,
    )
    report.add(
        "unitarity.g_det",
        float(np.max(np.abs(np.atleast_1d(det(g) - 1)))),
        tolerances.algebraic,
    )
    for name, j_eval in (("plus", dressed.j_plus), ("minus", dressed.j_minus)):
        trace = np.trace(j_eval(x), axis1=-2, axis2=-1)
        report.add(
            f"unitarity.trace_j_{name}",
            float(np.max(np.abs(np.atleast_1d(trace)))),
            tolerances.algebraic,
        )
    lam = check_spectral_param(lam_probe)
    v = dressed.V(lam, x)
    v_bar = dressed.V(np.conj(lam), x)
    prod = adjoint(v_bar) @ v
    scalar = np.trace(prod, axis1=-2, axis2=-1)[..., None, None] / step.base.n
    report.add(
        "unitarity.reality",
        rel_residual(
            frobenius_norm(prod - scalar * eye),
            frobenius_norm(prod),
            frobenius_norm(prod),
            tolerances.rel_floor,
        ),
        tolerances.algebraic,
        lam_probe={"re": lam.real, "im": lam.imag},
    )
    return report


@dataclass(frozen=True)
class DarbouxChain:
    """Ordered steps, each with its matrix solution built on the base."""

    base: object
    steps: tuple

    def __post_init__(self):
        if not self.steps:
            raise ValueError("chain needs at least one step")
        object.__setattr__(self, "steps", tuple(self.steps))

    @property
    def length(self) -> int:
        return len(self.steps)


def make_chain(state, spectral_list) -> DarbouxChain:
    steps = tuple(make_step(state, spec) for spec in spectral_list)
    return DarbouxChain(base=state, steps=steps)


def dressed_s_values(chain: DarbouxChain, x: SpacetimePoint) -> list[np.ndarray]:
    """S of every level at x.

    Level k dresses the raw matrix solution M_k through the factors of
    the earlier levels, column-wise in the spectral parameters:
    A -> A Lam_k - S_j A for j < k, then S_k = A Lam_k inv(A).
    """
    out: list[np.ndarray] = []
    for step in chain.steps:
        a = step.M(x)
        for s in out:
            a = a @ step.Lambda - s @ a
        out.append(build_S(a, step.Lambda))
    return out


def iterate_product(chain: DarbouxChain, lam, x: SpacetimePoint):
    """Dressed (V, g, j+, j-) at one point via the product of factors."""
    lam = check_spectral_param(lam)
    s_values = dressed_s_values(chain, x)
    v = chain.base.V(lam, x)
    g = chain.base.g(x)
    for s in s_values:
        v = darboux_matrix(s, lam) @ v
        g = -s @ g
    eye = identity_like(s_values[0])
    c_plus = eye
    c_minus = eye
    for s in s_values:
        c_plus = (eye - s) @ c_plus
        c_minus = (eye + s) @ c_minus
    j_plus = c_plus @ chain.base.j_plus(x) @ invert(c_plus)
    j_minus = c_minus @ chain.base.j_minus(x) @ invert(c_minus)
    return v, g, j_plus, j_minus


class ChainLevel(NamedTuple):
    """One level of an iterated chain: the dressed step (whose base is
    the previous level's state) and the state it produces."""

    step: DarbouxStep
    state: ChiralState


def chain_levels(chain: DarbouxChain) -> list[ChainLevel]:
    """All intermediate dressed states with their dressed steps."""
    levels: list[ChainLevel] = []
    state = chain.base
    earlier: tuple = ()
    for step in chain.steps:
        def dressed_m(x, raw=step.M, Lam=step.Lambda, before=earlier):
            a = raw(x)
            for s_eval in before:
                a = a @ Lam - s_eval(x) @ a
            return a

        dstep = DarbouxStep(spectral=step.spectral, M=dressed_m, Lambda=step.Lambda, base=state)
        state = transform_state(state, dstep)
        levels.append(ChainLevel(step=dstep, state=state))
        earlier = earlier + (step_s_matrix(dstep),)
    return levels


def transform_chain(chain: DarbouxChain) -> ChiralState:
    """The fully dressed state as a set of field evaluators."""

    def g(x):
        return iterate_product_g(chain, x)

    def j_plus(x):
        return _conjugated_current(chain, x, -1)

    def j_minus(x):
        return _conjugated_current(chain, x, +1)

    def v(lam, x):
        lam_c = check_spectral_param(lam)
        s_values = dressed_s_values(chain, x)
        out = chain.base.V(lam_c, x)
        for s in s_values:
            out = darboux_matrix(s, lam_c) @ out
        return out

    return ChiralState(n=chain.base.n, g=g, j_plus=j_plus, j_minus=j_minus, V=v)


def iterate_product_g(chain: DarbouxChain, x: SpacetimePoint) -> np.ndarray:
    g = chain.base.g(x)
    for s in dressed_s_values(chain, x):
        g = -s @ g
    return g


def _conjugated_current(chain: DarbouxChain, x: SpacetimePoint, sign: int) -> np.ndarray:
    s_values = dressed_s_values(chain, x)
    eye = identity_like(s_values[0])
    c = eye
    for s in s_values:
        c = (eye + sign * s) @ c
    j = chain.base.j_minus(x) if sign > 0 else chain.base.j_plus(x)
    return c @ j @ invert(c)


def _power_rows(mats, powers_of, last_col, size):
    """Rows of the iterated block grid: entry (i, k) is M_k Z_k^i."""
    rows = []
    for i in range(size):
        row = [m @ np.linalg.matrix_power(z, i) for m, z in zip(mats, powers_of)]
        row.append(last_col(i))
        rows.append(row)
    return rows


def iterate_qdet(
    chain: DarbouxChain,
    lam,
    x: SpacetimePoint,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
):
    """Dressed (V, g, F+, F-) at one point via block quasideterminants.

    The grid has K + 1 block rows: row i holds M_k Lam_k^i for each step
    and lam^i I in the last column, boxed at the bottom-right.  The
    quasideterminant equals the product of dressing factors; applied to
    the seed V it gives the dressed V, and at lam = 0 the dressed g.
    The current factors F+- use I -+ Lam_k powers with a unit last
    column; they equal (-1)^K times the product of (I -+ S_k) factors
    and conjugate the currents identically.

    Warns when the deleted submatrix is ill conditioned (eigenvalue
    collisions between steps).
    """
    lam = check_spectral_param(lam)
    k = chain.length
    n = chain.base.n
    mats = [step.M(x) for step in chain.steps]
    lams = [step.Lambda for step in chain.steps]
    eye = np.eye(n, dtype=complex)
    zero = np.zeros((n, n), dtype=complex)

    v_rows = _power_rows(
        mats, lams, lambda i: (lam ** i) * eye, k + 1
    )
    v_grid = BlockGrid(v_rows, (k + 1, k + 1))
    sub = deleted_submatrix(v_grid)
    cond = np.max(
        np.atleast_1d(frobenius_norm(sub)) * np.atleast_1d(frobenius_norm(invert(sub, tolerances)))
    )
    if cond > tolerances.cond_warn:
        warnings.warn(
            f"iterated grid ill conditioned (estimate {cond:.3g}); "
            "spectral parameters of different steps may collide",
            RuntimeWarning,
            stacklevel=2,
        )
    v_factor = qdet_block(v_grid, tolerances)
    g_rows = _power_rows(mats, lams, lambda i: eye if i == 0 else zero, k + 1)
    g_factor = qdet_block(BlockGrid(g_rows, (k + 1, k + 1)), tolerances)

    factors = {}
    for sign, name in ((-1, "plus"), (+1, "minus")):
        ws = [eye + sign * L for L in lams]
        f_rows = _power_rows(mats, ws, lambda i: eye if i == 0 else zero, k + 1)
        factors[name] = qdet_block(BlockGrid(f_rows, (k + 1, k + 1)), tolerances)

    v = v_factor @ chain.base.V(lam, x)
    g = g_factor @ chain.base.g(x)
    return v, g, factors["plus"], factors["minus"]


class ProjectorPath(NamedTuple):
    """Hermitian-projector route to the dressing factor of one step."""

    projector: Callable[[SpacetimePoint], np.ndarray]
    s_matrix: Callable[[SpacetimePoint], np.ndarray]
    dressing: Callable[[complex, SpacetimePoint], np.ndarray]
    mu: complex


def projector_path(step: DarbouxStep, tolerances: Tolerances = DEFAULT_TOLERANCES) -> ProjectorPath:
    """Rebuild S from the Hermitian projector onto the mu columns.

    For spectral data paired as {mu, conj(mu)} the columns of M at the
    mu parameters span a subspace; with P the Hermitian projector onto
    it,

        S = (mu - conj mu) P + conj(mu) I,

    and the dressing factor factorizes as

        lam I - S = (lam - conj mu) (I - (mu - conj mu)/(lam - conj mu) P).

    The factored form is singular at lam = conj(mu); within 1e-12 of it
    the dressing falls back to the difference form, which is entire.
    """
    mu = _paired_mu(step.spectral)
    mu_bar = complex(np.conj(mu))
    if abs(mu - mu_bar) < _PAIR_TOL:
        raise ValueError("projector route needs mu off the real axis")
    cols = [i for i, lam in enumerate(step.spectral.lambdas) if abs(lam - mu) <= _PAIR_TOL]

    def projector(x: SpacetimePoint) -> np.ndarray:
        a = step.M(x)[..., :, cols]
        gram = adjoint(a) @ a
        return a @ invert(gram, tolerances) @ adjoint(a)

    def s_matrix(x: SpacetimePoint) -> np.ndarray:
        p = projector(x)
        return (mu - mu_bar) * p + mu_bar * identity_like(p)

    def dressing(lam, x: SpacetimePoint) -> np.ndarray:
        lam_c = check_spectral_param(lam)
        p = projector(x)
        eye = identity_like(p)
        if abs(lam_c - mu_bar) < 1e-12:
            return lam_c * eye - ((mu - mu_bar) * p + mu_bar * eye)
        return (lam_c - mu_bar) * (eye - (mu - mu_bar) / (lam_c - mu_bar) * p)

    return ProjectorPath(projector=projector, s_matrix=s_matrix, dressing=dressing, mu=mu)
