import numpy as np
import pytest

from chiralsol.darboux import chain_levels, step_s_matrix, su2_spectral
from chiralsol.model import Grid, lightcone, make_seed_su2
from chiralsol.su2 import (
    SolitonParams,
    TwoSolitonParams,
    asymptotic_factors,
    one_soliton,
    point_at_r,
    profile_coefficients,
    rs_profile,
    soliton_chain,
    two_soliton_printed,
)

SMALL_GRID = Grid(t_min=-2, t_max=2, x_min=-2, x_max=2, nt=7, nx=7)


def test_params_validation():
    with pytest.raises(ValueError):
        SolitonParams(0.0, 1.0, np.pi / 2)
    with pytest.raises(ValueError):
        SolitonParams(1.0, 1.0, np.pi)
    with pytest.raises(ValueError):
        TwoSolitonParams(1.0, 1.0, np.pi / 3, np.pi / 3)
    with pytest.raises(ValueError):
        TwoSolitonParams(1.0, 1.0, np.pi / 2, 3 * np.pi / 2)
    two = TwoSolitonParams(1.0, 2.0, np.pi / 2, np.pi / 3)
    assert two.first() == SolitonParams(1.0, 2.0, np.pi / 2)
    assert two.second() == SolitonParams(1.0, 2.0, np.pi / 3)


def test_profile_coefficients_frozen():
    np.testing.assert_allclose(profile_coefficients(1.0, 1.0, np.pi / 2), (-1.0, 1.0), atol=1e-14)
    alpha, beta = profile_coefficients(1.0, 1.0, np.pi / 3)
    np.testing.assert_allclose(alpha, -np.sqrt(3.0), atol=1e-14)
    np.testing.assert_allclose(beta, 1.0 / np.sqrt(3.0), atol=1e-14)


def test_profile_coefficients_half_angle_oracle():
    # independent trig route: alpha = -p*cot(theta/2), beta = q*tan(theta/2)
    for p, q, theta in [(1.0, 1.0, 0.4), (2.0, -1.5, 2.2), (0.7, 3.0, np.pi / 5)]:
        alpha, beta = profile_coefficients(p, q, theta)
        np.testing.assert_allclose(alpha, -p / np.tan(theta / 2), atol=1e-12)
        np.testing.assert_allclose(beta, q * np.tan(theta / 2), atol=1e-12)


def test_rs_profile_frozen():
    params = SolitonParams(1.0, 1.0, np.pi / 2)
    prof = rs_profile(params, lightcone(0.9, 0.5))  # xplus=0.7, xminus=0.2
    np.testing.assert_allclose(prof.r, -0.5, atol=1e-14)
    np.testing.assert_allclose(prof.s, 0.9, atol=1e-14)


def test_rs_profile_matches_seed_scalar_solution():
    # r and s read off the seed solution evaluated at the spectral point
    params = SolitonParams(1.3, -0.8, 2 * np.pi / 5)
    mu = np.exp(1j * params.theta)
    seed = make_seed_su2(params.p, params.q)
    for t, xx in [(0.3, 0.4), (-0.52, 0.11), (0.9, -1.3)]:
        x = lightcone(t, xx)
        w = seed.V(mu, x)[0, 0]
        prof = rs_profile(params, x)
        np.testing.assert_allclose(prof.r, np.log(np.abs(w) ** 2), atol=1e-12)
        np.testing.assert_allclose(prof.s, 2 * np.angle(w), atol=1e-12)


def test_one_soliton_frozen_at_origin():
    fields = one_soliton(SolitonParams(1.0, 1.0, np.pi / 2), lightcone(0.0, 0.0))
    np.testing.assert_allclose(fields.s_matrix, [[0, -1j], [-1j, 0]], atol=1e-15)
    np.testing.assert_allclose(fields.g, [[0, 1j], [1j, 0]], atol=1e-15)
    np.testing.assert_allclose(fields.j_plus, [[0, 1], [-1, 0]], atol=1e-15)
    np.testing.assert_allclose(fields.j_minus, [[0, -1], [1, 0]], atol=1e-15)


def test_one_soliton_group_valued():
    fields = one_soliton(SolitonParams(1.0, 2.0, np.pi / 3), SMALL_GRID.points())
    g = fields.g
    gram = np.conj(np.swapaxes(g, -1, -2)) @ g
    np.testing.assert_allclose(gram, np.broadcast_to(np.eye(2), gram.shape), atol=1e-13)
    dets = g[..., 0, 0] * g[..., 1, 1] - g[..., 0, 1] * g[..., 1, 0]
    np.testing.assert_allclose(dets, 1.0, atol=1e-13)


def test_one_soliton_matches_engine():
    params = SolitonParams(1.1, -0.6, np.pi / 5)
    chain = soliton_chain(params.p, params.q, [params.theta])
    level = chain_levels(chain)[0]
    x = SMALL_GRID.points()
    fields = one_soliton(params, x)
    np.testing.assert_allclose(fields.s_matrix, step_s_matrix(level.step)(x), atol=1e-12)
    np.testing.assert_allclose(fields.g, level.state.g(x), atol=1e-12)
    np.testing.assert_allclose(fields.j_plus, level.state.j_plus(x), atol=1e-12)
    np.testing.assert_allclose(fields.j_minus, level.state.j_minus(x), atol=1e-12)


def test_two_soliton_printed_frozen():
    # regression pin for the transcribed rational expression; its unit-norm
    # defect at the origin is why the iterated engine is the source of truth
    params = TwoSolitonParams(1.0, 1.0, np.pi / 2, np.pi / 3)
    printed = two_soliton_printed(params, lightcone(0.0, 0.0))
    np.testing.assert_allclose(printed.denominator, -(1 + np.sqrt(3.0) / 2), atol=1e-14)
    np.testing.assert_allclose(printed.x_entry, 0.1961524227066319, atol=1e-13)
    np.testing.assert_allclose(printed.y_entry, 0.06217782649107049j, atol=1e-13)
    defect = abs(printed.x_entry) ** 2 + abs(printed.y_entry) ** 2 - 1
    assert abs(defect) > 1e-3


def test_asymptotic_factors_product():
    thetas = (np.pi / 2, np.pi / 3, 2 * np.pi / 5)
    for sign in (+1, -1):
        cumulative, per_step = asymptotic_factors(thetas, sign)
        acc = np.eye(2, dtype=complex)
        for factor in per_step:
            np.testing.assert_allclose(np.diag(np.diag(factor)), factor, atol=1e-15)
            acc = factor @ acc
        np.testing.assert_allclose(acc, cumulative, atol=1e-13)
        total = sign * sum(thetas)
        expected = (-1) ** len(thetas) * np.diag(
            [np.exp(1j * total), np.exp(-1j * total)]
        )
        np.testing.assert_allclose(cumulative, expected, atol=1e-13)
    with pytest.raises(ValueError):
        asymptotic_factors(thetas, 0)


def test_point_at_r_single():
    x = point_at_r(1.0, 1.0, (np.pi / 2,), (20.0,))
    np.testing.assert_allclose(x.xplus, -10.0, atol=1e-10)
    np.testing.assert_allclose(x.xminus, 10.0, atol=1e-10)


def test_point_at_r_pair_hits_targets():
    thetas = (np.pi / 2, np.pi / 3)
    targets = (20.0, -20.0)
    x = point_at_r(1.0, 1.0, thetas, targets)
    for theta, target in zip(thetas, targets):
        prof = rs_profile(SolitonParams(1.0, 1.0, theta), x)
        np.testing.assert_allclose(prof.r, target, atol=1e-9)


def test_point_at_r_inconsistent_targets():
    thetas = (np.pi / 3, np.pi / 2, 2 * np.pi / 3)
    with pytest.raises(ValueError):
        point_at_r(1.0, 1.0, thetas, (20.0, 20.0, 20.0))
