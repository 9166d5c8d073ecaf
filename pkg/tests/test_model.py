import numpy as np
import pytest

from chiralsol.model import (
    DEFAULT_GRID,
    Grid,
    SpacetimePoint,
    SpectralPoleError,
    check_spectral_param,
    column_solution,
    deriv_lightcone,
    eom_residual,
    lax_residual,
    lightcone,
    make_seed_su2,
)

SMALL_GRID = Grid(t_min=-2, t_max=2, x_min=-2, x_max=2, nt=9, nx=9)


def test_lightcone_coordinates():
    x = lightcone(1.0, 0.5)
    assert x.xplus == pytest.approx(0.75)
    assert x.xminus == pytest.approx(0.25)
    shifted = x.shifted("plus", 0.1)
    assert shifted.xplus == pytest.approx(0.85)
    assert shifted.xminus == pytest.approx(0.25)
    with pytest.raises(ValueError):
        x.shifted("sideways", 0.1)


def test_spectral_param_pole_guard():
    assert check_spectral_param(0.3 + 0.4j) == 0.3 + 0.4j
    for bad in (1.0, -1.0, 1.0 + 5e-13, -1.0 - 5e-13j):
        with pytest.raises(SpectralPoleError):
            check_spectral_param(bad)


def test_seed_validation():
    with pytest.raises(ValueError):
        make_seed_su2(0.0, 1.0)
    with pytest.raises(ValueError):
        make_seed_su2(1.0, 0.0)


def test_seed_frozen_values():
    seed = make_seed_su2(1.0, 1.0)
    origin = lightcone(0.0, 0.0)
    np.testing.assert_allclose(seed.g(origin), np.eye(2), atol=1e-15)
    np.testing.assert_allclose(seed.V(0.0, origin), np.eye(2), atol=1e-15)
    x = lightcone(0.6, -0.2)
    # V at lam = 0 is g itself
    np.testing.assert_allclose(seed.V(0.0, x), seed.g(x), atol=1e-15)
    np.testing.assert_allclose(
        seed.j_plus(x), np.diag([1j, -1j]), atol=1e-15
    )
    np.testing.assert_allclose(
        seed.j_minus(x), np.diag([1j, -1j]), atol=1e-15
    )
    with pytest.raises(SpectralPoleError):
        seed.V(1.0, x)


def test_seed_V_batched_shape():
    seed = make_seed_su2(1.0, 2.0)
    pts = SMALL_GRID.points()
    v = seed.V(0.5, pts)
    assert v.shape == (9, 9, 2, 2)
    # diagonal and unimodular at every point
    np.testing.assert_allclose(v[..., 0, 1], 0, atol=1e-15)
    np.testing.assert_allclose(np.abs(v[..., 0, 0]), 1.0, atol=1e-12)


def test_deriv_lightcone_order():
    a = 0.7
    f = lambda x: np.exp(a * np.asarray(x.xplus)) * np.eye(2)
    x0 = lightcone(0.3, 0.1)
    errs = []
    for h in (2e-3, 1e-3):
        d = deriv_lightcone(f, x0, "plus", h)
        errs.append(np.max(np.abs(d - a * f(x0))))
    order = np.log2(errs[0] / errs[1])
    assert order == pytest.approx(2.0, abs=0.05)
    # no dependence on the other light-cone direction
    d_minus = deriv_lightcone(f, x0, "minus", 1e-3)
    assert np.max(np.abs(d_minus)) < 1e-9


def test_lax_residual_seed_small():
    seed = make_seed_su2(1.0, 1.0)
    for lam in (0.0, 0.5, 0.3 + 0.4j):
        rep = lax_residual(seed, lam, SMALL_GRID)
        assert rep.overall_pass
        for e in rep.entries:
            assert e.value < 1e-6
            assert set(e.context) >= {"lam", "h", "worst"}


def test_eom_residual_seed_exact():
    seed = make_seed_su2(1.0, 2.0)
    rep = eom_residual(seed.j_plus, seed.j_minus, SMALL_GRID)
    names = sorted(e.name for e in rep.entries)
    assert names == ["eom.conservation", "eom.curvature"]
    # constant diagonal currents: both residuals vanish identically
    for e in rep.entries:
        assert e.value == 0.0


def test_column_solution():
    seed = make_seed_su2(1.0, 1.0)
    col = column_solution(seed, 0.5, np.array([1.0, -1.0]))
    x = lightcone(0.4, 0.2)
    np.testing.assert_allclose(col(x), seed.V(0.5, x) @ [1.0, -1.0])
    with pytest.raises(ValueError):
        column_solution(seed, 0.5, np.zeros(2))
    with pytest.raises(ValueError):
        column_solution(seed, 0.5, np.ones(3))
    with pytest.raises(SpectralPoleError):
        column_solution(seed, -1.0, np.array([1.0, 0.0]))


def test_grid_validation_and_points():
    with pytest.raises(ValueError):
        Grid(nt=0)
    with pytest.raises(ValueError):
        Grid(t_min=1.0, t_max=-1.0)
    with pytest.raises(ValueError):
        Grid(h=0.0)
    pts = Grid(t_min=0, t_max=1, x_min=0, x_max=2, nt=3, nx=5).points()
    assert np.asarray(pts.xplus).shape == (3, 5)
    assert DEFAULT_GRID.nt == 41 and DEFAULT_GRID.nx == 41
    meta = DEFAULT_GRID.meta()
    assert meta["t"] == [-5.0, 5.0, 41] and meta["h"] == 1e-4
