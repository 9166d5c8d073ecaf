"""Acceptance gate.

One test per required behavior; the verbose test line is the pass/fail
record for that criterion.  Tolerances are pinned here as constants so a
drift in library defaults cannot silently loosen the gate.
"""

import csv
import json
import time

import numpy as np

from chiralsol.cli import _PROFILE_COLUMNS, main
from chiralsol.darboux import chain_levels, s_conditions_residual
from chiralsol.matcore import DEFAULT_TOLERANCES
from chiralsol.model import DEFAULT_GRID, eom_residual, lax_residual, make_seed_su2
from chiralsol.su2 import SolitonParams, TwoSolitonParams, soliton_chain
from chiralsol.verify import (
    SuiteConfig,
    check_asymptotics,
    check_chain,
    check_convergence,
    check_equivalence,
    check_identities,
    check_one_soliton,
    check_projector,
    check_scalar_ratio,
    compare_two_soliton,
    convergence_entries,
    run_full_suite,
)

IDENTITY_TOL = 1e-9
IDENTITY_GRIDS = 100
IDENTITY_BUDGET_S = 1.0
RATIO_TOL = 1e-10
RATIO_MATRICES = 100
LAX_PROBES = (0.0, 0.5, 0.3 + 0.4j)
H_LADDER = (4e-4, 2e-4, 1e-4)
ORDER_BAND = 0.1
RESIDUAL_TOL = 1e-5
UNITARITY_TOL = 1e-10
EQUIV_SAMPLES = 20
EQUIV_TOL = 1e-9
PROJECTOR_TOL = 1e-10
ORACLE_POINTS = 50
ORACLE_TOL = 1e-10
FAR_FIELD_TOL = 1e-8
FACTORIZATION_TOL = 1e-12
SUITE_BUDGET_S = 60.0
THETAS = (np.pi / 3, np.pi / 2, 2 * np.pi / 3)
GATE_SEED = 20250822


def _worst(report, pick=None):
    values = [e.value for e in report.entries if pick is None or pick(e.name)]
    assert values
    return max(values)


def test_criterion_1_quasideterminant_identities():
    rng = np.random.default_rng(GATE_SEED)
    start = time.perf_counter()
    report = check_identities(rng, IDENTITY_GRIDS, DEFAULT_TOLERANCES)
    elapsed = time.perf_counter() - start
    worst = _worst(report)
    print(f"criterion 1: worst identity residual {worst:.3e} in {elapsed:.2f}s")
    assert worst < IDENTITY_TOL
    assert elapsed < IDENTITY_BUDGET_S


def test_criterion_2_scalar_determinant_ratio():
    rng = np.random.default_rng(GATE_SEED)
    report = check_scalar_ratio(rng, RATIO_MATRICES, DEFAULT_TOLERANCES, n=4)
    worst = _worst(report)
    print(f"criterion 2: worst ratio deviation {worst:.3e}")
    assert worst < RATIO_TOL


def test_criterion_3_seed_linear_system():
    seed = make_seed_su2(1.0, 1.0)
    for lam in LAX_PROBES:
        report = convergence_entries(
            lambda h: _worst(lax_residual(seed, lam, DEFAULT_GRID, h=h)),
            H_LADDER,
            DEFAULT_TOLERANCES,
            "gate",
        )
        entries = {e.name: e.value for e in report.entries}
        print(
            f"criterion 3: lam={lam} order defect {entries['gate.order']:.2e} "
            f"residual {entries['gate.residual']:.2e}"
        )
        assert entries["gate.order"] < ORDER_BAND
        assert entries["gate.residual"] < RESIDUAL_TOL


def test_criterion_4_dressed_chains():
    for k in (1, 2, 3):
        chain = soliton_chain(1.0, 1.0, THETAS[:k])
        worst = 0.0
        for step, state in chain_levels(chain):
            for lam in LAX_PROBES:
                worst = max(worst, _worst(lax_residual(state, lam, DEFAULT_GRID)))
            worst = max(
                worst, _worst(eom_residual(state.j_plus, state.j_minus, DEFAULT_GRID))
            )
            worst = max(
                worst,
                _worst(
                    s_conditions_residual(step, DEFAULT_GRID),
                    pick=lambda n: "trace" not in n,
                ),
            )
        config = SuiteConfig(thetas=THETAS[:k], h_ladder=H_LADDER)
        orders = check_convergence(chain, config)
        order_defect = _worst(orders, pick=lambda n: n.endswith(".order"))
        print(f"criterion 4: K={k} worst residual {worst:.3e} order defect {order_defect:.2e}")
        assert worst < RESIDUAL_TOL
        assert order_defect < ORDER_BAND


def test_criterion_5_unitarity_and_invariants():
    config = SuiteConfig()
    report = check_chain(config.chain(), config)
    pick = lambda n: ".unitarity." in n or ".invariant." in n
    worst = _worst(report, pick=pick)
    count = sum(1 for e in report.entries if pick(e.name))
    print(f"criterion 5: worst of {count} unitarity/invariant entries {worst:.3e}")
    assert worst < UNITARITY_TOL


def test_criterion_6_route_equivalence():
    for k in (1, 2, 3):
        chain = soliton_chain(1.0, 1.0, THETAS[:k])
        rng = np.random.default_rng(GATE_SEED + k)
        equiv = check_equivalence(chain, rng, EQUIV_SAMPLES, DEFAULT_TOLERANCES)
        worst = _worst(equiv)
        print(f"criterion 6: K={k} worst route deviation {worst:.3e}")
        assert worst < EQUIV_TOL
    proj = check_projector(soliton_chain(1.0, 1.0, THETAS[:1]), DEFAULT_TOLERANCES)
    worst = _worst(proj)
    print(f"criterion 6: projector route deviation {worst:.3e}")
    assert worst < PROJECTOR_TOL


def test_criterion_7_closed_forms():
    rng = np.random.default_rng(GATE_SEED)
    one = check_one_soliton(
        SolitonParams(1.0, 1.0, np.pi / 2), rng, ORACLE_POINTS, DEFAULT_TOLERANCES
    )
    worst = _worst(one)
    print(f"criterion 7: one-soliton closed form deviation {worst:.3e}")
    assert worst < ORACLE_TOL

    two = compare_two_soliton(
        TwoSolitonParams(1.0, 1.0, np.pi / 2, np.pi / 3),
        rng,
        ORACLE_POINTS,
        DEFAULT_TOLERANCES,
    )
    assert two.overall_pass, two.to_json()
    names = {e.name for e in two.entries}
    assert "two_soliton.comparison_ran" in names
    if two.findings:
        finding = two.findings[0]
        assert finding["check"] == "two_soliton.closed_form"
        for key in ("max_abs_dx", "max_abs_dy", "n_points", "printed_unit_norm_defect"):
            assert key in finding
        print(
            "criterion 7: two-soliton comparison ran; deviation recorded as finding "
            f"(max_abs_dx={finding['max_abs_dx']:.3e})"
        )
    else:
        assert "two_soliton.closed_form" in names
        print("criterion 7: two-soliton comparison ran; closed form matches")


def test_criterion_8_asymptotic_factorization():
    report = check_asymptotics(1.0, 1.0, THETAS, DEFAULT_TOLERANCES)
    factor = _worst(report, pick=lambda n: ".factor_product_" in n)
    far = _worst(report, pick=lambda n: ".far_" in n or ".split_" in n)
    print(f"criterion 8: factorization {factor:.3e} far field {far:.3e}")
    assert factor < FACTORIZATION_TOL
    assert far < FAR_FIELD_TOL


def test_criterion_9_determinism_and_interface(tmp_path):
    start = time.perf_counter()
    first = run_full_suite()
    elapsed = time.perf_counter() - start
    second = run_full_suite()
    assert first.overall_pass, first.to_json()
    assert first.to_json() == second.to_json()
    assert elapsed < SUITE_BUDGET_S

    out = tmp_path / "profile.csv"
    assert main(["profile", "--out", str(out)]) == 0
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == _PROFILE_COLUMNS
    assert len(rows) - 1 == DEFAULT_GRID.nt * DEFAULT_GRID.nx
    print(
        f"criterion 9: suite {len(first.entries)} entries in {elapsed:.2f}s, "
        f"deterministic output, {len(rows) - 1} profile rows"
    )
