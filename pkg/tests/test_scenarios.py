import numpy as np
import pytest

from conftest import a_of, random_bell
from eur_hawking import (
    BellParams,
    DomainError,
    HawkingMode,
    apply_on_a,
    bell_diagonal,
    depolarizing_channel,
    dp_reduced_state,
    dp_reduced_state_constructive,
    embed_hawking,
    evaluate_point,
    pd_reduced_state,
    pd_reduced_state_constructive,
    trace_region_ii,
    weak_measured,
)
from eur_hawking.linalg import assert_density_matrix
from eur_hawking.scenarios import qwm_dp_state_elements


def test_reduced_states_match_kraus_route(rng):
    # closed-form entries against the constructive pipeline, 100 random tuples each
    for _ in range(100):
        params = random_bell(rng)
        strength = rng.uniform(0.0, 1.0)
        t = rng.uniform(0.0, 5.0)
        mode = HawkingMode.from_temperature(1.0, t)
        dp_closed = dp_reduced_state(params, strength, mode.a)
        dp_kraus = dp_reduced_state_constructive(params, strength, mode)
        assert np.abs(dp_closed - dp_kraus).max() < 1e-12
        pd_closed = pd_reduced_state(params, strength, mode.a)
        pd_kraus = pd_reduced_state_constructive(params, strength, mode)
        assert np.abs(pd_closed - pd_kraus).max() < 1e-12
        for rho in (dp_closed, pd_closed):
            assert_density_matrix(rho)


def test_reduced_states_at_origin_recover_bell_state(rng):
    params = random_bell(rng)
    rho = bell_diagonal(params)
    assert np.abs(dp_reduced_state(params, 0.0, 1.0) - rho).max() < 1e-14
    assert np.abs(pd_reduced_state(params, 0.0, 1.0) - rho).max() < 1e-14


def test_pd_entry_fixtures():
    # spot values of the phase-damping reduced matrix
    params = BellParams(0.9, -0.63, 0.7)
    a = a_of(1.5)
    q = 0.1
    rho = pd_reduced_state(params, q, a)
    assert abs(rho[0, 3] - a * (0.9 + 0.63) * np.sqrt(0.9) / 4) < 1e-14
    assert abs(rho[1, 2] - a * (0.9 - 0.63) * np.sqrt(0.9) / 4) < 1e-14
    assert abs(rho[0, 0] - a * a * 1.7 / 4) < 1e-14


def test_dp_family_is_not_depolarizing_on_a(rng):
    # the uniform Kraus depolarizing channel on A rescales all correlation
    # coefficients by (3-4p)/3 and lands on a different family for p > 0;
    # kept as a regression guard for the scenario definition
    params = BellParams(0.9, 0.8, -0.9)
    mode = HawkingMode.from_temperature(1.0, 1.0)
    p = 0.2
    noisy, _ = apply_on_a(bell_diagonal(params), depolarizing_channel(p))
    via_dp_channel = trace_region_ii(embed_hawking(noisy, mode))
    scenario = dp_reduced_state(params, p, mode.a)
    assert np.abs(via_dp_channel - scenario).max() > 1e-3
    scale = 1 - 4 * p / 3
    rescaled = BellParams(params.c1 * scale, params.c2 * scale, params.c3 * scale)
    expected = pd_reduced_state(rescaled, 0.0, mode.a)  # embedding of the rescaled state
    assert np.abs(via_dp_channel - expected).max() < 1e-13


def test_qwm_element_list_matches_pipeline(rng):
    for _ in range(40):
        params = random_bell(rng)
        p = rng.uniform(0.0, 1.0)
        a = a_of(rng.uniform(0.0, 4.0))
        gamma = rng.uniform(0.0, 0.99)
        post, p_succ = weak_measured(dp_reduced_state(params, p, a), gamma)
        printed = qwm_dp_state_elements(params, p, a, gamma)
        assert np.abs(post - printed).max() < 1e-12
        assert abs(p_succ - (2 - gamma) / 2) < 1e-12  # half the population sits in the A ground block


def test_evaluate_point_report_fields():
    report = evaluate_point("dp", BellParams(1, -1, 1), strength=0.0, t_over_omega=0.0)
    assert report.lhs_numeric == pytest.approx(0.0, abs=1e-10)
    assert report.bound_numeric == pytest.approx(0.0, abs=1e-10)
    assert report.discord == pytest.approx(1.0, abs=1e-9)
    assert report.mixedness == pytest.approx(0.0, abs=1e-12)
    assert report.conditional_entropy == pytest.approx(-1.0, abs=1e-10)
    assert report.success_probability == 1.0
    assert report.status == "ok"


def test_evaluate_point_maximally_mixed_input():
    # the uncertainty and discord are temperature independent for c = 0;
    # mixedness is 1 only while the embedding stays trivial (T = 0)
    for t in (0.0, 1.0, 2.5):
        report = evaluate_point("dp", BellParams(0, 0, 0), strength=0.3, t_over_omega=t)
        assert report.lhs_numeric == pytest.approx(2.0, abs=1e-10)
        assert report.discord == pytest.approx(0.0, abs=1e-10)
        assert report.status == "ok"
    report = evaluate_point("pd", BellParams(0, 0, 0), strength=0.7, t_over_omega=0.0)
    assert report.mixedness == pytest.approx(1.0, abs=1e-12)


def test_evaluate_point_dual_paths_agree(rng):
    for family in ("dp", "pd"):
        for _ in range(25):
            report = evaluate_point(
                family,
                random_bell(rng),
                strength=rng.uniform(0.0, 1.0),
                t_over_omega=rng.uniform(0.0, 4.0),
                gamma=float(rng.choice([0.0, 0.35, 0.7])),
            )
            assert abs(report.lhs_analytic - report.lhs_numeric) < 1e-9
            assert report.lhs_numeric >= report.bound_numeric - 1e-9
            assert 0.0 < report.success_probability <= 1.0
            assert report.status == "ok"


def test_evaluate_point_rejects_bad_inputs():
    with pytest.raises(DomainError):
        evaluate_point("dp", BellParams(1, 1, 1), strength=0.0, t_over_omega=0.0)
    with pytest.raises(DomainError):
        evaluate_point("dp", BellParams(1, -1, 1), strength=1.2, t_over_omega=0.0)
    with pytest.raises(DomainError):
        evaluate_point("xx", BellParams(1, -1, 1), strength=0.2, t_over_omega=0.0)
    with pytest.raises(DomainError):
        evaluate_point("dp", BellParams(1, -1, 1), strength=0.2, t_over_omega=-1.0)
