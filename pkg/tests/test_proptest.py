import numpy as np
import pytest

from graphheat import proptest
from graphheat.graph import GridSpec
from graphheat.spectral import eigendecompose_grid


@pytest.fixture(scope="module")
def basis():
    return eigendecompose_grid(GridSpec(8, 8))


@pytest.mark.parametrize("scale", ["small", "medium"])
def test_suite_passes(scale):
    report = proptest.run_property_suite(seed=0, scale=scale, trials=100)
    assert report.passed, [c for c in report.checks if not c.passed]
    assert {c.name for c in report.checks} >= {"boundedness", "stability", "convergence", "noise_sweep"}


def test_report_is_json_ready():
    import json

    report = proptest.run_property_suite(seed=3, scale="small", trials=5)
    decoded = json.loads(json.dumps(report.as_dict()))
    assert decoded["passed"] is True and decoded["scale"] == "small"


def test_violation_names_seed_and_trial(basis):
    def broken(rng):
        yield 2.0, 1.0

    result = proptest._run("broken", 42, 10, broken)
    assert not result.passed and result.seed == 42 and result.failing_trial == 0


def test_kernel_only_case(basis):
    assert proptest.check_kernel_only(basis, 1, 30).passed


def test_terminal_time_case(basis):
    assert proptest.check_terminal_time(basis, 1, 30).passed


def test_exact_solution_derivative(basis):
    rng = np.random.default_rng(5)
    uT = proptest.band_limited_truth(basis, rng)
    h = 1e-5
    u_plus, _ = proptest.exact_solution(basis, uT, 0.5, 0.2 + h)
    u_minus, _ = proptest.exact_solution(basis, uT, 0.5, 0.2 - h)
    _, rate = proptest.exact_solution(basis, uT, 0.5, 0.2)
    np.testing.assert_allclose((u_plus - u_minus) / (2 * h), rate, atol=1e-5 * np.abs(rate).max())


def test_band_limited_truth_lives_in_low_modes(basis):
    uT = proptest.band_limited_truth(basis, np.random.default_rng(0))
    coeffs = basis.analyze(uT)
    assert np.abs(coeffs[10:]).max() < 1e-10


def test_unknown_scale():
    with pytest.raises(ValueError):
        proptest.build_basis("huge")
