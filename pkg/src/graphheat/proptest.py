"""Randomised checks of the cut-off reconstruction's error bounds.

Each check draws seeded trials and verifies one of the bounds:

* boundedness   ``||P u(t)|| <= exp(M (T - t)) ||u_T||``
* stability     ``||P u(t) - P v(t)|| <= exp(M (T - t)) eps`` when ``||u_T - v_T|| <= eps``
* convergence   ``||U(t) - P U_eps(t)|| <= ||dU/dt|| / M + exp(M (T - t)) eps``

plus linearity, the capped-cut-off identity with the naive solution,
the kernel-only and ``t = T`` edge cases, and an error-vs-noise sweep.
Trial ``k`` of a check run with seed ``s`` uses ``default_rng([s, k])``,
so a failure is reproducible from ``(seed, trial)``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .diffusion import backward_cutoff, backward_naive, select_m_eps
from .graph import GridSpec, grid_graph, laplacian
from .spectral import EigenBasis, eigendecompose_dense, eigendecompose_grid

SCALES = {"small": 8, "medium": 32}
T_DEFAULT = 0.5
GAMMA_DEFAULT = 0.5
BOUND_TOL = 1e-9
CONVERGENCE_TOL = 1e-8
BAND_MODES = 10
SWEEP_EPSILONS = (0.2, 0.1, 0.05, 0.025)


@dataclass
class CheckResult:
    name: str
    passed: bool
    trials: int
    worst_margin: float
    seed: int
    failing_trial: int | None = None
    detail: str = ""

    def as_dict(self):
        return asdict(self)


@dataclass
class SuiteReport:
    scale: str
    seed: int
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self):
        return {
            "scale": self.scale,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [c.as_dict() for c in self.checks],
        }


def _times(T):
    return (0.0, T / 2, T)


def _random_terminal(rng, n):
    return rng.uniform(0.0, 255.0, n)


def _random_perturbation(rng, n, radius):
    direction = rng.standard_normal(n)
    return direction * (radius * rng.uniform(0.0, 1.0) / np.linalg.norm(direction))


def _run(name, seed, trials, trial_fn):
    """Drive ``trial_fn(rng) -> (lhs, rhs)`` pairs; margin is ``rhs - lhs``."""
    worst = math.inf
    for k in range(trials):
        rng = np.random.default_rng([seed, k])
        for lhs, rhs in trial_fn(rng):
            margin = rhs - lhs
            worst = min(worst, margin)
            if not margin >= 0:
                return CheckResult(name, False, k + 1, margin, seed, k,
                                   f"lhs={lhs:.12g} exceeds bound {rhs:.12g}")
    return CheckResult(name, True, trials, worst, seed)


def check_boundedness(basis: EigenBasis, seed: int, trials: int, T: float = T_DEFAULT) -> CheckResult:
    def trial(rng):
        uT = _random_terminal(rng, basis.n)
        m_eps = rng.uniform(0.0, basis.lambda_max)
        norm = np.linalg.norm(uT)
        for t in _times(T):
            lhs = np.linalg.norm(backward_cutoff(basis, uT, m_eps, t, T=T))
            yield lhs, math.exp(m_eps * (T - t)) * norm + BOUND_TOL
    return _run("boundedness", seed, trials, trial)


def check_stability(basis: EigenBasis, seed: int, trials: int, T: float = T_DEFAULT) -> CheckResult:
    def trial(rng):
        uT = _random_terminal(rng, basis.n)
        eps = rng.uniform(0.01, 1.0)
        vT = uT + _random_perturbation(rng, basis.n, eps)
        m_eps = rng.uniform(0.0, basis.lambda_max)
        for t in _times(T):
            diff = backward_cutoff(basis, uT, m_eps, t, T=T) - backward_cutoff(basis, vT, m_eps, t, T=T)
            yield np.linalg.norm(diff), math.exp(m_eps * (T - t)) * eps + BOUND_TOL
    return _run("stability", seed, trials, trial)


def band_limited_truth(basis: EigenBasis, rng, modes: int = BAND_MODES) -> np.ndarray:
    """Random terminal data spanned by the ``modes`` lowest eigenvectors."""
    coeffs = rng.normal(0.0, 50.0, min(modes, basis.n))
    return basis.synthesize(coeffs)


def exact_solution(basis: EigenBasis, uT, T: float, t: float) -> tuple[np.ndarray, np.ndarray]:
    """``U(t)`` and ``dU/dt(t)`` of the exact backward solution with ``U(T) = uT``."""
    coeffs = basis.analyze(uT) * np.exp(basis.eigenvalues * (T - t))
    return basis.synthesize(coeffs), basis.synthesize(-basis.eigenvalues * coeffs)


def check_convergence(basis: EigenBasis, seed: int, trials: int, T: float = T_DEFAULT) -> CheckResult:
    def trial(rng):
        uT = band_limited_truth(basis, rng)
        eps = rng.uniform(0.01, 1.0)
        uT_eps = uT + _random_perturbation(rng, basis.n, eps)
        m_eps = rng.uniform(0.01, basis.lambda_max)
        for t in _times(T):
            truth, rate = exact_solution(basis, uT, T, t)
            approx = backward_cutoff(basis, uT_eps, m_eps, t, T=T)
            rhs = np.linalg.norm(rate) / m_eps + math.exp(m_eps * (T - t)) * eps + CONVERGENCE_TOL
            yield np.linalg.norm(truth - approx), rhs
    return _run("convergence", seed, trials, trial)


def check_linearity(basis: EigenBasis, seed: int, trials: int, T: float = T_DEFAULT) -> CheckResult:
    def trial(rng):
        u = _random_terminal(rng, basis.n)
        v = _random_terminal(rng, basis.n)
        a, b = rng.uniform(-2.0, 2.0, 2)
        m_eps = rng.uniform(0.0, basis.lambda_max)
        t = rng.uniform(0.0, T)
        lhs = backward_cutoff(basis, a * u + b * v, m_eps, t, T=T)
        rhs = a * backward_cutoff(basis, u, m_eps, t, T=T) + b * backward_cutoff(basis, v, m_eps, t, T=T)
        scale = max(1.0, float(np.abs(rhs).max()))
        yield float(np.abs(lhs - rhs).max()) / scale, 1e-10
    return _run("linearity", seed, trials, trial)


def check_capped_matches_naive(basis: EigenBasis, seed: int, trials: int, T: float = T_DEFAULT) -> CheckResult:
    """With a tiny eps the cut-off level caps at lambda_max and P equals the naive solution."""
    params = select_m_eps(1e-12, 0.9, T, basis.lambda_max)

    def trial(rng):
        uT = _random_terminal(rng, basis.n)
        cut = backward_cutoff(basis, uT, params, 0.0)
        naive = backward_naive(basis, uT, T, 0.0)
        yield float(np.abs(cut - naive).max()), 1e-10 if params.capped else -1.0
    return _run("capped_equals_naive", seed, trials, trial)


def check_kernel_only(basis: EigenBasis, seed: int, trials: int, T: float = T_DEFAULT) -> CheckResult:
    """``M = 0`` keeps only the constant mode: ``||P u|| = |mean| sqrt(n) <= ||u_T||``."""
    def trial(rng):
        uT = _random_terminal(rng, basis.n) + rng.uniform(1.0, 100.0)
        rec = backward_cutoff(basis, uT, 0.0, 0.0, T=T)
        expected = abs(uT.mean()) * math.sqrt(basis.n)
        yield abs(np.linalg.norm(rec) - expected), 1e-9 * expected
        yield np.linalg.norm(rec), np.linalg.norm(uT) + BOUND_TOL
    return _run("kernel_only", seed, trials, trial)


def check_terminal_time(basis: EigenBasis, seed: int, trials: int, T: float = T_DEFAULT) -> CheckResult:
    """At ``t = T`` the stability bound reduces to ``||P u - P v|| <= eps``."""
    def trial(rng):
        uT = _random_terminal(rng, basis.n)
        eps = rng.uniform(0.01, 1.0)
        vT = uT + _random_perturbation(rng, basis.n, eps)
        m_eps = rng.uniform(0.0, basis.lambda_max)
        diff = backward_cutoff(basis, uT, m_eps, T, T=T) - backward_cutoff(basis, vT, m_eps, T, T=T)
        yield np.linalg.norm(diff), eps + BOUND_TOL
    return _run("terminal_time", seed, trials, trial)


def sweep_errors(basis: EigenBasis, seed: int, T: float = T_DEFAULT, gamma: float = GAMMA_DEFAULT,
                 epsilons=SWEEP_EPSILONS) -> list[float]:
    """Reconstruction error at ``t = 0`` for noise of norm ``eps``, one noise direction."""
    rng = np.random.default_rng([seed, 0])
    uT = band_limited_truth(basis, rng)
    truth, _ = exact_solution(basis, uT, T, 0.0)
    direction = rng.standard_normal(basis.n)
    direction /= np.linalg.norm(direction)
    errors = []
    for eps in epsilons:
        params = select_m_eps(eps, gamma, T, basis.lambda_max)
        approx = backward_cutoff(basis, uT + eps * direction, params, 0.0)
        errors.append(float(np.linalg.norm(truth - approx)))
    return errors


def check_noise_sweep(basis: EigenBasis, seed: int, seeds: int = 5, T: float = T_DEFAULT) -> CheckResult:
    """Error shrinks with the noise level.

    Mode counts jump discretely as ``M_eps`` grows, so single steps may go
    up.  Along the decreasing-eps sweep each seed may rise at most once,
    the per-level medians over seeds may rise at most once, and the median
    error at the smallest eps must be below the one at the largest.
    """
    table = np.array([sweep_errors(basis, seed * 1000 + s, T) for s in range(seeds)])
    inversions = (np.diff(table, axis=1) > 0).sum(axis=1)
    medians = np.median(table, axis=0)
    worst = float(medians[0] - medians[-1])
    bad_seed = np.flatnonzero(inversions > 1)
    if bad_seed.size:
        return CheckResult("noise_sweep", False, seeds, worst, seed, int(bad_seed[0]),
                           f"errors {table[bad_seed[0]].tolist()} increase more than once")
    if (np.diff(medians) > 0).sum() > 1 or not medians[-1] < medians[0]:
        return CheckResult("noise_sweep", False, seeds, worst, seed, None,
                           f"median errors {medians.tolist()} do not decrease with eps")
    return CheckResult("noise_sweep", True, seeds, worst, seed, detail=f"median errors {medians.tolist()}")


def build_basis(scale: str) -> EigenBasis:
    """Dense solve for ``small`` (8x8), closed-form grid basis for ``medium`` (32x32)."""
    if scale not in SCALES:
        raise ValueError(f"scale must be one of {sorted(SCALES)}, got {scale!r}")
    spec = GridSpec(SCALES[scale], SCALES[scale])
    if scale == "small":
        return eigendecompose_dense(laplacian(grid_graph(spec)))
    return eigendecompose_grid(spec)


def run_property_suite(seed: int = 0, scale: str = "small", trials: int = 1000) -> SuiteReport:
    basis = build_basis(scale)
    checks = [
        check_boundedness(basis, seed, trials),
        check_stability(basis, seed, trials),
        check_convergence(basis, seed, trials),
        check_linearity(basis, seed, min(trials, 200)),
        check_capped_matches_naive(basis, seed, min(trials, 50)),
        check_kernel_only(basis, seed, min(trials, 50)),
        check_terminal_time(basis, seed, min(trials, 200)),
        check_noise_sweep(basis, seed),
    ]
    return SuiteReport(scale, seed, checks)


__all__ = [
    "CheckResult",
    "SuiteReport",
    "band_limited_truth",
    "build_basis",
    "check_boundedness",
    "check_capped_matches_naive",
    "check_convergence",
    "check_kernel_only",
    "check_linearity",
    "check_noise_sweep",
    "check_stability",
    "check_terminal_time",
    "exact_solution",
    "run_property_suite",
    "sweep_errors",
]
