"""The Mahler-gap functional G(A) = phi_A(0) * E|sum a_k e_k| - 1.

Ball's reformulation of the 2n+2-facet case of Mahler's conjecture is
G(A) >= 0 for every unit weight vector.  This module verifies it pointwise,
scans random families under a ratio cap, runs a derivative-free local
search for near-violations, and probes the empirical threshold N0(c0) via
the proof-route slack max B - 1/F(a_n^-2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .boxspline import TRUNCATED_POWER_CAP, max_value
from .errors import ValidationError
from .rademacher import ENUM_CAP, exact_expectation, khinchine_bounds, mc_expectation
from .weights import FamilySpec, WeightVector, center, generate, make_unit, ratio

GAUSS_PEAK = math.sqrt(6.0 / math.pi)
RECIP_LIMIT = math.sqrt(math.pi / 2.0)  # limit of 1/F(s)

_DEFAULT_MC_SAMPLES = 4 * 10**5


def epsilon0_cap() -> float:
    """Upper cap for the margin constant: (sqrt(6/pi) - sqrt(pi/2)) / 2."""
    return 0.5 * (GAUSS_PEAK - RECIP_LIMIT)


@dataclass
class GapReport:
    A: WeightVector
    phi0: float
    expectation: float
    gap: float
    phi_method: str
    exp_method: str
    lower_bound_gap: float
    tolerance: float

    def to_json_dict(self) -> dict:
        return {
            "A": self.A.to_json(),
            "phi0": self.phi0,
            "expectation": self.expectation,
            "gap": self.gap,
            "phi_method": self.phi_method,
            "exp_method": self.exp_method,
            "lower_bound_gap": self.lower_bound_gap,
            "tolerance": self.tolerance,
        }


def _expectation(A: WeightVector, exp_method: str, mc_samples: int, seed: int):
    if exp_method == "auto":
        exp_method = "exact" if A.n <= ENUM_CAP else "monte_carlo"
    if exp_method == "exact":
        return exact_expectation(A)
    if exp_method == "monte_carlo":
        return mc_expectation(A, mc_samples, seed)
    raise ValidationError(f"unknown expectation method {exp_method!r}")


def _gap_value(A: WeightVector) -> float:
    """phi_A(0) * E - 1 without the F-bound quadrature (fast scan path)."""
    return max_value(A) * exact_expectation(A).expectation - 1.0


def gap(A: WeightVector, phi_method: str = "auto", exp_method: str = "auto",
        f_tol: float = 1e-4, mc_samples: int = _DEFAULT_MC_SAMPLES,
        seed: int = 0) -> GapReport:
    """Gap report with both the true gap and the F(a_n^-2) lower-bound gap."""
    phi0 = max_value(A, phi_method)
    summary = _expectation(A, exp_method, mc_samples, seed)
    g = phi0 * summary.expectation - 1.0
    kb = khinchine_bounds(A, f_tol)
    lower = phi0 * kb.f_of_an - 1.0
    phi_err = 1e-9 if A.n <= TRUNCATED_POWER_CAP else 1e-5
    exp_err = 4.0 * summary.stderr if summary.stderr is not None else 1e-12
    tol = phi_err * summary.expectation + phi0 * exp_err + 1e-12
    resolved_phi = ("truncated_power" if A.n <= TRUNCATED_POWER_CAP
                    else "convolution") if phi_method == "auto" else phi_method
    return GapReport(A=A, phi0=phi0, expectation=summary.expectation, gap=g,
                     phi_method=resolved_phi, exp_method=summary.method,
                     lower_bound_gap=lower, tolerance=tol)


def verify(A: WeightVector, tol: float = 1e-9) -> tuple[bool, GapReport]:
    """True iff the computed gap is >= -tol (two-sided: equality cases exist)."""
    report = gap(A)
    return report.gap >= -tol, report


def confirm_counterexample(A: WeightVector, tol: float = 1e-9) -> tuple[bool, list[GapReport]]:
    """Re-verify a negative gap with all phi evaluators before reporting it.

    Returns (confirmed, reports).  A negative gap is the scientific payload
    of this artifact, so it is double-checked, never swallowed.
    """
    methods = ["truncated_power", "convolution", "fourier"]
    if A.n > TRUNCATED_POWER_CAP:
        methods.remove("truncated_power")
    reports = [gap(A, phi_method=m, f_tol=1e-6) for m in methods]
    confirmed = all(r.gap < -max(tol, r.tolerance) for r in reports)
    return confirmed, reports


@dataclass
class ScanSummary:
    n: int
    c0: float
    trials: int
    seed: int
    min_report: GapReport
    argmin_trial: int
    histogram_edges: list[float]
    histogram_counts: list[int]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n, "c0": self.c0, "trials": self.trials, "seed": self.seed,
            "argmin_trial": self.argmin_trial,
            "min_report": self.min_report.to_json_dict(),
            "histogram": {"edges": self.histogram_edges,
                          "counts": self.histogram_counts},
        }


def scan_random(n: int, c0: float, trials: int, seed: int,
                collect=None) -> ScanSummary:
    """Minimum gap over seeded random vectors with ratio cap c0.

    `collect`, if given, receives (trial, gap, ratio) tuples for CSV export.
    """
    if trials < 1:
        raise ValidationError("trials must be >= 1")
    child_seeds = np.random.SeedSequence(int(seed)).generate_state(trials)
    gaps = np.empty(trials)
    best_i = 0
    for i, s in enumerate(child_seeds):
        A = generate(FamilySpec("random", n, c0=c0, seed=int(s)))
        g = _gap_value(A)
        gaps[i] = g
        if g < gaps[best_i]:
            best_i = i
        if collect is not None:
            collect((i, g, ratio(A)))
    best = gap(generate(FamilySpec("random", n, c0=c0,
                                   seed=int(child_seeds[best_i]))))
    counts, edges = np.histogram(gaps, bins=min(20, trials))
    return ScanSummary(n=n, c0=c0, trials=trials, seed=seed, min_report=best,
                       argmin_trial=best_i,
                       histogram_edges=[float(e) for e in edges],
                       histogram_counts=[int(c) for c in counts])


def _project_ratio(a: np.ndarray, c0: float) -> np.ndarray:
    """Clamp small weights up to a_max/c0, then re-normalize (twice)."""
    for _ in range(2):
        a = np.maximum(a, a.max() / c0)
        a = np.sort(a) / np.sqrt(np.sum(a * a))
    return a


def minimize_gap(n: int, c0: float, start: WeightVector,
                 budget: int = 2000) -> tuple[GapReport, bool]:
    """Nelder-Mead descent of the gap over the squared-weight simplex chart.

    Weights are parameterized as |q|/||q|| so positivity and unit norm hold
    by construction; the ratio cap is enforced by projection.  Returns
    (best report, budget_exhausted); never claims global optimality.
    """
    if ratio(start) > c0 * (1 + 1e-12):
        raise ValidationError("start vector violates the ratio cap")

    def weights_of(q: np.ndarray) -> WeightVector:
        q = np.abs(q)
        q = np.maximum(q, 1e-12)
        return WeightVector(_project_ratio(q / np.sqrt(np.sum(q * q)), c0))

    def objective(q: np.ndarray) -> float:
        return _gap_value(weights_of(q))

    res = minimize(objective, np.array(start.a), method="Nelder-Mead",
                   options={"maxfev": budget, "xatol": 1e-10, "fatol": 1e-13})
    best = gap(weights_of(res.x))
    start_rep = gap(start)
    if start_rep.gap < best.gap:  # descent property: never worse than start
        best = start_rep
    return best, not res.success


@dataclass
class ThresholdRow:
    n: int
    min_gap: float
    argmin: WeightVector
    min_slack: float  # proof-route slack: max B - 1/F(a_n^-2)
    slack_tol: float  # certified quadrature error propagated through 1/F

    def to_json_dict(self) -> dict:
        return {"n": self.n, "min_gap": self.min_gap,
                "argmin": self.argmin.to_json(), "min_slack": self.min_slack,
                "slack_tol": self.slack_tol}


@dataclass
class ThresholdReport:
    c0: float
    family_kind: str
    n_range: tuple[int, int]
    rows: list[ThresholdRow]
    empirical_N0: int | None

    def to_json_dict(self) -> dict:
        return {
            "c0": self.c0, "family": self.family_kind,
            "n_range": list(self.n_range),
            "rows": [r.to_json_dict() for r in self.rows],
            "empirical_N0": self.empirical_N0,
        }


def threshold_probe(c0: float, family_kind: str, n_range, trials_per_n: int = 50,
                    seed: int = 0, tol: float = 1e-9,
                    f_tol: float = 1e-4) -> ThresholdReport:
    """Empirical N0(c0): least n from which the proof-route slack stays >= 0.

    The slack max_x B(x|A) - 1/F(a_n^-2) is the sufficient condition the
    asymptotic argument certifies; it can be negative at small n even where
    the true gap is positive, and both are reported.
    """
    if c0 < 1.0:
        raise ValidationError("c0 must be >= 1")
    ns = list(n_range)
    if not ns:
        raise ValidationError("n range is empty")
    rows = []
    for n in ns:
        if family_kind == "random" and n > 1:
            seeds = np.random.SeedSequence([int(seed), n]).generate_state(trials_per_n)
            vecs = [generate(FamilySpec("random", n, c0=c0, seed=int(s)))
                    for s in seeds]
        elif family_kind == "geometric" and n > 1:
            q = float(c0) ** (1.0 / (n - 1))
            vecs = [generate(FamilySpec("geometric", n, q=q))]
        else:  # equal (and n = 1, where every family collapses)
            vecs = [generate(FamilySpec("equal", n))]
        min_gap = math.inf
        argmin = vecs[0]
        min_slack = math.inf
        slack_tol = tol
        for A in vecs:
            phi0 = max_value(A)
            g = phi0 * exact_expectation(A).expectation - 1.0 \
                if A.n <= ENUM_CAP else gap(A, f_tol=f_tol).gap
            kb = khinchine_bounds(A, f_tol)
            slack = phi0 - 1.0 / kb.f_of_an
            if g < min_gap:
                min_gap, argmin = g, A
            if slack < min_slack:
                min_slack = slack
                # 1/F error propagated from the certified quadrature error
                slack_tol = tol + kb.quad_error / kb.f_of_an**2
        rows.append(ThresholdRow(n=n, min_gap=min_gap, argmin=argmin,
                                 min_slack=min_slack, slack_tol=slack_tol))
    # least n such that the slack is non-negative (within the certified
    # quadrature error) there and at every larger n
    n0 = None
    for row in reversed(rows):
        if row.min_slack >= -row.slack_tol:
            n0 = row.n
        else:
            break
    return ThresholdReport(c0=c0, family_kind=family_kind,
                           n_range=(ns[0], ns[-1]), rows=rows, empirical_N0=n0)
