"""Rademacher expectation E|sum a_k e_k| and the F(s) Khinchine-type bound.

F(s) = (2/pi) int_0^inf (1 - |cos(t/sqrt(s))|^s) t^-2 dt is increasing with
limit sqrt(2/pi), and E|sum a_k e_k| >= sum a_k^2 F(a_k^-2) >= F(a_n^-2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._num import fsum, gl_panels
from .errors import CapabilityError, DomainError, ValidationError
from .weights import WeightVector

ENUM_CAP = 26
MC_MIN_SAMPLES = 10**4
SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


@dataclass(frozen=True)
class RademacherSummary:
    expectation: float
    method: str  # "exact" | "monte_carlo"
    n: int
    samples: int | None = None
    stderr: float | None = None

    def to_json_dict(self) -> dict:
        out = {"n": self.n, "method": self.method, "expectation": self.expectation}
        if self.method == "monte_carlo":
            out["samples"] = self.samples
            out["stderr"] = self.stderr
        return out


@dataclass(frozen=True)
class KhinchineBound:
    f_of_an: float
    weighted_sum: float
    quad_error: float

    def to_json_dict(self) -> dict:
        return {"f_of_an": self.f_of_an, "weighted_sum": self.weighted_sum,
                "quad_error": self.quad_error}


def exact_expectation(A: WeightVector) -> RademacherSummary:
    """2^-n sum over all sign vectors of |sum a_k e_k|.

    The e <-> -e symmetry halves the enumeration (last sign fixed to +1);
    sums are built by vectorized doubling and reduced pairwise.
    """
    if A.n > ENUM_CAP:
        raise CapabilityError(
            f"exact enumeration capped at n = {ENUM_CAP}; use mc_expectation")
    sums = np.array([A.a[-1]])
    for w in A.a[:-1]:
        sums = np.concatenate([sums + w, sums - w])
    exp = float(np.mean(np.abs(sums)))
    return RademacherSummary(expectation=exp, method="exact", n=A.n)


def mc_expectation(A: WeightVector, samples: int, seed: int,
                   stream: int = 0) -> RademacherSummary:
    """Sample mean of |sum a_k e_k| over seeded Rademacher draws."""
    if samples < MC_MIN_SAMPLES:
        raise ValidationError(f"need at least {MC_MIN_SAMPLES} samples")
    rng = np.random.Generator(np.random.Philox(seed=[int(seed), int(stream)]))
    part_sum: list[float] = []
    part_sq: list[float] = []
    done = 0
    chunk = 1 << 16
    while done < samples:
        k = min(chunk, samples - done)
        signs = rng.integers(0, 2, size=(k, A.n)).astype(np.float64) * 2.0 - 1.0
        z = np.abs(signs @ A.a)
        part_sum.append(float(np.sum(z)))
        part_sq.append(float(np.sum(z * z)))
        done += k
    mean = fsum(part_sum) / samples
    var = max(fsum(part_sq) / samples - mean * mean, 0.0)
    stderr = math.sqrt(var / samples)
    return RademacherSummary(expectation=mean, method="monte_carlo", n=A.n,
                             samples=samples, stderr=stderr)


# ---------------------------------------------------------------------------
# F(s) quadrature

_BUMP_SPLIT = 64.0   # above this s, isolate the |cos|^s bumps
_BUMP_HALF_WIDTH = 12.0  # |cos u|^s <= exp(-d^2/2) in bump coordinates


def _log_abs_cos(u: np.ndarray) -> np.ndarray:
    """ln|cos(u)| with a series branch so tiny u do not round to ln(1)."""
    c = np.abs(np.cos(u))
    with np.errstate(divide="ignore"):
        out = np.log(c)
    small = np.abs(u) < 1e-4
    us = u[small]
    out[small] = -us * us / 2.0 - us**4 / 12.0
    return out


def _one_minus_cos_pow(t: np.ndarray, s: float) -> np.ndarray:
    """(1 - |cos(t/sqrt(s))|^s) / t^2, the F integrand before the 2/pi."""
    return -np.expm1(s * _log_abs_cos(t / math.sqrt(s))) / (t * t)


def _cos_pow(t: np.ndarray, s: float) -> np.ndarray:
    return np.exp(s * _log_abs_cos(t / math.sqrt(s))) / (t * t)


def _gl_value(f, lo: np.ndarray, hi: np.ndarray, order: int) -> float:
    from ._num import gauss_legendre

    x, w = gauss_legendre(order)
    half = 0.5 * (hi - lo)
    mid = lo + half
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return float(np.dot(weights, f(nodes)))


def _two_level(f, edges: np.ndarray) -> tuple[float, float]:
    lo, hi = edges[:-1], edges[1:]
    v16 = _gl_value(f, lo, hi, 16)
    v8 = _gl_value(f, lo, hi, 8)
    return v16, abs(v16 - v8)


def f_function(s: float, tol: float = 1e-4) -> tuple[float, float]:
    """F(s) with a certified error bound (quadrature estimate + 1/T tail).

    The cut T depends on tol only, so values scanned across s share the same
    truncation and the monotonicity of F survives in the computed values.
    """
    if s <= 0:
        raise DomainError("F(s) requires s > 0")
    if tol <= 0:
        raise ValidationError("tol must be positive")
    s = float(s)
    p = math.pi * math.sqrt(s)  # period of |cos(t/sqrt(s))| in t
    t_req = 4.0 / (math.pi * tol)  # tail 2/(pi T) <= tol/2
    n_half = max(int(math.ceil(t_req / p - 0.5)), 1)
    T = (n_half + 0.5) * p  # snap the cut to a kink so bumps stay whole

    # first region [0, p/2]: combined integrand, geometric panels resolve
    # both the t ~ O(1) transition and the kink scale
    lo_edge = min(0.25, p / 16.0)
    edges0 = np.concatenate([[0.0], np.geomspace(lo_edge, p / 2.0, 24)])
    v0, e0 = _two_level(lambda t: _one_minus_cos_pow(t, s), edges0)

    if s < _BUMP_SPLIT:
        # modest period: composite panels over every kink interval, 8 panels
        # per interval so no panel is wider than p/8
        kinks = (np.arange(n_half + 1) + 0.5) * p
        sub = np.linspace(0.0, 1.0, 9)
        grid = kinks[:-1, None] + (kinks[1:] - kinks[:-1])[:, None] * sub[None, :]
        lo = grid[:, :-1].ravel()
        hi = grid[:, 1:].ravel()
        f = lambda t: _one_minus_cos_pow(t, s)
        v1 = _gl_value(f, lo, hi, 16)
        e1 = abs(v1 - _gl_value(f, lo, hi, 8))
        value = (2.0 / math.pi) * (v0 + v1)
        est = (2.0 / math.pi) * (e0 + e1)
    else:
        # long period: 1/t^2 integrates exactly; |cos|^s only matters inside
        # width-12 bumps around t = k p (|cos u|^s <= exp(-d^2/2) outside)
        flat = 2.0 / p - 1.0 / T
        w = _BUMP_HALF_WIDTH
        t0 = np.arange(1, n_half + 1) * p
        offs = np.linspace(-w, w, 25)
        grid = t0[:, None] + offs[None, :]
        lo = grid[:, :-1].ravel()
        hi = grid[:, 1:].ravel()
        f = lambda t: _cos_pow(t, s)
        bump_v = _gl_value(f, lo, hi, 16)
        bump_e = abs(bump_v - _gl_value(f, lo, hi, 8))
        value = (2.0 / math.pi) * (v0 + flat - bump_v)
        est = (2.0 / math.pi) * (e0 + bump_e)

    quad_error = est + 2.0 / (math.pi * T)
    return value, quad_error


def khinchine_bounds(A: WeightVector, tol: float = 1e-4) -> KhinchineBound:
    """Lower-bound chain F(a_n^-2) <= sum a_k^2 F(a_k^-2) (<= E)."""
    cache: dict[float, tuple[float, float]] = {}

    def f_at(s: float) -> tuple[float, float]:
        if s not in cache:
            cache[s] = f_function(s, tol)
        return cache[s]

    weighted = 0.0
    weighted_err = 0.0
    for ak in A.a:
        v, e = f_at(float(ak) ** -2)
        weighted += float(ak) ** 2 * v
        weighted_err += float(ak) ** 2 * e
    f_an, err_an = f_at(float(A.a[-1]) ** -2)
    return KhinchineBound(f_of_an=f_an, weighted_sum=weighted,
                          quad_error=err_an + weighted_err)
