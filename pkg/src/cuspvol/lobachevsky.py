"""Lobachevsky function and its functional identities.

Л(x) = ½ Σ_{r≥1} sin(2rx)/r² = −∫₀ˣ log|2 sin t| dt.

The evaluator reduces the argument to [0, π/2] and sums the Fourier series in
regrouped form: with θ = 2x the series ½ Cl₂(θ) rearranges into

    Cl₂(θ) = θ − θ log θ + Σ_{n≥1} ζ(2n) / (n(2n+1)) · θ^{2n+1} / (2π)^{2n},

whose terms decay at least like 4^{-n} for θ ≤ π, so the tail bound is a
geometric series and a few dozen terms reach 1e-15.  The plain partial sum
is kept as :func:`lob_fourier` for cross-checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import integrate
from scipy.special import zeta

DEFAULT_TOL = 1e-12
MAX_TERMS = 10_000_000
_MAX_N = 200
# ζ(2n) for n = 0..MAX_N+1, index 0 unused
_ZETA_EVEN = tuple(float(zeta(2 * n)) if n else 0.0 for n in range(_MAX_N + 2))

__all__ = [
    "DEFAULT_TOL",
    "LobResult",
    "lob",
    "lob_value",
    "lob_fourier",
    "lob_integral_oracle",
    "distribution_residual",
    "reduce_angle",
]


@dataclass(frozen=True)
class LobResult:
    value: float
    terms_used: int
    est_error: float

    def __float__(self) -> float:
        return self.value


def _check_finite(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"non-finite angle: {x!r}")
    return x


def reduce_angle(x: float) -> tuple[int, float]:
    """Return (sign, y) with y in [0, π/2] and Л(x) = sign·Л(y)."""
    x = _check_finite(x)
    sign = 1
    r = math.fmod(x, math.pi)
    if r < 0.0:
        r += math.pi
    if r >= math.pi:
        r = 0.0
    if r > math.pi / 2:
        # Л(π − y) = −Л(y)
        r = math.pi - r
        sign = -sign
    return sign, r


def _regrouped(y: float, tol: float) -> tuple[float, int, float]:
    theta = 2.0 * y
    if theta == 0.0:
        return 0.0, 0, 0.0
    q = (theta / (2.0 * math.pi)) ** 2  # ≤ 1/4 on the reduced range
    total = theta - theta * math.log(theta)
    power = theta
    n = 0
    bound = math.inf
    while n < _MAX_N:
        n += 1
        power *= q
        total += _ZETA_EVEN[n] / (n * (2 * n + 1)) * power
        # ζ(2m) ≤ ζ(2n+2) and 1/(m(2m+1)) decreasing for m > n
        nxt = _ZETA_EVEN[n + 1] / ((n + 1) * (2 * n + 3)) * power * q
        bound = 0.5 * nxt / (1.0 - q)
        if bound <= 0.25 * tol:
            break
    # rounding error of the accumulated sum
    bound += 8.0 * n * math.ulp(max(abs(total), 1.0))
    return 0.5 * total, n, bound


def lob(x: float, tol: float = DEFAULT_TOL) -> LobResult:
    """Evaluate Л(x) with an error estimate below ``tol``."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    sign, y = reduce_angle(x)
    value, n, err = _regrouped(y, tol)
    return LobResult(sign * value, n, err)


def lob_value(x: float, tol: float = DEFAULT_TOL) -> float:
    return lob(x, tol).value


def lob_fourier(x: float, tol: float = 1e-6) -> LobResult:
    """Direct partial sum of ½ Σ sin(2rx)/r² with N chosen from the 1/N tail bound.

    N is capped at 10⁷; when the cap binds the reported error exceeds ``tol``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    sign, y = reduce_angle(x)
    n = min(MAX_TERMS, max(1, math.ceil(0.5 / tol)))
    import numpy as np

    r = np.arange(1, n + 1, dtype=float)
    s = 0.5 * float(np.sum(np.sin(2.0 * r * y) / (r * r)))
    return LobResult(sign * s, n, 0.5 / n)


def _smooth_part(t: float) -> float:
    # log(2 sin t) − log t − log(π − t), analytic on [0, π]
    if t < 1e-4:
        return math.log(2.0 / math.pi) + (t / math.pi) + (t / math.pi) ** 2 / 2 - t * t / 6
    s = math.pi - t
    if s < 1e-4:
        return math.log(2.0 / math.pi) + (s / math.pi) + (s / math.pi) ** 2 / 2 - s * s / 6
    return math.log(2.0 * math.sin(t)) - math.log(t) - math.log(s)


def lob_integral_oracle(x: float, tol: float = DEFAULT_TOL) -> float:
    """−∫₀ˣ log|2 sin t| dt by adaptive quadrature, for x in [0, π].

    The logarithmic singularities at 0 and π are split off and integrated in
    closed form; quadrature only sees the smooth remainder.
    """
    x = _check_finite(x)
    if not tol > 0:
        raise ValueError("tol must be positive")
    if x < 0.0 or x > math.pi:
        raise ValueError("oracle defined on [0, π]")
    if x == 0.0:
        return 0.0
    pi = math.pi

    def xlogx(a: float) -> float:
        return a * math.log(a) if a > 0.0 else 0.0

    sing0 = xlogx(x) - x  # ∫₀ˣ log t dt
    sing1 = (xlogx(pi) - pi) - (xlogx(pi - x) - (pi - x))  # ∫₀ˣ log(π − t) dt
    smooth, _ = integrate.quad(_smooth_part, 0.0, x, epsabs=0.1 * tol, epsrel=1e-15, limit=200)
    return -(sing0 + sing1 + smooth)


def distribution_residual(k: int, x: float, tol: float = DEFAULT_TOL) -> float:
    """|(1/k)Л(kx) − Σ_{r<k} Л(x + rπ/k)|."""
    if int(k) != k or k < 1:
        raise ValueError("k must be a positive integer")
    k = int(k)
    lhs = lob_value(k * x, tol) / k
    rhs = math.fsum(lob_value(x + r * math.pi / k, tol) for r in range(k))
    return abs(lhs - rhs)
