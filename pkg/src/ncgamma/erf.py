"""Error function, complementary error function and their inverses.

erf/erfc use the Maclaurin series for |x| <= 0.5 and, above that, the
continued fraction of the scaled function e^{x^2} erfc(x) evaluated
backwards from a depth chosen from x.  The inverse of erfc uses the
series of inverse erf around y = 1 and a Halley iteration elsewhere.
"""

import math

from .types import DomainError, ProbabilityPair

SQRT_PI = 1.7724538509055160273
TWO_OVER_SQRT_PI = 1.1283791670955125739
SQRT2 = 1.4142135623730950488

_SERIES_LIMIT = 0.5
# beyond this erfc(x) < 1e-300 is impossible to distinguish from underflow
_ERFC_UNDERFLOW = 27.3


def exp_neg_square(x):
    """exp(-x*x) without the rounding error of forming x*x."""
    # split x so that hi*hi is exact; x^2 = hi^2 + (x - hi)(x + hi)
    hi = math.ldexp(round(math.ldexp(x, 20 - math.frexp(x)[1])), math.frexp(x)[1] - 20)
    lo = x - hi
    return math.exp(-hi * hi) * math.exp(-lo * (x + hi))


def _erf_series(x):
    # 2/sqrt(pi) * sum (-1)^n x^(2n+1) / (n! (2n+1)), |x| <= 0.5
    x2 = x * x
    term = x
    total = x
    n = 0
    while True:
        n += 1
        term *= -x2 / n
        contrib = term / (2 * n + 1)
        total += contrib
        if abs(contrib) <= 1e-17 * abs(total):
            break
    return TWO_OVER_SQRT_PI * total


def _erfcx_cf(x):
    # even contraction of the Laplace continued fraction, x > 0.5:
    # erfcx(x) = (2x/sqrt(pi)) / (2x^2+1 - 1*2/(2x^2+5 - 3*4/(2x^2+9 - ...)))
    depth = int((9.5 / x) ** 2) + 10
    x2 = 2.0 * x * x
    t = 0.0
    for n in range(depth, 0, -1):
        t = (2 * n - 1) * (2 * n) / (x2 + 4 * n + 1 - t)
    return TWO_OVER_SQRT_PI * x / (x2 + 1.0 - t)


def erf(x: float) -> float:
    """Error function 2/sqrt(pi) * int_0^x exp(-t^2) dt."""
    if math.isnan(x):
        return math.nan
    ax = abs(x)
    if ax <= _SERIES_LIMIT:
        return _erf_series(x)
    if ax >= 6.0:
        return math.copysign(1.0, x)
    v = 1.0 - _erfcx_cf(ax) * exp_neg_square(ax)
    return v if x > 0 else -v


def erfc(x: float) -> float:
    """Complementary error function 1 - erf(x), accurate in the right tail."""
    if math.isnan(x):
        return math.nan
    if abs(x) <= _SERIES_LIMIT:
        return 1.0 - _erf_series(x)
    if x > 0:
        if x > _ERFC_UNDERFLOW:
            return 0.0
        return _erfcx_cf(x) * exp_neg_square(x)
    if x < -6.0:
        return 2.0
    return 2.0 - _erfcx_cf(-x) * exp_neg_square(x)


def erfc_scaled(x: float) -> float:
    """exp(x^2) * erfc(x) for x > 0; never underflows.

    Raises DomainError for x <= 0 (the scaled form is only offered for
    positive arguments).
    """
    if math.isnan(x):
        raise DomainError("erfc_scaled: NaN argument")
    if x <= 0:
        raise DomainError("erfc_scaled is defined here for x > 0 only")
    if x <= _SERIES_LIMIT:
        return math.exp(x * x) * (1.0 - _erf_series(x))
    if x > 1e8:
        # continued fraction has converged to its leading terms
        return 1.0 / (SQRT_PI * x) * (1.0 - 0.5 / (x * x))
    return _erfcx_cf(x)


def _erfcx_any(x):
    if x > _SERIES_LIMIT:
        return _erfcx_cf(x)
    return math.exp(x * x) * erfc(x)


def _inverf_coefficients(n):
    # c_0 = 1, c_k = sum_{m<k} c_m c_{k-1-m} / ((m+1)(2m+1));
    # inverf(z) = sum c_k/(2k+1) (sqrt(pi) z/2)^(2k+1)
    c = [1.0]
    for k in range(1, n):
        c.append(sum(c[m] * c[k - 1 - m] / ((m + 1) * (2 * m + 1)) for m in range(k)))
    return [ck / (2 * k + 1) for k, ck in enumerate(c)]


_INVERF_COEF = _inverf_coefficients(40)


def _inverfc_series(y):
    # odd series in t = sqrt(pi)/2 (1 - y); t + t^3/3 + 7 t^5/30 + ...
    t = 0.5 * SQRT_PI * (1.0 - y)
    t2 = t * t
    total = 0.0
    power = t
    for coef in _INVERF_COEF:
        term = coef * power
        total += term
        if abs(term) < 1e-17 * abs(total):
            break
        power *= t2
    return total


def _halley_erfc(x, y, max_iter=10):
    # f = erfc(x) - y, f' = -2/sqrt(pi) e^{-x^2}, f''/f' = -2x
    for _ in range(max_iter):
        e = erfc(x)
        if e == 0.0:
            break
        r = 1.0 - y / e
        h = -0.5 * SQRT_PI * _erfcx_any(x) * r
        dx = h / (1.0 + x * h)
        x -= dx
        if abs(dx) <= 1e-15 * max(1.0, abs(x)):
            break
    return x


def inverfc(y: float) -> float:
    """Inverse of erfc: the x with erfc(x) = y, for 0 < y < 2."""
    if math.isnan(y) or not 0.0 < y < 2.0:
        raise DomainError(f"inverfc requires 0 < y < 2, got {y!r}")
    if y > 1.0:
        return -inverfc(2.0 - y)
    if abs(1.0 - y) <= 0.25:
        x = _inverfc_series(y)
        if x == 0.0:
            return x
        return _halley_erfc(x, y, max_iter=1)
    ly = -math.log(y)
    x0 = math.sqrt(-math.log(y * SQRT_PI * math.sqrt(ly)))
    return _halley_erfc(x0, y)


def normal_cdf(x: float) -> ProbabilityPair:
    """Standard normal lower and upper tail probabilities at x."""
    return ProbabilityPair(0.5 * erfc(-x / SQRT2), 0.5 * erfc(x / SQRT2))


def normal_quantile(p: float) -> float:
    """x such that the standard normal lower tail equals p, 0 < p < 1."""
    if math.isnan(p) or not 0.0 < p < 1.0:
        raise DomainError(f"normal_quantile requires 0 < p < 1, got {p!r}")
    return -SQRT2 * inverfc(2.0 * p)
