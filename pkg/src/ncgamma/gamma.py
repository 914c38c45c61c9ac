"""Gamma function family: Gamma, log Gamma, the Stirling correction S(x),
the regulated gamma function, gamma quotients and the term D(a, x).

Everything is built from two coefficient-free pieces:

* the Bernoulli series of S(x) for x >= 8, with the first neglected term as
  the error bound, extended to smaller x by the exact one-step relation
  S(t) = S(t + 1) + (t + 1/2) log(1 + 1/t) - 1;
* the Maclaurin series of log Gamma(2 + z) in z for |z| <= 1/2, whose
  coefficients are zeta(k) - 1 computed once at import.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .types import DomainError, PoleError

LOG_SQRT_2PI = 0.91893853320467274178
SQRT_2PI = 2.5066282746310005024
EULER_GAMMA = 0.57721566490153286061

# largest x with Gamma(x) < DBL_MAX
GAMMA_OVERFLOW = 171.62437695630271
_MAX_TERMS = 12
_SERIES_MIN_X = 8.0
_S_REL_TOL = 1e-17


def _bernoulli_numbers(count):
    # Akiyama-Tanigawa; returns B_0..B_{count-1} with B_1 = +1/2
    out = []
    a = [Fraction(0)] * (count + 1)
    for m in range(count):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    return out


_B = _bernoulli_numbers(2 * _MAX_TERMS + 4)
# coefficients B_{2n+2} / ((2n+1)(2n+2)), n = 0 .. _MAX_TERMS
_S_COEF = [float(_B[2 * n + 2] / ((2 * n + 1) * (2 * n + 2))) for n in range(_MAX_TERMS + 1)]


@dataclass(frozen=True)
class StirlingCorrection:
    """S(x) from the Bernoulli series.

    ``terms_used`` terms of the series were summed at ``x + shift``;
    ``bound`` is the magnitude of the first neglected term, which on the
    positive axis exceeds the truncation error.  For x < 8 the series is
    taken at x + shift and the exact shift relation brings it back.
    """

    value: float
    terms_used: int
    bound: float
    shift: int = 0


def _s_series(x):
    """(S(x), N, bound) for x >= 8."""
    xi = 1.0 / x
    xi2 = xi * xi
    power = xi
    total = 0.0
    n = 0
    while True:
        total += _S_COEF[n] * power
        n += 1
        power *= xi2
        nxt = abs(_S_COEF[n] * power)
        if n == _MAX_TERMS or nxt <= _S_REL_TOL * abs(total):
            return total, n, nxt


def _shift_term(t):
    # S(t) - S(t + 1) = (t + 1/2) log(1 + 1/t) - 1 = sum_k u^(2k) / (2k + 1), u = 1/(2t + 1)
    u = 1.0 / (2.0 * t + 1.0)
    if u > 0.25:
        return (t + 0.5) * math.log1p(1.0 / t) - 1.0
    u2 = u * u
    power = u2
    total = 0.0
    k = 1
    while True:
        term = power / (2 * k + 1)
        total += term
        if term <= 1e-17 * total:
            return total
        power *= u2
        k += 1


def _stirling(x):
    """StirlingCorrection for any x > 0."""
    if x >= _SERIES_MIN_X:
        value, n, bound = _s_series(x)
        return StirlingCorrection(value, n, bound, 0)
    m = math.ceil(_SERIES_MIN_X - x)
    value, n, bound = _s_series(x + m)
    shift = 0.0
    for j in range(m - 1, -1, -1):
        shift += _shift_term(x + j)
    return StirlingCorrection(value + shift, n, bound, m)


def stirling_S(x: float) -> StirlingCorrection:
    """Stirling correction S(x) = log Gamma(x) - (x-1/2) log x + x - log(2 pi)/2, x >= 3."""
    if math.isnan(x) or x < 3.0:
        raise DomainError(f"stirling_S requires x >= 3, got {x!r}")
    if math.isinf(x):
        return StirlingCorrection(0.0, 1, 0.0, 0)
    return _stirling(x)


def _zeta_minus_one(k):
    # Euler-Maclaurin with N = 10 and six correction terms
    n = 10
    total = sum(j ** -k for j in range(2, n))
    total += n ** (1 - k) / (k - 1) + 0.5 * n ** -k
    rising = k  # k (k+1) ... (k + 2j - 2)
    for j in range(1, 7):
        total += float(_B[2 * j] / math.factorial(2 * j)) * rising * n ** (-k - 2 * j + 1)
        rising *= (k + 2 * j - 1) * (k + 2 * j)
    return total


# log Gamma(2 + z) = (1 - gamma) z + sum_{k>=2} (-1)^k (zeta(k) - 1) z^k / k
_LG2_COEF = [1.0 - EULER_GAMMA] + [
    (-1) ** k * _zeta_minus_one(k) / k for k in range(2, 60)
]


def _lgamma2(z):
    """log Gamma(2 + z) for |z| <= 1/2."""
    total = 0.0
    power = z
    for c in _LG2_COEF:
        term = c * power
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
        power *= z
    return total


def loggam(x: float) -> float:
    """log Gamma(x) for x > 0."""
    if math.isnan(x):
        return math.nan
    if x <= 0:
        raise DomainError(f"loggam requires x > 0, got {x!r}")
    if math.isinf(x):
        return math.inf
    if x < 0.5:
        return _lgamma2(x) - math.log1p(x) - math.log(x)
    if x < 1.5:
        return _lgamma2(x - 1.0) - math.log1p(x - 1.0)
    if x < 2.5:
        return _lgamma2(x - 2.0)
    if x < 12.0:
        n = math.floor(x - 1.5)
        t = x - n
        prod = 1.0
        for j in range(n):
            prod *= t + j
        return _lgamma2(t - 2.0) + math.log(prod)
    return (x - 0.5) * math.log(x) - x + LOG_SQRT_2PI + _s_series(x)[0]


def _sinpi(x):
    """sin(pi x) with exact reduction of x modulo 2."""
    r = math.fmod(x, 2.0)
    if r > 1.0:
        r -= 2.0
    elif r < -1.0:
        r += 2.0
    if r > 0.5:
        return math.sin(math.pi * (1.0 - r))
    if r < -0.5:
        return -math.sin(math.pi * (1.0 + r))
    return math.sin(math.pi * r)


@lru_cache(maxsize=None)
def _half_integer_gamma(n):
    # Gamma(n + 1/2) = (2n)! / (4^n n!) sqrt(pi)
    q = Fraction(math.factorial(2 * n), 4 ** n * math.factorial(n))
    return float(q) * math.sqrt(math.pi)


_SPLITTER = 134217729.0  # 2^27 + 1


def _two_prod(a, b):
    """a * b as an unevaluated sum p + e (Dekker)."""
    p = a * b
    t = _SPLITTER * a
    ah = t - (t - a)
    al = a - ah
    t = _SPLITTER * b
    bh = t - (t - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _rising_product(t, n):
    """prod_{j<n} (t + j) as (mantissa, exponent) carried in double-double."""
    hi, lo, e = 1.0, 0.0, 0
    for j in range(n):
        f = t + j
        p, err = _two_prod(hi, f)
        err += lo * f
        hi = p + err
        lo = err - (hi - p)
        if hi > 1e250:
            m, de = math.frexp(hi)
            lo = math.ldexp(lo, -de)
            hi, e = m, e + de
    return hi, lo, e


def _gamma_positive(x):
    if x > GAMMA_OVERFLOW:
        raise OverflowError(f"Gamma({x!r}) overflows")
    if x == math.floor(x):
        return float(math.factorial(int(x) - 1))
    if 2.0 * x == math.floor(2.0 * x):
        return _half_integer_gamma(int(x - 0.5))
    if x < 1.5:
        # Gamma(x) = Gamma(x + 1) / x, one or two steps down
        base = x + 1.0 if x >= 0.5 else x + 2.0
        g = math.exp(_lgamma2(base - 2.0))
        return g / x if x >= 0.5 else g / (x * (x + 1.0))
    # Gamma(t) prod (t + j) with t in [1.5, 2.5); every factor t + j is
    # exact, so only Gamma(t) and the final rounding contribute error
    n = math.floor(x - 1.5)
    t = x - n
    hi, lo, e = _rising_product(t, n)
    g = math.exp(_lgamma2(t - 2.0))
    return math.ldexp(g * hi + g * lo, e)


def gammafun(x: float) -> float:
    """Euler's Gamma(x) for real x.

    Raises PoleError at 0, -1, -2, ... and OverflowError when the result
    exceeds the double range (x > 171.624...).
    """
    if math.isnan(x):
        return math.nan
    if x <= 0 and x == math.floor(x):
        raise PoleError(f"Gamma has a pole at {x!r}")
    if x > 0:
        return _gamma_positive(x)
    # reflection Gamma(x) Gamma(1 - x) = pi / sin(pi x), with
    # Gamma(1 - x) = -x Gamma(-x) since 1 - x may not be exact
    s = _sinpi(x)
    y = -x
    if y + 1.0 <= GAMMA_OVERFLOW:
        return math.pi / (s * (y * _gamma_positive(y)))
    if y < _SPLIT_MAX:
        h, rest = _gamma_split(y)
        return math.pi / s / y / rest / h
    return math.copysign(0.0, s)


_SPLIT_MAX = 250.0


def _gamma_split(y):
    """(h, rest) with Gamma(y) = h * rest and neither factor overflowing, 12 <= y < 250."""
    h = y ** (0.5 * y - 0.25)
    return h, h * math.exp(-y) * SQRT_2PI * math.exp(_s_series(y)[0])


def gamstar(x: float) -> float:
    """Regulated gamma function Gamma(x) / (sqrt(2 pi / x) x^x e^-x), x > 0."""
    if math.isnan(x):
        return math.nan
    if x <= 0:
        raise DomainError(f"gamstar requires x > 0, got {x!r}")
    if math.isinf(x):
        return 1.0
    if x < 1.0:
        # exp(S(x)) loses |S(x)| ulps as x -> 0; Gamma(1 + x) is well
        # conditioned and x log x is small here
        return _gamma_positive(1.0 + x) / (math.sqrt(x) * SQRT_2PI) * math.exp(x - x * math.log(x))
    return math.exp(_stirling(x).value)


@dataclass(frozen=True)
class QuotientCoefficients:
    """Coefficients C_0..C_4 of the large-w expansion of Gamma(w+a)/Gamma(w+b)."""

    rho: float
    c: tuple


def quotient_coefficients(a: float, b: float) -> QuotientCoefficients:
    rho = 0.5 * (a - b + 1.0)
    r2 = rho * rho
    r3 = r2 * rho
    r4 = r3 * rho
    c = (
        1.0,
        rho / 12.0,
        rho / 1440.0 + r2 / 288.0,
        rho / 90720.0 + r2 / 17280.0 + r3 / 10368.0,
        rho / 4838400.0 + 101.0 * r2 / 87091200.0 + r3 / 414720.0 + r4 / 497664.0,
    )
    return QuotientCoefficients(rho, c)


def _ratgam(x, d):
    """Gamma(x) / Gamma(x + d) for large x and 0 < d < 1."""
    # a = 0, b = d, w = x + (d - 1)/2
    w = x + 0.5 * (d - 1.0)
    coef = quotient_coefficients(0.0, d).c
    w2 = w * w
    total = 0.0
    ratio = 1.0  # Gamma(d + 2n) / Gamma(d)
    wpow = 1.0
    for n, cn in enumerate(coef):
        total += (-1) ** n * cn * ratio / wpow
        ratio *= (d + 2 * n) * (d + 2 * n + 1)
        wpow *= w2
    return w ** (-d) * total


def _scaled_product(start, count):
    """(mantissa, exponent) of prod_{j<count} (start + j), without overflow."""
    m = 1.0
    e = 0
    for j in range(count):
        m *= start + j
        if m > 1e280:
            m, de = math.frexp(m)
            e += de
    return m, e


_RATGAM_MIN = 20.0
_RATGAM_SPAN = 10.0


def _log_abs_gamma(x):
    """(log |Gamma(x)|, sign) for x not a pole."""
    if x > 0:
        return loggam(x), 1.0
    s = _sinpi(x)
    return math.log(math.pi / abs(s)) - loggam(1.0 - x), math.copysign(1.0, s)


def quotgamm(x: float, y: float) -> float:
    """Gamma(x) / Gamma(y).

    Accurate for large nearby arguments and when both Gamma values overflow
    individually but their quotient is representable.
    """
    if math.isnan(x) or math.isnan(y):
        return math.nan
    for v in (x, y):
        if v <= 0 and v == math.floor(v):
            raise PoleError(f"Gamma has a pole at {v!r}")
    if x == y:
        return 1.0
    lo, hi = (x, y) if x < y else (y, x)
    d = hi - lo
    if lo >= _RATGAM_MIN and d < _RATGAM_SPAN:
        # Gamma(lo) / Gamma(hi) = ratgam(lo, f) / (lo + f)_n with d = n + f
        n = math.floor(d)
        f = d - n
        q = _ratgam(lo, f) if f > 0 else 1.0
        for j in range(n):
            q /= lo + f + j
        return q if x < y else 1.0 / q
    if abs(x) <= GAMMA_OVERFLOW and abs(y) <= GAMMA_OVERFLOW:
        gx = gammafun(x)
        gy = gammafun(y)
        if gx != 0.0 and gy != 0.0:
            return gx / gy
    if x > 0 and y > 0:
        return _quotient_positive(x, y)
    lx, sx = _log_abs_gamma(x)
    ly, sy = _log_abs_gamma(y)
    return sx * sy * math.exp(lx - ly)


def _quotient_positive(x, y):
    """Gamma(x)/Gamma(y) for positive arguments, at least one above the overflow point."""
    lo, hi = (x, y) if x < y else (y, x)
    d = hi - lo
    if lo >= _RATGAM_MIN:
        if d > 2000.0:
            q = 0.0
        else:
            # Gamma(lo)/Gamma(hi) = ratgam(lo, f) / (lo + f)_n with d = n + f
            n = math.floor(d)
            f = d - n
            q = _ratgam(lo, f) if f > 0 else 1.0
            m, e = _scaled_product(lo + f, n)
            if x < y:
                return math.ldexp(q / m, -e)
            if q == 0.0:
                raise OverflowError("Gamma quotient overflows")
            return math.ldexp(m / q, e)
    elif hi < _SPLIT_MAX:
        h, rest = _gamma_split(hi)
        q = _gamma_positive(lo) / rest / h
    else:
        q = 0.0
    if x < y:
        return q
    if q == 0.0 or 1.0 / q == math.inf:
        raise OverflowError("Gamma quotient overflows")
    return 1.0 / q


def log1pmx(t):
    """log(1 + t) - t, accurate for small |t|."""
    if abs(t) > 0.25:
        return math.log1p(t) - t
    # -t^2/2 + t^3/3 - ...
    total = 0.0
    power = t * t
    k = 2
    while True:
        term = power / k
        total += -term if k % 2 == 0 else term
        if abs(term) <= 1e-17 * abs(total):
            return total
        power *= t
        k += 1


def _minus_phi(a, x):
    """-(lambda - 1 - log lambda) times a, lambda = x / a; always <= 0."""
    lam = x / a
    if 0.5 <= lam <= 2.0:
        return a * log1pmx((x - a) / a)
    if lam == 0.0 or math.isinf(lam):
        return -(x - a - a * (math.log(x) - math.log(a)))
    return -(x - a - a * math.log(lam))


def log_dterm(a: float, x: float) -> float:
    """log D(a, x) = a log x - x - log Gamma(a + 1), a > 0, x > 0."""
    if a <= 0 or x < 0:
        raise DomainError("log_dterm requires a > 0 and x >= 0")
    if x == 0:
        return -math.inf
    # D = exp(-a phi) / (Gamma*(a) sqrt(2 pi a))
    return _minus_phi(a, x) - _stirling(a).value - LOG_SQRT_2PI - 0.5 * math.log(a)


def dterm(a: float, x: float) -> float:
    """D(a, x) = x^a e^-x / Gamma(a + 1) for a > 0, x >= 0.

    Returns 0.0 when the true value is below the double range.
    """
    if math.isnan(a) or math.isnan(x):
        return math.nan
    if a <= 0 or x < 0:
        raise DomainError(f"dterm requires a > 0 and x >= 0, got a={a!r}, x={x!r}")
    if x == 0:
        return 0.0
    if a < 10.0 and x <= 1400.0 and a + 1.0 <= GAMMA_OVERFLOW:
        h = x ** (0.5 * a) * math.exp(-0.5 * x)
        if 0.0 < h < math.inf:
            return h * h / _gamma_positive(a + 1.0)
    logd = log_dterm(a, x)
    return math.exp(logd) if logd > -746.0 else 0.0
