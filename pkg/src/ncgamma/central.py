"""Central gamma and chi-square distribution functions P(a, x), Q(a, x) and
their inverses with respect to x.

The smaller of P and Q is always computed directly and the other one from
P + Q = 1.  Four methods cover the (a, x) quadrant:

* a >= 30 and |eta| <= 1: uniform asymptotic expansion in erfc and Gamma*(a);
* x < 1.5 and a below the transition curve: Q from the series of the lower
  incomplete gamma function, written so that small a loses no accuracy;
* a above the transition curve: P = D(a, x) sum x^k / (a+1)_k;
* otherwise: Q = a D(a, x) / x times Legendre's continued fraction.
"""

import math
import sys
from functools import lru_cache

from . import erf as _erf
from .asymptotic import (
    _EXACT_ORDER,
    eta_to_lambda,
    f_series_exact,
    gamma_frame,
    invert_expansion,
    lambda_to_eta,
    scheme_from_series,
)
from .gamma import LOG_SQRT_2PI, _lgamma2, _minus_phi, _stirling, dterm, log_dterm, loggam
from .types import ComputationStatus, DistributionKind, ProbabilityPair, Status, to_kind

A_MIN = 1e-300
UNIFORM_MIN_A = 30.0
UNIFORM_MAX_ETA = 1.0
_UNIFORM_TERMS = 10
_LOG_HALF = math.log(0.5)
_LN2 = math.log(2.0)
# subnormal results carry too few digits to take their logarithm
_DBL_MIN = sys.float_info.min

INV_MIN_PROB = 1e-150
INV_MAX_ITER = 35
PQ_TOLERANCE = 1e-10


@lru_cache(maxsize=None)
def _uniform_tables():
    # C_n(eta) as float polynomials, trimmed where coefficients stop mattering on |eta| <= 1
    _, cs = scheme_from_series(f_series_exact(_EXACT_ORDER), _UNIFORM_TERMS - 1)
    tables = []
    for c in cs:
        coef = [float(v) for v in c]
        while coef and abs(coef[-1]) < 1e-22:
            coef.pop()
        tables.append(coef)
    return tables


def _horner(coef, x):
    s = 0.0
    for c in reversed(coef):
        s = s * x + c
    return s


def _transition(x):
    # P is the smaller tail roughly when a exceeds this curve
    if x >= 0.5:
        return x
    # log(x) + log(1/2) rather than log(x/2), which fails for subnormal x
    return _LOG_HALF / (math.log(x) + _LOG_HALF)


def _lgamma1p(a):
    """log Gamma(1 + a), accurate near a = 0 and a = 1."""
    if a < 0.5:
        return _lgamma2(a) - math.log1p(a)
    if a < 1.5:
        return _lgamma2(a - 1.0)
    return loggam(1.0 + a)


def _uniform(a, x, eta):
    """(lower, log g, b): the smaller tail is exp(log g) * b."""
    tables = _uniform_tables()
    s = 0.0
    inv_a = 1.0 / a
    for coef in reversed(tables):
        s = s * inv_a + _horner(coef, eta)
    s /= math.sqrt(2.0 * math.pi * a) * math.exp(_stirling(a).value)
    log_gauss = _minus_phi(a, x)  # -a eta^2 / 2
    z = abs(eta) * math.sqrt(0.5 * a)
    half_erfcx = 0.5 * (_erf.erfc_scaled(z) if z > 0 else 1.0)
    bracket = half_erfcx + s if eta < 0 else half_erfcx - s
    return eta < 0, log_gauss, bracket


def _q_small_a(a, x):
    """Q(a, x) for x < 1.5 and small a."""
    lgam = _lgamma1p(a)
    g = math.expm1(-lgam)  # 1/Gamma(1+a) - 1
    xa = math.exp(a * math.log(x))
    u = -math.expm1(a * math.log(x)) - g * xa
    # sum_{k>=1} (-1)^(k+1) x^k / (k! (a + k))
    total = 0.0
    term = 1.0
    k = 0
    while True:
        k += 1
        term *= -x / k
        contrib = -term / (a + k)
        total += contrib
        if abs(contrib) <= 1e-17 * abs(total):
            break
    v = a * xa * (1.0 + g) * total
    return u + v


def _p_series(a, x):
    """sum_{k>=0} x^k / (a+1)_k, so that P = D(a, x) times this."""
    total = 1.0
    term = 1.0
    k = 0
    while True:
        k += 1
        term *= x / (a + k)
        total += term
        if term <= 1e-17 * total:
            return total


def _q_fraction(a, x):
    """Legendre's continued fraction 1/(x+1-a- 1(1-a)/(x+3-a- ...)), x >= 1.5, by modified Lentz."""
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for k in range(1, 100000):
        an = -k * (k - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) <= 1e-16:
            break
    return h


def _scaled(lower, log_factor, factor, mult):
    # value = factor * mult, with factor = exp(log_factor) possibly underflowed
    v = factor * mult
    if v >= _DBL_MIN:
        return lower, math.log(v), v
    return lower, log_factor + math.log(mult), v


def smaller_tail(a, x):
    """(lower, log_value, value) for the smaller of P(a, x), Q(a, x), x > 0.

    ``lower`` tells whether P (True) or Q (False) was computed.  ``value``
    is the tail itself, 0.0 after underflow, and ``log_value`` its logarithm
    computed without underflow.
    """
    if a == 1.0:
        # exponential law: Q = e^-x, P = 1 - e^-x
        if x > _LN2:
            return False, -x, math.exp(-x)
        v = -math.expm1(-x)
        return True, math.log(v), v
    if a >= UNIFORM_MIN_A and 0.1 * a < x < 10.0 * a:
        eta = lambda_to_eta(x / a)
        if abs(eta) <= UNIFORM_MAX_ETA:
            lower, log_g, b = _uniform(a, x, eta)
            return _scaled(lower, log_g, math.exp(log_g), b)
    alpha = _transition(x)
    if x < 1.5 and a < alpha:
        v = _q_small_a(a, x)
        return False, math.log(v), v
    d = dterm(a, x)
    log_d = math.log(d) if d >= _DBL_MIN else log_dterm(a, x)
    if a >= alpha:
        return _scaled(True, log_d, d, _p_series(a, x))
    return _scaled(False, log_d, d, a * _q_fraction(a, x))


def log_tails(a, x):
    """(log P(a, x), log Q(a, x)) without underflow in the smaller one."""
    if x == 0:
        return -math.inf, 0.0
    lower, logv, v = smaller_tail(a, x)
    other = math.log1p(-v) if v < 0.5 else math.log(1.0 - v)
    return (logv, other) if lower else (other, logv)


def _tails(a, x):
    """(p, q, underflowed) at x > 0."""
    lower, logv, v = smaller_tail(a, x)
    if lower:
        return v, 1.0 - v, v == 0.0
    return 1.0 - v, v, v == 0.0


def _map_kind(kind, a, x):
    if to_kind(kind) is DistributionKind.CHI_SQUARE:
        return 0.5 * a, 0.5 * x
    return a, x


def cdf_central(a: float, x: float, kind=DistributionKind.GAMMA):
    """Central gamma (or chi-square) distribution functions.

    Returns ``(ProbabilityPair(p, q), ComputationStatus)``.  With
    ``kind=CHI_SQUARE`` the arguments are degrees of freedom and abscissa.
    """
    a, x = _map_kind(kind, a, x)
    if not (a > A_MIN and x >= 0) or math.isinf(a) or math.isinf(x):
        return ProbabilityPair(math.nan, math.nan), ComputationStatus(
            Status.OUT_OF_RANGE, f"need a > {A_MIN:g}, x >= 0 (got a={a!r}, x={x!r})"
        )
    if x == 0:
        return ProbabilityPair(0.0, 1.0), ComputationStatus()
    p, q, under = _tails(a, x)
    if under:
        return ProbabilityPair(p, q), ComputationStatus(
            Status.OVERFLOW_UNDERFLOW, "smaller tail underflows"
        )
    return ProbabilityPair(p, q), ComputationStatus()


def _inv_status(code, detail=""):
    return ComputationStatus(code, detail, "inv_central")


def _seed(a, p, q, lower):
    """Starting value for inv_central; lower selects which tail is matched."""
    target = p if lower else q
    log_t = math.log(target)
    # leading Taylor term P ~ x^a / Gamma(a + 1)
    xs = math.exp((math.log(p) + _lgamma1p(a)) / a)
    if xs < 0.2 * (a + 1.0):
        # restore the e^-x sum x^n/(a+1)_n factor: x = xs (e^x / S(x))^(1/a)
        x = xs
        for _ in range(4):
            term = total = 1.0
            n = 0
            while term > 1e-17 * total:
                n += 1
                term *= x / (a + n)
                total += term
            x = xs * math.exp((x - math.log(total)) / a)
        return x
    if not lower and (a < 1.0 or target < 1e-3):
        # Q ~ x^(a-1) e^-x / Gamma(a): fixed point x = -log(q Gamma(a)) + (a-1) log x
        c = -(log_t + loggam(a))
        xs = max(c, 1.0)
        for _ in range(8):
            xs = max(c + (a - 1.0) * math.log(xs), 1e-300)
        if xs > 1.5 * a + 1.0:
            return xs
    expansion = invert_expansion(a, p, gamma_frame(a), q=q)
    return a * eta_to_lambda(expansion.eta)


def inversion_seed(a: float, p: float, q: float) -> float:
    """Starting value used by :func:`inv_central` for P(a, x) = p, Q(a, x) = q."""
    return _seed(a, p, q, p <= q)


def inv_central(a: float, p: float, q: float, kind=DistributionKind.GAMMA):
    """x with P(a, x) = p and Q(a, x) = q.

    Returns ``(x, ComputationStatus)``; chi-square input returns the
    chi-square abscissa.  The smaller of p and q is matched so that tiny
    upper tails keep full relative accuracy.
    """
    chi = to_kind(kind) is DistributionKind.CHI_SQUARE
    if chi:
        a = 0.5 * a
    ok_range = (
        a > A_MIN
        and not math.isinf(a)
        and 0.0 <= p <= 1.0
        and 0.0 <= q <= 1.0
        and abs(p + q - 1.0) <= PQ_TOLERANCE
        and min(p, q) >= INV_MIN_PROB
    )
    if not ok_range:
        return math.nan, _inv_status(
            Status.OUT_OF_RANGE, "need a > 0, p + q = 1 and min(p, q) >= 1e-150"
        )
    x, status = _invert(a, p, q)
    return (2.0 * x if chi else x), status


def _log_residual(a, x, lower, log_target):
    """(log T(x) - log target, T'/T) for the tail T = P (lower) or Q."""
    l, logv, v = smaller_tail(a, x)
    if l == lower:
        log_t = logv
    else:
        log_t = math.log1p(-v) if v < 0.5 else math.log(1.0 - v)
    d = dterm(a, x)
    log_dens = math.log(a * d / x) if d >= _DBL_MIN else math.log(a) + log_dterm(a, x) - math.log(x)
    u = math.exp(log_dens - log_t)
    return log_t - log_target, (u if lower else -u)


_LOG_TINY = math.log(_DBL_MIN)


def _invert(a, p, q):
    lower = p <= q
    target = p if lower else q
    # P(a, x) >= x^a / Gamma(a + 1) e^-x, so p below that at the smallest
    # normal x means the root is not representable
    if (math.log(p) + _lgamma1p(a)) / a < _LOG_TINY:
        return 0.0, _inv_status(Status.OVERFLOW_UNDERFLOW, "root underflows")
    log_target = math.log(target)
    x = _seed(a, p, q, lower)
    if not x > 0 or math.isinf(x):
        x = a
    lo, hi = 0.0, math.inf
    r_prev = math.inf
    for _ in range(INV_MAX_ITER):
        g, u = _log_residual(a, x, lower, log_target)
        # P increases with x, Q decreases: keep a bracket on the root
        if (g < 0) == lower:
            lo = max(lo, x)
        else:
            hi = min(hi, x)
        if abs(g) <= 1e-15:
            return x, _inv_status(Status.OK)
        if u == 0.0 or math.isinf(u) or math.isnan(u):
            x_new = _bisect(lo, hi, x)
        else:
            r = g / u
            if abs(r) <= 1e-15 * x:
                return x - r, _inv_status(Status.OK)
            # log T carries an absolute error near eps |log T|; once the
            # correction stops shrinking we are at that floor
            if abs(r) <= 1e-12 * x and abs(r) >= 0.25 * r_prev:
                return x, _inv_status(Status.OK)
            r_prev = abs(r)
            # Halley on log T: (log T)'' = u ((a - 1)/x - 1) - u^2
            g2 = u * ((a - 1.0) / x - 1.0) - u * u
            denom = 1.0 - 0.5 * r * g2 / u
            x_new = x - r / denom if denom > 0.5 else x - r
            if not lo <= x_new <= hi or math.isnan(x_new):
                x_new = x - r
                if not lo <= x_new <= hi or math.isnan(x_new):
                    x_new = _bisect(lo, hi, x)
        step = abs(x_new - x)
        x = x_new
        if step <= 1e-15 * x:
            return x, _inv_status(Status.OK)
        if hi < math.inf and hi - lo <= 2e-16 * hi:
            return x, _inv_status(Status.OK)
    return x, _inv_status(Status.MAX_ITERATIONS, f"no convergence in {INV_MAX_ITER} steps")


def _bisect(lo, hi, x):
    if hi == math.inf:
        return 4.0 * x + 1.0
    if lo == 0.0:
        return max(0.25 * x if x < hi else 0.5 * hi, 2.2250738585072014e-308)
    if hi > 4.0 * lo:
        return math.sqrt(lo * hi)
    return 0.5 * (lo + hi)
