"""Noncentral gamma and chi-square distribution functions

    P_mu(x, y) = sum_k w_k P(mu + k, y),   Q_mu(x, y) = sum_k w_k Q(mu + k, y),

with Poisson weights w_k = e^-x x^k / k!, and their inverses with respect to
the noncentrality x or the quantile y.

The smaller tail is summed directly over a window of k around the peak of
the terms.  Inside the window the central values follow from one anchor
value and the recurrences P(a + 1, y) = P(a, y) - D(a, y),
Q(a + 1, y) = Q(a, y) + D(a, y), run in the direction where only positive
quantities are added.  For 1/2 <= mu < 1 the lower tail is obtained from the
values at mu + 1 and mu + 2 by one backward step of the three-term
recurrence in mu.
"""

import math
import sys
from typing import NamedTuple

import numpy as np

from . import central as _central
from .erf import SQRT_PI, erfc, inverfc
from .gamma import dterm, log_dterm
from .types import (
    ComputationStatus,
    DistributionKind,
    InversionTarget,
    ProbabilityPair,
    Status,
    SubcomputationError,
    to_kind,
    to_target,
)

MU_MIN = 0.5
ARG_MAX = 1e4
INV_MIN_P = 1e-25
INV_MIN_Q = 1e-35
INV_MAX_ITER = 50
INV_TOLERANCE = 1e-12
HALF_MU_DELTA = 0.1
_HALF_MU_STEPS = 4
_BESSEL_TOL = 1e-15
_BESSEL_MAX_TERMS = 10000
_EDGE_TOL = 1e-17
_LOG_DBL_MIN = math.log(2.2250738585072014e-308)


def bessel_ratio(mu: float, z: float) -> float:
    """I_mu(z) / I_{mu-1}(z) for mu >= 1/2, z > 0.

    Perron's continued fraction, evaluated forwards by the modified Lentz
    method.  Raises SubcomputationError if it has not converged after 10^4
    terms.
    """
    if not (mu >= MU_MIN and z > 0) or math.isinf(z):
        raise ValueError(f"bessel_ratio requires mu >= 0.5 and z > 0, got mu={mu!r}, z={z!r}")
    # z / (2mu + z - (2mu+1) z / (2mu+1+2z - (2mu+3) z / (2mu+2+2z - ...)))
    tiny = 1e-300
    two_mu = 2.0 * mu
    f = two_mu + z
    c = f
    d = 0.0
    for k in range(1, _BESSEL_MAX_TERMS + 1):
        a_k = -(two_mu + 2 * k - 1) * z
        b_k = two_mu + k + 2.0 * z
        d = b_k + a_k * d
        if d == 0.0:
            d = tiny
        c = b_k + a_k / c
        if c == 0.0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) <= _BESSEL_TOL:
            # the ratio is below 1 but may round to it
            return min(z / f, 1.0)
    raise SubcomputationError(f"Bessel ratio continued fraction did not converge (mu={mu}, z={z})")


def _log_d(a, x):
    # log D(a, x) for a >= 0, x > 0
    if a == 0:
        return -x
    d = dterm(a, x)
    return math.log(d) if d >= sys.float_info.min else log_dterm(a, x)


class _Sums(NamedTuple):
    lower: bool  # tail is P (True) or Q (False)
    log_tail: float  # log sum w_k T(mu + k, y)
    log_dx: float  # log sum w_k D(mu + k, y): |d tail / dx|
    log_dy: float  # log sum w_k D(mu + k - 1, y): |d tail / dy|


def _peak(mu, x, y):
    # maximiser in k of w_k D(mu + k, y), real root of k (mu + k) = x y
    return 0.5 * (math.sqrt(mu * mu + 4.0 * x * y) - mu)


def _window_sums(mu, x, y, lower, with_tail=True):
    """Windowed sums for x > 0, y > 0; the window doubles until both ends
    carry a negligible share of every sum."""
    kc = int(_peak(mu, x, y))
    half = int(9.0 * math.sqrt(kc + 1.0)) + 12
    while True:
        lo = max(0, kc - half)
        hi = kc + half
        k = np.arange(lo, hi + 1, dtype=float)
        m = kc - lo
        # log w_k and log D(mu + k, y), anchored at k = kc
        lw = np.empty_like(k)
        lw[0] = 0.0
        ld = np.empty_like(k)
        ld[0] = 0.0
        # subnormal x or y give log 0 = -inf, the correct zero weight
        with np.errstate(divide="ignore"):
            np.cumsum(np.log(x / k[1:]), out=lw[1:])
            np.cumsum(np.log(y / (mu + k[1:])), out=ld[1:])
        lw += _log_d(kc, x) - lw[m]
        ld += _log_d(mu + kc, y) - ld[m]

        lwd = lw + ld
        s_d = lwd.max()
        dens = np.exp(lwd - s_d)
        sum_d = dens.sum()
        edges_ok = dens[-1] <= _EDGE_TOL * sum_d and (lo == 0 or dens[0] <= _EDGE_TOL * sum_d)
        log_dx = s_d + math.log(sum_d)
        # D(a - 1, y) = D(a, y) a / y
        log_dy = s_d + math.log(float(np.dot(dens, mu + k))) - math.log(y)

        log_tail = math.nan
        if with_tail:
            # log T(mu+k, y), accumulated in log form because the central
            # values may span more than the double range over the window
            if lower:
                # P(mu+k, y) = P(mu+hi+1, y) + sum_{j=k..hi} D(mu+j, y)
                log_anchor = _central.log_tails(mu + hi + 1.0, y)[0]
                lt = np.logaddexp.accumulate(np.concatenate(([log_anchor], ld[::-1])))[:0:-1]
            else:
                # Q(mu+k, y) = Q(mu+lo, y) + sum_{j=lo..k-1} D(mu+j, y)
                log_anchor = _central.log_tails(mu + lo, y)[1]
                lt = np.logaddexp.accumulate(np.concatenate(([log_anchor], ld[:-1])))
            lt += lw
            s_t = lt.max()
            terms = np.exp(lt - s_t)
            total = terms.sum()
            edges_ok = (
                edges_ok
                and terms[-1] <= _EDGE_TOL * total
                and (lo == 0 or terms[0] <= _EDGE_TOL * total)
            )
            log_tail = s_t + math.log(total)
        if edges_ok:
            return _Sums(lower, float(log_tail), float(log_dx), float(log_dy))
        half *= 2


def _evaluate(mu, x, y):
    """_Sums for the smaller tail at x > 0, y > 0 (mu inside the box)."""
    lower = y < x + mu
    z = 2.0 * math.sqrt(x * y)
    if lower and mu < 1.0 and z > 0.0:
        try:
            c = math.sqrt(y) / math.sqrt(x) * bessel_ratio(mu + 1.0, z)
        except SubcomputationError:
            return _window_sums(mu, x, y, lower)
        if not 0.0 < c < math.inf:
            return _window_sums(mu, x, y, lower)
        # one backward step of y_{m+2} - (1 + c) y_{m+1} + c y_m = 0, m = mu:
        # P_mu = P_{mu+1} + (P_{mu+1} - P_{mu+2}) / c and
        # P_{mu+1} - P_{mu+2} = sum w_k D(mu+1+k, y)
        up = _window_sums(mu + 1.0, x, y, True)
        log_diff = up.log_dx - math.log(c)
        log_tail = max(up.log_tail, log_diff) + math.log1p(math.exp(-abs(up.log_tail - log_diff)))
        # P_mu - P_{mu+1} is the x-derivative sum at mu
        at_mu = _window_sums(mu, x, y, True, with_tail=False)
        return _Sums(True, log_tail, log_diff, at_mu.log_dy)
    return _window_sums(mu, x, y, lower)


def _in_box(mu, x, y):
    return MU_MIN <= mu <= ARG_MAX and 0.0 <= x <= ARG_MAX and 0.0 <= y <= ARG_MAX


def _map_kind(kind, mu, x, y):
    if to_kind(kind) is DistributionKind.CHI_SQUARE:
        return 0.5 * mu, 0.5 * x, 0.5 * y
    return mu, x, y


def _pair(lower, log_tail):
    v = math.exp(log_tail)
    pair = ProbabilityPair(v, 1.0 - v) if lower else ProbabilityPair(1.0 - v, v)
    if log_tail < _LOG_DBL_MIN:
        return pair, ComputationStatus(Status.OVERFLOW_UNDERFLOW, "smaller tail underflows")
    return pair, ComputationStatus()


def cdf_noncentral(mu: float, x: float, y: float, kind=DistributionKind.GAMMA):
    """Noncentral gamma (or chi-square) distribution functions.

    Returns ``(ProbabilityPair(p, q), ComputationStatus)`` with
    p = P_mu(x, y) and q = Q_mu(x, y).  With ``kind=CHI_SQUARE`` the
    arguments are degrees of freedom, noncentrality and abscissa of the
    chi-square law.
    """
    mu, x, y = _map_kind(kind, mu, x, y)
    if not _in_box(mu, x, y):
        return ProbabilityPair(math.nan, math.nan), ComputationStatus(
            Status.OUT_OF_RANGE,
            f"need 0.5 <= mu <= 1e4, 0 <= x, y <= 1e4 (got mu={mu!r}, x={x!r}, y={y!r})",
        )
    if y == 0:
        return ProbabilityPair(0.0, 1.0), ComputationStatus()
    if x == 0:
        return _central.cdf_central(mu, y)
    s = _evaluate(mu, x, y)
    return _pair(s.lower, s.log_tail)


def marcum_q_half(x: float, y: float) -> float:
    """Q_{1/2}(x, y) = (erfc(sqrt(x) + sqrt(y)) + erfc(sqrt(y) - sqrt(x))) / 2."""
    sx, sy = math.sqrt(x), math.sqrt(y)
    return 0.5 * (erfc(sx + sy) + erfc(sy - sx))


def _half_mu_seed(y, q):
    """x with Q_{1/2}(x, y) = q by a fourth-order iteration in s = sqrt(x)."""
    b = math.sqrt(y)
    s = max(b - inverfc(2.0 * q), 0.0)
    for _ in range(_HALF_MU_STEPS):
        f = 0.5 * (erfc(s + b) + erfc(b - s)) - q
        ea = math.exp(-(s + b) ** 2)
        eb = math.exp(-(b - s) ** 2)
        f1 = (eb - ea) / SQRT_PI
        if f1 <= 0.0:
            break
        f2 = 2.0 * ((b - s) * eb + (s + b) * ea) / SQRT_PI
        f3 = ((4.0 * (b - s) ** 2 - 2.0) * eb + (2.0 - 4.0 * (s + b) ** 2) * ea) / SQRT_PI
        h = f / f1
        c2 = 0.5 * f2 / f1
        c3 = f3 / (6.0 * f1)
        step = h * (1.0 + c2 * h) / (1.0 + 2.0 * c2 * h + c3 * h * h)
        s = max(s - step, 0.0)
        if abs(step) <= 1e-15 * max(s, 1.0):
            break
    return s * s


def _seed_x(mu, y, p, q):
    if mu <= MU_MIN + HALF_MU_DELTA and q <= 0.5:
        return _half_mu_seed(y, q)
    # sqrt(Y) is close to normal with mean sqrt(x + mu - 1/2), variance 1/2
    z = -inverfc(2.0 * p) if p < q else inverfc(2.0 * q)
    r = math.sqrt(y) - z
    return max(r * r - mu + 0.5, 0.0) if r > 0 else 0.0


def _seed_y(mu, x, p, q):
    # two-moment fit by a scaled central gamma variable
    c = (mu + 2.0 * x) / (mu + x)
    nu = (mu + x) ** 2 / (mu + 2.0 * x)
    t, status = _central.inv_central(nu, p, q)
    if status.ok and t > 0:
        return c * t
    return mu + x


def _inv_status(code, detail=""):
    return ComputationStatus(code, detail, "inv_noncentral")


def _solve(mu, fixed, p, q, solve_x):
    """Safeguarded Newton iteration on log of the matched tail."""
    lower = p <= q
    log_target = math.log(p if lower else q)
    # P_mu decreases in x and increases in y
    increasing = (not lower) if solve_x else lower
    t = _seed_x(mu, fixed, p, q) if solve_x else _seed_y(mu, fixed, p, q)
    t = min(max(t, 0.0), ARG_MAX)
    if t == 0.0:
        t = 1e-3 * (mu + fixed) if solve_x else 0.5 * (mu + fixed)
    lo, hi = 0.0, math.inf
    r_prev = math.inf
    for _ in range(INV_MAX_ITER):
        x, y = (t, fixed) if solve_x else (fixed, t)
        s = _evaluate(mu, x, y)
        if s.lower == lower:
            log_t = s.log_tail
        else:
            v = math.exp(s.log_tail)
            log_t = math.log1p(-v) if v < 0.5 else math.log(1.0 - v)
        g = log_t - log_target
        if (g < 0) == increasing:
            lo = max(lo, t)
        else:
            hi = min(hi, t)
        if abs(g) <= 1e-15:
            return t, _inv_status(Status.OK)
        if lo >= ARG_MAX:
            return math.nan, _inv_status(Status.MAX_ITERATIONS, "root lies outside the admissible range")
        # d log T / dt, signed by the monotonicity of the matched tail
        u = math.exp((s.log_dx if solve_x else s.log_dy) - log_t)
        if not increasing:
            u = -u
        t_new = math.nan
        if u != 0.0 and math.isfinite(u):
            r = g / u
            if abs(r) <= 1e-3 * INV_TOLERANCE * t:
                return t - r, _inv_status(Status.OK)
            if abs(r) <= INV_TOLERANCE * t and abs(r) >= 0.25 * r_prev:
                # corrections no longer shrink: evaluation noise floor
                return t, _inv_status(Status.OK)
            r_prev = abs(r)
            if r > 0.5 * t:
                # tails behave like powers of t near 0: Newton in log t
                t_new = t * math.exp(-r / t)
            else:
                t_new = min(t - r, ARG_MAX)
        if not lo < t_new < hi:
            if math.isinf(hi):
                t_new = min(2.0 * max(lo, t), ARG_MAX)
            elif lo == 0.0:
                t_new = 0.125 * hi
            elif hi > 4.0 * lo:
                t_new = math.sqrt(lo * hi)
            else:
                t_new = 0.5 * (lo + hi)
        step = abs(t_new - t)
        t = t_new
        if step <= 1e-3 * INV_TOLERANCE * t:
            return t, _inv_status(Status.OK)
    return t, _inv_status(Status.MAX_ITERATIONS, f"no convergence in {INV_MAX_ITER} steps")


def inv_noncentral(target, mu: float, p: float, q: float, fixed: float, kind=DistributionKind.GAMMA):
    """Invert the noncentral distribution with respect to x or y.

    ``target="x"`` solves Q_mu(x, y) = q for the noncentrality x with
    ``fixed`` = y; ``target="y"`` solves P_mu(x, y) = p for the quantile y
    with ``fixed`` = x.  Returns ``(value, ComputationStatus)``.  The value
    is NaN for out-of-range input, infeasible targets and roots outside the
    admissible box; after the iteration limit it is the last iterate.  With
    ``kind=CHI_SQUARE``, mu, fixed and the result are in chi-square units.
    """
    solve_x = to_target(target) is InversionTarget.NONCENTRALITY_X
    chi = to_kind(kind) is DistributionKind.CHI_SQUARE
    if chi:
        mu, fixed = 0.5 * mu, 0.5 * fixed
    ok_range = (
        MU_MIN <= mu <= ARG_MAX
        and 0.0 <= fixed <= ARG_MAX
        and 0.0 <= p <= 1.0
        and 0.0 <= q <= 1.0
        and abs(p + q - 1.0) <= _central.PQ_TOLERANCE
        and p >= INV_MIN_P
        and q >= INV_MIN_Q
    )
    if not ok_range:
        return math.nan, _inv_status(
            Status.OUT_OF_RANGE,
            "need 0.5 <= mu <= 1e4, 0 <= fixed <= 1e4, p + q = 1, p >= 1e-25, q >= 1e-35",
        )
    scale = 2.0 if chi else 1.0
    if solve_x:
        y = fixed
        # Q_mu(x, y) increases with x from Q(mu, y) at x = 0; compare on
        # the smaller tail so that q near 1 is judged through p
        p0, q0 = _central.cdf_central(mu, y)[0] if y > 0 else (0.0, 1.0)
        if q < q0 - 4.0 * math.ulp(q0) or p > p0 + 4.0 * math.ulp(p0):
            return math.nan, _inv_status(Status.INFEASIBLE, f"q below Q_mu(0, y) = {q0!r}")
        if (q <= q0) if q <= p else (p >= p0):
            return 0.0, _inv_status(Status.OK)
    elif fixed == 0:
        t, status = _central.inv_central(mu, p, q)
        if not status.ok:
            return math.nan, _inv_status(Status.SUBCOMPUTATION_FAILURE, status.detail)
        if t > ARG_MAX:
            return math.nan, _inv_status(Status.MAX_ITERATIONS, "root lies outside the admissible range")
        return scale * t, _inv_status(Status.OK)
    try:
        t, status = _solve(mu, fixed, p, q, solve_x)
    except SubcomputationError as exc:
        return math.nan, _inv_status(Status.SUBCOMPUTATION_FAILURE, str(exc))
    return scale * t, status
