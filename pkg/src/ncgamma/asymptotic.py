"""Uniform asymptotic machinery for gamma-type distribution functions.

A distribution written in the standard form

    F_a(eta) = sqrt(a / 2 pi) int_{-inf}^{eta} exp(-a zeta^2 / 2) f(zeta) d zeta

is expanded for large ``a`` through the coefficients A_n, C_n(eta) of the
recursive scheme f_{n+1} = d/deta [(f_n(eta) - f_n(0)) / eta], and inverted
through eta = eta0 + eta1/a + eta2/a^2 + eta3/a^3 with eta0 the normal
quantile.  For the incomplete gamma function lambda = x/a, and eta, f follow
from lambda - log(lambda) - 1 = eta^2 / 2.
"""

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Sequence

from .erf import inverfc
from .gamma import log1pmx
from .types import DomainError

ETA_SMALL = 0.2
# order of the exact Maclaurin series of f kept internally
_EXACT_ORDER = 70
_F_EVAL_TERMS = 60
_SERIES_RADIUS = 1.0


@lru_cache(maxsize=None)
def tau_series(order: int) -> tuple:
    """Exact coefficients of tau(zeta) solving tau - log(tau) - 1 = zeta^2 / 2, tau > 1 for zeta > 0."""
    # substituting tau = sum t_k zeta^k and comparing powers gives
    # t_k = (t_{k-1} - sum_{j=2}^{k-1} (k-j+1) t_j t_{k-j+1}) / (k+1)
    t = [Fraction(1), Fraction(1)]
    for k in range(2, order + 1):
        s = t[k - 1]
        for j in range(2, k):
            s -= (k - j + 1) * t[j] * t[k - j + 1]
        t.append(s / (k + 1))
    return tuple(t[: order + 1])


@lru_cache(maxsize=None)
def f_series_exact(order: int) -> tuple:
    """Exact Maclaurin coefficients a_0..a_order of f = tau'(zeta) / tau(zeta)."""
    t = tau_series(order + 1)
    d = [(k + 1) * t[k + 1] for k in range(order + 1)]
    f = []
    for k in range(order + 1):
        f.append(d[k] - sum(f[j] * t[k - j] for j in range(k)))
    return tuple(f)


def f_gamma_series(order: int) -> list:
    """Maclaurin coefficients a_0..a_order of f for the incomplete gamma function."""
    if not isinstance(order, int) or not 1 <= order <= 8:
        raise ValueError(f"f_gamma_series supports orders 1..8, got {order!r}")
    return [float(c) for c in f_series_exact(order)]


# both series are prefix-stable: lower orders are slices of the exact ones
_TAU_FLOAT = [float(c) for c in tau_series(_EXACT_ORDER + 1)[: _F_EVAL_TERMS + 1]]
_F_FLOAT = [float(c) for c in f_series_exact(_EXACT_ORDER)[: _F_EVAL_TERMS + 1]]


def _horner(coef, x):
    s = 0.0
    for c in reversed(coef):
        s = s * x + c
    return s


def lambda_to_eta(lam: float) -> float:
    """eta with lam - log(lam) - 1 = eta^2/2 and sign(eta) = sign(lam - 1)."""
    if math.isnan(lam) or lam <= 0:
        raise DomainError(f"lambda_to_eta requires lambda > 0, got {lam!r}")
    if math.isinf(lam):
        return math.inf
    if 0.5 <= lam <= 2.0:
        t = lam - 1.0
        e = math.sqrt(-2.0 * log1pmx(t))
    else:
        e = math.sqrt(2.0 * (lam - 1.0 - math.log(lam)))
    return e if lam >= 1.0 else -e


def eta_to_lambda(eta: float) -> float:
    """Inverse of :func:`lambda_to_eta`."""
    if math.isnan(eta):
        return math.nan
    if eta == 0.0:
        return 1.0
    if math.isinf(eta):
        return math.inf if eta > 0 else 0.0
    half = 0.5 * eta * eta
    if abs(eta) <= _SERIES_RADIUS:
        lam = _horner(_TAU_FLOAT, eta)
        if abs(eta) < 1e-6:
            return lam
        # one Newton step removes the series truncation error
        g = -log1pmx(lam - 1.0) - half
        return lam - g / (1.0 - 1.0 / lam)
    if eta > 0:
        lam = 1.0 + eta + eta * eta / 3.0 if eta < 3.0 else half + math.log(half) + 1.0
        for _ in range(50):
            step = (lam - 1.0 - math.log(lam) - half) / (1.0 - 1.0 / lam)
            lam -= step
            if abs(step) <= 4e-16 * lam:
                break
        return lam
    # lambda < 1: Newton in s = log(lambda) on e^s - 1 - s = eta^2 / 2
    s = -1.0 - half if eta < -3.0 else math.log(_horner(_TAU_FLOAT[:12], max(eta, -2.5)))
    for _ in range(50):
        em = math.expm1(s)
        step = (em - s - half) / em
        s -= step
        if abs(step) <= 4e-16 * max(1.0, abs(s)):
            break
    return math.exp(s)


def f_gamma(eta: float) -> float:
    """f(eta) = (1/lambda) dlambda/deta = eta / (lambda - 1) for the gamma frame."""
    return f_gamma_derivatives(eta)[0]


def f_gamma_derivatives(eta: float):
    """(f, f', f'') at eta for the gamma frame."""
    if abs(eta) <= _SERIES_RADIUS:
        c = _F_FLOAT
        d1 = [k * c[k] for k in range(1, len(c))]
        d2 = [k * d1[k] for k in range(1, len(d1))]
        return _horner(c, eta), _horner(d1, eta), _horner(d2, eta)
    lam = eta_to_lambda(eta)
    L = lam - 1.0
    f = eta / L
    lam1 = lam * f
    f1 = (1.0 - eta * lam1 / L) / L
    lam2 = lam1 * f + lam * f1
    f2 = (-2.0 * lam1 - eta * lam2) / (L * L) + 2.0 * eta * lam1 * lam1 / (L * L * L)
    return f, f1, f2


def _series_derivatives(series, eta):
    d1 = [k * series[k] for k in range(1, len(series))]
    d2 = [k * d1[k] for k in range(1, len(d1))]
    return _horner(series, eta), _horner(d1, eta), _horner(d2, eta)


@dataclass(frozen=True)
class EtaFrame:
    """Standard-form variables of one distribution evaluation.

    ``zeta_to_tau`` maps the integration variable back to tau (for the gamma
    frame this is :func:`eta_to_lambda`); ``f_series`` holds Maclaurin
    coefficients of f and ``f_derivatives`` optionally evaluates (f, f', f'')
    away from the origin where the series is not used.
    """

    a: float
    lam: float
    eta: float
    zeta_to_tau: Callable[[float], float]
    f_series: tuple
    f_derivatives: Optional[Callable] = field(default=None, compare=False)

    def derivatives(self, eta):
        if self.f_derivatives is not None:
            return self.f_derivatives(eta)
        return _series_derivatives(self.f_series, eta)

    def f(self, eta):
        return self.derivatives(eta)[0]


def gamma_frame(a: float, x: float = None, order: int = 8) -> EtaFrame:
    """Frame of the incomplete gamma function at (a, x); x defaults to a."""
    if not a > 0:
        raise DomainError(f"gamma_frame requires a > 0, got {a!r}")
    lam = 1.0 if x is None else x / a
    eta = lambda_to_eta(lam) if lam > 0 else -math.inf
    return EtaFrame(
        a=a,
        lam=lam,
        eta=eta,
        zeta_to_tau=eta_to_lambda,
        f_series=tuple(f_gamma_series(order)),
        f_derivatives=f_gamma_derivatives,
    )


def normal_frame(a: float) -> EtaFrame:
    """Frame with f identically 1, the normal distribution with variance 1/a."""
    return EtaFrame(a=a, lam=1.0, eta=0.0, zeta_to_tau=lambda z: z, f_series=(1.0,))


def _taylor_from_callable(f, terms=32, radius=1.0):
    # Cauchy integral on |z| = radius by the trapezoidal rule
    m = 2 * terms
    samples = [complex(f(radius * cmath.exp(2j * math.pi * j / m))) for j in range(m)]
    coef = []
    for k in range(terms):
        s = sum(samples[j] * cmath.exp(-2j * math.pi * j * k / m) for j in range(m))
        coef.append((s / m).real / radius ** k)
    return coef


def scheme_from_series(series: Sequence, depth: int):
    """A_0..A_depth and the Maclaurin coefficients of C_0..C_depth.

    In coefficient form f_{n+1}[j] = (j+1) f_n[j+2] and C_n[k] = -f_n[k+1],
    so exact (Fraction) input gives exact output.
    """
    cur = list(series)
    A = []
    C = []
    for _ in range(depth + 1):
        A.append(cur[0] if cur else 0)
        C.append([-c for c in cur[1:]])
        cur = [(j + 1) * cur[j + 2] for j in range(len(cur) - 2)]
    return A, C


def coefficient_scheme(f_values, eta: float, depth: int):
    """(A, C) with A_n = f_n(0) and C_n(eta) = (f_n(0) - f_n(eta)) / eta for n <= depth.

    ``f_values`` is either a sequence of Maclaurin coefficients of f or a
    callable accepting complex arguments, analytic on the closed unit disk;
    its coefficients are then recovered by a Cauchy integral.
    """
    if not 0 <= depth <= 3:
        raise ValueError("depth must be between 0 and 3")
    series = list(f_values) if not callable(f_values) else _taylor_from_callable(f_values)
    A, Cc = scheme_from_series(series, depth)
    return [float(v) for v in A], [_horner([float(v) for v in c], eta) for c in Cc]


@dataclass(frozen=True)
class InversionExpansion:
    """Coefficients of eta = eta0 + eta1/a + eta2/a^2 + eta3/a^3."""

    eta0: float
    eta1: float
    eta2: float
    eta3: float
    A: tuple
    a: float

    @property
    def eta(self) -> float:
        a = self.a
        return self.eta0 + (self.eta1 + (self.eta2 + self.eta3 / a) / a) / a


def _a_coefficients(series):
    # A_n = (1/2)_n 2^n a_{2n}
    out = []
    poch = 1.0
    for n in range(3):
        a2n = float(series[2 * n]) if 2 * n < len(series) else 0.0
        out.append(poch * 2 ** n * a2n)
        poch *= 0.5 + n
    return tuple(out)


def _eta1(frame, e0):
    f, f1, _ = frame.derivatives(e0)
    eta1 = math.log(f) / e0
    return eta1, (f1 / f - eta1) / e0


def _eta2(frame, e0, A1):
    f, f1, _ = frame.derivatives(e0)
    eta1, eta1p = _eta1(frame, e0)
    return -(f * (2.0 * A1 + eta1 * eta1 - 2.0 * eta1p) - 2.0 * eta1 * f1) / (2.0 * e0 * f)


def _eta_terms_regular(frame, e0, A):
    A1, A2 = A[1], A[2]
    f, f1, f2 = frame.derivatives(e0)
    eta1, eta1p = _eta1(frame, e0)
    eta2 = _eta2(frame, e0, A1)
    h = 1e-3
    eta2p = (
        _eta2(frame, e0 - 2 * h, A1)
        - 8.0 * _eta2(frame, e0 - h, A1)
        + 8.0 * _eta2(frame, e0 + h, A1)
        - _eta2(frame, e0 + 2 * h, A1)
    ) / (12.0 * h)
    num = (
        8 * f * eta1 * eta2
        + 4 * A1 * f * eta1 ** 2
        + f * eta1 ** 4
        + 4 * f * eta1 ** 2 * e0 * eta2
        + 4 * f * e0 ** 2 * eta2 ** 2
        - 8 * f * eta2p
        + 8 * A1 * f * e0 * eta2
        + 8 * A2 * f
        - 8 * f1 * eta1 * eta1p
        - 8 * f1 * eta2
        - 4 * f2 * eta1 ** 2
    )
    return eta1, eta2, -num / (8.0 * e0 * f)


def _eta_terms_small(series, e0):
    a = [float(series[k]) if k < len(series) else 0.0 for k in range(6)]
    a1, a2, a3, a4, a5 = a[1:6]
    eta1 = a1 + 0.5 * (2 * a2 - a1 ** 2) * e0 + (3 * a3 - 3 * a1 * a2 + a1 ** 3) / 3.0 * e0 ** 2
    eta2 = -a1 ** 3 / 3.0 + 2 * a3 + (-12 * a2 * a1 ** 2 + 5 * a1 ** 4 + 24 * a4) / 8.0 * e0
    eta3 = (4 * a1 ** 5 - 5 * a2 * a1 ** 3 - 15 * a3 * a1 ** 2 + 120 * a5) / 15.0
    return eta1, eta2, eta3


def invert_expansion(a: float, p: float, frame: EtaFrame, q: float = None) -> InversionExpansion:
    """Asymptotic solution eta of F_a(eta) = F_a(inf) p for large a.

    Pass the complementary probability ``q`` as well when p is close to 1;
    eta0 is then taken from q without forming 1 - p.
    """
    if not a > 0:
        raise DomainError(f"invert_expansion requires a > 0, got {a!r}")
    if q is None:
        q = 1.0 - p
    # 1/2 erfc(-eta0 sqrt(a/2)) = p, taken from the smaller probability
    if p <= q:
        e0 = -math.sqrt(2.0 / a) * inverfc(2.0 * p)
    else:
        e0 = math.sqrt(2.0 / a) * inverfc(2.0 * q)
    A = _a_coefficients(frame.f_series)
    if abs(e0) < ETA_SMALL:
        eta1, eta2, eta3 = _eta_terms_small(frame.f_series, e0)
    else:
        eta1, eta2, eta3 = _eta_terms_regular(frame, e0, A)
    return InversionExpansion(e0, eta1, eta2, eta3, A, a)
