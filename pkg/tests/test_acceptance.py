"""Acceptance suite: ten numbered criteria, each printing one PASS/FAIL line.

Run on its own with ``python3 tests/test_acceptance.py`` or
``pytest tests/test_acceptance.py``.  Every criterion checks its accuracy
bound and its runtime budget.
"""

import math
import sys
import time

import mpmath as mp
import numpy as np
import pytest

from ncgamma import (
    Status,
    cdf_central,
    cdf_noncentral,
    dterm,
    erfc,
    gammafun,
    gamstar,
    inv_central,
    inv_noncentral,
    inverfc,
    loggam,
    quotgamm,
)
from support import rel_err, sig_digits_ok


def _report(capsys, number, title, ok, detail, elapsed):
    verdict = "PASS" if ok else "FAIL"
    with capsys.disabled():
        print(f"\ncriterion {number:2d} {verdict}  {title}: {detail} ({elapsed:.2f} s)")


def _log_uniform(rng, lo, hi):
    return float(10.0 ** rng.uniform(math.log10(lo), math.log10(hi)))


# ---------------------------------------------------------------------------
# 1. upper tails for tiny shapes

TINY_SHAPE_ROWS = [
    (1e-250, 6.3e-15, 3.212101109661167e-249),
    (1e-250, 7.1e-7, 1.3580785912009393e-249),
    (1e-250, 0.01, 4.0379295765381135e-250),
    (1e-14, 6.3e-15, 3.212101109660651e-13),
    (1e-14, 7.1e-7, 1.358078591200848e-13),
    (1e-14, 0.01, 4.0379295765380405e-14),
]


def test_criterion_01_tiny_shape_tails(capsys):
    start = time.perf_counter()
    worst = 0.0
    ok = True
    for a, x, ref in TINY_SHAPE_ROWS:
        q = cdf_central(a, x)[0].q
        worst = max(worst, rel_err(q, ref))
        ok = ok and sig_digits_ok(q, ref, 14)
    q = cdf_central(1e-14, 0.01)[0].q
    ok = ok and sig_digits_ok(q, 4.03792957653804043e-14, 15)
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 1.0
    _report(capsys, 1, "tiny-shape upper tails", ok, f"worst rel err {worst:.1e}", elapsed)
    assert ok


# ---------------------------------------------------------------------------
# 2. central inversion grid

def test_criterion_02_central_inversion_grid(capsys):
    start = time.perf_counter()
    worst = 0.0
    all_ok = True
    for a in (0.05, 1.0, 10.0, 100.0, 1000.0):
        for p in (1e-4, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.9999):
            x, status = inv_central(a, p, 1.0 - p)
            all_ok = all_ok and status.ok
            worst = max(worst, rel_err(cdf_central(a, x)[0].p, p))
    elapsed = time.perf_counter() - start
    ok = all_ok and worst <= 1e-14 and elapsed < 1.0
    _report(capsys, 2, "central inversion grid, 40 cells", ok, f"worst |P(a,x)-p|/p {worst:.1e}", elapsed)
    assert ok


# ---------------------------------------------------------------------------
# 3. central recurrence in the shape parameter

def test_criterion_03_central_recurrence(capsys):
    rng = np.random.default_rng(20240503)
    start = time.perf_counter()
    res = np.empty(100_000)
    for i in range(res.size):
        a = _log_uniform(rng, 1e-8, 1e4)
        x = float(rng.uniform(0.0, 1e4))
        p0, _ = cdf_central(a, x)
        p1, _ = cdf_central(a + 1.0, x)
        d = dterm(a, x)
        # P(a+1, x) = P(a, x) - D(a, x), Q(a+1, x) = Q(a, x) + D(a, x)
        r = max(abs(p1.p - p0.p + d), abs(p1.q - p0.q - d))
        res[i] = r / max(p0.p, p0.q, d)
    elapsed = time.perf_counter() - start
    q999 = float(np.quantile(res, 0.999))
    ok = q999 <= 1e-13 and elapsed < 30.0
    _report(capsys, 3, "central recurrence, 1e5 points", ok, f"99.9% quantile {q999:.1e}, max {res.max():.1e}", elapsed)
    assert ok


# ---------------------------------------------------------------------------
# 4. noncentral golden values

NONCENTRAL_ROWS = [
    (5.0, 150.0, 30.0, 1.215915354045e-23),
    (1.0, 75.0, 0.5, 3.287840255874e-30),
    (2.0, 100.0, 2.0, 1.557081489535e-35),
    (10.0, 100.0, 1.0, 5.152185145235e-48),
]


def test_criterion_04_noncentral_golden(capsys):
    start = time.perf_counter()
    worst = 0.0
    ok = True
    for mu, x, y, ref in NONCENTRAL_ROWS:
        pq, status = cdf_noncentral(mu, x, y)
        worst = max(worst, rel_err(pq.p, ref))
        ok = ok and status.ok and sig_digits_ok(pq.p, ref, 12)
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 1.0
    _report(capsys, 4, "noncentral lower tails", ok, f"worst rel err {worst:.1e}", elapsed)
    assert ok


# ---------------------------------------------------------------------------
# 5. three-term recurrence of the noncentral tails in mu

def _three_term_deviation(mu, x, y):
    """|ratio - 1| on the smaller tail, or None when a tail is not a normal double."""
    lower = y < x + mu
    tails = []
    for k in (-1.0, 0.0, 1.0, 2.0):
        pq, status = cdf_noncentral(mu + k, x, y)
        t = pq.p if lower else pq.q
        if not status.ok or t == 0.0:
            return None
        tails.append(t)
    t_m1, t0, t1, t2 = tails
    return abs(((x - mu) * t1 + (y + mu) * t0) / (x * t2 + y * t_m1) - 1.0)


def test_criterion_05_noncentral_recurrence(capsys):
    # mu - 1 and mu + 2 must stay inside the box; points whose tails fall
    # below the double range have no defined ratio and are redrawn
    rng = np.random.default_rng(77)
    start = time.perf_counter()
    dev = []
    draws = 0
    while len(dev) < 100_000:
        draws += 1
        mu = _log_uniform(rng, 1.5, 1e4 - 2.0)
        x = _log_uniform(rng, 1e-3, 1e4)
        y = _log_uniform(rng, 1e-3, 1e4)
        d = _three_term_deviation(mu, x, y)
        if d is not None:
            dev.append(d)
    elapsed = time.perf_counter() - start
    dev = np.array(dev)
    q999 = float(np.quantile(dev, 0.999))
    ok = q999 <= 1e-11 and elapsed < 60.0
    detail = f"99.9% quantile {q999:.1e}, max {dev.max():.1e}, {draws} draws"
    _report(capsys, 5, "noncentral three-term recurrence, 1e5 points", ok, detail, elapsed)
    assert ok


# ---------------------------------------------------------------------------
# 6. noncentral inversion round trips

def _round_trip_error(mu, fixed, p, q, solve_x):
    """Relative error of the matched tail at the computed root, None when
    the root lies outside the box."""
    v, status = inv_noncentral("x" if solve_x else "y", mu, p, q, fixed)
    if status.code is Status.MAX_ITERATIONS and math.isnan(v):
        return None
    if not status.ok:
        return math.inf
    x, y = (v, fixed) if solve_x else (fixed, v)
    pq, _ = cdf_noncentral(mu, x, y)
    return rel_err(pq.p, p) if p <= q else rel_err(pq.q, q)


def test_criterion_06_noncentral_inversion(capsys):
    start = time.perf_counter()
    cells = []
    for q in (0.001, 0.1, 0.3, 0.5, 0.7, 0.999):
        for fixed in (10.0, 100.0, 1000.0):
            for solve_x in (True, False):
                cells.append(_round_trip_error(0.5, fixed, 1.0 - q, q, solve_x))
    cells_ok = all(e is not None and e <= 1e-12 for e in cells)
    worst_cell = max(e if e is not None else math.inf for e in cells)

    rng = np.random.default_rng(606)
    errs = []
    skipped = 0
    while len(errs) < 100_000:
        if rng.random() < 0.5:
            mu, fixed = float(rng.uniform(0.5, 1e4)), float(rng.uniform(0.0, 1e4))
        else:
            mu, fixed = _log_uniform(rng, 0.5, 1e4), _log_uniform(rng, 1e-3, 1e4)
        q = float(rng.uniform(1e-3, 1.0 - 1e-3))
        solve_x = bool(rng.random() < 0.5)
        if solve_x:
            q0 = cdf_central(mu, fixed)[0].q if fixed > 0 else 1.0
            if q < q0 * (1.0 + 1e-8):
                skipped += 1  # no root: Q_mu(0, y) already exceeds q
                continue
        e = _round_trip_error(mu, fixed, 1.0 - q, q, solve_x)
        if e is None:
            skipped += 1
            continue
        errs.append(e)
    elapsed = time.perf_counter() - start
    worst = max(errs)
    ok = cells_ok and worst <= 1e-11 and elapsed < 300.0
    detail = f"grid worst {worst_cell:.1e}, random worst {worst:.1e} over 1e5"
    detail += f" ({skipped} draws without a root in the box)"
    _report(capsys, 6, "noncentral inversion round trips", ok, detail, elapsed)
    assert ok


# ---------------------------------------------------------------------------
# 7. inverse complementary error function

INVERFC_ROWS = [
    (1.9, -1.1630871536766738),
    (0.1, 1.163087153676674),
    (1e-3, 2.3267537655135246),
    (1e-4, 2.7510639057120607),
    (1e-5, 3.123413274340875),
    (1e-6, 3.4589107372795),
    (1e-7, 3.766562581570838),
    (1e-8, 4.052237243871389),
    (1e-9, 4.320005384913445),
    (1e-10, 4.572824967389486),
    (1e-11, 4.812924067365823),
    (1e-12, 5.042029745639059),
]


def test_criterion_07_inverfc(capsys):
    start = time.perf_counter()
    ok = True
    worst_digits = 0.0
    worst_res = 0.0
    for y, ref in INVERFC_ROWS:
        x = inverfc(y)
        worst_digits = max(worst_digits, rel_err(x, ref))
        worst_res = max(worst_res, abs(erfc(x) / y - 1.0))
        ok = ok and sig_digits_ok(x, ref, 14)
    # the root at y = 1 is 0; the reference value is a rounding residue below 1e-16
    x = inverfc(1.0)
    ok = ok and abs(x) <= 1e-16
    worst_res = max(worst_res, abs(erfc(x) - 1.0))
    elapsed = time.perf_counter() - start
    ok = ok and worst_res <= 1e-14 and elapsed < 1.0
    detail = f"worst rel err {worst_digits:.1e}, worst |erfc(x)/y-1| {worst_res:.1e}"
    _report(capsys, 7, "inverse erfc, 13 rows", ok, detail, elapsed)
    assert ok


# ---------------------------------------------------------------------------
# 8. gamma family against extended precision

def _oracle_gamstar(x):
    # log Gamma(x) and the Stirling terms cancel to |log x| digits
    with mp.workdps(40 + max(0, int(math.log10(x)))):
        t = mp.mpf(x)
        return +mp.exp(mp.loggamma(t) - (mp.log(2 * mp.pi / t) / 2 + t * mp.log(t) - t))


def _gamma_points(rng):
    u = rng.random()
    if u < 0.4:
        return float(rng.uniform(0.0, 171.6))
    if u < 0.7:
        x = float(rng.uniform(-170.0, 0.0))
        return x if x != math.floor(x) else x - 0.5
    return _log_uniform(rng, 1e-300, 1.0)


def _loggam_points(rng):
    return float(rng.uniform(0.0, 10.0)) if rng.random() < 0.4 else _log_uniform(rng, 1e-300, 1e300)


def _quotgamm_points(rng):
    # nearby pairs and independent pairs with a representable quotient
    while True:
        x = _log_uniform(rng, 1e-3, 1e5)
        y = x + float(rng.uniform(-20.0, 20.0)) if rng.random() < 0.5 else _log_uniform(rng, 1e-3, 1e5)
        if y > 0 and abs(mp.loggamma(x) - mp.loggamma(y)) < 700:
            return x, y


def test_criterion_08_gamma_family(capsys):
    rng = np.random.default_rng(88)
    start = time.perf_counter()
    cases = {
        "gammafun": (lambda: (_gamma_points(rng),), gammafun, lambda x: mp.gamma(x)),
        "loggam": (lambda: (_loggam_points(rng),), loggam, lambda x: mp.loggamma(x)),
        "gamstar": (lambda: (_log_uniform(rng, 1e-300, 1e300),), gamstar, _oracle_gamstar),
        "quotgamm": (lambda: _quotgamm_points(rng), quotgamm, lambda x, y: mp.exp(mp.loggamma(x) - mp.loggamma(y))),
    }
    ok = True
    parts = []
    for name, (draw, func, oracle) in cases.items():
        worst = 0.0
        for _ in range(10_000):
            args = draw()
            ref = float(oracle(*args))
            value = func(*args)
            worst = max(worst, rel_err(value, ref))
            ok = ok and sig_digits_ok(value, ref, 13)
        parts.append(f"{name} {worst:.1e}")
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 120.0
    _report(capsys, 8, "gamma family vs mpmath, 1e4 points each", ok, "worst rel err " + ", ".join(parts), elapsed)
    assert ok


# ---------------------------------------------------------------------------
# 9. feasibility of the inversion in x

def test_criterion_09_feasibility(capsys):
    rng = np.random.default_rng(99)
    start = time.perf_counter()
    rejected = 0
    infeasible = 0
    while infeasible < 1000:
        mu = _log_uniform(rng, 0.5, 1e4)
        y = _log_uniform(rng, 1e-3, 1e4)
        q0 = cdf_central(mu, y)[0].q
        q = q0 * (1.0 - _log_uniform(rng, 1e-7, 1.0 - 1e-10))
        # the inverse accepts q >= 1e-35 and p >= 1e-25
        if q < 1e-35 or 1.0 - q < 1e-25:
            continue
        infeasible += 1
        x, status = inv_noncentral("x", mu, 1.0 - q, q, y)
        if status.ierr == 1 and math.isnan(x):
            rejected += 1

    solved = 0
    feasible = 0
    while feasible < 1000:
        mu = _log_uniform(rng, 0.5, 1e4)
        y = _log_uniform(rng, 1e-3, 1e4)
        q0 = cdf_central(mu, y)[0].q
        # a target reached at a noncentrality inside the box
        p, q = cdf_noncentral(mu, float(rng.uniform(0.0, 1e4)), y)[0]
        if q < q0 * (1.0 + 1e-8) or q < 1e-35 or p < 1e-25:
            continue
        feasible += 1
        x, status = inv_noncentral("x", mu, p, q, y)
        if status.ok and math.isfinite(x):
            solved += 1
    elapsed = time.perf_counter() - start
    ok = rejected == 1000 and solved == 1000 and elapsed < 30.0
    detail = f"{rejected}/1000 infeasible rejected, {solved}/1000 feasible solved"
    _report(capsys, 9, "inversion feasibility", ok, detail, elapsed)
    assert ok


# ---------------------------------------------------------------------------
# 10. timing of one inversion in x

def test_criterion_10_inversion_timing(capsys):
    timings = []
    for _ in range(5):
        start = time.perf_counter()
        x, status = inv_noncentral("x", 1.9, 1e-5, 1.0 - 1e-5, 288.0)
        timings.append(time.perf_counter() - start)
    p = cdf_noncentral(1.9, x, 288.0)[0].p
    slowest = max(timings)
    ok = status.ok and rel_err(p, 1e-5) <= 1e-11 and slowest < 0.01
    detail = f"x = {x:.12g}, slowest of 5 runs {slowest * 1e3:.2f} ms"
    _report(capsys, 10, "single inversion timing", ok, detail, sum(timings))
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
