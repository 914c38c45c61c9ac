"""Small numeric helpers shared by the tests."""

import math


def rel_err(value, ref):
    if ref == 0:
        return abs(value)
    return abs(value - ref) / abs(ref)


def ulps(value, ref):
    """Distance in units of the last place of ``ref``."""
    if value == ref:
        return 0.0
    return abs(value - ref) / math.ulp(ref)


def sig_digits_ok(value, ref, digits):
    """True when ``value`` agrees with ``ref`` to ``digits`` significant digits."""
    return rel_err(value, ref) <= 0.5 * 10.0 ** (1 - digits)
