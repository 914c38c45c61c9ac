"""Power of a chi-square test and the effect size needed for a target power.

A test statistic that is chi-square with ``df`` degrees of freedom under the
null hypothesis is noncentral chi-square with noncentrality ``lam`` under the
alternative.  For significance level alpha the critical value t solves
Q_chi2(df, t) = alpha; the power is the noncentral upper tail at t.  The
inverse in the noncentrality answers the design question: how large must
``lam`` be to reach a given power?

Run with ``python3 demos/power_analysis.py``.
"""

from ncgamma import DistributionKind, cdf_noncentral, inv_central, inv_noncentral

CHI = DistributionKind.CHI_SQUARE


def critical_value(df, alpha):
    t, status = inv_central(df, 1.0 - alpha, alpha, kind=CHI)
    if not status.ok:
        raise RuntimeError(status.detail)
    return t


def power(df, lam, alpha):
    t = critical_value(df, alpha)
    pq, _ = cdf_noncentral(df, lam, t, kind=CHI)
    return pq.q


def required_noncentrality(df, target_power, alpha):
    t = critical_value(df, alpha)
    lam, status = inv_noncentral("x", df, 1.0 - target_power, target_power, t, kind=CHI)
    if status.ierr == 1:
        # power alpha is reached already at lam = 0
        return 0.0
    if not status.ok:
        raise RuntimeError(status.detail)
    return lam


def main():
    alpha = 0.05
    print(f"power at alpha = {alpha}")
    print("  df   lam=2     lam=5     lam=10    lam=20")
    for df in (1, 4, 10, 30):
        row = "  ".join(f"{power(df, lam, alpha):.6f}" for lam in (2.0, 5.0, 10.0, 20.0))
        print(f"  {df:<4d} {row}")

    print("\nnoncentrality needed for a given power")
    for df in (1, 4, 10, 30):
        lams = [required_noncentrality(df, pw, alpha) for pw in (0.8, 0.9, 0.99)]
        print(f"  df={df:<3d} power 0.8: {lams[0]:.10f}  0.9: {lams[1]:.10f}  0.99: {lams[2]:.10f}")

    # a stringent level: small tails are still resolved to full precision
    alpha = 1e-8
    lam = required_noncentrality(10, 0.9, alpha)
    print(f"\nalpha = {alpha:g}, df = 10: lam = {lam:.12g} gives power {power(10, lam, alpha):.15f}")


if __name__ == "__main__":
    main()
