"""Central gamma and chi-square tails, and their quantiles.

Run with ``python3 demos/central_tails.py``.
"""

from ncgamma import DistributionKind, cdf_central, inv_central

CHI = DistributionKind.CHI_SQUARE


def main():
    # both tails come back as a pair; the smaller one is computed directly,
    # so neither loses digits to 1 - (something close to 1)
    print("gamma tails P(a, x), Q(a, x)")
    for a, x in [(3.7, 2.0), (100.0, 160.0), (5000.0, 4800.0), (1e-14, 0.01)]:
        pq, status = cdf_central(a, x)
        print(f"  a={a:<8g} x={x:<8g} P={pq.p:.16e}  Q={pq.q:.16e}  {status.code.value}")

    # chi-square upper tail: the p-value of a test statistic
    print("\nchi-square p-values, 10 degrees of freedom")
    for t in (5.0, 18.3, 40.0, 200.0):
        pq, _ = cdf_central(10.0, t, kind=CHI)
        print(f"  t={t:<6g} p-value={pq.q:.6e}")

    # quantiles: critical values of the chi-square law
    print("\nchi-square critical values")
    for nu in (1.0, 5.0, 30.0):
        for alpha in (0.05, 1e-6):
            t, status = inv_central(nu, 1.0 - alpha, alpha, kind=CHI)
            back = cdf_central(nu, t, kind=CHI)[0].q
            print(f"  nu={nu:<4g} alpha={alpha:<6g} t={t:.15g}  Q(t)={back:.15g}")

    # Q stays resolved long after 1 - P has rounded to zero
    pq, status = cdf_central(10.0, 600.0)
    print(f"\nQ(10, 600) = {pq.q:.6e} ({status.code.value})")
    pq, status = cdf_central(10.0, 1200.0)
    print(f"Q(10, 1200) = {pq.q:.6e} ({status.code.value}: below the double range)")


if __name__ == "__main__":
    main()
