"""Numerical checks of the inequalities behind the length guarantee.

Each check samples k from 2 to 2^20, evaluates both sides in two different
orders, and flags anything within a relative 1e-9 as marginal.  The last
two reports break a constant on purpose and must fail.
"""

from rainbow_cycles.bounds import all_checks, check_D_bound, check_g_positive, g_margin

for rep in all_checks():
    d = rep.to_dict()
    print(f"{d['name']:<12} pass={d['pass']} samples={d['samples']} worst slack={d['worst_relative_slack']:.3g}")

print(f"g(2) = {g_margin(2):.4f}, g(10^6) = {g_margin(10**6):.2f}")

for rep in (check_g_positive(coef=1.0), check_D_bound(coef=3)):
    print(f"broken {rep.name:<12} pass={rep.passed} first failure at k={rep.failure_k}")
