"""Coefficient ratios and radius search for c_n Phi^n.

For c_n = log(n+1) the ratios c_{n+1}/c_n tend to 1, and a radius search
on Phi(z) = z + e^z/9 finds an annulus where conditions (a)-(e) hold.
For c_n = n! the ratios are unbounded and the check is inconclusive.
Finishes with the majorant ledgers for conditions (i)-(iii) on D^n.
"""

from entireops.catalog import CATALOG, phi_small_exp
from entireops.convergence import bound_condition_i, bound_condition_ii, bound_condition_iii
from entireops.criterion import check_power_sequence
from entireops.expr import Z, factorial_seq, log1p_seq
from entireops.taylor import TaylorPoly

for label, phi, coeff in (("log(n+1) (z + e^z/9)^n", phi_small_exp(), log1p_seq()), ("n! z^n", Z(), factorial_seq())):
    rep = check_power_sequence(phi, coeff, N_max=100)
    st = rep.extras["ratio_stats"]
    print(f"{label}: gamma ~ {st['gamma_estimate']}, delta ~ {st['delta_estimate']}")
    print(f"  radius search: {rep.extras.get('radius_search')}")
    print(f"  verdict: {rep.overall.value}")

seq, P = CATALOG["derivative"].seq, TaylorPoly([1.0])
for led in (bound_condition_iii(seq, P, 2.0, 1.0, 30), bound_condition_ii(seq, P, 2.0, 1.0, 30, 10),
            bound_condition_i(seq, P, 0.5, 1.0, 12)):
    print(f"({led.condition}) direct sum {led.direct_partial_sums[-1]:.6f} <= majorant {led.analytic_bound:.6f}: "
          f"{led.verdict.value}")
