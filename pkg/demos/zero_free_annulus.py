"""Zero counting and the full criterion for Phi_n(z) = 5^n z^n + 9^-n e^{nz}.

Counts zeros of Phi_n inside |t| = 1/15 and |t| = 1 for the first few n,
then runs conditions (a)-(e) on A(1/15, 1, 1) and prints the summary.
"""

from entireops.catalog import CATALOG
from entireops.criterion import Annulus, check_criterion, winding_number

seq = CATALOG["five_nine"].seq

print("n  zeros in |t|<1/15  zeros in |t|<1")
for n in range(1, 8):
    print(f"{n:<3}{winding_number(seq, n, 1 / 15):>17}{winding_number(seq, n, 1.0):>16}")

report = check_criterion(seq, Annulus(1 / 15, 1.0, 1.0), N_max=50)
print()
for label, cond in sorted(report.conditions.items()):
    print(f"({label}) {cond.verdict.value}")
print("overall:", report.overall.value)
print("sup_n sum_j alpha[n, j] =", round(report.conditions["a"].details["sup_alpha"], 4))
print("sup_j sum_n beta[n, j]  =", round(report.conditions["a"].details["sup_beta"], 4))
