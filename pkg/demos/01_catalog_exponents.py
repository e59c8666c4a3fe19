"""
Power-law exponents of the catalog priors
=========================================

Every prior in the catalog factorizes as pi(phi) / (mu * alpha^c).  Whether a
posterior built from it can be normalized depends only on how pi(phi) behaves
near phi -> 0 and phi -> infinity.  This script fits those two slopes on a
log-log grid and sets them beside the tabulated values.
"""

from powerlaw_priors import analytic_exponents, estimate_exponent, get_prior
from powerlaw_priors.priors import catalog_table

# J4a only makes sense with the shape alpha held fixed; the rest live on all three parameters.
HOME = {"J4a": "alpha-known"}

print(f"{'prior':6} {'construction':38} {'fit 0+':>8} {'table':>6} {'fit inf':>8} {'table':>6}")
for row in catalog_table():
    pid = row["id"]
    spec = get_prior(pid, HOME.get(pid, "general"))
    table = analytic_exponents(spec)
    fit0 = estimate_exponent(spec.phi_factor, "0+")
    fit_inf = estimate_exponent(spec.phi_factor, "inf")

    def show(v):
        return "  n/a" if v is None else f"{v:6.2f}"

    print(f"{pid:6} {row['construction'][:38]:38} {fit0.exponent:8.3f} {show(table.r0)} "
          f"{fit_inf.exponent:8.3f} {show(table.r_inf)}")

# %%
# A slope that lands within 0.02 of a half-integer is snapped to it.  R9 is
# the one prior whose slope bends slowly at infinity, which is why its fit
# sits a little off -1.
r9 = estimate_exponent(get_prior("R9").phi_factor, "inf")
print(f"\nR9 at infinity: raw {r9.exponent:.4f}, snapped {r9.snapped}, fit residual {r9.stderr:.2e}")
print(next(r["note"] for r in catalog_table() if r["id"] == "R9"))
