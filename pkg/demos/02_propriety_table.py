"""
Which posteriors are proper?
============================

The decision engine reads the prior's exponents and the sample size and
returns Proper, Improper or Undetermined, plus the smallest sample size that
would make the posterior proper.
"""

from powerlaw_priors import AsymptoticExponents, decide, decide_prior, get_prior

CASES = [
    ("J1", "general"),
    ("J1", "alpha-known"),
    ("R8", "general"),
    ("R8", "alpha-known"),
    ("R10", "general"),
    ("R10", "phi-known"),
]

print(f"{'prior':5} {'scope':12} " + " ".join(f"n={n:<10}" for n in (1, 2, 5)) + " min n")
for pid, scope in CASES:
    spec = get_prior(pid, scope)
    verdicts = [decide_prior(spec, n) for n in (1, 2, 5)]
    min_n = verdicts[-1].min_n
    print(f"{pid:5} {scope:12} " + " ".join(f"{v.status.value:12}" for v in verdicts) + f" {min_n if min_n else '-'}")

# %%
# When all three parameters are free, R10 is the only catalog prior that
# works, and even then very few posterior moments exist.
v = decide_prior(get_prior("R10"), 3)
print("\nR10 with n=3:", v.theorem)
print("finite moments E[alpha^q phi^r mu^j] with q, r, j <= 4:", v.moments.finite_triples)

# %%
# Exponents only known up to an inequality give a weaker answer: an upper
# bound can never certify a proper posterior.
upper = AsymptoticExponents(k=-1, q0=-1, q_inf=-1, r0=-0.5, r_inf=-1.5, bound="upper")
print("\nsame exponents as R10, but only as upper bounds:", decide(upper, 3, "general").status.value)
