"""
Watching a normalizing constant converge or diverge
===================================================

The quadrature oracle integrates the unnormalized posterior over boxes
[1/T, T] in every free parameter for T = 2^4 ... 2^28 and classifies the
resulting sequence.  A proper posterior flattens out; an improper one keeps
growing, often only logarithmically.
"""

import numpy as np

from powerlaw_priors import Dataset, decide_prior, diagnose, get_prior, integrate_norm_const

# Weibull case: phi fixed at 1, reference prior on (alpha, mu).  One
# observation is not enough; two are.
spec = get_prior("R10", "phi-known")
for data in (Dataset([1.3]), Dataset([1.3, 0.4])):
    ladder = integrate_norm_const(data, spec, phi=1.0)
    diag = diagnose(ladder)
    print(f"n={data.n}: engine says {decide_prior(spec, data.n).status.value}, quadrature says {diag.status}")
    steps = np.diff(ladder.log_values)
    print("  last increments of log Z(T):", " ".join(f"{s:.2e}" for s in steps[-5:]))
    print(f"  tail slope {diag.tail_slope:.3f}, increment ratio {diag.increment_decay:.3f}")

# %%
# The same check with all three parameters free, where R10 needs n >= 2 and
# J1 never works.
data = Dataset([0.7, 1.9, 1.1])
for pid in ("R10", "J1"):
    diag = diagnose(integrate_norm_const(data, get_prior(pid)))
    print(f"{pid} general, n=3: {diag.status}")
