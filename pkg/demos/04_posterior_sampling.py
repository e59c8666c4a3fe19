"""
Sampling a proper posterior
===========================

Once the engine certifies propriety, a random-walk Metropolis sampler on the
log scale draws from the posterior.  Improper posteriors are refused before
any sampling happens.
"""

from powerlaw_priors import ProprietyGateError, get_prior, mcmc_sample, sample
from powerlaw_priors.oracle import MCMCConfig

# Gamma data (alpha = 1) with the (mu, phi) reference prior.
truth = (2.5, 0.8, 1.0)
data = sample(truth, 40, seed=11)
result = mcmc_sample(data, get_prior("R8", "alpha-known"), alpha=1.0, config=MCMCConfig(steps=4000, burn_in=2000, seed=1))
s = result.summary()
print(f"true phi={truth[0]}, mu={truth[1]}")
print(f"posterior mean phi={s['mean']['phi']:.3f} (sd {s['std']['phi']:.3f}), "
      f"mu={s['mean']['mu']:.3f} (sd {s['std']['mu']:.3f}), acceptance {s['acceptance_rate']:.2f}")

# %%
# J1 with all three parameters free gives an improper posterior for every n.
try:
    mcmc_sample(data, get_prior("J1"))
except ProprietyGateError as exc:
    print("\nrefused:", exc)
