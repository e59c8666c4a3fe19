"""The Stacy (generalized gamma) family.

Density, in the rate parametrization used throughout the package::

    f(x | φ, μ, α) = α μ^(αφ) x^(αφ-1) exp(-(μx)^α) / Γ(φ),   x > 0

with shapes φ, α > 0 and rate μ > 0.  If ``G ~ Gamma(φ, 1)`` then
``G^(1/α) / μ`` has this density, which is how :func:`sample` works.
"""

import math
from dataclasses import dataclass, field
from numbers import Integral

import numpy as np

from .errors import DegenerateDataError, DomainError
from .specfun import digamma, log_gamma, reg_lower_gamma, trigamma

__all__ = [
    "ParamVector",
    "Dataset",
    "SUBFAMILIES",
    "pdf",
    "log_pdf",
    "cdf",
    "log_likelihood",
    "sample",
    "standard_gamma",
    "fisher_info",
    "score",
    "resolve_subfamily",
]


def _check_positive(name, value):
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be positive and finite, got {value!r}")
    return value


@dataclass(frozen=True)
class ParamVector:
    """θ = (φ, μ, α): shape, rate and power shape, all strictly positive."""

    phi: float
    mu: float
    alpha: float

    def __post_init__(self):
        for name in ("phi", "mu", "alpha"):
            object.__setattr__(self, name, _check_positive(name, getattr(self, name)))

    def as_tuple(self):
        return (self.phi, self.mu, self.alpha)


@dataclass(frozen=True, eq=False)
class Dataset:
    """Positive observations with the summary statistics used downstream.

    ``degenerate`` is set when every value is equal; several asymptotic
    kernels (``p(α) > 0``, ``k(x) > 0``) need at least two distinct values.
    """

    values: np.ndarray
    n: int = field(init=False)
    log_sum: float = field(init=False)
    geometric_mean: float = field(init=False)
    maximum: float = field(init=False)
    minimum: float = field(init=False)
    degenerate: bool = field(init=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float).ravel()
        if values.size == 0:
            raise DomainError("a dataset needs at least one observation")
        bad = np.flatnonzero(~np.isfinite(values) | (values <= 0.0))
        if bad.size:
            raise DomainError(
                f"observations must be positive and finite; offending positions {bad.tolist()}"
            )
        values.setflags(write=False)
        logs = np.log(values)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "n", int(values.size))
        object.__setattr__(self, "log_sum", float(logs.sum()))
        object.__setattr__(self, "geometric_mean", float(np.exp(logs.mean())))
        object.__setattr__(self, "maximum", float(values.max()))
        object.__setattr__(self, "minimum", float(values.min()))
        object.__setattr__(self, "degenerate", bool(np.all(values == values[0])))

    @property
    def log_values(self):
        return np.log(self.values)

    def require_nondegenerate(self):
        if self.degenerate:
            raise DegenerateDataError("all observations are equal")

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"Dataset(n={self.n}, min={self.minimum:.6g}, max={self.maximum:.6g}, degenerate={self.degenerate})"


def _theta(theta):
    if isinstance(theta, ParamVector):
        return theta
    return ParamVector(*theta)


def log_pdf(x, theta):
    """Log density; ``x`` may be a scalar or an array of positive values."""
    theta = _theta(theta)
    x_arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x_arr)) or np.any(x_arr <= 0.0):
        raise DomainError("pdf is defined for positive finite x only")
    phi, mu, alpha = theta.as_tuple()
    out = (
        math.log(alpha)
        + alpha * phi * math.log(mu)
        + (alpha * phi - 1.0) * np.log(x_arr)
        - (mu * x_arr) ** alpha
        - log_gamma(phi)
    )
    return float(out) if out.ndim == 0 else out


def pdf(x, theta):
    return np.exp(log_pdf(x, theta))


def cdf(x, theta):
    """``P(X <= x) = P(φ, (μx)^α)`` with P the regularized lower gamma."""
    theta = _theta(theta)
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0.0):
        raise DomainError("cdf needs x >= 0")
    return reg_lower_gamma(theta.phi, (theta.mu * x_arr) ** theta.alpha)


def log_likelihood(data, theta):
    """Log-likelihood of a :class:`Dataset` under θ, from its sufficient statistics."""
    theta = _theta(theta)
    if not isinstance(data, Dataset):
        data = Dataset(data)
    phi, mu, alpha = theta.as_tuple()
    n = data.n
    # μ^α Σ x^α through logs, finite for large α
    log_sum_pow = _logsumexp(alpha * (data.log_values + math.log(mu)))
    return (
        n * math.log(alpha)
        - n * log_gamma(phi)
        + (alpha * phi - 1.0) * data.log_sum
        + n * alpha * phi * math.log(mu)
        - math.exp(log_sum_pow)
    )


def _logsumexp(v):
    m = np.max(v)
    return float(m + np.log(np.sum(np.exp(v - m))))


def standard_gamma(shape, size, rng):
    """Gamma(shape, 1) variates by Marsaglia and Tsang's squeeze method.

    Shapes below one use the boost ``G(a) = G(a+1) · U^(1/a)``.  Returns
    log-variates, which stay representable when the boost underflows.
    """
    shape = _check_positive("shape", shape)
    boost = shape < 1.0
    a = shape + 1.0 if boost else shape
    d = a - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    out = np.empty(size)
    filled = 0
    while filled < size:
        m = max(int(1.1 * (size - filled)) + 16, 64)
        z = rng.standard_normal(m)
        u = rng.random(m)
        v = (1.0 + c * z) ** 3
        ok = v > 0.0
        logv = np.log(np.where(ok, v, 1.0))
        z2 = z * z
        accept = ok & (
            (u < 1.0 - 0.0331 * z2 * z2) | (np.log(u) < 0.5 * z2 + d * (1.0 - v + logv))
        )
        got = np.log(d) + logv[accept]
        take = min(got.size, size - filled)
        out[filled : filled + take] = got[:take]
        filled += take
    if boost:
        out += np.log(rng.random(size)) / shape
    return out


def sample(theta, count, seed):
    """Draw ``count`` observations; identical seeds give identical datasets.

    Uses a counter-based Philox generator so that callers can partition the
    seed space for parallel streams.
    """
    theta = _theta(theta)
    if isinstance(count, bool) or not isinstance(count, Integral) or count < 1:
        raise DomainError(f"count must be a positive integer, got {count!r}")
    rng = np.random.Generator(np.random.Philox(seed))
    log_g = standard_gamma(theta.phi, int(count), rng)
    values = np.exp(log_g / theta.alpha - math.log(theta.mu))
    values = np.maximum(values, np.finfo(float).tiny)
    return Dataset(values)


def fisher_info(theta):
    """Expected Fisher information per observation, ordered (α, μ, φ).

    Entries::

        I_αα = (1 + 2ψ(φ) + φψ'(φ) + φψ(φ)²) / α²
        I_μμ = φα² / μ²
        I_φφ = ψ'(φ)
        I_αμ = (1 + φψ(φ)) / μ
        I_αφ = -ψ(φ) / α
        I_μφ = -α / μ
    """
    theta = _theta(theta)
    phi, mu, alpha = theta.as_tuple()
    psi = digamma(phi)
    tri = trigamma(phi)
    i_aa = (1.0 + 2.0 * psi + phi * tri + phi * psi * psi) / alpha**2
    i_mm = phi * alpha**2 / mu**2
    i_pp = tri
    i_am = (1.0 + phi * psi) / mu
    i_ap = -psi / alpha
    i_mp = -alpha / mu
    return np.array(
        [
            [i_aa, i_am, i_ap],
            [i_am, i_mm, i_mp],
            [i_ap, i_mp, i_pp],
        ]
    )


def score(x, theta):
    """Per-observation gradient of the log density, ordered (α, μ, φ)."""
    theta = _theta(theta)
    phi, mu, alpha = theta.as_tuple()
    x = np.asarray(x, dtype=float)
    log_y = alpha * np.log(mu * x)
    y = np.exp(log_y)
    d_alpha = (1.0 + (phi - y) * log_y) / alpha
    d_mu = alpha * (phi - y) / mu
    d_phi = log_y - digamma(phi)
    return np.stack([d_alpha, d_mu, d_phi], axis=-1)


# pinned (φ, μ, α) per named member; "n" marks a φ tied to an integer n
SUBFAMILIES = {
    "Exponential": {"phi": 1.0, "alpha": 1.0},
    "Rayleigh": {"phi": 1.0, "alpha": 2.0},
    "HalfNormal": {"phi": 0.5, "alpha": 2.0},
    "MaxwellBoltzmann": {"phi": 1.5, "alpha": 2.0},
    "ScaledChiSquare": {"phi": "n/2", "alpha": 1.0},
    "ChiSquare": {"phi": "n/2", "mu": 0.5, "alpha": 1.0},
    "Weibull": {"phi": 1.0},
    "GeneralizedHalfNormal": {"phi": 0.5},
    "Gamma": {"alpha": 1.0},
    "Erlang": {"phi": "n", "alpha": 1.0},
    "Nakagami": {"alpha": 2.0},
    "WilsonHilferty": {"alpha": 3.0},
    "FullStacy": {},
}


def resolve_subfamily(name, **free):
    """Fill in the pinned parameters of a named member of the family.

    ``free`` must supply exactly the parameters the member leaves open
    (``phi``, ``mu``, ``alpha``) plus the integer ``n`` for the chi-square
    and Erlang members.

    >>> resolve_subfamily("MaxwellBoltzmann", mu=1.2)
    ParamVector(phi=1.5, mu=1.2, alpha=2.0)
    """
    try:
        pinned = SUBFAMILIES[name]
    except KeyError:
        raise DomainError(f"unknown subfamily {name!r}; choose from {sorted(SUBFAMILIES)}") from None

    needs_n = pinned.get("phi") in ("n", "n/2")
    expected = {p for p in ("phi", "mu", "alpha") if p not in pinned}
    if needs_n:
        expected.add("n")
    supplied = set(free)
    clash = supplied & set(pinned)
    if clash:
        raise DomainError(f"{name} pins {sorted(clash)}; do not supply them")
    if supplied != expected:
        raise DomainError(
            f"{name} needs exactly {sorted(expected)}, got {sorted(supplied)}"
        )

    values = {}
    if needs_n:
        n = free.pop("n")
        if isinstance(n, bool) or not isinstance(n, Integral) or n < 1:
            raise DomainError(f"{name} needs a positive integer n, got {n!r}")
        values["phi"] = float(n) / 2.0 if pinned["phi"] == "n/2" else float(n)
    for p, v in pinned.items():
        if p not in values:
            values[p] = v
    values.update(free)
    return ParamVector(phi=values["phi"], mu=values["mu"], alpha=values["alpha"])
