"""Numerical evidence for propriety: truncated normalizing constants and MCMC.

The normalizing constant of the posterior is integrated over growing boxes
``[1/T, T]`` in each free parameter.  A proper posterior gives a ladder of
values that saturates; an improper one keeps growing, either like a power
of ``T`` or like a power of ``ln T``.

Quadrature runs on ``t = ln θ``.  Each axis is cut into panels of width
``ln 2`` and every panel gets a Gauss–Legendre rule, so the box for
``T = 2^m`` is exactly the central ``2m`` panels.  One evaluation of the
integrand on the largest box therefore gives every level of the ladder by
prefix sums.  A lower-order rule on the same panels supplies the error
estimate.

When the μ factor of the prior is the pure power ``μ^k`` with ``k >= -1``
the μ integral is done in closed form::

    ∫₀^∞ μ^(k + nαφ) exp(-μ^α S) dμ = Γ(a) / (α S^a),   a = nφ + (k+1)/α,

with ``S = Σ xᵢ^α``.  For ``k = -1`` the remaining integrand collapses to
``π(φ)π(α) α^(n-1) Γ(nφ)/Γ(φ)ⁿ exp(-nφ q(α))``, and ``q(α)`` is evaluated
with the cancellation-free ``p(α)`` so small α stays accurate.
"""

import csv
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import special

from .asymptotics import p_statistic
from .errors import DegenerateDataError, DomainError, ProprietyGateError, QuadratureError
from .priors import Scope
from .propriety import Status, decide_prior
from .specfun import log_gamma, log_gamma_ratio
from .stacy import Dataset, ParamVector

__all__ = [
    "LadderConfig",
    "TruncationLadder",
    "Diagnosis",
    "DiagnosisConfig",
    "integrate_norm_const",
    "integrate_log_density",
    "diagnose",
    "MCMCConfig",
    "MCMCResult",
    "mcmc_sample",
    "log_posterior",
]

_PANEL = math.log(2.0)


@dataclass(frozen=True)
class LadderConfig:
    """Ladder levels ``T = 2^min_power, ..., 2^max_power`` and the panel rules."""

    min_power: int = 4
    max_power: int = 28
    nodes: int = 24
    check_nodes: int = 16
    max_rel_err: float = 0.10

    def __post_init__(self):
        if not (1 <= self.min_power < self.max_power):
            raise DomainError("ladder needs 1 <= min_power < max_power")
        if self.check_nodes >= self.nodes or self.check_nodes < 2:
            raise DomainError("check_nodes must be at least 2 and below nodes")

    @property
    def powers(self):
        return np.arange(self.min_power, self.max_power + 1)


@dataclass(frozen=True)
class TruncationLadder:
    """``log_values[i]`` is ln of the integral over ``[1/T_i, T_i]^dim``."""

    T: np.ndarray
    log_values: np.ndarray
    rel_err: np.ndarray
    dim: int = 1
    method: str = "reduced"

    def __post_init__(self):
        T = np.asarray(self.T, dtype=float)
        if T.ndim != 1 or T.size < 2 or np.any(np.diff(T) <= 0):
            raise DomainError("ladder levels must be strictly increasing")
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "log_values", np.asarray(self.log_values, dtype=float))
        object.__setattr__(self, "rel_err", np.asarray(self.rel_err, dtype=float))

    @classmethod
    def from_log_values(cls, log_values, first_power=4):
        v = np.asarray(log_values, dtype=float)
        T = 2.0 ** np.arange(first_power, first_power + v.size)
        return cls(T=T, log_values=v, rel_err=np.zeros_like(v))

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["T", "log_value", "rel_err"])
            for t, v, e in zip(self.T, self.log_values, self.rel_err):
                w.writerow([f"{t:.12g}", f"{v:.12g}", f"{e:.12g}"])

    def to_dict(self):
        return {
            "T": self.T.tolist(),
            "log_value": self.log_values.tolist(),
            "rel_err": self.rel_err.tolist(),
            "method": self.method,
        }


# ---------------------------------------------------------------------------
# panel quadrature


def _panel_nodes(n_panels_half, order):
    """Nodes and weights on ``[-P ln2, P ln2]``, panel by panel."""
    x, w = np.polynomial.legendre.leggauss(order)
    left = (np.arange(-n_panels_half, n_panels_half) * _PANEL)[:, None]
    t = left + 0.5 * _PANEL * (x[None, :] + 1.0)
    wt = np.broadcast_to(0.5 * _PANEL * w, t.shape)
    return t.ravel(), np.ascontiguousarray(wt).ravel()


def _centre_sums(panel_sums, powers):
    """Sum panel contributions over the central ``2m`` panels along every axis."""
    dim = panel_sums.ndim
    half = panel_sums.shape[0] // 2
    prefix = panel_sums
    for ax in range(dim):
        prefix = np.cumsum(prefix, axis=ax)
        pad = [(0, 0)] * dim
        pad[ax] = (1, 0)
        prefix = np.pad(prefix, pad)
    out = []
    for m in powers:
        lo, hi = half - m, half + m
        # inclusion-exclusion over the corners of the box
        total = 0.0
        for corner in range(2**dim):
            idx = tuple(hi if (corner >> ax) & 1 else lo for ax in range(dim))
            sign = (-1) ** (dim - bin(corner).count("1"))
            total += sign * prefix[idx]
        out.append(total)
    return np.array(out)


def _panel_integrals(log_f, order, n_half, dim):
    """Panel sums of ``exp(log_f - shift)`` and the shift, on a tensor grid."""
    t, w = _panel_nodes(n_half, order)
    grids = np.meshgrid(*([t] * dim), indexing="ij")
    lf = np.asarray(log_f(*grids), dtype=float)
    lf = np.where(np.isnan(lf), -np.inf, lf)
    shift = float(np.max(lf))
    if not np.isfinite(shift):
        raise QuadratureError("integrand is zero or non-finite everywhere on the box")
    vals = np.exp(lf - shift)
    for ax in range(dim):
        shape = [1] * dim
        shape[ax] = w.size
        vals = vals * w.reshape(shape)
    panels = vals.reshape(sum(([2 * n_half, order] for _ in range(dim)), []))
    panels = panels.sum(axis=tuple(range(1, 2 * dim, 2)))
    return panels, shift


def _ladder_from(log_f, dim, config, method):
    powers = config.powers
    n_half = int(powers[-1])
    hi, s_hi = _panel_integrals(log_f, config.nodes, n_half, dim)
    lo, s_lo = _panel_integrals(log_f, config.check_nodes, n_half, dim)
    v_hi = _centre_sums(hi, powers)
    v_lo = _centre_sums(lo, powers)
    with np.errstate(divide="ignore"):
        log_hi = np.log(np.maximum(v_hi, 0.0)) + s_hi
        log_lo = np.log(np.maximum(v_lo, 0.0)) + s_lo
    if not np.all(np.isfinite(log_hi)):
        raise QuadratureError("a ladder level integrated to zero or a non-finite value")
    rel = np.abs(np.expm1(log_lo - log_hi))
    rel = np.where(np.isfinite(rel), rel, np.inf)
    bad = np.flatnonzero(rel > config.max_rel_err)
    if bad.size:
        raise QuadratureError(
            f"quadrature error estimate {rel[bad[0]]:.3g} exceeds {config.max_rel_err:g} at T=2^{powers[bad[0]]}"
        )
    return TruncationLadder(T=2.0 ** powers.astype(float), log_values=log_hi, rel_err=rel, dim=dim, method=method)


def _box_integral(log_f, dim, m, config):
    """ln of the integral over the single box ``[1/2^m, 2^m]^dim`` and its error estimate."""
    hi, s_hi = _panel_integrals(log_f, config.nodes, m, dim)
    lo, s_lo = _panel_integrals(log_f, config.check_nodes, m, dim)
    value = math.log(float(hi.sum())) + s_hi
    rel = abs(math.expm1(math.log(float(lo.sum())) + s_lo - value))
    if rel > config.max_rel_err:
        raise QuadratureError(f"quadrature error estimate {rel:.3g} exceeds {config.max_rel_err:g}")
    return value, rel


def integrate_log_density(log_f, dim, config=None):
    """Ladder for an arbitrary integrand given as ``log_f(t_1, ..., t_dim)``.

    ``t`` are the log coordinates and ``log_f`` must already include the
    Jacobian of the substitution; it receives broadcastable arrays.
    """
    config = config or LadderConfig()
    return _ladder_from(log_f, dim, config, "generic")


# ---------------------------------------------------------------------------
# normalizing constants


def _data_terms(data):
    data = data if isinstance(data, Dataset) else Dataset(data)
    if data.n >= 2 and data.degenerate:
        raise DegenerateDataError("the oracle needs observations that are not all equal")
    return data, float(data.log_values.mean())


def _q_of(data, alpha):
    return p_statistic(data, alpha) + math.log(data.n)


def _log_mu_integral(n, phi, alpha, k, q, mean_log):
    """ln ∫ μ^(k + nαφ) e^(-μ^α S) dμ plus the ``(αφ-1)Σ ln x - n lnΓ(φ)`` terms.

    Returns ``lnΓ(a) - n lnΓ(φ) - ln α - a ln S + αφ Σ ln x`` with the data
    constant ``-Σ ln x`` left out.
    """
    a = n * phi + (k + 1.0) / alpha
    # a ln S - αφ Σ ln x = nφ q(α) + (k+1)/α (q(α) + α mean ln x)
    exponent = n * phi * q + (k + 1.0) / alpha * (q + alpha * mean_log)
    if k == -1.0:
        lg = log_gamma_ratio(phi, n)
    else:
        lg = log_gamma(a) - n * log_gamma(phi)
    return lg - np.log(alpha) - exponent


def _require_reducible(spec):
    if spec.mu_exponent < -1.0:
        raise DomainError(
            "closed-form mu reduction needs mu_exponent >= -1; use method='full' for heavier mu factors"
        )


def _fixed_value(name, value):
    if value is None:
        raise DomainError(f"this scope needs a value for {name}")
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be positive and finite")
    return value


def _log_phi_factor(spec, phi):
    shape = np.shape(phi)
    flat = np.ravel(phi)
    uniq, inv = np.unique(flat, return_inverse=True)
    vals = np.log(np.asarray(spec.phi_factor(uniq), dtype=float))
    return vals[inv].reshape(shape)


def integrate_norm_const(data, spec, alpha=None, phi=None, config=None, method="reduced"):
    """Ladder of truncated normalizing constants for ``spec`` on ``data``.

    The free parameters follow ``spec.scope``; ``alpha`` or ``phi`` supply the
    fixed value for the known-parameter scopes.  ``method="reduced"``
    integrates μ in closed form (over all of ``(0, ∞)``) and truncates the
    remaining parameters; ``method="full"`` truncates every free parameter,
    μ included, with tensor quadrature.
    """
    config = config or LadderConfig()
    data, mean_log = _data_terms(data)
    n = data.n
    const = -float(data.log_sum)
    scope = spec.scope
    k = float(spec.mu_exponent)
    a_exp = spec.alpha_exponent if spec.alpha_exponent is not None else 0.0

    if method == "full":
        return _integrate_full(data, spec, alpha, phi, config)
    if method != "reduced":
        raise DomainError(f"unknown method {method!r}")
    _require_reducible(spec)

    if scope is Scope.GENERAL:
        # α powers: likelihood α^n, prior α^a, Jacobian α, and 1/α inside the μ integral
        def log_f(tp, ta):
            ph = np.exp(tp)
            al = np.exp(ta)
            q = _q_cached(data, ta)
            out = _log_mu_integral(n, ph, al, k, q, mean_log)
            out = out + _log_phi_factor(spec, ph) + (a_exp + n + 1.0) * ta + tp + const
            return out

        return _ladder_from(_separable(log_f, data, k, n, mean_log, spec, a_exp, const), 2, config, "reduced")

    if scope is Scope.ALPHA_KNOWN:
        al = _fixed_value("alpha", alpha)
        q = _q_of(data, al)

        def log_f(tp):
            ph = np.exp(tp)
            out = _log_mu_integral(n, ph, al, k, q, mean_log)
            return out + _log_phi_factor(spec, ph) + n * math.log(al) + tp + const

        return _ladder_from(log_f, 1, config, "reduced")

    ph = _fixed_value("phi", phi)

    def log_f(ta):
        al = np.exp(ta)
        q = _q_cached(data, ta)
        out = _log_mu_integral(n, ph, al, k, q, mean_log)
        return out + (a_exp + n + 1.0) * ta + const

    return _ladder_from(log_f, 1, config, "reduced")


def _q_cached(data, t_alpha):
    """q(α) on a grid of log-α values, evaluating each distinct node once."""
    shape = np.shape(t_alpha)
    uniq, inv = np.unique(np.ravel(t_alpha), return_inverse=True)
    vals = p_statistic(data, np.exp(uniq)) + math.log(data.n)
    return np.asarray(vals)[inv].reshape(shape)


def _separable(log_f, data, k, n, mean_log, spec, a_exp, const):
    """Fast path for ``k = -1``: only ``-nφq(α)`` couples the two axes."""
    if k != -1.0:
        return log_f

    def fast(tp, ta):
        tp1 = tp[:, :1]
        ta1 = ta[:1, :]
        ph = np.exp(tp1)
        al = np.exp(ta1)
        q = _q_cached(data, ta1)
        a_part = log_gamma_ratio(ph.ravel(), n).reshape(ph.shape) + _log_phi_factor(spec, ph) + tp1
        b_part = (a_exp + n) * ta1
        return a_part + b_part - n * ph * q + const

    return fast


def _log_lik_grid(data, phi, mu, alpha):
    """Vectorized log-likelihood over broadcast parameter arrays."""
    n = data.n
    out = n * np.log(alpha) - n * log_gamma(phi) + (alpha * phi - 1.0) * data.log_sum + n * alpha * phi * np.log(mu)
    log_mu = np.log(mu)
    acc = np.zeros(np.broadcast(phi, mu, alpha).shape)
    # overflow only drives the log-likelihood to -inf, which is the right limit
    with np.errstate(over="ignore"):
        for lx in data.log_values:
            acc = acc + np.exp(alpha * (log_mu + lx))
    return out - acc


def _log_prior_grid(spec, phi, mu, alpha):
    out = spec.mu_exponent * np.log(mu)
    if spec.scope is not Scope.PHI_KNOWN:
        out = out + _log_phi_factor(spec, phi)
    if spec.scope is not Scope.ALPHA_KNOWN and spec.alpha_exponent is not None:
        out = out + spec.alpha_exponent * np.log(alpha)
    return out


def _integrate_full(data, spec, alpha, phi, config):
    scope = spec.scope
    if scope is Scope.GENERAL:
        def log_f(tp, tm, ta):
            ph, m, al = np.exp(tp), np.exp(tm), np.exp(ta)
            return _log_lik_grid(data, ph, m, al) + _log_prior_grid(spec, ph, m, al) + tp + tm + ta

        return _ladder_from(log_f, 3, config, "full")
    if scope is Scope.ALPHA_KNOWN:
        al = _fixed_value("alpha", alpha)

        def log_f(tp, tm):
            ph, m = np.exp(tp), np.exp(tm)
            return _log_lik_grid(data, ph, m, al) + _log_prior_grid(spec, ph, m, al) + tp + tm

        return _ladder_from(log_f, 2, config, "full")
    ph = _fixed_value("phi", phi)

    def log_f(tm, ta):
        m, al = np.exp(tm), np.exp(ta)
        return _log_lik_grid(data, ph, m, al) + _log_prior_grid(spec, ph, m, al) + tm + ta

    return _ladder_from(log_f, 2, config, "full")


def truncated_mu_reduced(data, spec, config=None, alpha=None, phi=None):
    """Reduced ladder with μ also confined to ``[1/T, T]``.

    The μ integral becomes a difference of regularized incomplete gammas,
    which makes the result directly comparable with ``method="full"``.
    """
    config = config or LadderConfig()
    data, mean_log = _data_terms(data)
    n = data.n
    const = -float(data.log_sum)
    k = float(spec.mu_exponent)
    _require_reducible(spec)
    a_exp = spec.alpha_exponent if spec.alpha_exponent is not None else 0.0
    powers = config.powers
    log_values, rel = [], []
    for m in powers:
        T = 2.0 ** float(m)

        def log_f(*ts, _T=T):
            if spec.scope is Scope.GENERAL:
                tp, ta = ts
                ph, al = np.exp(tp), np.exp(ta)
                extra = _log_phi_factor(spec, ph) + (a_exp + n + 1.0) * ta + tp
            elif spec.scope is Scope.ALPHA_KNOWN:
                (tp,) = ts
                ph, al = np.exp(tp), _fixed_value("alpha", alpha)
                extra = _log_phi_factor(spec, ph) + n * math.log(al) + tp
            else:
                (ta,) = ts
                ph, al = _fixed_value("phi", phi), np.exp(ta)
                extra = (a_exp + n + 1.0) * ta
            q = _q_cached(data, np.log(al) * np.ones(np.shape(ph * al)))
            base = _log_mu_integral(n, ph, al, k, q, mean_log)
            a = n * ph + (k + 1.0) / al
            log_s = q + al * mean_log
            upper = np.exp(np.minimum(log_s + al * math.log(_T), 700.0))
            lower = np.exp(np.maximum(log_s - al * math.log(_T), -745.0))
            frac = special.gammainc(a, upper) - special.gammainc(a, lower)
            alt = special.gammaincc(a, lower) - special.gammaincc(a, upper)
            frac = np.where(special.gammainc(a, lower) > 0.5, alt, frac)
            with np.errstate(divide="ignore"):
                return base + np.log(np.maximum(frac, 0.0)) + extra + const

        dim = 2 if spec.scope is Scope.GENERAL else 1
        value, err = _box_integral(log_f, dim, int(m), config)
        log_values.append(value)
        rel.append(err)
    return TruncationLadder(T=2.0 ** powers.astype(float), log_values=np.array(log_values),
                            rel_err=np.array(rel), dim=2 if spec.scope is Scope.GENERAL else 1,
                            method="reduced-truncated")


# ---------------------------------------------------------------------------
# diagnosis


@dataclass(frozen=True)
class DiagnosisConfig:
    """Thresholds for reading a ladder.

    ``converge_tol`` bounds the last relative increment of a converging
    ladder.  ``slope_min`` is the smallest growth rate of ``ln I`` against
    ``ln T`` accepted as polynomial divergence.  ``decay_max`` catches
    logarithmic divergence: if successive linear increments shrink by less
    than this factor the ladder is not saturating.
    """

    converge_tol: float = 1e-3
    slope_min: float = 0.05
    decay_max: float = 0.9
    window: int = 4


@dataclass(frozen=True)
class Diagnosis:
    status: str
    tail_slope: float
    last_increment: float
    increment_decay: float

    def to_dict(self):
        return {
            "status": self.status,
            "tail_slope": self.tail_slope,
            "last_increment": self.last_increment,
            "increment_decay": self.increment_decay,
        }


CONVERGING = "Converging"
DIVERGING = "Diverging"
INCONCLUSIVE = "Inconclusive"


def diagnose(ladder, config=None):
    """Classify a ladder as Converging, Diverging or Inconclusive."""
    config = config or DiagnosisConfig()
    if not isinstance(ladder, TruncationLadder):
        ladder = TruncationLadder.from_log_values(ladder)
    v = ladder.log_values
    if v.size < 5:
        raise DomainError("diagnosis needs at least 5 ladder levels")
    w = config.window
    tail_v = v[-w:]
    tail_t = np.log(ladder.T[-w:])
    slope = float(np.polyfit(tail_t, tail_v, 1)[0])
    steps = np.diff(v)
    rel_inc = np.expm1(steps)
    last = float(rel_inc[-1])
    # linear increments ΔI_m relative to the last value
    lin = np.exp(v - v[-1])
    dlin = np.diff(lin)[-(w - 1):]
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = dlin[1:] / dlin[:-1]
    decay = float(np.max(ratios)) if np.all(dlin > 0) else float("nan")

    monotone = np.all(steps[-(w - 1):] > 0)
    if monotone and last >= config.converge_tol:
        if slope >= config.slope_min or decay >= config.decay_max:
            return Diagnosis(DIVERGING, slope, last, decay)
    tail_inc = rel_inc[-(w - 1):]
    tol = 1e-12
    decreasing = np.all(tail_inc[1:] <= tail_inc[:-1] + tol)
    if np.all(steps[-(w - 1):] >= -tol) and abs(last) < config.converge_tol and decreasing:
        return Diagnosis(CONVERGING, slope, last, decay)
    return Diagnosis(INCONCLUSIVE, slope, last, decay)


# ---------------------------------------------------------------------------
# MCMC


@dataclass(frozen=True)
class MCMCConfig:
    """Random-walk Metropolis on log-parameters.

    Step sizes adapt during burn-in toward an acceptance rate in
    ``[0.25, 0.45]`` and are frozen afterwards, so the kept draws come from
    a fixed Markov kernel.
    """

    steps: int = 5000
    burn_in: int = 2000
    seed: int = 0
    chains: int = 4
    step_sizes: tuple = (0.5, 0.5, 0.5)
    adapt_every: int = 50

    def __post_init__(self):
        if self.steps < 1 or self.burn_in < 0 or self.chains < 1:
            raise DomainError("steps and chains must be positive, burn_in non-negative")
        if len(self.step_sizes) != 3 or min(self.step_sizes) <= 0:
            raise DomainError("step_sizes needs three positive entries (phi, mu, alpha)")


@dataclass
class MCMCResult:
    """Kept draws, shape ``(steps, chains, 3)`` in (φ, μ, α) order."""

    draws: np.ndarray
    log_post: np.ndarray
    acceptance_rate: float
    step_sizes: np.ndarray
    free: tuple = field(default=("phi", "mu", "alpha"))

    def params(self, chain=0):
        for phi, mu, alpha in self.draws[:, chain, :]:
            yield ParamVector(phi, mu, alpha)

    def flat(self):
        return self.draws.reshape(-1, 3)

    def summary(self):
        flat = self.flat()
        names = ("phi", "mu", "alpha")
        return {
            "acceptance_rate": self.acceptance_rate,
            "mean": {nm: float(flat[:, i].mean()) for i, nm in enumerate(names)},
            "std": {nm: float(flat[:, i].std(ddof=1)) if flat.shape[0] > 1 else 0.0 for i, nm in enumerate(names)},
        }

    def write_csv(self, path, chain=0):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["step", "phi", "mu", "alpha", "log_post"])
            for i, (row, lp) in enumerate(zip(self.draws[:, chain, :], self.log_post[:, chain])):
                w.writerow([i, f"{row[0]:.12g}", f"{row[1]:.12g}", f"{row[2]:.12g}", f"{lp:.12g}"])


def log_posterior(data, spec, log_theta):
    """Unnormalized log posterior in log coordinates (Jacobian included).

    ``log_theta`` has shape ``(..., 3)`` holding ``(ln φ, ln μ, ln α)``.
    """
    tp, tm, ta = log_theta[..., 0], log_theta[..., 1], log_theta[..., 2]
    ph, m, al = np.exp(tp), np.exp(tm), np.exp(ta)
    out = _log_lik_grid(data, ph, m, al) + _log_prior_grid(spec, ph, m, al) + tm
    if spec.scope is not Scope.PHI_KNOWN:
        out = out + tp
    if spec.scope is not Scope.ALPHA_KNOWN:
        out = out + ta
    return np.where(np.isfinite(out), out, -np.inf)


def _gate(data, spec, alpha, phi):
    if alpha is not None and phi is not None:
        # μ-only slice: μ^(k + nαφ) e^(-μ^α S) is integrable iff nαφ + k + 1 > 0
        if data.n * alpha * phi + spec.mu_exponent + 1.0 <= 0.0:
            raise ProprietyGateError("the mu-only posterior is improper for this prior")
        return
    verdict = decide_prior(spec, data.n)
    if verdict.status is not Status.PROPER:
        raise ProprietyGateError(
            f"refusing to sample: posterior is {verdict.status.value} ({verdict.theorem})"
        )


def mcmc_sample(data, spec, alpha=None, phi=None, config=None, start=None):
    """Sample the posterior after the propriety engine certifies it proper.

    Fixed parameters come from ``spec.scope`` and the ``alpha``/``phi``
    arguments; passing both pins φ and α and samples μ alone.
    """
    config = config or MCMCConfig()
    data = data if isinstance(data, Dataset) else Dataset(data)
    if spec.scope is Scope.ALPHA_KNOWN:
        alpha = _fixed_value("alpha", alpha)
    if spec.scope is Scope.PHI_KNOWN:
        phi = _fixed_value("phi", phi)
    if alpha is not None:
        alpha = _fixed_value("alpha", alpha)
    if phi is not None:
        phi = _fixed_value("phi", phi)
    _gate(data, spec, alpha, phi)

    rng = np.random.Generator(np.random.Philox(config.seed))
    chains = config.chains
    free = np.array([phi is None, True, alpha is None])
    if start is None:
        start = (1.0, 1.0 / data.geometric_mean, 1.0)
    x = np.tile(np.log(np.asarray(start, dtype=float)), (chains, 1))
    if phi is not None:
        x[:, 0] = math.log(phi)
    if alpha is not None:
        x[:, 2] = math.log(alpha)
    x[:, free] += 0.1 * rng.standard_normal((chains, int(free.sum())))
    lp = log_posterior(data, spec, x)
    step = np.tile(np.asarray(config.step_sizes, dtype=float), (chains, 1))
    step[:, ~free] = 0.0

    total = config.burn_in + config.steps
    draws = np.empty((config.steps, chains, 3))
    lps = np.empty((config.steps, chains))
    accepted = np.zeros((chains, 3))
    tried = np.zeros((chains, 3))
    kept_acc = 0
    free_idx = np.flatnonzero(free)
    for it in range(total):
        # one coordinate per iteration, cycling, with chain-specific scales
        j = free_idx[it % free_idx.size]
        prop = x.copy()
        prop[:, j] += step[:, j] * rng.standard_normal(chains)
        lp_prop = log_posterior(data, spec, prop)
        accept = np.log(rng.random(chains)) < lp_prop - lp
        x[accept] = prop[accept]
        lp[accept] = lp_prop[accept]
        if it < config.burn_in:
            accepted[:, j] += accept
            tried[:, j] += 1
            if (it + 1) % (config.adapt_every * free_idx.size) == 0:
                rate = accepted[:, free_idx] / np.maximum(tried[:, free_idx], 1)
                factor = np.where(rate < 0.25, 0.7, np.where(rate > 0.45, 1.4, 1.0))
                step[:, free_idx] *= factor
                accepted[:] = 0
                tried[:] = 0
        else:
            kept_acc += int(accept.sum())
            draws[it - config.burn_in] = np.exp(x)
            lps[it - config.burn_in] = lp
    rate = kept_acc / float(config.steps * chains)
    names = ("phi", "mu", "alpha")
    return MCMCResult(
        draws=draws,
        log_post=lps,
        acceptance_rate=rate,
        step_sizes=step.mean(axis=0),
        free=tuple(nm for nm, f in zip(names, free) if f),
    )
