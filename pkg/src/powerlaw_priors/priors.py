"""Catalog of objective priors for the Stacy family.

Every catalog prior factorizes as ``π(φ) · α^a · μ^k``: ``k = -1`` throughout,
``a = 0`` for the Jeffreys-type priors (their Fisher determinant does not
involve α) and ``a = -1`` for the reference priors and Jeffreys' first rule.
The interesting part is the φ factor, which carries radicals of digamma and
trigamma terms.

Evaluating those radicals naively loses every digit: near φ = 0 the terms
grow like 1/φ² and cancel, near φ = ∞ they tend to constants and cancel.
The helpers below rewrite each radicand with ``a = ψ(φ+1)``, ``b = ψ'(φ+1)``
and, for large φ, the Bernoulli tail of ``φψ'(φ) - 1``, so each one is a sum
of same-signed terms (or a mild cancellation) over the whole range
``[1e-7, 1e7]``.
"""

import enum
import json
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import CatalogError, DomainError
from .specfun import digamma, trigamma
from .stacy import ParamVector

__all__ = [
    "Scope",
    "PriorSpec",
    "AsymptoticExponents",
    "CATALOG_IDS",
    "get_prior",
    "custom_prior",
    "eval_prior",
    "log_prior",
    "analytic_exponents",
    "catalog_table",
    "catalog_json",
]

RADICAND_FLOOR = -1e-12

# B_2, B_4, ..., B_20
_BERNOULLI = (
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0, -174611.0 / 330.0,
)
_SERIES_FROM = 10.0


class Scope(str, enum.Enum):
    """Which parameters are free."""

    GENERAL = "general"
    ALPHA_KNOWN = "alpha-known"
    PHI_KNOWN = "phi-known"


@dataclass(frozen=True)
class AsymptoticExponents:
    """Power-law exponents of a factorized prior.

    ``π(μ) ∝ μ^k``; ``π(α) ∝ α^q0`` at 0⁺ and ``α^q_inf`` at ∞;
    ``π(φ) ∝ φ^r0`` at 0⁺ and ``φ^r_inf`` at ∞.  ``None`` means unknown or
    not applicable.  ``bound`` records whether the relations are two-sided
    (``∝``), upper bounds only (``π ≲ power``) or lower bounds only
    (``π ≳ power``).
    """

    k: Optional[float] = None
    q0: Optional[float] = None
    q_inf: Optional[float] = None
    r0: Optional[float] = None
    r_inf: Optional[float] = None
    bound: str = "two-sided"
    provenance: str = "declared"

    def __post_init__(self):
        if self.bound not in ("two-sided", "upper", "lower"):
            raise ValueError(f"bound must be two-sided, upper or lower, got {self.bound!r}")
        for name in ("k", "q0", "q_inf", "r0", "r_inf"):
            v = getattr(self, name)
            if v is not None:
                v = float(v)
                if not math.isfinite(v):
                    raise ValueError(f"exponent {name} must be finite, got {v}")
                object.__setattr__(self, name, v)

    def as_dict(self):
        return {
            "k": self.k,
            "q0": self.q0,
            "q_inf": self.q_inf,
            "r0": self.r0,
            "r_inf": self.r_inf,
            "bound": self.bound,
            "provenance": self.provenance,
        }


# ---------------------------------------------------------------------------
# stable building blocks


def _phi_array(phi):
    arr = np.asarray(phi, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise DomainError(f"phi must be positive and finite, got {phi!r}")
    return np.atleast_1d(arr)


def _bernoulli_tail(phi):
    """``Σ_k B_2k / φ^2k``, i.e. ``φψ'(φ) - 1 - 1/(2φ)`` for large φ."""
    inv2 = 1.0 / (phi * phi)
    acc = np.zeros_like(phi)
    for b in reversed(_BERNOULLI):
        acc = acc * inv2 + b
    return acc * inv2


def _trigamma_excess(phi):
    """``t = φψ'(φ) - 1``; positive, ~1/φ at 0⁺ and ~1/(2φ) at ∞."""
    out = np.empty_like(phi)
    big = phi >= _SERIES_FROM
    out[big] = 0.5 / phi[big] + _bernoulli_tail(phi[big])
    small = ~big
    ps = phi[small]
    out[small] = 1.0 / ps + ps * trigamma(ps + 1.0) - 1.0
    return out


def _jeffreys_radicand(phi):
    """``φ²ψ'(φ)² - ψ'(φ) - 1``."""
    out = np.empty_like(phi)
    big = phi >= _SERIES_FROM
    pb = phi[big]
    u = _bernoulli_tail(pb)
    t = 0.5 / pb + u
    out[big] = 2.0 * u + t * (u - 0.5 / pb)
    small = ~big
    ps = phi[small]
    b = trigamma(ps + 1.0)
    out[small] = ps * ps * b * b + b - 1.0
    return out


def _alpha_block(phi):
    """``1 + 2ψ(φ) + φψ'(φ) + φψ(φ)²`` = ``1 + φ(ψ(φ+1)² + ψ'(φ+1))``."""
    a = digamma(phi + 1.0)
    return 1.0 + phi * (a * a + trigamma(phi + 1.0))


def _partition_block(phi):
    """``φ²ψ'(φ) + φ - 1`` = ``φ(1 + φψ'(φ+1))``."""
    return phi * (1.0 + phi * trigamma(phi + 1.0))


def _reference_mpa_numerator(phi):
    """``ψ'(φ)·D - ψ(φ)²`` with D the α block; the squared R9 factor is this over D."""
    out = np.empty_like(phi)
    small = phi <= 2.0
    ps = phi[small]
    a = digamma(ps + 1.0)
    b = trigamma(ps + 1.0)
    out[small] = b + ps * b * (a * a + b) + (a * a + 2.0 * a + b) / ps - a * a
    big = ~small
    pb = phi[big]
    psi = digamma(pb)
    tri = trigamma(pb)
    out[big] = tri + 2.0 * psi * tri + pb * tri * tri + psi * psi * _trigamma_excess(pb)
    return out


def _guarded_sqrt(radicand, label):
    worst = float(np.min(radicand))
    if worst < RADICAND_FLOOR:
        raise DomainError(f"{label}: radicand {worst:.3e} is negative beyond round-off")
    if worst <= 0.0:
        warnings.warn(f"{label}: clamping round-off radicand {worst:.3e}", RuntimeWarning, stacklevel=3)
        radicand = np.maximum(radicand, np.finfo(float).tiny)
    return np.sqrt(radicand)


def _vectorized(label, radicand_fn):
    def factor(phi):
        arr = _phi_array(phi)
        out = _guarded_sqrt(radicand_fn(arr), label)
        return float(out[0]) if np.ndim(phi) == 0 else out.reshape(np.shape(phi))

    factor.__name__ = f"phi_factor_{label}"
    return factor


def _reciprocal(phi):
    arr = _phi_array(phi)
    out = 1.0 / arr
    return float(out[0]) if np.ndim(phi) == 0 else out.reshape(np.shape(phi))


def _ones(phi):
    arr = _phi_array(phi)
    return 1.0 if np.ndim(phi) == 0 else np.ones(np.shape(phi))


_FACTORS = {
    "J1": _reciprocal,
    "J3": _vectorized("J3", _jeffreys_radicand),
    "J4a": _vectorized("J4a", _trigamma_excess),
    "J4b": _vectorized("J4b", lambda p: (1.0 + _trigamma_excess(p)) * _alpha_block(p)),
    "J5": _vectorized("J5", lambda p: _trigamma_excess(p) * _alpha_block(p)),
    "J6": _vectorized("J6", lambda p: trigamma(p) * _partition_block(p)),
    "R7": _vectorized("R7", lambda p: _trigamma_excess(p) / p),
    "R8": _vectorized("R8", trigamma),
    "R9": _vectorized("R9", lambda p: _reference_mpa_numerator(p) / _alpha_block(p)),
    "R10": _vectorized("R10", lambda p: _jeffreys_radicand(p) / _partition_block(p)),
}


# ---------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class _Entry:
    id: str
    construction: str
    formula: str
    alpha_exponent: Optional[float]
    scopes: tuple
    # stated φ-exponents per scope: {scope: (r0, r_inf)}
    phi_exponents: dict
    note: str = ""


_CATALOG = {
    "J1": _Entry(
        "J1", "Jeffreys' first rule", "pi(theta) ~ 1/(phi mu alpha)", -1.0,
        (Scope.GENERAL, Scope.ALPHA_KNOWN, Scope.PHI_KNOWN),
        {Scope.GENERAL: (-1.0, -1.0), Scope.ALPHA_KNOWN: (-1.0, -1.0)},
    ),
    "J3": _Entry(
        "J3", "Jeffreys' prior", "pi(phi) ~ sqrt(phi^2 psi1(phi)^2 - psi1(phi) - 1)", 0.0,
        (Scope.GENERAL,), {Scope.GENERAL: (0.0, -1.0)},
    ),
    "J4a": _Entry(
        "J4a", "Jeffreys' prior, alpha known", "pi(phi) ~ sqrt(phi psi1(phi) - 1)", None,
        (Scope.ALPHA_KNOWN,), {Scope.ALPHA_KNOWN: (-0.5, -0.5)},
    ),
    "J4b": _Entry(
        "J4b", "independence Jeffreys' prior",
        "pi(phi) ~ sqrt(phi psi1(phi) (1 + 2 psi(phi) + phi psi1(phi) + phi psi(phi)^2))", 0.0,
        (Scope.GENERAL,), {Scope.GENERAL: (-0.5, None)},
    ),
    "J5": _Entry(
        "J5", "((phi, mu), alpha) partition Jeffreys' prior",
        "pi(phi) ~ sqrt((phi psi1(phi) - 1)(1 + 2 psi(phi) + phi psi1(phi) + phi psi(phi)^2))", 0.0,
        (Scope.GENERAL,), {Scope.GENERAL: (-0.5, None)},
    ),
    "J6": _Entry(
        "J6", "((alpha, mu), phi) partition Jeffreys' prior",
        "pi(phi) ~ sqrt(psi1(phi) (phi^2 psi1(phi) + phi - 1))", 0.0,
        (Scope.GENERAL,), {Scope.GENERAL: (-0.5, None)},
    ),
    "R7": _Entry(
        "R7", "(alpha, phi, mu) reference prior", "pi(phi) ~ sqrt((phi psi1(phi) - 1) / phi)", -1.0,
        (Scope.GENERAL, Scope.PHI_KNOWN), {Scope.GENERAL: (-1.0, None)},
    ),
    "R8": _Entry(
        "R8", "(alpha, mu, phi) reference prior", "pi(phi) ~ sqrt(psi1(phi))", -1.0,
        (Scope.GENERAL, Scope.ALPHA_KNOWN, Scope.PHI_KNOWN),
        {Scope.GENERAL: (-1.0, -0.5), Scope.ALPHA_KNOWN: (-1.0, -0.5)},
        note="with alpha known this is the (mu, phi) reference prior (alpha = 1: gamma model)",
    ),
    "R9": _Entry(
        "R9", "(mu, phi, alpha) reference prior",
        "pi(phi) ~ sqrt(psi1(phi) - psi(phi)^2 / (1 + 2 psi(phi) + phi psi1(phi) + phi psi(phi)^2))", -1.0,
        (Scope.GENERAL, Scope.PHI_KNOWN), {Scope.GENERAL: (None, -1.0)},
        note=(
            "open question: a phi^-1 law is often quoted at phi -> 0+, but the measured "
            "exponent there is -1/2 and the -1 law holds at phi -> infinity. The squared "
            "digamma term in the denominator is read as psi(phi)^2."
        ),
    ),
    "R10": _Entry(
        "R10", "(phi, alpha, mu) reference prior",
        "pi(phi) ~ sqrt((phi^2 psi1(phi)^2 - psi1(phi) - 1) / (phi^2 psi1(phi) + phi - 1))", -1.0,
        (Scope.GENERAL, Scope.PHI_KNOWN), {Scope.GENERAL: (-0.5, -1.5)},
    ),
}

CATALOG_IDS = tuple(_CATALOG)


@dataclass(frozen=True)
class PriorSpec:
    """A factorized prior ``π(φ) · α^alpha_exponent · μ^mu_exponent``.

    ``phi_factor`` is ignored when φ is fixed (``Scope.PHI_KNOWN``) and
    ``alpha_exponent`` when α is fixed.  Custom priors carry their own
    ``exponents``; catalog priors get theirs from :func:`analytic_exponents`.
    """

    id: str
    scope: Scope
    phi_factor: Callable
    mu_exponent: float = -1.0
    alpha_exponent: Optional[float] = -1.0
    exponents: Optional[AsymptoticExponents] = None
    description: str = field(default="", compare=False)

    @property
    def is_custom(self):
        return self.id not in _CATALOG


def get_prior(prior_id, scope=Scope.GENERAL):
    """Look up a catalog prior for the given scope."""
    scope = Scope(scope)
    try:
        entry = _CATALOG[prior_id]
    except KeyError:
        raise CatalogError(f"unknown prior id {prior_id!r}; catalog ids are {list(CATALOG_IDS)}") from None
    if scope not in entry.scopes:
        raise CatalogError(
            f"prior {prior_id} is not defined for scope {scope.value!r} "
            f"(supported: {[s.value for s in entry.scopes]})"
        )
    factor = _FACTORS[prior_id] if scope is not Scope.PHI_KNOWN else _ones
    alpha_exp = entry.alpha_exponent if scope is not Scope.ALPHA_KNOWN else None
    if scope is Scope.PHI_KNOWN:
        # restricting any of these to fixed φ leaves α^-1 μ^-1
        alpha_exp = -1.0
    return PriorSpec(
        id=prior_id,
        scope=scope,
        phi_factor=factor,
        mu_exponent=-1.0,
        alpha_exponent=alpha_exp,
        description=entry.construction,
    )


def custom_prior(exponents, scope=Scope.GENERAL, phi_factor=None, mu_exponent=-1.0,
                 alpha_exponent=None, name="Custom"):
    """Build a user prior from declared exponents and (optionally) a φ factor.

    Without ``phi_factor`` a pure power law is used: ``φ^r0`` below one and
    ``φ^r_inf`` above, matched continuously at φ = 1.
    """
    scope = Scope(scope)
    if not isinstance(exponents, AsymptoticExponents):
        exponents = AsymptoticExponents(**exponents)
    if phi_factor is None:
        r0 = exponents.r0 if exponents.r0 is not None else 0.0
        r_inf = exponents.r_inf if exponents.r_inf is not None else r0

        def phi_factor(phi, _r0=r0, _ri=r_inf):
            arr = _phi_array(phi)
            out = np.where(arr < 1.0, arr**_r0, arr**_ri)
            return float(out[0]) if np.ndim(phi) == 0 else out.reshape(np.shape(phi))

    if alpha_exponent is None and scope is not Scope.ALPHA_KNOWN:
        if exponents.q0 is not None and exponents.q0 == exponents.q_inf:
            alpha_exponent = exponents.q0
    if exponents.k is not None:
        mu_exponent = exponents.k
    return PriorSpec(
        id=name,
        scope=scope,
        phi_factor=phi_factor,
        mu_exponent=mu_exponent,
        alpha_exponent=alpha_exponent,
        exponents=exponents,
        description="user-declared prior",
    )


def _theta(theta):
    return theta if isinstance(theta, ParamVector) else ParamVector(*theta)


def log_prior(spec, theta):
    """Log of the unnormalized prior density at θ (fixed components are ignored)."""
    theta = _theta(theta)
    out = spec.mu_exponent * math.log(theta.mu)
    if spec.scope is not Scope.PHI_KNOWN:
        out += math.log(spec.phi_factor(theta.phi))
    if spec.scope is not Scope.ALPHA_KNOWN and spec.alpha_exponent is not None:
        out += spec.alpha_exponent * math.log(theta.alpha)
    return out


def eval_prior(spec, theta):
    """Unnormalized prior density at θ, strictly positive."""
    return math.exp(log_prior(spec, theta))


def analytic_exponents(spec):
    """Exponents asserted for a catalog prior in its scope.

    Entries the published analysis does not state are ``None``; α and μ
    exponents are exact because those factors are pure powers.
    """
    if spec.is_custom:
        raise CatalogError("custom priors have no analytic exponents; declare or estimate them")
    entry = _CATALOG[spec.id]
    scope = spec.scope
    q = spec.alpha_exponent if scope is not Scope.ALPHA_KNOWN else None
    if scope is Scope.PHI_KNOWN:
        r0 = r_inf = None
    else:
        r0, r_inf = entry.phi_exponents[scope]
    return AsymptoticExponents(
        k=spec.mu_exponent, q0=q, q_inf=q, r0=r0, r_inf=r_inf,
        bound="two-sided", provenance="analytic",
    )


def catalog_table():
    """Machine-readable description of every catalog prior."""
    rows = []
    for entry in _CATALOG.values():
        scopes = {}
        for scope in entry.scopes:
            e = analytic_exponents(get_prior(entry.id, scope))
            scopes[scope.value] = {k: v for k, v in e.as_dict().items() if k in ("k", "q0", "q_inf", "r0", "r_inf")}
        rows.append(
            {
                "id": entry.id,
                "construction": entry.construction,
                "phi_factor": entry.formula,
                "mu_exponent": -1.0,
                "alpha_exponent": entry.alpha_exponent,
                "scopes": scopes,
                "note": entry.note,
            }
        )
    return rows


def catalog_json(indent=2):
    return json.dumps(catalog_table(), indent=indent, sort_keys=True)
