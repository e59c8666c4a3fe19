"""Posterior propriety and moment finiteness from prior power-law exponents.

The rules below take the exponents of a factorized prior ``π(φ)π(μ)π(α)``
together with the sample size and return a verdict.  For two-sided
(``∝``) exponents the rules are complete: every input is classified as
proper or improper.  One-sided exponents are handled conservatively, see
:func:`_apply_bound_direction`.  When some exponents are unknown the
verdict is still improper if a necessary condition that can be evaluated
fails.

Scopes and conditions:

* α known, ``π(φ, μ)``: proper iff ``k = -1`` and ``n > -r0``, or
  ``k > -1`` and ``n > -r0 - 1``.  Every posterior moment of (φ, μ) is
  then finite.
* φ known, ``π(α, μ)``: proper iff ``k = -1`` and ``n > -q0``.  All
  α-moments are then finite but ``E[μ]`` is infinite.
* all three free: proper iff ``k = -1``, ``q∞ < r0``, ``2r∞ + 1 < q0``,
  ``n > -q0`` and ``n > -r0``.  ``E[α^q φ^r μ^j]`` is finite iff ``j = 0``
  and ``2(r + r∞) + 1 - q0 < q < r + r0 - q∞``.
"""

import enum
import json
import math
from dataclasses import dataclass, field
from numbers import Integral
from typing import Optional

from .errors import DomainError
from .priors import AsymptoticExponents, Scope, analytic_exponents

__all__ = [
    "Status",
    "MomentReport",
    "ProprietyVerdict",
    "decide_alpha_known",
    "decide_phi_known",
    "decide_general",
    "decide",
    "decide_prior",
    "moment_finite_general",
    "min_n_strict",
]

_EQ_TOL = 1e-12
MOMENT_ORDER_LIMIT = 4

RULE_ALPHA_KNOWN = "alpha known: proper iff (k = -1 and n > -r0) or (k > -1 and n > -r0 - 1)"
RULE_ALPHA_KNOWN_IMPROPER = "alpha known: improper when k < -1, or the sample-size condition fails"
RULE_PHI_KNOWN = "phi known: proper iff k = -1 and n > -q0; posterior mean of mu infinite"
RULE_PHI_KNOWN_IMPROPER = "phi known: improper when k != -1 or n <= -q0"
RULE_GENERAL = "all free: proper iff k = -1, q_inf < r0, 2 r_inf + 1 < q0, n > -q0, n > -r0"
RULE_GENERAL_IMPROPER = "all free: improper when any of k = -1, q_inf < r0, 2 r_inf + 1 < q0, n > -q0, n > -r0 fails"
RULE_MISSING = "undetermined: required exponents are missing"
RULE_ONE_SIDED = "undetermined: one-sided exponent bounds cannot certify this verdict"


class Status(str, enum.Enum):
    PROPER = "Proper"
    IMPROPER = "Improper"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class MomentReport:
    """Which posterior moments are finite.

    ``finite_triples`` (all-free scope) lists every ``(q, r, j)`` with
    entries up to :data:`MOMENT_ORDER_LIMIT` whose moment
    ``E[α^q φ^r μ^j]`` is finite.  The α-known scope sets
    ``all_finite``; the φ-known scope sets ``alpha_moments_finite`` and
    ``mu_mean_finite``.  Fields that do not apply stay ``None``.
    """

    scope: Scope
    finite_triples: Optional[tuple] = None
    all_finite: Optional[bool] = None
    alpha_moments_finite: Optional[bool] = None
    mu_mean_finite: Optional[bool] = None

    def to_dict(self):
        out = {"scope": self.scope.value}
        if self.finite_triples is not None:
            out["finite_triples"] = [list(t) for t in self.finite_triples]
            out["rule"] = "j = 0 and 2(r + r_inf) + 1 - q0 < q < r + r0 - q_inf"
        if self.all_finite is not None:
            out["all_finite"] = self.all_finite
        if self.alpha_moments_finite is not None:
            out["alpha_moments_finite"] = self.alpha_moments_finite
        if self.mu_mean_finite is not None:
            out["mu_mean_finite"] = self.mu_mean_finite
        return out


@dataclass(frozen=True)
class ProprietyVerdict:
    status: Status
    theorem: str
    min_n: Optional[int]
    moments: Optional[MomentReport]
    scope: Scope
    n: int
    exponent_provenance: str = "analytic"
    exponents: Optional[AsymptoticExponents] = field(default=None, compare=False)

    @property
    def is_proper(self):
        return self.status is Status.PROPER

    def to_dict(self):
        return {
            "status": self.status.value,
            "theorem": self.theorem,
            "min_n": self.min_n,
            "moments": self.moments.to_dict() if self.moments is not None else None,
            "exponent_provenance": self.exponent_provenance,
            "scope": self.scope.value,
            "n": self.n,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


def _check_n(n):
    if isinstance(n, bool) or not isinstance(n, Integral) or n < 1:
        raise DomainError(f"sample size must be a positive integer, got {n!r}")
    return int(n)


def _eq(a, b):
    return abs(a - b) <= _EQ_TOL


def min_n_strict(bound):
    """Smallest positive integer ``n`` with ``n > bound``."""
    return max(1, math.floor(bound + _EQ_TOL) + 1)


def _apply_bound_direction(e, status, rule):
    """Keep only verdicts that the declared bound direction can support.

    A proper verdict is never issued from one-sided exponents.  An improper
    verdict needs the prior to be at least as heavy as the power law, so it
    survives only for lower bounds.
    """
    if e.bound == "two-sided" or status is Status.UNDETERMINED:
        return status, rule
    if status is Status.IMPROPER and e.bound == "lower":
        return status, rule
    return Status.UNDETERMINED, RULE_ONE_SIDED


def _verdict(e, n, scope, status, rule, min_n, moments):
    status, rule = _apply_bound_direction(e, status, rule)
    if status is not Status.PROPER:
        moments = None
    return ProprietyVerdict(
        status=status,
        theorem=rule,
        min_n=min_n,
        moments=moments,
        scope=scope,
        n=n,
        exponent_provenance=e.provenance,
        exponents=e,
    )


def _undetermined(e, n, scope):
    return ProprietyVerdict(Status.UNDETERMINED, RULE_MISSING, None, None, scope, n, e.provenance, e)


def decide_alpha_known(e, n):
    n = _check_n(n)
    scope = Scope.ALPHA_KNOWN
    if e.k is not None and e.k < -1.0 - _EQ_TOL:
        return _verdict(e, n, scope, Status.IMPROPER, RULE_ALPHA_KNOWN_IMPROPER, None, None)
    if e.k is None or e.r0 is None:
        return _undetermined(e, n, scope)
    threshold = -e.r0 if _eq(e.k, -1.0) else -e.r0 - 1.0
    min_n = min_n_strict(threshold)
    proper = n > threshold + _EQ_TOL
    status = Status.PROPER if proper else Status.IMPROPER
    rule = RULE_ALPHA_KNOWN if proper else RULE_ALPHA_KNOWN_IMPROPER
    return _verdict(e, n, scope, status, rule, min_n, MomentReport(scope, all_finite=True))


def decide_phi_known(e, n):
    n = _check_n(n)
    scope = Scope.PHI_KNOWN
    if e.k is not None and not _eq(e.k, -1.0):
        return _verdict(e, n, scope, Status.IMPROPER, RULE_PHI_KNOWN_IMPROPER, None, None)
    if e.k is None or e.q0 is None:
        return _undetermined(e, n, scope)
    min_n = min_n_strict(-e.q0)
    proper = n > -e.q0 + _EQ_TOL
    status = Status.PROPER if proper else Status.IMPROPER
    rule = RULE_PHI_KNOWN if proper else RULE_PHI_KNOWN_IMPROPER
    moments = MomentReport(scope, alpha_moments_finite=True, mu_mean_finite=False)
    return _verdict(e, n, scope, status, rule, min_n, moments)


def _general_failures(e, n):
    """Necessary conditions that can be checked and fail; ``None`` entries are skipped."""
    checks = (
        ((e.k,), lambda: _eq(e.k, -1.0)),
        ((e.q_inf, e.r0), lambda: e.q_inf < e.r0 - _EQ_TOL),
        ((e.r_inf, e.q0), lambda: 2.0 * e.r_inf + 1.0 < e.q0 - _EQ_TOL),
        ((e.q0,), lambda: n > -e.q0 + _EQ_TOL),
        ((e.r0,), lambda: n > -e.r0 + _EQ_TOL),
    )
    return [i for i, (needs, ok) in enumerate(checks) if None not in needs and not ok()]


def _structure_fails(e):
    return any(i < 3 for i in _general_failures(e, 10**9))


def _moment_ok(e, q, r, j):
    if j != 0:
        return False
    lower = 2.0 * (r + e.r_inf) + 1.0 - e.q0
    upper = r + e.r0 - e.q_inf
    return lower + _EQ_TOL < q < upper - _EQ_TOL


def decide_general(e, n):
    n = _check_n(n)
    scope = Scope.GENERAL
    complete = None not in (e.k, e.q0, e.q_inf, e.r0, e.r_inf)
    if _structure_fails(e):
        # each condition is necessary, so one failure settles impropriety even
        # when other exponents are unknown
        return _verdict(e, n, scope, Status.IMPROPER, RULE_GENERAL_IMPROPER, None, None)
    if not complete:
        if _general_failures(e, n):
            return _verdict(e, n, scope, Status.IMPROPER, RULE_GENERAL_IMPROPER, None, None)
        return _undetermined(e, n, scope)
    min_n = min_n_strict(max(-e.q0, -e.r0))
    proper = n >= min_n
    if not proper:
        return _verdict(e, n, scope, Status.IMPROPER, RULE_GENERAL_IMPROPER, min_n, None)
    top = MOMENT_ORDER_LIMIT
    triples = tuple(
        (q, r, j)
        for q in range(top + 1)
        for r in range(top + 1)
        for j in range(top + 1)
        if _moment_ok(e, q, r, j)
    )
    return _verdict(e, n, scope, Status.PROPER, RULE_GENERAL, min_n, MomentReport(scope, finite_triples=triples))


def moment_finite_general(e, n, q, r, j):
    """Whether ``E[α^q φ^r μ^j]`` is finite under a proper all-free posterior."""
    for name, v in (("q", q), ("r", r), ("j", j)):
        if isinstance(v, bool) or not isinstance(v, Integral) or v < 0:
            raise DomainError(f"moment order {name} must be a non-negative integer, got {v!r}")
    verdict = decide_general(e, n)
    if not verdict.is_proper:
        raise DomainError(f"moments are undefined: the posterior is {verdict.status.value.lower()}")
    return _moment_ok(e, q, r, j)


_DISPATCH = {
    Scope.GENERAL: decide_general,
    Scope.ALPHA_KNOWN: decide_alpha_known,
    Scope.PHI_KNOWN: decide_phi_known,
}


def decide(e, n, scope):
    return _DISPATCH[Scope(scope)](e, n)


def decide_prior(spec, n):
    """Verdict for a prior spec, using declared exponents or the analytic table."""
    e = spec.exponents if spec.exponents is not None else analytic_exponents(spec)
    return decide(e, n, spec.scope)
