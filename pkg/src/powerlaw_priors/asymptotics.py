"""Local power-law exponents and the sample statistics p(α), q(α), k(x).

The exponent of ``f`` near an endpoint is the slope of ``ln f`` against
``ln x`` on a geometric grid pushed deep into that endpoint.  Priors with
logarithmic corrections bend that line slightly, hence the snapping
tolerance and the raw value kept alongside the snapped one.
"""

import csv
import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .stacy import Dataset

__all__ = [
    "Endpoint",
    "ExponentEstimate",
    "SampleStats",
    "estimate_exponent",
    "snap_exponent",
    "loglog_pairs",
    "write_loglog_csv",
    "sample_stats",
    "p_statistic",
    "k_statistic",
    "SNAP_TARGETS",
]

SNAP_TARGETS = (-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0)
DEFAULT_TOLERANCE = 0.02


class Endpoint(str, enum.Enum):
    ZERO_PLUS = "0+"
    INFINITY = "inf"


_DEFAULT_RANGE = {
    Endpoint.ZERO_PLUS: (1e-7, 1e-4),
    Endpoint.INFINITY: (1e4, 1e7),
}


@dataclass(frozen=True)
class ExponentEstimate:
    """Fitted slope of ``ln f`` vs ``ln x`` near one endpoint.

    ``snapped`` is the nearest half-integer when the fit lies within
    ``tolerance`` of it, else ``None``; :attr:`value` gives whichever the
    decision engine should consume.
    """

    endpoint: Endpoint
    exponent: float
    stderr: float
    grid: float
    snapped: Optional[float] = None
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        if self.grid < 3.0 - 1e-9:
            raise DomainError(f"the fit grid must span at least 3 decades, got {self.grid:.3g}")
        if not self.stderr >= 0.0:
            raise DomainError("stderr must be non-negative")

    @property
    def value(self):
        return self.snapped if self.snapped is not None else self.exponent

    @property
    def is_snapped(self):
        return self.snapped is not None


def snap_exponent(value, tolerance=DEFAULT_TOLERANCE):
    """Nearest element of :data:`SNAP_TARGETS` within ``tolerance``, else ``None``."""
    best = min(SNAP_TARGETS, key=lambda t: abs(t - value))
    return best if abs(best - value) <= tolerance else None


def _grid(endpoint, lo, hi, points):
    endpoint = Endpoint(endpoint)
    if lo is None or hi is None:
        d_lo, d_hi = _DEFAULT_RANGE[endpoint]
        lo = d_lo if lo is None else lo
        hi = d_hi if hi is None else hi
    if not (0.0 < lo < hi) or points < 3:
        raise DomainError("grid needs 0 < lo < hi and at least 3 points")
    return endpoint, np.geomspace(lo, hi, points)


def loglog_pairs(f, lo, hi, points=200):
    """Evaluate ``f`` on a geometric grid; returns ``(x, f(x))`` arrays."""
    x = np.geomspace(lo, hi, points)
    y = _evaluate(f, x)
    return x, y


def _evaluate(f, x):
    try:
        y = np.asarray(f(x), dtype=float)
        if y.shape != x.shape:
            raise ValueError
    except (TypeError, ValueError):
        y = np.array([float(f(float(v))) for v in x])
    bad = ~np.isfinite(y) | (y <= 0.0)
    if np.any(bad):
        first = float(x[np.argmax(bad)])
        raise DomainError(f"function is not positive and finite on the grid (first failure at x={first:.3e})")
    return y


def estimate_exponent(f, endpoint, lo=None, hi=None, points=40, tolerance=DEFAULT_TOLERANCE, log_values=False):
    """Least-squares power-law exponent of ``f`` near ``endpoint``.

    ``f`` may be vectorized or scalar.  With ``log_values=True`` it is taken
    to return ``ln f`` directly, which helps for functions such as
    ``Γ(nφ)/Γ(φ)ⁿ`` whose values leave floating-point range.

    >>> round(estimate_exponent(lambda x: x ** -0.5, "inf").exponent, 10)
    -0.5
    """
    endpoint, x = _grid(endpoint, lo, hi, points)
    if log_values:
        ly = np.asarray([float(f(float(v))) for v in x])
        if not np.all(np.isfinite(ly)):
            raise DomainError("log-function returned non-finite values on the grid")
    else:
        ly = np.log(_evaluate(f, x))
    lx = np.log(x)
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    rms = float(np.sqrt(np.mean(resid**2)))
    return ExponentEstimate(
        endpoint=endpoint,
        exponent=float(slope),
        stderr=rms,
        grid=float(math.log10(x[-1] / x[0])),
        snapped=snap_exponent(float(slope), tolerance),
        tolerance=tolerance,
    )


def write_loglog_csv(path, x, y):
    """Write ``x, f_of_x`` rows for external plotting."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "f_of_x"])
        for a, b in zip(x, y):
            w.writerow([f"{a:.12g}", f"{b:.12g}"])


@dataclass(frozen=True)
class SampleStats:
    """``p(α)`` (log of AM over GM of ``xᵢ^α``) and ``q(α) = p(α) + ln n``."""

    p_value: float
    q_value: float
    alpha: float


def _as_dataset(data):
    return data if isinstance(data, Dataset) else Dataset(data)


def p_statistic(data, alpha):
    """``p(α)`` without the degeneracy check; vectorized over ``alpha``.

    Computed as ``logsumexp(α(ln xᵢ - mean ln x)) - ln n``.  For small α the
    centred exponentials are expanded with ``expm1`` so that the α² leading
    term survives instead of cancelling against ``ln n``.
    """
    data = _as_dataset(data)
    centred = data.log_values - data.log_values.mean()
    a = np.atleast_1d(np.asarray(alpha, dtype=float))
    if np.any(~np.isfinite(a)) or np.any(a <= 0.0):
        raise DomainError("alpha must be positive and finite")
    z = np.outer(a, centred)
    m = z.max(axis=1, keepdims=True)
    # ln(mean e^z) = m + ln(1 + mean(expm1(z - m)) ... ) handled in two regimes
    small = np.abs(m[:, 0]) < 1.0
    out = np.empty(a.size)
    if np.any(small):
        out[small] = np.log1p(np.mean(np.expm1(z[small]), axis=1))
    if np.any(~small):
        zb = z[~small]
        mb = m[~small]
        out[~small] = mb[:, 0] + np.log(np.mean(np.exp(zb - mb), axis=1))
    out = np.maximum(out, 0.0)
    return float(out[0]) if np.ndim(alpha) == 0 else out.reshape(np.shape(alpha))


def sample_stats(data, alpha):
    data = _as_dataset(data)
    data.require_nondegenerate()
    alpha = float(alpha)
    p = p_statistic(data, alpha)
    return SampleStats(p_value=p, q_value=p + math.log(data.n), alpha=alpha)


def k_statistic(data):
    """``ln(max) - mean(ln x)``: zero for constant data, invariant to scaling."""
    data = _as_dataset(data)
    return max(0.0, float(math.log(data.maximum) - data.log_values.mean()))
