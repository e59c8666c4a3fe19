"""Command-line front end.

Verbs::

    powerlaw-priors analyze --data x.csv --prior R10 --scope general --out results/
    powerlaw-priors priors list
    powerlaw-priors loglog --prior R8 --out r8.csv

``analyze`` exits 0 when the verdict is Proper or Improper, 2 when it is
Undetermined and 1 on any error.  Reports are canonical JSON: sorted keys,
floats rounded to 12 significant digits.
"""

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import oracle
from .asymptotics import Endpoint, estimate_exponent, k_statistic, write_loglog_csv
from .errors import DataFormatError, DomainError, ProprietyGateError, QuadratureError
from .priors import (
    AsymptoticExponents,
    Scope,
    analytic_exponents,
    catalog_json,
    catalog_table,
    custom_prior,
    get_prior,
)
from .propriety import Status, decide
from .stacy import Dataset

__all__ = [
    "AnalysisConfig",
    "load_dataset",
    "run_analysis",
    "emit_loglog",
    "canonical_json",
    "parse_exponents",
    "main",
]

SCHEMA_VERSION = 1
EXIT_DECIDED = 0
EXIT_ERROR = 1
EXIT_UNDETERMINED = 2
LOGLOG_RANGE = (1e-7, 1e7)
LOGLOG_POINTS = 200


# ---------------------------------------------------------------------------
# data ingestion


def load_dataset(path):
    """Read a dataset from CSV (one value per line, optional ``x`` header) or a JSON array."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if str(path).lower().endswith(".json"):
        return _dataset_from_json(text)
    return _dataset_from_csv(text)


def _dataset_from_json(text):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataFormatError(f"line {exc.lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(raw, list) or not raw:
        raise DataFormatError("JSON dataset must be a non-empty array of numbers")
    values = []
    bad = []
    for i, v in enumerate(raw):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise DataFormatError(f"element {i}: expected a number, got {v!r}")
        if not (math.isfinite(v) and v > 0):
            bad.append((i, v))
        values.append(float(v))
    if bad:
        raise DataFormatError("non-positive or non-finite entries at " + ", ".join(f"element {i} ({v!r})" for i, v in bad))
    return Dataset(values)


def _dataset_from_csv(text):
    values = []
    bad = []
    rows = list(csv.reader(text.splitlines()))
    for lineno, row in enumerate(rows, start=1):
        cells = [c.strip() for c in row if c.strip()]
        if not cells:
            continue
        if len(cells) > 1:
            raise DataFormatError(f"line {lineno}: expected one value, found {len(cells)}")
        cell = cells[0]
        if not values and not bad and cell.lower() == "x":
            continue
        try:
            v = float(cell)
        except ValueError:
            raise DataFormatError(f"line {lineno}: cannot parse {cell!r} as a number") from None
        if not (math.isfinite(v) and v > 0):
            bad.append((lineno, cell))
        values.append(v)
    if bad:
        raise DataFormatError("non-positive or non-finite entries at " + ", ".join(f"line {n} ({c})" for n, c in bad))
    if not values:
        raise DataFormatError("dataset is empty")
    return Dataset(values)


# ---------------------------------------------------------------------------
# configuration and reports


def parse_exponents(text, bound):
    """Parse ``k=-1,q0=-1,...`` into :class:`AsymptoticExponents`."""
    if bound not in ("two-sided", "upper", "lower"):
        raise DomainError("custom exponents need an explicit bound: two-sided, upper or lower")
    fields = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise DomainError(f"exponent entry {part!r} is not of the form name=value")
        name, value = (s.strip() for s in part.split("=", 1))
        if name not in ("k", "q0", "q_inf", "r0", "r_inf"):
            raise DomainError(f"unknown exponent {name!r}")
        fields[name] = None if value.lower() in ("none", "") else float(value)
    return AsymptoticExponents(**fields, bound=bound, provenance="declared")


@dataclass(frozen=True)
class AnalysisConfig:
    data_path: str
    prior: Optional[str] = None
    custom_exponents: Optional[AsymptoticExponents] = None
    scope: Scope = Scope.GENERAL
    alpha: Optional[float] = None
    phi: Optional[float] = None
    run_oracle: bool = False
    run_mcmc: bool = False
    emit_loglog: bool = False
    seed: int = 0
    out_dir: str = "."
    mcmc: oracle.MCMCConfig = field(default_factory=oracle.MCMCConfig)

    def __post_init__(self):
        object.__setattr__(self, "scope", Scope(self.scope))
        if (self.prior is None) == (self.custom_exponents is None):
            raise DomainError("give exactly one of a catalog prior id or custom exponents")
        for name in ("alpha", "phi"):
            v = getattr(self, name)
            if v is not None and not (math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be positive")
        if self.scope is Scope.ALPHA_KNOWN and self.alpha is None:
            raise DomainError("the alpha-known scope needs --alpha")
        if self.scope is Scope.PHI_KNOWN and self.phi is None:
            raise DomainError("the phi-known scope needs --phi")


def _round(x):
    if isinstance(x, (bool, str)) or x is None:
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
        return float(f"{x:.12g}")
    if isinstance(x, dict):
        return {str(k): _round(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_round(v) for v in x]
    return x


def canonical_json(obj):
    return json.dumps(_round(obj), sort_keys=True, indent=2) + "\n"


def _resolve_spec(config):
    if config.prior is not None:
        return get_prior(config.prior, config.scope)
    return custom_prior(config.custom_exponents, scope=config.scope)


def _prior_block(spec):
    if spec.is_custom:
        return {"id": spec.id, "construction": "user-declared exponents", "formula": None, "note": ""}
    row = next(r for r in catalog_table() if r["id"] == spec.id)
    return {
        "id": spec.id,
        "construction": row["construction"],
        "formula": row["phi_factor"],
        "note": row["note"],
    }


def _estimate_block(spec):
    if spec.scope is Scope.PHI_KNOWN:
        return None
    out = {}
    for endpoint, key in ((Endpoint.ZERO_PLUS, "r0"), (Endpoint.INFINITY, "r_inf")):
        est = estimate_exponent(spec.phi_factor, endpoint)
        out[key] = {"raw": est.exponent, "stderr": est.stderr, "snapped": est.snapped}
    return out


def run_analysis(config):
    """Run the pipeline and write ``report.json``; returns ``(report, exit_code)``."""
    data = load_dataset(config.data_path)
    spec = _resolve_spec(config)
    os.makedirs(config.out_dir, exist_ok=True)
    if spec.is_custom:
        used = spec.exponents
    else:
        used = analytic_exponents(spec)
    verdict = decide(used, data.n, spec.scope)

    report = {
        "schema_version": SCHEMA_VERSION,
        "dataset": {
            "path": os.path.basename(str(config.data_path)),
            "n": data.n,
            "min": data.minimum,
            "max": data.maximum,
            "geometric_mean": data.geometric_mean,
            "k_statistic": k_statistic(data),
            "degenerate": data.degenerate,
        },
        "scope": {"name": spec.scope.value, "alpha": config.alpha, "phi": config.phi},
        "prior": _prior_block(spec),
        "exponents": {
            "used": used.as_dict(),
            "estimated_phi": _estimate_block(spec),
        },
        "verdict": verdict.to_dict(),
    }

    if config.run_oracle:
        report["oracle"] = _oracle_block(data, spec, config)
    if config.run_mcmc:
        report["mcmc"] = _mcmc_block(data, spec, config)

    with open(os.path.join(config.out_dir, "report.json"), "w", encoding="utf-8") as fh:
        fh.write(canonical_json(report))
    if config.emit_loglog and spec.scope is not Scope.PHI_KNOWN:
        emit_loglog(spec, os.path.join(config.out_dir, f"loglog_{spec.id}.csv"))
    code = EXIT_UNDETERMINED if verdict.status is Status.UNDETERMINED else EXIT_DECIDED
    return report, code


def _oracle_block(data, spec, config):
    try:
        ladder = oracle.integrate_norm_const(data, spec, alpha=config.alpha, phi=config.phi)
    except (DomainError, QuadratureError, ValueError) as exc:
        return {"skipped": str(exc)}
    diag = oracle.diagnose(ladder)
    ladder.write_csv(os.path.join(config.out_dir, "ladder.csv"))
    return {"diagnosis": diag.to_dict(), "ladder": ladder.to_dict()}


def _mcmc_block(data, spec, config):
    mc = oracle.MCMCConfig(
        steps=config.mcmc.steps,
        burn_in=config.mcmc.burn_in,
        seed=config.seed,
        chains=config.mcmc.chains,
        step_sizes=config.mcmc.step_sizes,
    )
    try:
        result = oracle.mcmc_sample(data, spec, alpha=config.alpha, phi=config.phi, config=mc)
    except ProprietyGateError as exc:
        return {"skipped": str(exc)}
    result.write_csv(os.path.join(config.out_dir, "chain.csv"))
    return result.summary()


def emit_loglog(spec, out_path, points=LOGLOG_POINTS):
    """Write ``(φ, π(φ))`` pairs and a sidecar JSON with fitted endpoint exponents."""
    lo, hi = LOGLOG_RANGE
    x = np.geomspace(lo, hi, points)
    y = np.asarray(spec.phi_factor(x), dtype=float)
    write_loglog_csv(out_path, x, y)
    fits = {}
    for endpoint, key in ((Endpoint.ZERO_PLUS, "r0"), (Endpoint.INFINITY, "r_inf")):
        est = estimate_exponent(spec.phi_factor, endpoint)
        fits[key] = {"raw": est.exponent, "stderr": est.stderr, "snapped": est.snapped}
    sidecar = {"prior": spec.id, "range": [lo, hi], "points": points, "exponents": fits}
    side_path = os.path.splitext(out_path)[0] + ".json"
    with open(side_path, "w", encoding="utf-8") as fh:
        fh.write(canonical_json(sidecar))
    return side_path


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with 1 so that 2 keeps meaning "undetermined"."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="powerlaw-priors", description="Posterior propriety for Stacy-family objective priors.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="classify the posterior for a dataset and prior")
    a.add_argument("--data", required=True, help="CSV (one value per line) or JSON array")
    group = a.add_mutually_exclusive_group(required=True)
    group.add_argument("--prior", help="catalog id, see 'priors list'")
    group.add_argument("--custom", metavar="EXPONENTS", help="e.g. k=-1,q0=-1,q_inf=-1,r0=-0.5,r_inf=-1.5")
    a.add_argument("--bound", choices=("two-sided", "upper", "lower"),
                   help="direction of the custom exponent relations (required with --custom)")
    a.add_argument("--scope", default="general", choices=[s.value for s in Scope])
    a.add_argument("--alpha", type=float, help="known alpha for the alpha-known scope")
    a.add_argument("--phi", type=float, help="known phi for the phi-known scope")
    a.add_argument("--oracle", action="store_true", help="run the quadrature ladder")
    a.add_argument("--mcmc", action="store_true", help="sample the posterior when it is proper")
    a.add_argument("--loglog", action="store_true", help="also write the prior's log-log table")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--out", default=".", help="output directory")

    p = sub.add_parser("priors", help="catalog commands")
    psub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    psub.add_parser("list", help="print the catalog as JSON")

    g = sub.add_parser("loglog", help="write (phi, pi(phi)) pairs and fitted exponents")
    g.add_argument("--prior", required=True)
    g.add_argument("--scope", default=None, choices=[s.value for s in Scope])
    g.add_argument("--out", required=True, help="CSV path; the sidecar JSON sits next to it")
    return parser


def _cmd_analyze(args):
    custom = None
    if args.custom is not None:
        if args.bound is None:
            raise DomainError("--custom needs --bound two-sided|upper|lower")
        custom = parse_exponents(args.custom, args.bound)
    config = AnalysisConfig(
        data_path=args.data,
        prior=args.prior,
        custom_exponents=custom,
        scope=args.scope,
        alpha=args.alpha,
        phi=args.phi,
        run_oracle=args.oracle,
        run_mcmc=args.mcmc,
        emit_loglog=args.loglog,
        seed=args.seed,
        out_dir=args.out,
    )
    report, code = run_analysis(config)
    v = report["verdict"]
    print(f"{v['status']}: {v['theorem']} (min_n={v['min_n']})")
    return code


def _cmd_loglog(args):
    scope = args.scope
    if scope is None:
        row = next((r for r in catalog_table() if r["id"] == args.prior), None)
        scope = next(iter(row["scopes"])) if row else Scope.GENERAL.value
    spec = get_prior(args.prior, scope)
    side = emit_loglog(spec, args.out)
    print(side)
    return EXIT_DECIDED


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.verb == "analyze":
            return _cmd_analyze(args)
        if args.verb == "priors":
            sys.stdout.write(catalog_json() + "\n")
            return EXIT_DECIDED
        return _cmd_loglog(args)
    except (OSError, DataFormatError, DomainError, KeyError, QuadratureError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
