"""Objective priors for the Stacy (generalized gamma) family and the propriety of their posteriors."""

from .asymptotics import Endpoint, estimate_exponent, k_statistic, sample_stats
from .errors import (
    CatalogError,
    DataFormatError,
    DegenerateDataError,
    DomainError,
    ProprietyGateError,
    QuadratureError,
)
from .oracle import diagnose, integrate_norm_const, mcmc_sample
from .priors import AsymptoticExponents, Scope, analytic_exponents, custom_prior, eval_prior, get_prior
from .propriety import Status, decide, decide_alpha_known, decide_general, decide_phi_known, decide_prior
from .stacy import Dataset, ParamVector, fisher_info, log_likelihood, pdf, resolve_subfamily, sample

__version__ = "0.1.0"

__all__ = [
    "AsymptoticExponents",
    "CatalogError",
    "DataFormatError",
    "Dataset",
    "DegenerateDataError",
    "DomainError",
    "Endpoint",
    "ParamVector",
    "ProprietyGateError",
    "QuadratureError",
    "Scope",
    "Status",
    "analytic_exponents",
    "custom_prior",
    "decide",
    "decide_alpha_known",
    "decide_general",
    "decide_phi_known",
    "decide_prior",
    "diagnose",
    "estimate_exponent",
    "eval_prior",
    "fisher_info",
    "get_prior",
    "integrate_norm_const",
    "k_statistic",
    "log_likelihood",
    "mcmc_sample",
    "pdf",
    "resolve_subfamily",
    "sample",
    "sample_stats",
]
