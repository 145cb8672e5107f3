"""Simple directed random graphs with prescribed in/out-degree distributions."""

__version__ = "0.1.0"

from .bidegree import BiDegreeSequence, SamplerDiagnostics, SamplerParams, sample_bidegree
from .config_model import Multigraph, count_multiplicities, pair_uniform
from .degree_dist import (
    DegreeDistribution,
    kappa,
    make_empirical,
    make_geometric,
    make_point_mass,
    make_poisson,
    make_zeta,
    parse_distribution,
)
from .errors import AttemptsExhausted, ForgeError, MeanMismatch, RetryExhausted, SizeGuard
from .graphicality import is_graphical, is_graphical_bruteforce
from .pipeline import Model, generate
from .simplify import ErasureReport, SimpleDigraph, erase, erased_model, repeated_model
from .stats import (
    LimitConstants,
    empirical_law,
    independence_check,
    limits_from_distributions,
    limits_from_sequence,
    poisson_fit,
    tv_distance,
)

__all__ = [
    "AttemptsExhausted",
    "BiDegreeSequence",
    "DegreeDistribution",
    "ErasureReport",
    "ForgeError",
    "LimitConstants",
    "MeanMismatch",
    "Model",
    "Multigraph",
    "RetryExhausted",
    "SamplerDiagnostics",
    "SamplerParams",
    "SimpleDigraph",
    "SizeGuard",
    "count_multiplicities",
    "empirical_law",
    "erase",
    "erased_model",
    "generate",
    "independence_check",
    "is_graphical",
    "is_graphical_bruteforce",
    "kappa",
    "limits_from_distributions",
    "limits_from_sequence",
    "make_empirical",
    "make_geometric",
    "make_point_mass",
    "make_poisson",
    "make_zeta",
    "pair_uniform",
    "parse_distribution",
    "poisson_fit",
    "repeated_model",
    "sample_bidegree",
    "tv_distance",
]
