"""End-to-end generation: sample degrees, pair, simplify."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .bidegree import BiDegreeSequence, SamplerDiagnostics, SamplerParams, sample_bidegree
from .config_model import Multigraph, count_multiplicities, pair_uniform
from .degree_dist import DegreeDistribution
from .errors import AttemptsExhausted
from .formats import histogram
from .graphicality import is_graphical
from .rng import DEGREES_STREAM, PAIRING_STREAM, derive_rng
from .simplify import ErasureReport, Provenance, SimpleDigraph, default_max_attempts, erase, repeated_model
from .stats import empirical_law, limits_from_sequence, tv_to_distribution


class Model(str, Enum):
    REPEATED = "repeated"
    ERASED = "erased"
    MULTIGRAPH = "multigraph"


class HeavyTailWarning(UserWarning):
    """Repeated model asked for with an infinite-variance degree law."""


@dataclass
class GenerationResult:
    model: Model
    sequence: BiDegreeSequence
    diagnostics: SamplerDiagnostics
    graph: SimpleDigraph | None = None
    multigraph: Multigraph | None = None
    attempts: int | None = None
    erasure: ErasureReport | None = None

    @property
    def in_degrees(self) -> np.ndarray:
        if self.graph is not None:
            return self.graph.in_degrees
        return self.multigraph.in_degrees()

    @property
    def out_degrees(self) -> np.ndarray:
        if self.graph is not None:
            return self.graph.out_degrees
        return self.multigraph.out_degrees()

    def summary(self, F: DegreeDistribution, G: DegreeDistribution) -> dict:
        ins, outs = self.in_degrees, self.out_degrees
        law = empirical_law(ins, outs)
        out = {
            "model": self.model.value,
            "n": self.sequence.n,
            "total_stubs": self.sequence.total,
            "sampler": self.diagnostics.to_dict(),
            "realized_in_degree_histogram": histogram(ins),
            "realized_out_degree_histogram": histogram(outs),
            "tv_in": tv_to_distribution(law.marginal_in, F),
            "tv_out": tv_to_distribution(law.marginal_out, G),
            "lambda1_hat": None,
            "lambda2_hat": None,
        }
        if self.sequence.total:
            lim = limits_from_sequence(self.sequence)
            out["lambda1_hat"] = lim.lambda1
            out["lambda2_hat"] = lim.lambda2
        if self.attempts is not None:
            out["attempts"] = self.attempts
        if self.erasure is not None:
            out["erasure_report"] = self.erasure.to_dict()
        if self.graph is not None:
            out["num_edges"] = self.graph.num_edges
        if self.multigraph is not None:
            g = self.multigraph
            out["self_loops"] = g.self_loops
            out["multi_excess"] = g.multi_excess
            out["multi_pairs"] = g.multi_pairs
            out["multiplicity_histogram"] = [[k, v] for k, v in count_multiplicities(g).items()]
        return out


def generate(
    F: DegreeDistribution,
    G: DegreeDistribution,
    n: int,
    model: Model | str = Model.ERASED,
    params: SamplerParams | None = None,
    seed: int = 0,
    max_attempts: int | None = None,
    resample_degrees: bool = False,
) -> GenerationResult:
    """Generate one graph.

    Degrees come from stream ``(0,)`` of ``seed`` and pairing from stream
    ``(1,)``, so the degree sequence matches ``sample_bidegree`` under
    ``derive_rng(seed, 0)`` regardless of model.  With ``resample_degrees``
    the repeated model draws a fresh sequence (from the degree stream) after
    every non-simple pairing instead of re-pairing the same one.
    """
    model = Model(model)
    params = params or SamplerParams()
    deg_rng = derive_rng(seed, *DEGREES_STREAM)
    pair_rng = derive_rng(seed, *PAIRING_STREAM)
    seq, diag = sample_bidegree(F, G, n, params, deg_rng)

    if model is Model.MULTIGRAPH:
        return GenerationResult(model, seq, diag, multigraph=pair_uniform(seq, pair_rng))
    if model is Model.ERASED:
        graph, report = erase(pair_uniform(seq, pair_rng))
        return GenerationResult(model, seq, diag, graph=graph, erasure=report)

    if not (F.finite_variance and G.finite_variance):
        warnings.warn(
            "repeated model with an infinite-variance degree law: the chance of a "
            "simple pairing may vanish as n grows; the erased model is the usual choice",
            HeavyTailWarning,
            stacklevel=2,
        )
    if not resample_degrees:
        graph, attempts = repeated_model(seq, pair_rng, max_attempts)
        return GenerationResult(model, seq, diag, graph=graph, attempts=attempts)

    if max_attempts is None:
        max_attempts = default_max_attempts(seq)
    for attempt in range(1, max_attempts + 1):
        g = pair_uniform(seq, pair_rng)
        if g.is_simple:
            graph = SimpleDigraph.from_multigraph(g, Provenance.REPEATED)
            return GenerationResult(model, seq, diag, graph=graph, attempts=attempt)
        seq, diag = sample_bidegree(F, G, n, params, deg_rng)
    raise AttemptsExhausted(max_attempts, graphical=is_graphical(seq))
