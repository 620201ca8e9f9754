"""Monte-Carlo checks that sampled factorizing Gaussians are Markov and faithful.

Per-sample randomness comes from ``numpy.random.default_rng([seed, k])`` for
sample number ``k``, so a report depends only on (graph, seed, n_samples,
tol) and not on evaluation order.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .gaussian import build_joint
from .graph import ChainGraph, validate
from .independence import CONCLUSION_FACTOR, DEFAULT_TOL, partial_correlation
from .parameterization import NdParameters, SamplerConfig, dimension, sample
from .separation import separated

MAX_VERTICES = 8
FULL_ENUMERATION_MAX = 6
SUBSAMPLED_TRIPLES = 1000


@dataclass(frozen=True)
class TripleVerdict:
    i: int
    j: int
    Z: tuple[int, ...]
    graph_separated: bool
    numeric_independent: bool
    partial_corr: float

    @property
    def markov_violation(self) -> bool:
        return self.graph_separated and not self.numeric_independent

    @property
    def faithfulness_violation(self) -> bool:
        return not self.graph_separated and self.numeric_independent


def enumerate_triples(g: ChainGraph) -> list[tuple[int, int, tuple[int, ...]]]:
    """All ``(i, j, Z)`` with ``i < j`` and ``Z`` a subset of the other vertices."""
    if g.n > MAX_VERTICES:
        raise ValueError(f"triple enumeration is limited to {MAX_VERTICES} vertices")
    out = []
    for i, j in combinations(g.vertices, 2):
        rest = [v for v in g.vertices if v not in (i, j)]
        for r in range(len(rest) + 1):
            out.extend((i, j, Z) for Z in combinations(rest, r))
    return out


def _triples_for(g: ChainGraph, seed) -> list:
    triples = enumerate_triples(g)
    if g.n <= FULL_ENUMERATION_MAX or len(triples) <= SUBSAMPLED_TRIPLES:
        return triples
    rng = np.random.default_rng([seed, 2**32 - 1])
    keep = np.sort(rng.choice(len(triples), SUBSAMPLED_TRIPLES, replace=False))
    return [triples[k] for k in keep]


def _verdicts(g, params, tol, triples, sep) -> list[TripleVerdict]:
    cov = build_joint(g, params).covariance
    out = []
    for t, s in zip(triples, sep):
        i, j, Z = t
        pc = partial_correlation(cov, i - 1, j - 1, [v - 1 for v in Z])
        out.append(TripleVerdict(i, j, Z, s, abs(pc) < tol, pc))
    return out


def check_sample(g: ChainGraph, params: NdParameters,
                 tol: float = DEFAULT_TOL) -> list[TripleVerdict]:
    """Compare separation with numeric independence on every triple."""
    triples = enumerate_triples(g)
    sep = [separated(g, {i}, {j}, Z) for i, j, Z in triples]
    return _verdicts(g, params, tol, triples, sep)


def graph_digest(g: ChainGraph) -> str:
    payload = json.dumps([g.n, g.undirected, g.directed])
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass
class SampleResult:
    sample: int
    markov_violations: list[TripleVerdict] = field(default_factory=list)
    faithfulness_violations: list[TripleVerdict] = field(default_factory=list)
    borderline: list[TripleVerdict] = field(default_factory=list)

    @property
    def faithful(self) -> bool:
        return not self.markov_violations and not self.faithfulness_violations


@dataclass
class FaithfulnessReport:
    graph: ChainGraph
    d: int
    n_samples: int
    seed: int
    tol: float
    n_triples: int
    subsampled: bool
    samples: list[SampleResult]

    @property
    def faithful_fraction(self) -> float:
        return sum(s.faithful for s in self.samples) / self.n_samples

    @property
    def markov_violation_count(self) -> int:
        return sum(len(s.markov_violations) for s in self.samples)

    @property
    def hard_markov_failures(self) -> int:
        """Markov violations at or beyond ten times the tolerance."""
        hi = CONCLUSION_FACTOR * self.tol
        return sum(abs(v.partial_corr) >= hi for s in self.samples for v in s.markov_violations)

    def to_document(self) -> dict:
        lab = self.graph.label

        def rows(attr):
            return [
                {"sample": s.sample, "i": lab(v.i), "j": lab(v.j),
                 "Z": [lab(z) for z in v.Z], "partial_corr": v.partial_corr}
                for s in self.samples for v in getattr(s, attr)
            ]

        return {
            "graph": self.graph.summary(),
            "digest": graph_digest(self.graph),
            "d": self.d,
            "n_samples": self.n_samples,
            "seed": self.seed,
            "tol": self.tol,
            "n_triples": self.n_triples,
            "triples_subsampled": self.subsampled,
            "faithful_fraction": self.faithful_fraction,
            "markov_violation_count": self.markov_violation_count,
            "markov_violations": rows("markov_violations"),
            "faithfulness_violations": rows("faithfulness_violations"),
            "borderline": rows("borderline"),
        }


def run_harness(g: ChainGraph, n_samples: int = 200, seed: int = 0,
                tol: float = DEFAULT_TOL,
                config: SamplerConfig | None = None) -> FaithfulnessReport:
    if validate(g):
        raise ValueError("not a chain graph")
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    triples = _triples_for(g, seed)
    sep = [separated(g, {i}, {j}, Z) for i, j, Z in triples]
    hi = CONCLUSION_FACTOR * tol
    results = []
    for k in range(n_samples):
        params = sample(g, np.random.default_rng([seed, k]), config)
        res = SampleResult(k)
        for v in _verdicts(g, params, tol, triples, sep):
            if v.markov_violation:
                res.markov_violations.append(v)
            elif v.faithfulness_violation:
                res.faithfulness_violations.append(v)
            elif not v.graph_separated and abs(v.partial_corr) < hi:
                res.borderline.append(v)
        results.append(res)
    return FaithfulnessReport(
        g, dimension(g), n_samples, seed, tol, len(triples),
        len(triples) < len(enumerate_triples(g)), results,
    )


def random_cg(n: int, edge_density: float, seed=0) -> ChainGraph:
    """Random chain graph fixture.

    Each pair gets an edge with probability ``edge_density``, its kind drawn
    uniformly from ``--``, ``->``, ``<-``. Arrows are then repaired: arrows
    inside an undirected component become undirected, and arrows between
    components are pointed along a random order of the components.
    """
    if n < 1 or not 0.0 <= edge_density <= 1.0:
        raise ValueError("need n >= 1 and a density in [0, 1]")
    rng = np.random.default_rng(seed)
    und, arrows = [], []
    for a, b in combinations(range(1, n + 1), 2):
        if rng.random() >= edge_density:
            continue
        kind = rng.integers(3)
        if kind == 0:
            und.append((a, b))
        else:
            arrows.append((a, b) if kind == 1 else (b, a))
    rank = {v: r for r, v in enumerate(rng.permutation(n) + 1)}
    plain = ChainGraph(n, tuple(und))
    groups = {}
    for v in range(1, n + 1):
        root = min(_undirected_reach(plain, v))
        groups[v] = root
    comp_rank = {}
    for v in range(1, n + 1):
        comp_rank[groups[v]] = min(comp_rank.get(groups[v], n), rank[v])
    directed = []
    for a, b in arrows:
        if groups[a] == groups[b]:
            und.append((a, b))
        elif comp_rank[groups[a]] < comp_rank[groups[b]]:
            directed.append((a, b))
        else:
            directed.append((b, a))
    return ChainGraph(n, tuple(und), tuple(directed))


def _undirected_reach(g: ChainGraph, v: int) -> set[int]:
    seen, stack = {v}, [v]
    while stack:
        for w in g.neighbors(stack.pop()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen
