"""Acceptance suite: each criterion at its stated tolerance and time budget.

Run directly (``python tests/test_acceptance.py``) for a plain report, or
through pytest, which prints the same verdict line per criterion.
"""
from __future__ import annotations

import sys
import time
from functools import lru_cache
from itertools import combinations

import numpy as np
import pytest

from cgfaith.equivalence import class_key, enumerate_cgs, equivalent, partition_classes
from cgfaith.faithfulness import enumerate_triples, random_cg, run_harness
from cgfaith.gaussian import (
    Gaussian, LinearConditional, build_joint, compose, condition, is_positive_definite, marginal,
)
from cgfaith.graph import components, parents
from cgfaith.independence import axiom_check
from cgfaith.parameterization import dimension, recover, sample
from cgfaith.separation import (
    dsep_dag_oracle, separated, separated_route_oracle, ugsep_oracle,
)


def _graph(k: int, max_n: int):
    """The k-th fixture graph: sizes and densities cycle, seeded by k."""
    return random_cg(1 + k % max_n, (0.3, 0.5, 0.7)[k % 3], seed=k)


def _disjoint_triples(n):
    from itertools import product
    for roles in product(range(4), repeat=n):
        I = {v + 1 for v, r in enumerate(roles) if r == 1}
        J = {v + 1 for v, r in enumerate(roles) if r == 2}
        K = {v + 1 for v, r in enumerate(roles) if r == 3}
        if I and J:
            yield I, J, K


@lru_cache(maxsize=None)
def _roundtrip_pairs():
    pairs = []
    for k in range(500):
        g = _graph(k, 6)
        pairs.append((g, sample(g, k)))
    return pairs


def criterion_1():
    t0 = time.perf_counter()
    worst = max(recover(g, build_joint(g, p)).max_abs_diff(p) for g, p in _roundtrip_pairs())
    dt = time.perf_counter() - t0
    return worst < 1e-8 and dt < 30, f"500 pairs, max abs error {worst:.2e}, {dt:.1f}s"


def criterion_2():
    t0 = time.perf_counter()
    failures = 0
    for k in range(10_000):
        g = _graph(k, 6)
        failures += not is_positive_definite(build_joint(g, sample(g, k)).precision)
    dt = time.perf_counter() - t0
    return failures == 0 and dt < 60, f"10^4 samples, {failures} PD failures, {dt:.1f}s"


def criterion_3():
    worst = 0.0
    for g, p in _roundtrip_pairs():
        joint = build_joint(g, p)
        for k, block in enumerate(components(g)):
            pa = tuple(sorted(parents(g, block)))
            lam = marginal(joint, block + pa).precision
            b = len(block)
            worst = max(worst, np.max(np.abs(lam[:b, :b] - p.omega_bb[k])))
            if pa:
                worst = max(worst, np.max(np.abs(lam[:b, b:] - p.omega_bp[k])))
    return worst < 1e-8, f"500 pairs, max block error {worst:.2e}"


def _random_pd(rng, n):
    a = rng.normal(size=(n, n))
    return a @ a.T + 0.5 * np.eye(n)


def criterion_4():
    rng = np.random.default_rng(20240)
    worst_inv = worst_rt = 0.0
    for _ in range(1000):
        size = int(rng.integers(2, 7))
        ni = int(rng.integers(1, size))
        nj = size - ni
        I, J = tuple(range(1, ni + 1)), tuple(range(ni + 1, size + 1))
        beta, eps = _random_pd(rng, ni), _random_pd(rng, nj)
        delta = rng.normal(size=(nj, ni))
        alpha, gamma = rng.normal(size=ni), rng.normal(size=nj)
        joint = compose(Gaussian.from_precision(alpha, beta, I),
                        LinearConditional(delta, gamma, eps, J, I))
        worst_inv = max(worst_inv, np.max(np.abs(joint.precision @ joint.covariance - np.eye(size))))
        back = condition(joint, J)
        worst_rt = max(worst_rt, np.max(np.abs(back.delta - delta)),
                       np.max(np.abs(back.gamma - gamma)), np.max(np.abs(back.epsilon - eps)))
    ok = worst_inv < 1e-10 and worst_rt < 1e-10
    return ok, f"10^3 instances, |PS - I| {worst_inv:.2e}, round trip {worst_rt:.2e}"


@lru_cache(maxsize=None)
def _harness_run():
    t0 = time.perf_counter()
    reports = [run_harness(random_cg(2 + k % 4, (0.3, 0.5, 0.7)[k % 3], seed=k), 200, seed=k)
               for k in range(50)]
    return reports, time.perf_counter() - t0


def criterion_5():
    reports, dt = _harness_run()
    bad = sum(r.markov_violation_count for r in reports)
    return bad == 0 and dt < 300, f"50 graphs x 200 samples, {bad} Markov violations, {dt:.1f}s"


def criterion_6():
    reports, _ = _harness_run()
    worst = min(r.faithful_fraction for r in reports)
    below = sum(r.faithful_fraction < 0.99 for r in reports)
    return below == 0, f"min faithful_fraction {worst:.3f}, {below} graphs below 0.99"


def criterion_7():
    checked = 0
    for n in (1, 2, 3, 4):
        for g in enumerate_cgs(n):
            if not (g.is_dag() or g.is_ug()):
                continue
            for I, J, K in _disjoint_triples(n):
                s = separated(g, I, J, K)
                if g.is_dag() and s != dsep_dag_oracle(g, I, J, K):
                    return False, f"d-separation disagrees on {g} {I} {J} {K}"
                if g.is_ug() and s != ugsep_oracle(g, I, J, K):
                    return False, f"UG separation disagrees on {g} {I} {J} {K}"
                checked += 1
    definite = inconclusive = 0
    for n in (1, 2, 3):
        for g in enumerate_cgs(n):
            for I, J, K in _disjoint_triples(n):
                r = separated_route_oracle(g, I, J, K)
                if r is None:
                    inconclusive += 1
                elif r != separated(g, I, J, K):
                    return False, f"route oracle contradicts on {g} {I} {J} {K}"
                else:
                    definite += 1
    return True, (f"{checked} DAG/UG queries agree; route oracle {definite} definite, "
                  f"{inconclusive} inconclusive, 0 contradictions")


def criterion_8():
    t0 = time.perf_counter()
    for n in (1, 2, 3, 4):
        graphs = list(enumerate_cgs(n))
        triples = enumerate_triples(graphs[0])
        sig = [tuple(separated(g, {i}, {j}, Z) for i, j, Z in triples) for g in graphs]
        # same signature iff same class key, over every pair: compare the two partitions
        by_sig, by_key = {}, {}
        for idx, g in enumerate(graphs):
            by_sig.setdefault(sig[idx], set()).add(idx)
            by_key.setdefault(class_key(g), set()).add(idx)
        if sorted(map(sorted, by_sig.values())) != sorted(map(sorted, by_key.values())):
            return False, f"partitions differ at N={n}"
        if n <= 3:
            for a, b in combinations(range(len(graphs)), 2):
                if (sig[a] == sig[b]) != equivalent(graphs[a], graphs[b]).equivalent:
                    return False, f"pair disagrees at N={n}"
    dt = time.perf_counter() - t0
    return dt < 300, f"signature and equivalence partitions coincide for N<=4 (1688 graphs at N=4), {dt:.1f}s"


def criterion_9():
    classes = [c for n in (1, 2, 3, 4) for c in partition_classes(enumerate_cgs(n))]
    bad = sum(len({dimension(m) for m in c.members}) != 1 for c in classes)
    return bad == 0, f"{len(classes)} classes, {bad} with varying dimension"


def criterion_10():
    found = 0
    for k in range(100):
        g = random_cg(1 + k % 5, (0.3, 0.5, 0.7)[k % 3], seed=k)
        found += len(axiom_check(build_joint(g, sample(g, k))))
    return found == 0, f"100 distributions, {found} axiom violations"


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 11)}


def _line(n, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"


@pytest.mark.slow
@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, detail = CRITERIA[n]()
    with capsys.disabled():
        print("\n" + _line(n, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = [(n, *CRITERIA[n]()) for n in sorted(CRITERIA)]
    for r in results:
        print(_line(*r))
    sys.exit(0 if all(ok for _, ok, _ in results) else 1)
