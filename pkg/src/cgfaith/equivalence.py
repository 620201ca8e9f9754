"""Markov equivalence of chain graphs: same skeleton and same complexes."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .graph import ChainGraph, Complex, complexes, underlying_ug, validate
from .parameterization import dimension

MAX_ENUMERATION_N = 4


@dataclass(frozen=True)
class EquivalenceVerdict:
    skeleton_equal: bool
    complexes_equal: bool
    witness: tuple | Complex | None = None

    @property
    def equivalent(self) -> bool:
        return self.skeleton_equal and self.complexes_equal

    def to_document(self) -> dict:
        w = self.witness
        if isinstance(w, Complex):
            w = {"complex": [w.left, list(w.region), w.right]}
        elif w is not None:
            w = {"edge": list(w)}
        return {
            "skeleton_equal": self.skeleton_equal,
            "complexes_equal": self.complexes_equal,
            "equivalent": self.equivalent,
            "witness": w,
        }


def skeleton(g: ChainGraph) -> frozenset[tuple[int, int]]:
    return frozenset(underlying_ug(g).undirected)


def equivalent(g: ChainGraph, h: ChainGraph) -> EquivalenceVerdict:
    if g.n != h.n:
        raise ValueError("graphs must share a vertex set")
    sg, sh = skeleton(g), skeleton(h)
    if sg != sh:
        return EquivalenceVerdict(False, complexes(g) == complexes(h), min(sg ^ sh))
    cg, ch = set(complexes(g)), set(complexes(h))
    if cg != ch:
        return EquivalenceVerdict(True, False, min(cg ^ ch))
    return EquivalenceVerdict(True, True)


def class_key(g: ChainGraph) -> tuple:
    return (g.n, tuple(sorted(skeleton(g))), tuple(complexes(g)))


def class_digest(g: ChainGraph) -> str:
    n, skel, cpx = class_key(g)
    payload = json.dumps([n, skel, [[c.left, c.region, c.right] for c in cpx]])
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def dimension_invariance(graphs: Sequence[ChainGraph]) -> bool:
    """True iff all (pairwise equivalent) graphs share one dimension."""
    graphs = list(graphs)
    for h in graphs[1:]:
        if not equivalent(graphs[0], h).equivalent:
            raise ValueError("graphs are not all equivalent")
    return len({dimension(g) for g in graphs}) <= 1


def enumerate_cgs(n: int) -> Iterator[ChainGraph]:
    """Every chain graph on ``n`` labelled vertices.

    Pairs are taken in lexicographic order and each gets none, ``--``,
    ``->`` or ``<-`` in that order; the product is walked with the last pair
    varying fastest.
    """
    if not 1 <= n <= MAX_ENUMERATION_N:
        raise ValueError(f"enumeration supports 1 <= n <= {MAX_ENUMERATION_N}")
    pairs = list(combinations(range(1, n + 1), 2))
    for choice in product(range(4), repeat=len(pairs)):
        und, dirs = [], []
        for (a, b), c in zip(pairs, choice):
            if c == 1:
                und.append((a, b))
            elif c == 2:
                dirs.append((a, b))
            elif c == 3:
                dirs.append((b, a))
        g = ChainGraph(n, tuple(und), tuple(dirs))
        if not validate(g):
            yield g


@dataclass
class EquivalenceClass:
    digest: str
    members: list[ChainGraph]

    @property
    def size(self) -> int:
        return len(self.members)

    def to_document(self) -> dict:
        return {
            "digest": self.digest,
            "size": self.size,
            "dimension": dimension(self.members[0]),
            "members": [m.summary() for m in self.members],
        }


def partition_classes(graphs: Iterable[ChainGraph]) -> list[EquivalenceClass]:
    """Group graphs by skeleton and complex set, in order of first appearance."""
    classes: dict[tuple, EquivalenceClass] = {}
    for g in graphs:
        key = class_key(g)
        if key not in classes:
            classes[key] = EquivalenceClass(class_digest(g), [])
        classes[key].members.append(g)
    return list(classes.values())
