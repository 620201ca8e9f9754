"""Graphical separation in chain graphs.

``separated`` implements the moralization criterion and is the one used
everywhere else. The remaining functions are independent oracles kept for
cross-checking it.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable

from .graph import ChainGraph, ancestors, induced_subgraph, moral_graph

DEFAULT_MAX_LEN = 8


def _query(g: ChainGraph, I, J, K):
    I, J, K = frozenset(I), frozenset(J), frozenset(K)
    if not I or not J:
        raise ValueError("I and J must be non-empty")
    if I & J or I & K or J & K:
        raise ValueError("I, J and K must be pairwise disjoint")
    bad = [v for v in I | J | K if not 1 <= v <= g.n]
    if bad:
        raise ValueError(f"unknown vertices {sorted(bad)}")
    return I, J, K


def _cut_separates(adj, I, J, K) -> bool:
    seen = set(I)
    queue = deque(I)
    while queue:
        u = queue.popleft()
        for w in adj(u):
            if w in K or w in seen:
                continue
            if w in J:
                return False
            seen.add(w)
            queue.append(w)
    return True


def moralized_ancestral_graph(g: ChainGraph, vs: Iterable[int]) -> ChainGraph:
    """Moral graph of the subgraph induced by the ancestors of ``vs``."""
    return moral_graph(induced_subgraph(g, ancestors(g, vs)))


def separated(g: ChainGraph, I: Iterable[int], J: Iterable[int],
              K: Iterable[int] = ()) -> bool:
    """True iff ``K`` cuts ``I`` from ``J`` in the moralized ancestral graph."""
    I, J, K = _query(g, I, J, K)
    m = moralized_ancestral_graph(g, I | J | K)
    return _cut_separates(m.neighbors, I, J, K)


def ugsep_oracle(g: ChainGraph, I, J, K=()) -> bool:
    """Vertex-cut separation; only defined for undirected graphs."""
    if not g.is_ug():
        raise ValueError("ugsep_oracle requires an undirected graph")
    I, J, K = _query(g, I, J, K)
    return _cut_separates(g.neighbors, I, J, K)


def dsep_dag_oracle(g: ChainGraph, I, J, K=()) -> bool:
    """Classic d-separation by reachability over (node, direction) states.

    A state ``(v, 'up')`` means the trail entered ``v`` from one of its
    children, ``(v, 'down')`` from one of its parents.
    """
    if not g.is_dag():
        raise ValueError("dsep_dag_oracle requires a graph without undirected edges")
    I, J, K = _query(g, I, J, K)
    anc_k = ancestors(g, K) if K else frozenset()
    pa = {v: {a for a, b in g.directed if b == v} for v in g.vertices}
    visited = set()
    queue = deque((i, "up") for i in I)
    while queue:
        v, d = queue.popleft()
        if (v, d) in visited:
            continue
        visited.add((v, d))
        if v in J:
            return False
        if d == "up" and v not in K:
            queue.extend((p, "up") for p in pa[v])
            queue.extend((c, "down") for c in g.children(v))
        elif d == "down":
            if v not in K:
                queue.extend((c, "down") for c in g.children(v))
            if v in anc_k:
                queue.extend((p, "up") for p in pa[v])
    return True


def is_superactive(g: ChainGraph, route: list[int], K: Iterable[int]) -> bool:
    """Check the section conditions on an explicit route.

    Sections are maximal runs joined by undirected edges. A collider section
    is entered and left through arrowheads pointing into it; it must meet
    ``K``. Every other section must avoid ``K``.
    """
    K = set(K)
    steps = []
    for a, b in zip(route, route[1:]):
        if (min(a, b), max(a, b)) in g._undirected_set:
            steps.append("-")
        elif (a, b) in g._directed_set:
            steps.append(">")
        elif (b, a) in g._directed_set:
            steps.append("<")
        else:
            raise ValueError(f"route uses a missing edge {a},{b}")
    start = 0
    while start < len(route):
        end = start
        while end < len(steps) and steps[end] == "-":
            end += 1
        section = route[start:end + 1]
        into_left = start > 0 and steps[start - 1] == ">"
        into_right = end < len(steps) and steps[end] == "<"
        hits = any(v in K for v in section)
        if into_left and into_right:
            if not hits:
                return False
        elif hits:
            return False
        start = end + 1
    return True


def _step_state(g, state, w, K):
    """Advance the section automaton by one edge; None when the prefix is dead.

    ``state`` is ``(node, entered_by_arrowhead, section_meets_K)``.
    """
    v, arrow_in, hit = state
    if (min(v, w), max(v, w)) in g._undirected_set:
        return (w, arrow_in, hit or w in K)
    if (v, w) in g._directed_set:
        if hit:
            return None
        return (w, True, w in K)
    # arrow w -> v closes the current section with an arrowhead
    if arrow_in != hit:
        return None
    return (w, False, w in K)


def separated_route_oracle(g: ChainGraph, I, J, K=(), max_len: int = DEFAULT_MAX_LEN):
    """Search explicit routes for one that is superactive with respect to ``K``.

    Returns False as soon as such a route from ``I`` to ``J`` is found. Returns
    True when none exists and the enumeration provably covered everything:
    the set of section states reached by walk prefixes stopped growing before
    ``max_len``. Otherwise returns None (inconclusive).
    """
    I, J, K = _query(g, I, J, K)
    adj = {v: sorted(g.adjacencies(v)) for v in g.vertices}
    level = [([i], (i, False, False)) for i in sorted(I)]
    seen_states = {s for _, s in level}
    for _ in range(max_len):
        nxt = []
        new_state = False
        for route, state in level:
            for w in adj[route[-1]]:
                s = _step_state(g, state, w, K)
                if s is None:
                    continue
                walk = route + [w]
                if w in J and is_superactive(g, walk, K):
                    return False
                if s not in seen_states:
                    seen_states.add(s)
                    new_state = True
                nxt.append((walk, s))
        if not new_state:
            return True
        level = nxt
    return None
