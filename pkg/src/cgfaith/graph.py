"""Chain graph data model and structural operations.

Vertices are the dense integers ``1..n``. External node names live in
``ChainGraph.labels`` and are only consulted at the I/O boundary.
"""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple


class Violation(NamedTuple):
    kind: str
    message: str


class Complex(NamedTuple):
    """Induced path ``left -> region[0] - ... - region[-1] <- right``."""

    left: int
    region: tuple[int, ...]
    right: int

    def canonical(self) -> "Complex":
        if self.left > self.right or (
            self.left == self.right and self.region > self.region[::-1]
        ):
            return Complex(self.right, self.region[::-1], self.left)
        return self


@dataclass(frozen=True)
class ChainGraph:
    n: int
    undirected: tuple[tuple[int, int], ...] = ()
    directed: tuple[tuple[int, int], ...] = ()
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        und = tuple(sorted(tuple(sorted(e)) for e in self.undirected))
        dirs = tuple(sorted(tuple(e) for e in self.directed))
        for a, b in und + dirs:
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise ValueError(f"edge ({a}, {b}) references an unknown vertex")
        object.__setattr__(self, "undirected", und)
        object.__setattr__(self, "directed", dirs)
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels must name every vertex")
        nbr: dict[int, set[int]] = {v: set() for v in self.vertices}
        pa: dict[int, set[int]] = {v: set() for v in self.vertices}
        ch: dict[int, set[int]] = {v: set() for v in self.vertices}
        for a, b in und:
            nbr[a].add(b)
            nbr[b].add(a)
        for a, b in dirs:
            ch[a].add(b)
            pa[b].add(a)
        object.__setattr__(self, "_nbr", nbr)
        object.__setattr__(self, "_pa", pa)
        object.__setattr__(self, "_ch", ch)
        object.__setattr__(self, "_undirected_set", frozenset(und))
        object.__setattr__(self, "_directed_set", frozenset(dirs))

    @classmethod
    def from_edges(cls, n: int, *specs: str) -> "ChainGraph":
        """Build from strings such as ``"1->2"``, ``"2<-3"`` or ``"2--3"``."""
        und, dirs = [], []
        for s in specs:
            for op in ("--", "->", "<-"):
                if op in s:
                    a, b = (int(x) for x in s.split(op))
                    break
            else:
                raise ValueError(f"bad edge spec {s!r}")
            if op == "--":
                und.append((a, b))
            else:
                dirs.append((a, b) if op == "->" else (b, a))
        return cls(n, tuple(und), tuple(dirs))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def n_edges(self) -> int:
        return len(self.undirected) + len(self.directed)

    def label(self, v: int) -> str:
        return self.labels[v - 1] if self.labels else str(v)

    def neighbors(self, v: int) -> set[int]:
        """Vertices joined to ``v`` by an undirected edge."""
        return set(self._nbr[v])

    def children(self, v: int) -> set[int]:
        return set(self._ch[v])

    def adjacent(self, a: int, b: int) -> bool:
        return b in self._nbr[a] or b in self._ch[a] or b in self._pa[a]

    def adjacencies(self, v: int) -> set[int]:
        return self._nbr[v] | self._ch[v] | self._pa[v]

    def is_ug(self) -> bool:
        return not self.directed

    def is_dag(self) -> bool:
        return not self.undirected

    def summary(self) -> dict:
        lab = self.label
        return {
            "nodes": [lab(v) for v in self.vertices],
            "edges": [[lab(a), "--", lab(b)] for a, b in self.undirected]
            + [[lab(a), "->", lab(b)] for a, b in self.directed],
        }

    def __str__(self) -> str:
        parts = [f"{a}--{b}" for a, b in self.undirected]
        parts += [f"{a}->{b}" for a, b in self.directed]
        return f"ChainGraph(n={self.n}: {', '.join(parts) or 'no edges'})"


def _check_vertices(g: ChainGraph, vs: Iterable[int]) -> frozenset[int]:
    vs = frozenset(vs)
    bad = [v for v in vs if not 1 <= v <= g.n]
    if bad:
        raise ValueError(f"unknown vertices {sorted(bad)}")
    return vs


def _undirected_groups(g: ChainGraph) -> list[list[int]]:
    seen: set[int] = set()
    groups = []
    for v in g.vertices:
        if v in seen:
            continue
        seen.add(v)
        group, queue = [v], deque([v])
        while queue:
            u = queue.popleft()
            for w in sorted(g._nbr[u]):
                if w not in seen:
                    seen.add(w)
                    group.append(w)
                    queue.append(w)
        groups.append(sorted(group))
    return groups


def _undirected_path(g: ChainGraph, src: int, dst: int) -> list[int]:
    prev = {src: None}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u == dst:
            break
        for w in sorted(g._nbr[u]):
            if w not in prev:
                prev[w] = u
                queue.append(w)
    path = [dst]
    while path[-1] != src:
        path.append(prev[path[-1]])
    return path[::-1]


def validate(g: ChainGraph) -> list[Violation]:
    """Return every invariant violation; an empty list means ``g`` is a CG.

    Pseudocycles are found by contracting undirected components and looking
    for cycles among the contracted arrows. Each reported cycle is a concrete
    descending route.
    """
    out: list[Violation] = []
    seen_pairs: dict[tuple[int, int], str] = {}
    for kind, edges in (("--", g.undirected), ("->", g.directed)):
        for a, b in edges:
            if a == b:
                out.append(Violation("self-loop", f"self-loop at {a}"))
                continue
            key = (min(a, b), max(a, b))
            if key in seen_pairs:
                out.append(Violation(
                    "multi-edge",
                    f"more than one edge between {key[0]} and {key[1]}",
                ))
            seen_pairs[key] = kind

    groups = _undirected_groups(g)
    comp_of = {v: i for i, grp in enumerate(groups) for v in grp}
    arrows: dict[int, list[tuple[int, int]]] = {i: [] for i in range(len(groups))}
    for a, b in g.directed:
        if a == b:
            continue
        if comp_of[a] == comp_of[b]:
            route = [a] + _undirected_path(g, b, a)
            out.append(_cycle_violation(route))
        else:
            arrows[comp_of[a]].append((a, b))

    # DFS over the contracted digraph; every back arrow closes a cycle.
    state = [0] * len(groups)
    stack_arrows: list[tuple[int, int]] = []

    def visit(c: int):
        state[c] = 1
        for a, b in arrows[c]:
            cb = comp_of[b]
            if state[cb] == 1:
                start = next(k for k, (x, _) in enumerate(stack_arrows) if comp_of[x] == cb)
                cyc = stack_arrows[start:] + [(a, b)]
                out.append(_cycle_violation(_stitch(g, cyc)))
            elif state[cb] == 0:
                stack_arrows.append((a, b))
                visit(cb)
                stack_arrows.pop()
        state[c] = 2

    for c in range(len(groups)):
        if state[c] == 0:
            visit(c)
    return out


def _stitch(g: ChainGraph, arrows: list[tuple[int, int]]) -> list[int]:
    route = [arrows[0][0]]
    for k, (a, b) in enumerate(arrows):
        nxt = arrows[(k + 1) % len(arrows)][0]
        route.extend(_undirected_path(g, b, nxt))
    return route


def _cycle_violation(route: list[int]) -> Violation:
    return Violation(
        "pseudocycle",
        "directed pseudocycle " + ",".join(map(str, route)),
    )


def is_chain_graph(g: ChainGraph) -> bool:
    return not validate(g)


def parents(g: ChainGraph, vs: Iterable[int]) -> frozenset[int]:
    vs = _check_vertices(g, vs)
    return frozenset(p for v in vs for p in g._pa[v])


def ancestors(g: ChainGraph, vs: Iterable[int]) -> frozenset[int]:
    """Vertices with a descending route into ``vs`` (``vs`` included)."""
    vs = _check_vertices(g, vs)
    return _closure(vs, lambda v: g._nbr[v] | g._pa[v])


def descendants(g: ChainGraph, vs: Iterable[int]) -> frozenset[int]:
    vs = _check_vertices(g, vs)
    return _closure(vs, lambda v: g._nbr[v] | g._ch[v])


def _closure(start, step) -> frozenset[int]:
    seen = set(start)
    queue = deque(start)
    while queue:
        for w in step(queue.popleft()):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


@dataclass(frozen=True)
class ComponentDecomposition:
    components: tuple[tuple[int, ...], ...]
    component_index: dict[int, int]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]


def components(g: ChainGraph) -> ComponentDecomposition:
    """Connectivity components in a well-order.

    Ties are broken by the smallest vertex in each component, so the result
    is deterministic.
    """
    groups = _undirected_groups(g)
    comp_of = {v: i for i, grp in enumerate(groups) for v in grp}
    succ = {i: set() for i in range(len(groups))}
    indeg = [0] * len(groups)
    for a, b in g.directed:
        ca, cb = comp_of[a], comp_of[b]
        if ca == cb:
            raise ValueError("graph has a directed pseudocycle")
        if cb not in succ[ca]:
            succ[ca].add(cb)
            indeg[cb] += 1
    heap = [(groups[i][0], i) for i in range(len(groups)) if indeg[i] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, i = heapq.heappop(heap)
        order.append(i)
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(heap, (groups[j][0], j))
    if len(order) != len(groups):
        raise ValueError("graph has a directed pseudocycle")
    comps = tuple(tuple(groups[i]) for i in order)
    index = {v: k for k, comp in enumerate(comps) for v in comp}
    return ComponentDecomposition(comps, index)


def induced_subgraph(g: ChainGraph, vs: Iterable[int]) -> ChainGraph:
    """Subgraph over ``vs``, keeping the original vertex numbering.

    Vertices outside ``vs`` stay in the graph as isolated nodes so that ids
    remain aligned with matrix indices; callers restrict attention to ``vs``.
    """
    vs = _check_vertices(g, vs)
    return ChainGraph(
        g.n,
        tuple(e for e in g.undirected if e[0] in vs and e[1] in vs),
        tuple(e for e in g.directed if e[0] in vs and e[1] in vs),
        g.labels,
    )


def underlying_ug(g: ChainGraph) -> ChainGraph:
    return ChainGraph(g.n, g.undirected + g.directed, (), g.labels)


def moral_graph(g: ChainGraph) -> ChainGraph:
    """Underlying UG plus edges between co-parents of a component."""
    edges = set(underlying_ug(g).undirected)
    for comp in components(g):
        pa = sorted(parents(g, comp))
        for x in range(len(pa)):
            for y in range(x + 1, len(pa)):
                edges.add((pa[x], pa[y]))
    return ChainGraph(g.n, tuple(edges), (), g.labels)


def complexes(g: ChainGraph) -> list[Complex]:
    """All complexes of ``g``, each once, in canonical order."""
    found: set[Complex] = set()
    for comp in components(g):
        members = set(comp)
        pa = sorted(parents(g, comp))
        for x, u in enumerate(pa):
            for w in pa[x + 1:]:
                if g.adjacent(u, w):
                    continue
                ends = g._ch[w] & members
                for r0 in sorted(g._ch[u] & members):
                    for region in _chordless_paths(g, r0, u, w, ends):
                        found.add(Complex(u, region, w).canonical())
    return sorted(found)


def _chordless_paths(g, r0, u, w, ends):
    """Undirected chordless paths from ``r0`` usable as a complex region."""
    out = []

    def extend(path):
        last = path[-1]
        if last in ends:
            out.append(tuple(path))
        # ``last`` becomes interior from here on, so it must not touch ``w``
        if g.adjacent(last, w):
            return
        for x in sorted(g._nbr[last]):
            if x in path or g.adjacent(x, u):
                continue
            if any(g.adjacent(x, p) for p in path[:-1]):
                continue
            path.append(x)
            extend(path)
            path.pop()

    extend([r0])
    return [p for p in out if is_complex(g, Complex(u, p, w))]


def is_complex(g: ChainGraph, c: Complex) -> bool:
    """Check the induced-subgraph definition literally."""
    nodes = (c.left,) + tuple(c.region) + (c.right,)
    if len(set(nodes)) != len(nodes) or not c.region:
        return False
    expected_dir = {(c.left, c.region[0]), (c.right, c.region[-1])}
    expected_und = {
        tuple(sorted(p)) for p in zip(c.region, c.region[1:])
    }
    node_set = set(nodes)
    got_dir = {e for e in g.directed if e[0] in node_set and e[1] in node_set}
    got_und = {e for e in g.undirected if e[0] in node_set and e[1] in node_set}
    return got_dir == expected_dir and got_und == expected_und
