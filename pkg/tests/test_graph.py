from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from cgfaith.equivalence import enumerate_cgs
from cgfaith.graph import (
    ChainGraph, Complex, ancestors, complexes, components, descendants,
    induced_subgraph, is_complex, moral_graph, parents, underlying_ug, validate,
)

G = ChainGraph.from_edges


def small_cgs(max_n=4):
    for n in range(1, max_n + 1):
        yield from enumerate_cgs(n)


ALL_CGS_4 = list(small_cgs(4))


# -- brute-force oracles ----------------------------------------------------

def descending_reach(g, v):
    """Vertices reachable from v by descending routes, by walk enumeration."""
    reach = {v}
    frontier = [[v]]
    for _ in range(g.n):
        nxt = []
        for walk in frontier:
            u = walk[-1]
            for w in g.vertices:
                if (min(u, w), max(u, w)) in g.undirected or (u, w) in g.directed:
                    nxt.append(walk + [w])
                    reach.add(w)
        frontier = nxt
    return reach


def brute_complexes(g):
    """Try every vertex sequence as a complex, checking induced edges directly."""
    found = set()
    for size in range(3, g.n + 1):
        for seq in permutations(g.vertices, size):
            left, *region, right = seq
            if left > right:
                continue
            nodes = set(seq)
            und = {e for e in g.undirected if set(e) <= nodes}
            dirs = {e for e in g.directed if set(e) <= nodes}
            want_und = {tuple(sorted(p)) for p in zip(region, region[1:])}
            want_dir = {(left, region[0]), (right, region[-1])}
            if und == want_und and dirs == want_dir:
                c = Complex(left, tuple(region), right)
                found.add(c.canonical())
    return sorted(found)


# -- validate ----------------------------------------------------------------

def test_validate_two_node_dag():
    assert validate(G(2, "1->2")) == []


def test_validate_two_cycle():
    kinds = {v.kind: v.message for v in validate(G(2, "1->2", "2->1"))}
    assert kinds["pseudocycle"] == "directed pseudocycle 1,2,1"


def test_validate_mixed_pseudocycle():
    msgs = [v.message for v in validate(G(3, "1->2", "2--3", "3--1"))]
    assert msgs == ["directed pseudocycle 1,2,3,1"]


def test_validate_long_cycle_through_components():
    g = G(4, "1->2", "2--3", "3->4", "4->1")
    (v,) = validate(g)
    assert v.kind == "pseudocycle"
    route = [int(x) for x in v.message.split()[-1].split(",")]
    assert route[0] == route[-1]
    steps = list(zip(route, route[1:]))
    assert all((min(a, b), max(a, b)) in g.undirected or (a, b) in g.directed for a, b in steps)
    assert any((a, b) in g.directed for a, b in steps)


def test_validate_multi_edge():
    kinds = [v.kind for v in validate(ChainGraph(2, ((1, 2), (2, 1))))]
    assert kinds == ["multi-edge"]


def test_validate_matches_descending_route_definition():
    # pseudocycle iff some arrow a->b has a descending route back from b to a
    for n in (2, 3):
        from itertools import product, combinations
        pairs = list(combinations(range(1, n + 1), 2))
        for choice in product(range(4), repeat=len(pairs)):
            specs = [f"{a}{op}{b}" for (a, b), c in zip(pairs, choice)
                     for op in ["", "--", "->", "<-"][c:c + 1] if op]
            g = G(n, *specs)
            cyclic = any(a in descending_reach(g, b) for a, b in g.directed)
            assert bool(validate(g)) == cyclic


# -- parents / ancestors / descendants --------------------------------------

def test_parents():
    assert parents(G(3, "1->2", "3->2"), {2}) == {1, 3}
    assert parents(G(3, "1->2", "3->2"), set()) == set()
    assert parents(G(3, "1->2", "2--3"), {3}) == set()
    with pytest.raises(ValueError):
        parents(G(2), {5})


def test_ancestors_descendants_examples():
    assert ancestors(G(3, "1->2", "2--3"), {3}) == {1, 2, 3}
    assert ancestors(G(3, "1->2"), set()) == set()
    assert descendants(G(3), {1}) == {1}


@pytest.mark.parametrize("g", ALL_CGS_4[::7], ids=str)
def test_ancestry_matches_route_enumeration(g):
    for v in g.vertices:
        assert descendants(g, {v}) == descending_reach(g, v)
        for w in g.vertices:
            assert (v in ancestors(g, {w})) == (w in descendants(g, {v}))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ALL_CGS_4), st.data())
def test_ancestors_monotone_and_idempotent(g, data):
    J = data.draw(st.sets(st.sampled_from(list(g.vertices))))
    I = data.draw(st.sets(st.sampled_from(sorted(J)))) if J else set()
    assert ancestors(g, I) <= ancestors(g, J)
    assert ancestors(g, ancestors(g, J)) == ancestors(g, J)
    assert descendants(g, descendants(g, J)) == descendants(g, J)


# -- components --------------------------------------------------------------

def test_components_examples():
    assert components(G(4, "1--2", "2->3", "3--4")).components == ((1, 2), (3, 4))
    assert components(G(3)).components == ((1,), (2,), (3,))
    assert components(G(3, "1--2", "2--3")).components == ((1, 2, 3),)


def test_components_tie_break_by_smallest_vertex():
    assert components(G(3, "3->1")).components == ((2,), (3,), (1,))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_components_partition_and_well_order_exhaustive(n):
    for g in enumerate_cgs(n):
        comps = components(g)
        flat = [v for c in comps for v in c]
        assert sorted(flat) == list(g.vertices)
        for a, b in g.undirected:
            assert comps.component_index[a] == comps.component_index[b]
        for a, b in g.directed:
            assert comps.component_index[a] < comps.component_index[b]
        # maximality: members of a component are undirected-connected
        for c in comps:
            assert set(c) <= descending_reach(underlying_only(g), c[0])


def underlying_only(g):
    return ChainGraph(g.n, g.undirected)


# -- moral graph, induced subgraph -------------------------------------------

def test_moral_graph_examples():
    assert moral_graph(G(3, "1->2", "3->2")).undirected == ((1, 2), (1, 3), (2, 3))
    ug = G(3, "1--2", "2--3")
    assert moral_graph(ug) == ug
    assert set(moral_graph(G(4, "1->2", "2--3", "4->3")).undirected) == {
        (1, 2), (2, 3), (3, 4), (1, 4)}


def test_moral_graph_of_ug_is_itself_exhaustive():
    for g in ALL_CGS_4:
        if g.is_ug():
            assert moral_graph(g) == underlying_ug(g)


def test_induced_subgraph_and_underlying():
    g = G(3, "1->2", "2--3")
    sub = induced_subgraph(g, {1, 2})
    assert sub.directed == ((1, 2),) and sub.undirected == ()
    assert induced_subgraph(g, g.vertices) == g
    assert underlying_ug(G(3, "1->2", "3->2")) == G(3, "1--2", "2--3")
    with pytest.raises(ValueError):
        induced_subgraph(g, {4})


# -- complexes -----------------------------------------------------------------

def test_complexes_examples():
    assert complexes(G(3, "1->2", "3->2")) == [Complex(1, (2,), 3)]
    assert complexes(G(3, "1--2", "2--3", "1--3")) == []
    assert complexes(G(4, "1->2", "2--3", "4->3")) == [Complex(1, (2, 3), 4)]


def test_complex_reversal_reported_once():
    cs = complexes(G(4, "4->2", "2--3", "1->3"))
    assert cs == [Complex(1, (3, 2), 4)]


def test_shielded_collider_is_not_complex():
    assert complexes(G(3, "1->2", "3->2", "1->3")) == []


@pytest.mark.slow
def test_complexes_match_brute_force_exhaustive():
    for g in ALL_CGS_4:
        got = complexes(g)
        assert got == brute_complexes(g), str(g)
        assert all(is_complex(g, c) for c in got)


def test_complexes_five_vertex_region():
    g = G(5, "1->2", "2--3", "3--4", "5->4")
    assert complexes(g) == brute_complexes(g) == [Complex(1, (2, 3, 4), 5)]
