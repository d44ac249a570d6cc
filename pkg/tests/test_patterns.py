import itertools
import json
import math
import random
from pathlib import Path

import networkx as nx
import pytest

from quasiramsey.errors import SizeError
from quasiramsey.patterns import (EMPTY_CLASS, PatternGraph, builtin_pattern, canonical_form,
                                  census, complete, complete_bipartite, connected_spanning_classes,
                                  cycle, empty, is_isomorphic, parse_edge_list, parse_pattern,
                                  path, pattern_stats)

FROZEN = json.loads((Path(__file__).with_name("data") / "oracles.json").read_text())


def test_triangle_relabel_same_code():
    a = PatternGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    b = a.relabel({0: 2, 1: 0, 2: 1})
    assert canonical_form(a) == canonical_form(b)


def test_path_and_star_same_code():
    p = PatternGraph.from_edges(3, [(0, 1), (1, 2)])
    star = PatternGraph.from_edges(3, [(0, 1), (0, 2)])
    assert canonical_form(p) == canonical_form(star) == canonical_form(complete_bipartite(1, 2))


def test_claw_differs_from_path3():
    assert canonical_form(complete_bipartite(1, 3)) != canonical_form(path(3))


def test_canonical_cap():
    with pytest.raises(SizeError):
        canonical_form(complete(11))


@pytest.mark.parametrize("h, expected", [
    (complete(4), (6, 4, 12, 3)),
    (complete(2), (1, 0, 0, 0)),
])
def test_pattern_stats_trivial(h, expected):
    st = pattern_stats(h)
    assert (st.edge_count, st.triangle_count, st.path2_count, st.disjoint_edge_pairs) == expected


def test_pattern_stats_c5_matches_oracle():
    st = pattern_stats(cycle(5))
    ref = FROZEN["c5_stats"]
    assert (st.edge_count, st.triangle_count, st.path2_count, st.disjoint_edge_pairs) == (
        ref["e"], ref["triangles"], ref["paths2"], ref["disjoint"])


def test_census_k4_entries():
    c = census(complete(4))
    assert c["K3"] == 4
    assert c[complete(2).disjoint_union(complete(2))] == 3


def test_census_k3_matches_oracle():
    c = census(complete(3))
    got = sorted([j.vertex_count, j.edge_count, n] for j, n in c.items())
    assert got == FROZEN["census_k3"]
    assert c[EMPTY_CLASS] == 1


@pytest.mark.parametrize("h", [complete(4), cycle(5), complete_bipartite(2, 3), path(4),
                               complete(3).disjoint_union(path(2))])
def test_census_invariants(h):
    c = census(h)
    assert c.total() == 2 ** h.edge_count
    st = pattern_stats(h)
    assert c["K2"] == st.edge_count
    assert c["K3"] == st.triangle_count
    assert c["K1,2"] == st.path2_count
    assert c[complete(2).disjoint_union(complete(2))] == st.disjoint_edge_pairs
    for j, _ in c.items():
        assert not j.representative.isolated_vertices()
    r = h.vertex_count
    for s in range(r + 1):
        assert sum(n for j, n in c.items() if j.vertex_count == s) <= (
            math.comb(r, s) * 2 ** (s * (s - 1) // 2))


def test_stats_count_ceilings():
    for r in range(1, 7):
        pairs = list(itertools.combinations(range(r), 2))
        rnd = random.Random(r)
        for _ in range(30):
            h = PatternGraph.from_edges(r, [e for e in pairs if rnd.random() < 0.5])
            st = pattern_stats(h)
            assert st.path2_count <= 3 * math.comb(r, 3)
            assert st.disjoint_edge_pairs <= 3 * math.comb(r, 4)


def test_canonical_form_against_networkx():
    rnd = random.Random(11)
    graphs = []
    for _ in range(150):
        v = rnd.randint(1, 6)
        pairs = list(itertools.combinations(range(v), 2))
        graphs.append(PatternGraph.from_edges(v, [e for e in pairs if rnd.random() < 0.5]))
    for a, b in zip(graphs, graphs[1:] + graphs[:1]):
        ga, gb = nx.Graph(), nx.Graph()
        ga.add_nodes_from(range(a.vertex_count))
        ga.add_edges_from(a.edge_list)
        gb.add_nodes_from(range(b.vertex_count))
        gb.add_edges_from(b.edge_list)
        assert (canonical_form(a) == canonical_form(b)) == nx.is_isomorphic(ga, gb)
        perm = list(range(a.vertex_count))
        rnd.shuffle(perm)
        assert is_isomorphic(a, a.relabel(dict(enumerate(perm))))


def test_connected_spanning_classes_k5():
    classes = connected_spanning_classes(5)
    assert len(classes) == 21
    assert all(j.representative.is_connected() for j in classes)


def test_parse_edge_list_and_builtins():
    h = parse_edge_list("3\n0 1\n1 2\n")
    assert h == path(2)
    assert parse_pattern("C5") == cycle(5)
    assert builtin_pattern("K2,3") == complete_bipartite(2, 3)
    assert builtin_pattern("K_{2,3}") == complete_bipartite(2, 3)
    assert builtin_pattern("E4") == empty(4)
    assert builtin_pattern("P3") == path(3)
    assert parse_edge_list(cycle(6).to_text()) == cycle(6)


@pytest.mark.parametrize("bad", ["3\n0 0\n", "2\n0 5\n", "x\n0 1\n"])
def test_parse_edge_list_rejects(bad):
    with pytest.raises(ValueError):
        parse_edge_list(bad)


def test_pattern_rejects_loops():
    with pytest.raises(ValueError):
        PatternGraph.from_edges(2, [(1, 1)])
