import json
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

import oracles as o
from quasiramsey.constructions import block_graphon, gnp, paley
from quasiramsey.errors import BudgetError, DomainError, UsageError
from quasiramsey.graphs import SimpleGraph, from_graph6, parse_graph_text
from quasiramsey.kernels import (EXACT, FLOAT, FiniteSpace, StepKernel, center, codegree,
                                 density, density_enumerate, embed_graph, kab_density,
                                 kab_pattern, kernel_from_json, kernel_to_json,
                                 random_signed_kernel, to_fraction)
from quasiramsey.patterns import (PatternGraph, complete, complete_bipartite, cycle, path)

FROZEN = json.loads((Path(__file__).with_name("data") / "oracles.json").read_text())


def c5():
    return SimpleGraph.from_pattern(cycle(5))


# -- graphs -------------------------------------------------------------------


def test_graph_roundtrips():
    g = gnp(70, 0.3, 5)
    assert parse_graph_text(g.to_edge_list()) == g
    assert from_graph6(g.to_graph6()) == g
    assert from_graph6(">>graph6<<" + g.to_graph6()) == g
    assert SimpleGraph.from_adjacency(g.adjacency_matrix()) == g
    assert SimpleGraph.from_networkx(g.to_networkx()) == g


def test_graph_queries():
    g = c5()
    assert g.degrees().tolist() == [2] * 5
    assert g.edge_count() == 5
    assert g.has_edge(0, 1) and not g.has_edge(0, 2)
    comp = g.complement()
    assert comp.edge_count() == 5 and comp.has_edge(0, 2)


def test_graph_validation():
    with pytest.raises(ValueError):
        SimpleGraph.from_adjacency(np.array([[1, 0], [0, 0]]))
    with pytest.raises(ValueError):
        SimpleGraph.from_adjacency(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        SimpleGraph.from_edges(3, [(0, 3)])


# -- kernels ------------------------------------------------------------------


def test_space_validation():
    with pytest.raises(ValueError):
        FiniteSpace([Fraction(1, 2), Fraction(1, 3)], EXACT)
    with pytest.raises(ValueError):
        StepKernel.build([Fraction(1, 2)] * 2, [[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        StepKernel.build([Fraction(1)], [[2]])


def test_to_fraction():
    assert to_fraction("3/7") == Fraction(3, 7)
    assert to_fraction(2) == 2
    assert to_fraction(0.5) == Fraction(1, 2)


def test_density_k2_triangle_graph():
    assert density(complete(2), embed_graph(SimpleGraph.from_pattern(complete(3)))) == Fraction(2, 3)


def test_density_k3_c5_is_zero():
    assert density(complete(3), embed_graph(c5())) == 0


def test_centered_block_k2():
    f = center(block_graphon(2).kernel, Fraction(1, 2))
    assert density(complete(2), f) == Fraction(1, 4)


def test_codegree_c5_matches_oracle():
    assert codegree(embed_graph(c5()), (0, 2)) == to_fraction(FROZEN["codegree_c5_0_2"])


def test_kab_c5_matches_oracle():
    w = embed_graph(c5())
    assert kab_density(2, 3, w) == to_fraction(FROZEN["kab23_c5"]) == density(kab_pattern(2, 3), w)


def test_kab_11_is_mean():
    rng = np.random.default_rng(4)
    w = random_signed_kernel(rng, mode=EXACT)
    mean = sum(w.weights[i] * w.weights[j] * w.values[i, j]
               for i in range(w.atom_count) for j in range(w.atom_count))
    assert kab_density(1, 1, w) == mean


def test_centered_c5_triangle_matches_oracle():
    f = center(embed_graph(c5()), Fraction(2, 5))
    assert density(complete(3), f) == to_fraction(FROZEN["t_k3_centered_c5"])


@pytest.mark.parametrize("seed", range(6))
def test_density_matches_oracle_random(seed):
    rng = np.random.default_rng(seed)
    w = random_signed_kernel(rng, atoms=(2, 4), mode=EXACT, grid=12)
    h = [complete(3), cycle(4), path(3), complete_bipartite(1, 3), complete(4)][seed % 5]
    ref = o.hom_density(h.vertex_count, h.edge_list,
                        ([w.weights[i] for i in range(w.atom_count)],
                         [[w.values[i, j] for j in range(w.atom_count)]
                          for i in range(w.atom_count)]))
    assert density(h, w) == ref == density_enumerate(h, w)


def test_density_invariances():
    rng = np.random.default_rng(9)
    w = random_signed_kernel(rng, atoms=(5, 5), mode=EXACT, grid=20)
    h = PatternGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (1, 3)])
    base = density(h, w)
    assert density(h.relabel({0: 3, 1: 2, 2: 0, 3: 1}), w) == base
    assert density(h, w.permuted([4, 2, 0, 1, 3])) == base
    k2 = complete(2)
    assert density(h.disjoint_union(k2), w) == base * density(k2, w)
    assert abs(base) <= 1


def test_exact_and_float_agree():
    rng = np.random.default_rng(21)
    w = random_signed_kernel(rng, mode=EXACT)
    for h in (cycle(5), complete(4), complete_bipartite(2, 3)):
        ex = density(h, w)
        fl = density(h, w.to_float())
        assert abs(float(ex) - fl) <= 1e-9 * max(1.0, abs(float(ex)))


def test_kab_symmetric_and_nonnegative_even():
    rng = np.random.default_rng(3)
    for _ in range(20):
        w = random_signed_kernel(rng, mode=EXACT, grid=50)
        assert kab_density(2, 3, w) == kab_density(3, 2, w)
        assert kab_density(2, 2, w) >= 0
        assert kab_density(1, 2, w) == density(complete_bipartite(1, 2), w)


def test_budget_error():
    w = random_signed_kernel(np.random.default_rng(0), atoms=(8, 8))
    with pytest.raises(BudgetError):
        density(complete(7), w, budget=1000)
    with pytest.raises(BudgetError):
        kab_density(6, 9, w, budget=1000)


def test_center_errors():
    with pytest.raises(DomainError):
        center(embed_graph(c5()), 0)
    signed = StepKernel.build([Fraction(1)], [[Fraction(-1, 2)]])
    with pytest.raises(UsageError):
        center(signed, Fraction(1, 2))


def test_kernel_json_roundtrip(tmp_path):
    rng = np.random.default_rng(1)
    for mode in (EXACT, FLOAT):
        w = random_signed_kernel(rng, mode=mode)
        back = kernel_from_json(kernel_to_json(w))
        assert back.mode == mode
        assert density(cycle(4), back) == density(cycle(4), w)
    text = kernel_to_json(block_graphon(2).kernel)
    assert '"1/2"' in text


def test_paley_kernel_density():
    w = embed_graph(paley(17))
    assert density(complete(2), w) == Fraction(8, 17)
