import itertools
import math
from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from quasiramsey.bounds import BoundConfig, LogReal, goodman, phi, rho
from quasiramsey.graphs import SimpleGraph, from_graph6
from quasiramsey.kernels import EXACT, density, kab_density, random_signed_kernel
from quasiramsey.patterns import PatternGraph, canonical_form, census
from quasiramsey.quasirandomness import expansion, verify_kab_monotone

SETTINGS = settings(max_examples=60, deadline=None)


@st.composite
def edge_sets(draw, lo=1, hi=6):
    v = draw(st.integers(lo, hi))
    pairs = list(itertools.combinations(range(v), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return v, [e for e, keep in zip(pairs, mask) if keep]


@st.composite
def patterns(draw, lo=1, hi=5):
    v, edges = draw(edge_sets(lo, hi))
    return PatternGraph.from_edges(v, edges)


@st.composite
def graphs(draw, lo=1, hi=12):
    v, edges = draw(edge_sets(lo, hi))
    return SimpleGraph.from_edges(v, edges)


def kernel_for(seed, atoms=(2, 4)):
    return random_signed_kernel(np.random.default_rng(seed), atoms=atoms, mode=EXACT, grid=10)


@SETTINGS
@given(patterns(hi=6), st.randoms(use_true_random=False))
def test_canonical_form_relabel_invariant(h, rnd):
    perm = list(range(h.vertex_count))
    rnd.shuffle(perm)
    assert canonical_form(h.relabel(dict(enumerate(perm)))) == canonical_form(h)


@SETTINGS
@given(patterns(hi=5))
def test_census_total(h):
    c = census(h)
    assert c.total() == 2 ** h.edge_count
    assert sum(n * j.edge_count for j, n in c.items()) == h.edge_count * 2 ** max(h.edge_count - 1, 0)


@SETTINGS
@given(patterns(hi=4), patterns(hi=3), st.integers(0, 10 ** 6))
def test_density_multiplicative_and_bounded(a, b, seed):
    w = kernel_for(seed)
    union = density(a.disjoint_union(b), w)
    assert union == density(a, w) * density(b, w)
    assert abs(union) <= 1


@SETTINGS
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 10 ** 6))
def test_kab_symmetry(a, b, seed):
    w = kernel_for(seed)
    assert kab_density(a, b, w) == kab_density(b, a, w)


@SETTINGS
@given(st.integers(1, 3), st.sampled_from([2, 4]), st.integers(0, 10 ** 6))
def test_kab_monotone(b, c, seed):
    w = kernel_for(seed)
    assert verify_kab_monotone(c + 1, b, c, w).holds


@settings(max_examples=25, deadline=None)
@given(patterns(lo=2, hi=4), graphs(lo=1, hi=7), st.sampled_from(
    [Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)]))
def test_expansion_identity(h, g, p):
    res = expansion(h, g, p)
    assert res.residual == 0 and res.direct == res.total


@SETTINGS
@given(graphs(lo=3, hi=12))
def test_goodman_identity(g):
    a, b = goodman(g)
    assert a == b


@SETTINGS
@given(graphs(lo=1, hi=40))
def test_graph6_roundtrip(g):
    assert from_graph6(g.to_graph6()) == g


@SETTINGS
@given(st.integers(5, 14), st.floats(0.01, 0.49), st.integers(1, 10 ** 9), st.integers(1, 10 ** 9))
def test_phi_symmetric(r, eps, k, l):
    cfg = BoundConfig(r, eps)
    assert phi(cfg, k, l) == phi(cfg, l, k)
    assert 0 <= rho(cfg, l / k) <= cfg.amplitude + 1e-12


@SETTINGS
@given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
def test_logreal_matches_float(x, y):
    s = LogReal.of(x) + LogReal.of(y)
    assert math.isclose(float(s), x + y, rel_tol=1e-9, abs_tol=1e-6)
    if y != 0:
        assert math.isclose(float(LogReal.of(x) / LogReal.of(y)), x / y, rel_tol=1e-12)
