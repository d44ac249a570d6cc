"""Seeded verification suites over random kernels, patterns and graphs.

Trial ``i`` of a run with master seed ``s`` draws everything from
``numpy.random.default_rng([s, i])``, so a row depends only on
``(suite, s, i, mode)`` and never on how trials are scheduled.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import numpy as np

from .constructions import gnp
from .kernels import EXACT, FLOAT, _check_mode, random_signed_kernel
from .parallel import ordered_map
from .patterns import PatternGraph
from .quasirandomness import (FLOAT_TOL, InequalityReport, centered_stats, expansion,
                              k2a_graph_bound, verify_bipartite_global,
                              verify_general_global, verify_kab_monotone, verify_local)

ROW_FIELDS = ("suite", "seed", "instance", "lhs", "rhs", "slack", "holds")

PATTERN_MAX_VERTICES = 6
EXPANSION_MAX_VERTICES = 5
GRAPH_MAX_N = 60
EXPANSION_MAX_N = 10
EXPANSION_PROBABILITIES = (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3))


def describe(h: PatternGraph) -> str:
    return f"{h.vertex_count}v:" + " ".join(f"{u}-{v}" for u, v in h.edge_list)


def _random_pattern(rng: np.random.Generator, lo: int, hi: int,
                    accept: Callable[[PatternGraph], bool]) -> PatternGraph:
    while True:
        v = int(rng.integers(lo, hi + 1))
        pairs = list(itertools.combinations(range(v), 2))
        keep = rng.random(len(pairs)) < 0.5
        h = PatternGraph.from_edges(v, [e for e, k in zip(pairs, keep) if k])
        if accept(h):
            return h


def _no_isolated(h: PatternGraph) -> bool:
    return h.edge_count > 0 and not h.isolated_vertices()


def _kernel(rng, mode):
    w = random_signed_kernel(rng, (2, 8), mode)
    return w, f"atoms={w.atom_count}"


def _trial_kab(rng, mode):
    w, tag = _kernel(rng, mode)
    b = int(rng.integers(1, 5))
    c = 2 * int(rng.integers(1, 3))
    a = int(rng.integers(c, 7))
    return verify_kab_monotone(a, b, c, w), f"{tag};a={a};b={b};c={c}"


def _trial_local(rng, mode):
    w, tag = _kernel(rng, mode)
    h = _random_pattern(rng, 2, PATTERN_MAX_VERTICES, lambda g: g.edge_count > 0)
    degs = sorted({d for d in h.degrees() if d > 0})
    d = degs[int(rng.integers(len(degs)))]
    return verify_local(h, d, w), f"{tag};H={describe(h)};d={d}"


def _random_bipartite(rng) -> Tuple[PatternGraph, List[int]]:
    while True:
        na = int(rng.integers(2, 4))
        nb = int(rng.integers(1, PATTERN_MAX_VERTICES - na + 1))
        pairs = [(a, na + b) for a in range(na) for b in range(nb)]
        keep = rng.random(len(pairs)) < 0.6
        h = PatternGraph.from_edges(na + nb, [e for e, k in zip(pairs, keep) if k])
        side = list(range(na, na + nb))
        if all(h.degree(v) >= 2 for v in side):
            return h, side


def _trial_bipartite(rng, mode):
    w, tag = _kernel(rng, mode)
    h, side = _random_bipartite(rng)
    b = ",".join(map(str, side))
    return verify_bipartite_global(h, side, w), f"{tag};H={describe(h)};B={b}"


def _trial_general(rng, mode):
    w, tag = _kernel(rng, mode)
    h = _random_pattern(rng, 2, PATTERN_MAX_VERTICES, _no_isolated)
    return verify_general_global(h, w), f"{tag};H={describe(h)}"


def _trial_k2a(rng, mode):
    n = int(rng.integers(2, GRAPH_MAX_N + 1))
    q = Fraction(int(rng.integers(1, 20)), 20)
    edge_p = Fraction(int(rng.integers(0, 21)), 20)
    g = gnp(n, edge_p, rng)
    a = int(rng.integers(1, 5))
    p = q if mode == EXACT else float(q)
    rep = k2a_graph_bound(g, p, a, mode, centered_stats(g, p, mode))
    return rep, f"gnp(n={n},p={edge_p});p={q};a={a}"


def _trial_expansion(rng, mode):
    n = int(rng.integers(2, EXPANSION_MAX_N + 1))
    edge_p = Fraction(int(rng.integers(1, 10)), 10)
    g = gnp(n, edge_p, rng)
    q = EXPANSION_PROBABILITIES[int(rng.integers(len(EXPANSION_PROBABILITIES)))]
    h = _random_pattern(rng, 2, EXPANSION_MAX_VERTICES, _no_isolated)
    res = expansion(h, g, q if mode == EXACT else float(q), mode)
    gap = abs(res.residual)
    if mode == EXACT:
        rep = InequalityReport(gap, Fraction(0), gap == 0, -gap, [], mode, "expansion")
    else:
        rep = InequalityReport(gap, 0.0, bool(gap <= FLOAT_TOL), -gap, [], mode, "expansion")
    return rep, f"gnp(n={n},p={edge_p});p={q};H={describe(h)}"


@dataclass(frozen=True)
class Suite:
    name: str
    trial: Callable
    default_mode: str
    default_trials: int


SUITES: Dict[str, Suite] = {s.name: s for s in (
    Suite("kab", _trial_kab, FLOAT, 1000),
    Suite("local", _trial_local, FLOAT, 1000),
    Suite("bipartite-global", _trial_bipartite, FLOAT, 1000),
    Suite("general-global", _trial_general, FLOAT, 1000),
    Suite("k2a", _trial_k2a, EXACT, 1000),
    Suite("expansion", _trial_expansion, EXACT, 50),
)}

ALL = "all"


def suite_names() -> Tuple[str, ...]:
    return tuple(SUITES) + (ALL,)


def run_trial(task: Tuple[str, int, int, str]) -> Dict[str, object]:
    name, seed, index, mode = task
    rng = np.random.default_rng([seed, index])
    rep, instance = SUITES[name].trial(rng, mode)
    return {"suite": name, "seed": seed, "instance": f"#{index};{instance}",
            "lhs": _number(rep.lhs), "rhs": _number(rep.rhs), "slack": _number(rep.slack),
            "holds": bool(rep.holds)}


def _number(x):
    return x if isinstance(x, Fraction) else float(x)


def plan(name: str, seed: int, trials: Optional[int] = None,
         mode: Optional[str] = None) -> List[Tuple[str, int, int, str]]:
    """Trial tasks for one suite, or for every suite when ``name == "all"``."""
    if name == ALL:
        return [t for s in SUITES for t in plan(s, seed, trials, mode)]
    if name not in SUITES:
        raise KeyError(name)
    suite = SUITES[name]
    count = suite.default_trials if trials is None else trials
    m = _check_mode(mode) if mode else suite.default_mode
    return [(name, seed, i, m) for i in range(count)]


def run_suite(name: str, seed: int = 0, trials: Optional[int] = None,
              mode: Optional[str] = None, jobs: int = 1) -> Iterator[Dict[str, object]]:
    return ordered_map(run_trial, plan(name, seed, trials, mode), jobs)
