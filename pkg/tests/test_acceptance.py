"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion.

The lines are printed as the tests run and repeated in the terminal summary
(see ``conftest.py``).  ``python tests/test_acceptance.py`` runs them all
without pytest.
"""
from __future__ import annotations

import math
import sys
import time
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from quasiramsey.bounds import (BoundConfig, best_bound, derivative_agreement, goodman,
                                ramsey_upper_bound, rho_properties_check, smoothness_certificate)
from quasiramsey.constructions import (block_graphon, certify_witness, circulant,
                                       connected_density, deviation_lower_bound, gnp, paley,
                                       ramsey_search, w_random_graph)
from quasiramsey.graphs import SimpleGraph
from quasiramsey.kernels import FLOAT, center, density
from quasiramsey.patterns import (EMPTY_CLASS, census, complete, complete_bipartite,
                                  connected_spanning_classes, cycle, path)
from quasiramsey.quasirandomness import centered_stats, effective_distance_report, expansion
from quasiramsey.suites import run_suite

RESULTS: list = []


def record(number, title, ok, detail, seconds):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({detail}; {seconds:.1f}s)"
    RESULTS.append(line)
    print(line)
    return ok


def timed(fn):
    start = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - start


# -- 1 -------------------------------------------------------------------------------


def criterion_1():
    patterns = [j.representative for j, _ in census(complete(5)).items() if j != EMPTY_CLASS]
    rng = np.random.default_rng(1)
    graphs = []
    for seed in range(50):
        n = int(rng.integers(1, 11))
        graphs.append(gnp(n, float(rng.uniform(0.1, 0.9)), seed))
    checked = bad = 0
    for g in graphs:
        for p in (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)):
            for h in patterns:
                res = expansion(h, g, p)
                checked += 1
                bad += res.residual != 0 or res.direct != res.total
    return bad == 0, f"{len(patterns)} patterns x 50 graphs x 3 p = {checked} identities, {bad} mismatches"


# -- 2 -------------------------------------------------------------------------------


def criterion_2():
    names = ["kab", "local", "bipartite-global", "general-global", "k2a"]
    total = violations = 0
    worst = math.inf
    for name in names:
        for row in run_suite(name, seed=0, trials=1000):
            total += 1
            violations += not row["holds"]
            worst = min(worst, float(row["slack"]))
    return violations == 0, f"{total} trials over {len(names)} suites, {violations} violations, min slack {worst:.3g}"


# -- 3 -------------------------------------------------------------------------------


def criterion_3():
    classes = [j.representative for v in range(1, 6) for j in connected_spanning_classes(v)]
    bad = 0
    for m in range(1, 9):
        f = center(block_graphon(m).kernel, Fraction(1, 2))
        for j in classes:
            closed = Fraction(1, 2 ** j.edge_count) * Fraction(1, m ** (j.vertex_count - 1))
            bad += density(j, f) != closed or connected_density(j, m, check=False) != closed
    dev_bad = 0
    for r in (2, 3, 4):
        for m in range(1, 9):
            try:
                dev_bad += not deviation_lower_bound(r, m).holds
            except AssertionError:
                dev_bad += 1
    return bad == 0 and dev_bad == 0, (f"{len(classes)} connected patterns x 8 blocks, {bad} mismatches; "
                                       f"deviation 24 cases, {dev_bad} below floor")


# -- 4 -------------------------------------------------------------------------------


def criterion_4():
    parts, ok = [], True
    for m in (2, 4, 8):
        n = 500 * m * m
        lo, hi = Fraction(1, 8 * m), Fraction(2, m)
        inside = 0
        for seed in range(20):
            g = w_random_graph(block_graphon(m, FLOAT).kernel, n, seed)
            st = centered_stats(g, Fraction(1, 2))
            inside += lo <= st.mu <= hi and lo <= st.nu <= hi
        ok &= inside >= 18
        parts.append(f"m={m}: {inside}/20")
    return ok, ", ".join(parts)


# -- 5 -------------------------------------------------------------------------------


def criterion_5():
    rng = np.random.default_rng(5)
    grid_bad = cert_bad = fd_bad = certs = 0
    worst_fd = 0.0
    for r in range(5, 13):
        for eps in (0.1, 0.25, 0.4):
            cfg = BoundConfig(r, eps)
            grid_bad += sum(not rep.holds for rep in rho_properties_check(cfg, 10_000))
            agree = derivative_agreement(cfg)
            worst_fd = max(worst_fd, agree.max_error_first, agree.max_error_second)
            fd_bad += not agree.within(1e-6)
            need = math.ceil(200 * r ** 4 / eps ** 2)
            for _ in range(100):
                k = int(rng.integers(need, 50 * need))
                l = int(rng.integers(need, 50 * need))
                cert = smoothness_certificate(cfg, k, l)
                certs += 1
                cert_bad += not cert.valid or not all(ok for _, ok in cert.preconditions)
    ok = grid_bad == cert_bad == fd_bad == 0
    return ok, (f"24 configs: grid failures {grid_bad}, {certs} certificates with {cert_bad} failures, "
                f"max finite-difference error {worst_fd:.2g}")


# -- 6 -------------------------------------------------------------------------------


def criterion_6():
    cfg = BoundConfig(8, 0.25, 1.0)
    ks = sorted({int(round(10 ** (3 + i / 4))) for i in range(17)})
    not_improving = []
    worst_rel = 0.0
    best_bad = []
    for k in ks:
        res = ramsey_upper_bound(cfg, k, k)
        if k >= 2 ** (cfg.C_eps * cfg.r) and not res.ratio_log.log < 0:
            not_improving.append((k, float(res.ratio_log.log)))
        with mpmath.workdps(50):
            closed = (64 * mpmath.log(2) + mpmath.loggamma(2 * k + 1) - 2 * mpmath.loggamma(k + 1)
                      - mpmath.log(2 * k))
            rel = abs(mpmath.expm1(res.bound_log.log - closed))
        worst_rel = max(worst_rel, float(rel))
        if 2 * k <= 2000 and res.exact_value != (2 ** 64 * math.comb(2 * k, k)) // (2 * k):
            worst_rel = math.inf
        bb = best_bound(k, k, 0.49, 1.0)
        if not bb.ratio_log.log <= -bb.c_derived * math.log(k) ** 2:
            best_bad.append(k)
    ok = not not_improving and worst_rel <= 1e-9 and not best_bad
    detail = (f"{len(ks)} grid points; bound below baseline at {len(ks) - len(not_improving)}/{len(ks)}"
              + (f" (log ratio {not_improving[0][1]:.3g} at k={not_improving[0][0]} down to "
                 f"{not_improving[-1][1]:.3g} at k={not_improving[-1][0]})" if not_improving else "")
              + f"; closed form max rel error {worst_rel:.2g}; best_bound failures {len(best_bad)}")
    return ok, detail


# -- 7 -------------------------------------------------------------------------------


def criterion_7():
    import networkx as nx

    value, witness = ramsey_search(3, 3, 6)
    c5_ok = value == 6 and nx.is_isomorphic(witness.graph.to_networkx(), nx.cycle_graph(5))
    certify_witness(witness.graph, 2, 2)
    p17 = certify_witness(paley(17), 3, 3)
    paley_ok = p17.graph.n == 17
    rng = np.random.default_rng(7)
    good = 0
    for seed in range(100):
        n = int(rng.integers(3, 13))
        a, b = goodman(gnp(n, float(rng.uniform(0.2, 0.8)), seed))
        good += a == b
    ok = c5_ok and paley_ok and good == 100
    return ok, f"R(3,3)={value} with C5 witness {c5_ok}; Paley(17) certified {paley_ok}; Goodman {good}/100"


def criterion_7_stretch():
    value, _ = ramsey_search(3, 4, 9)
    w = certify_witness(circulant(8, [1, 4]), 2, 3)
    return value == 9 and w.graph.n == 8, f"R(3,4)={value}; circulant C8(1,4) certified as a witness"


# -- 8 -------------------------------------------------------------------------------


def criterion_8():
    graphs = [("C5", SimpleGraph.from_pattern(cycle(5)))]
    graphs += [(f"paley({q})", paley(q)) for q in (5, 13, 17, 29, 37, 41)]
    graphs += [(f"gnp({n},{s})", gnp(n, 0.5, s)) for n, s in ((30, 1), (60, 2), (80, 3))]
    graphs += [(f"wrand(m={m})", w_random_graph(block_graphon(m).kernel, 80, m)) for m in (2, 3)]
    patterns = [complete(3), complete(4), cycle(4), path(3), complete_bipartite(2, 3), cycle(5)]
    count = unflagged = side_bad = 0
    for _, g in graphs:
        p = Fraction(1, 2)
        st = centered_stats(g, p)
        nu = st.nu if st.nu > 0 else Fraction(1, g.n)
        for h in patterns:
            rep = effective_distance_report(h, g, p, nu, stats=st)
            count += 1
            unflagged += rep.theorem_applies
            side_bad += not all(ok for _, ok in rep.side_checks)
    ok = unflagged == 0 and side_bad == 0
    return ok, f"{count} reports, {unflagged} without an unmet precondition, {side_bad} side-check failures"


CRITERIA = [
    (1, "expansion identity", criterion_1),
    (2, "unconditional inequality suites", criterion_2),
    (3, "block graphon formula and deviation floor", criterion_3),
    (4, "mu and nu scaling on block graphons", criterion_4),
    (5, "rho/phi calculus and smoothness", criterion_5),
    (6, "bound reproduction", criterion_6),
    (7, "Ramsey oracle, Paley witness, Goodman", criterion_7),
    ("7s", "stretch R(3,4) = 9", criterion_7_stretch),
    (8, "effective-distance applicability", criterion_8),
]


@pytest.mark.parametrize("number, title, fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, fn):
    ok, detail, seconds = timed(fn)
    assert record(number, title, ok, detail, seconds), detail


if __name__ == "__main__":
    failures = 0
    for number, title, fn in CRITERIA:
        ok, detail, seconds = timed(fn)
        failures += not record(number, title, ok, detail, seconds)
    sys.exit(1 if failures else 0)
