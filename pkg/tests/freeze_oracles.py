"""Regenerate ``tests/data/oracles.json`` from the brute-force oracles.

Run ``python tests/freeze_oracles.py`` from the repository root.  The output
is committed; tests compare the package against it.
"""
from __future__ import annotations

import json
import math
import random
from fractions import Fraction
from pathlib import Path

import networkx as nx

import oracles as o

OUT = Path(__file__).with_name("data") / "oracles.json"


def q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def block_kernel(m):
    w = [Fraction(1, m)] * m
    vals = [[Fraction(1) if i == j else Fraction(1, 2) for j in range(m)] for i in range(m)]
    return w, vals


def connected_spanning(r):
    out = []
    for v, edges, count in o.census(r, o.complete_edges(r)):
        g = nx.Graph(edges)
        if v == r and nx.is_connected(g):
            out.append((edges, count))
    return out


def main():
    data = {}

    c5 = o.cycle_edges(5)
    deg = [2] * 5
    gamma = sum(math.comb(d, 2) for d in deg)
    data["c5_stats"] = {"e": 5, "triangles": 0, "paths2": gamma,
                        "disjoint": math.comb(5, 2) - gamma}

    data["census_k3"] = sorted([v, len(es), c] for v, es, c in o.census(3, o.complete_edges(3)))

    wc5 = o.graph_kernel(5, c5)
    data["codegree_c5_0_2"] = q(sum(wc5[0][z] * wc5[1][0][z] * wc5[1][z][2] for z in range(5)))
    k23 = [(a, 2 + b) for a in range(2) for b in range(3)]
    data["kab23_c5"] = q(o.hom_density(5, k23, wc5))

    f = o.centered(wc5, Fraction(2, 5))
    data["t_k3_centered_c5"] = q(o.hom_density(3, o.complete_edges(3), f))
    data["t_k22_centered_c5"] = q(o.hom_density(4, [(0, 2), (0, 3), (1, 2), (1, 3)], f))
    mu, nu = o.mu_nu(5, c5, Fraction(2, 5))
    data["c5_mu_nu"] = [q(mu), q(nu)]

    p17 = o.paley_edges(17)
    mu, nu = o.mu_nu(17, p17, Fraction(1, 2))
    data["paley17_mu_nu"] = [q(mu), q(nu)]
    data["paley17_clique_indep"] = [o.clique_number(17, p17),
                                    o.clique_number(17, o.complement_edges(17, p17))]

    # first seeded 8-vertex graph that contains a K4, so the identity is not 0 = 0
    seed = 2024
    while True:
        rnd = random.Random(seed)
        g8 = [e for e in o.complete_edges(8) if rnd.random() < 0.6]
        if o.clique_tuple_density(8, g8, 4):
            break
        seed += 1
    data["random8_edges"] = g8
    data["random8_t_k4"] = q(o.clique_tuple_density(8, g8, 4))

    data["block_k3_m3"] = q(o.hom_density(3, o.complete_edges(3),
                                          o.centered(block_kernel(3), Fraction(1, 2))))
    data["block_p2_m2"] = q(o.hom_density(3, [(0, 1), (1, 2)],
                                          o.centered(block_kernel(2), Fraction(1, 2))))

    dev = {}
    for r in (2, 3, 4):
        classes = connected_spanning(r)
        for m in range(1, 9):
            fm = o.centered(block_kernel(m), Fraction(1, 2))
            total = sum(c * 2 ** len(es) * o.hom_density(r, es, fm) for es, c in classes)
            dev[f"{r},{m}"] = q(total)
    data["deviation_sums"] = dev

    # alpha* at k = l = 10 for r = 8, eps = 1/4, C = 1: alpha = 2^64 / 20 exactly
    binom = math.comb(20, 10)
    data["alpha_star_10_10"] = q(Fraction((2 ** 64 * binom) // 20, binom))
    data["rho_floor_8_eighth"] = q(o.rho_exact(8, Fraction(1, 8), Fraction(1, 4)))

    rnd = random.Random(99)
    goodman = []
    for _ in range(10):
        n = rnd.randint(3, 12)
        es = [e for e in o.complete_edges(n) if rnd.random() < 0.5]
        goodman.append([n, es, o.mono_triangles(n, es)])
    data["goodman_cases"] = goodman

    OUT.parent.mkdir(exist_ok=True)
    OUT.write_text(json.dumps(data, indent=1) + "\n")


if __name__ == "__main__":
    main()
