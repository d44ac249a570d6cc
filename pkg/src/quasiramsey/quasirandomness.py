"""Centered codegree statistics and density inequality checks.

For a graph ``G`` and ``p`` in (0, 1), ``f = W_G - p``.  Row means give
``mu = max_x |E_y f(x, y)|``; the one-sided pair statistic is
``nu = max_{x != y} max(0, E_z f(x, z) f(z, y))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from . import _accel
from .errors import BudgetError, DomainError, UsageError
from .graphs import SimpleGraph
from .kernels import (EXACT, FLOAT, Number, StepKernel, _as_probability, _check_mode,
                      center, density, embed_graph, kab_density, to_fraction)
from .patterns import (IsoClass, PatternGraph, census, complete, complete_bipartite,
                       pattern_stats)

FLOAT_TOL = 1e-9

# dense pair-count matrices above this order are refused
PAIR_MATRIX_CAP = 8192


@dataclass(frozen=True)
class CenteredStats:
    p: Number
    n: int
    mu: Number
    nu: Number
    mu_vertex: int
    nu_pair: Optional[Tuple[int, int]]
    mode: str


def centered_stats(g: SimpleGraph, p, mode: str = EXACT) -> CenteredStats:
    """Exact ``mu`` and ``nu`` over every vertex and every pair ``x != y``."""
    mode = _check_mode(mode)
    q = _as_probability(p, mode)
    n = g.n
    deg = g.degrees()
    if mode == EXACT:
        num, den = q.numerator, q.denominator
        # |d/n - p| = |den*d - num*n| / (n*den)
        dev = np.abs(deg * den - num * n)
        x = int(np.argmax(dev))
        mu = Fraction(int(dev[x]), n * den)
        hit = _accel.max_pair_int(g.bits, deg, num, den)
        if hit is None:
            nu, pair = Fraction(0), None
        else:
            best, bx, by = hit
            # E_z f f = (den*(den*c - num*(dx+dy)) + n*num^2) / (n*den^2)
            val = Fraction(den * best + n * num * num, n * den * den)
            nu, pair = max(Fraction(0), val), (bx, by)
    else:
        dev = np.abs(deg / n - q)
        x = int(np.argmax(dev))
        mu = float(dev[x])
        hit = _accel.max_pair_float(g.bits, deg, q)
        if hit is None:
            nu, pair = 0.0, None
        else:
            best, bx, by = hit
            nu, pair = max(0.0, (best + n * q * q) / n), (bx, by)
    return CenteredStats(q, n, mu, nu, x, pair, mode)


# -- reports ------------------------------------------------------------------

@dataclass(frozen=True)
class InequalityReport:
    lhs: Number
    rhs: Number
    holds: bool
    slack: Number
    preconditions: List[Tuple[str, bool]] = field(default_factory=list)
    mode: str = EXACT
    label: str = ""

    def as_row(self) -> Dict[str, object]:
        return {"lhs": format_number(self.lhs), "rhs": format_number(self.rhs),
                "slack": format_number(self.slack), "holds": self.holds}


def format_number(x) -> str:
    """Text form for CSV cells: rationals as ``p/q``, floats round-trippable."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _root_report(lhs: Number, base: Number, num: int, den: int, mode: str, label: str,
                 pre=None) -> InequalityReport:
    """Compare ``lhs <= base ** (num / den)`` for nonnegative ``lhs`` and ``base``."""
    pre = pre or []
    if mode == EXACT:
        holds = lhs ** den <= base ** num
        if den == 1:
            rhs = base ** num
        else:
            rhs = _exact_root_float(base, num, den)
        slack = rhs - lhs if den == 1 else rhs - float(lhs)
    else:
        rhs = float(base) ** (num / den)
        slack = rhs - float(lhs)
        holds = slack >= -FLOAT_TOL
    return InequalityReport(lhs, rhs, bool(holds), slack, pre, mode, label)


def _exact_root_float(base: Fraction, num: int, den: int) -> float:
    if base == 0:
        return 0.0
    import mpmath

    with mpmath.workdps(40):
        v = mpmath.mpf(base.numerator) / base.denominator
        return float(v ** (mpmath.mpf(num) / den))


def verify_kab_monotone(a: int, b: int, c: int, w: StepKernel) -> InequalityReport:
    """``|t_{K_{a,b}}(w)| <= |t_{K_{c,b}}(w)|`` for ``a >= c`` with ``c`` even."""
    if min(a, b, c) < 1:
        raise UsageError("a, b, c must be positive")
    if a < c:
        raise UsageError(f"need a >= c, got a={a}, c={c}")
    if c % 2:
        raise UsageError(f"c must be even, got {c}")
    lhs = abs(kab_density(a, b, w))
    base = abs(kab_density(c, b, w))
    return _root_report(lhs, base, 1, 1, w.mode, f"kab a={a} b={b} c={c}",
                        [("a>=c", True), ("c even", True)])


def verify_local(h: PatternGraph, d: int, w: StepKernel) -> InequalityReport:
    """``|t_H(w)| <= |t_{K_{2,d}}(w)|^(1/2)`` when ``H`` has a vertex of degree ``d``."""
    if d < 1 or d not in h.degrees():
        raise UsageError(f"pattern has no vertex of degree {d}")
    lhs = abs(density(h, w))
    base = abs(kab_density(2, d, w))
    return _root_report(lhs, base, 1, 2, w.mode, f"local d={d}", [("vertex of degree d", True)])


def verify_bipartite_global(h: PatternGraph, side_b, w: StepKernel) -> InequalityReport:
    """``|t_H(w)| <= |t_{K_{2,2u}}(w)|^(h/2u)`` with ``h = |B|`` and ``u = ceil(h/2)``.

    ``side_b`` lists the vertices of B; every edge must cross and every B
    vertex needs degree at least 2.
    """
    side = frozenset(int(v) for v in side_b)
    if not side or not all(0 <= v < h.vertex_count for v in side):
        raise UsageError("B must be a nonempty set of pattern vertices")
    if not h.is_bipartition(side):
        raise UsageError("declared bipartition has an edge inside one side")
    degs = h.degrees()
    low = [v for v in side if degs[v] < 2]
    if low:
        raise UsageError(f"B vertices {sorted(low)} have degree below 2")
    hb = len(side)
    u = (hb + 1) // 2
    lhs = abs(density(h, w))
    base = abs(kab_density(2, 2 * u, w))
    g = math.gcd(hb, 2 * u)
    return _root_report(lhs, base, hb // g, (2 * u) // g, w.mode, f"bipartite-global h={hb}",
                        [("valid bipartition", True), ("B degrees >= 2", True)])


def verify_general_global(h: PatternGraph, w: StepKernel) -> InequalityReport:
    """``|t_H(w)| <= |t_{K_{2,2ceil(h/2)}}(w)|^(1/4)`` for ``H`` without isolated vertices."""
    if h.vertex_count == 0 or h.isolated_vertices():
        raise UsageError("pattern must have vertices and none isolated")
    hv = h.vertex_count
    lhs = abs(density(h, w))
    base = abs(kab_density(2, 2 * ((hv + 1) // 2), w))
    return _root_report(lhs, base, 1, 4, w.mode, f"general-global h={hv}",
                        [("no isolated vertices", True)])


# -- graph-level codegree densities -------------------------------------------

def _pair_numerators(g: SimpleGraph, num: int, den: int) -> np.ndarray:
    """``n * den^2 * E_z f(x,z) f(z,y)`` for all ordered pairs, diagonal included."""
    if g.n > PAIR_MATRIX_CAP:
        raise BudgetError(f"pair matrix for n={g.n} exceeds cap {PAIR_MATRIX_CAP}")
    c = _accel.common_counts(g.bits, g.n).astype(np.int64)
    d = g.degrees()
    return den * (den * c - num * (d[:, None] + d[None, :])) + g.n * num * num


def centered_k2a_density(g: SimpleGraph, p, a: int, mode: str = EXACT) -> Number:
    """``t_{K_{2,a}}(W_G - p) = E_{x,y} (E_z f(x,z) f(z,y))^a``."""
    mode = _check_mode(mode)
    q = _as_probability(p, mode)
    n = g.n
    if mode == EXACT:
        vals = _pair_numerators(g, q.numerator, q.denominator)
        uniq, counts = np.unique(vals, return_counts=True)
        total = sum(int(k) * int(v) ** a for v, k in zip(uniq.tolist(), counts.tolist()))
        return Fraction(total, n * n * (n * q.denominator ** 2) ** a)
    c = _accel.common_counts(g.bits, n).astype(np.float64)
    d = g.degrees().astype(np.float64)
    cod = (c - q * (d[:, None] + d[None, :]) + n * q * q) / n
    return float(np.mean(cod ** a))


def k2a_graph_bound(g: SimpleGraph, p, a: int, mode: str = EXACT,
                    stats: CenteredStats = None) -> InequalityReport:
    """``|t_{K_{2,a}}(f)| <= 2 nu^a + 2 n^(-2/3)``."""
    if a < 1:
        raise UsageError("a must be positive")
    stats = stats or centered_stats(g, p, mode)
    lhs = abs(centered_k2a_density(g, p, a, mode))
    n = g.n
    if mode == EXACT:
        excess = lhs - 2 * stats.nu ** a
        holds = excess <= 0 or excess ** 3 <= Fraction(8, n * n)
        rhs = float(2 * stats.nu ** a) + 2.0 * n ** (-2.0 / 3.0)
        slack = rhs - float(lhs)
    else:
        rhs = 2.0 * stats.nu ** a + 2.0 * n ** (-2.0 / 3.0)
        slack = rhs - lhs
        holds = slack >= -FLOAT_TOL
    return InequalityReport(lhs, rhs, bool(holds), slack, [("a>=1", True)], mode, f"k2a a={a}")


# -- expansion identity ----------------------------------------------------------

@dataclass(frozen=True)
class ExpansionResult:
    total: Number
    direct: Number
    terms: Dict[IsoClass, Number]

    @property
    def residual(self) -> Number:
        return self.total - self.direct


def expansion(h: PatternGraph, g: SimpleGraph, p, mode: str = EXACT) -> ExpansionResult:
    """Expand ``t_H(W_G)`` as ``sum_J p^(e(H)-e(J)) C_{H,J} t_J(W_G - p)``."""
    mode = _check_mode(mode)
    q = _as_probability(p, mode)
    w = embed_graph(g, mode)
    f = center(w, q)
    e = h.edge_count
    terms = {}
    for j, count in census(h).items():
        terms[j] = q ** (e - j.edge_count) * count * density(j.representative, f)
    total = sum(terms.values(), Fraction(0) if mode == EXACT else 0.0)
    return ExpansionResult(total, density(h, w), terms)


@dataclass(frozen=True)
class DiscrepancyReport:
    discrepancy: Number
    bound: float
    r: int
    nu: Number
    stats: CenteredStats
    preconditions: List[Tuple[str, bool]]
    side_checks: List[Tuple[str, bool]]

    @property
    def theorem_applies(self) -> bool:
        return all(ok for _, ok in self.preconditions)

    @property
    def within_bound(self) -> bool:
        return float(self.discrepancy) <= self.bound


def effective_distance_report(h: PatternGraph, g: SimpleGraph, p, nu, mode: str = EXACT,
                              stats: CenteredStats = None) -> DiscrepancyReport:
    """Discrepancy of ``t_H(W_G)`` from its first-order prediction, with the bound.

    Preconditions are evaluated and reported, not enforced.
    """
    mode = _check_mode(mode)
    q = _as_probability(p, mode)
    v = to_fraction(nu) if mode == EXACT else float(nu)
    if not (0 < v <= 1):
        raise DomainError(f"nu must lie in (0, 1], got {nu}")
    stats = stats or centered_stats(g, q, mode)
    w = embed_graph(g, mode)
    f = center(w, q)
    st = pattern_stats(h)
    e, tri, r = st.edge_count, st.triangle_count, h.vertex_count
    t_h = density(h, w)
    t2 = density(complete(2), f)
    t3 = density(complete(3), f)
    disc = abs(t_h / q ** e - 1 - e * t2 / q - tri * t3 / q ** 3)
    bound = 2.0 ** (-2 * r) * float(v) ** (7.0 / 6.0) + 3 * math.comb(r + 1, 4) * float(stats.mu) ** 2 / float(q) ** 2

    if mode == EXACT:
        cap_ok = (8 / q) ** (12 * r) * v <= 1
        size_ok = g.n * v ** (2 * r) >= 1
    else:
        cap_ok = r * 12 * math.log(8 / q) <= math.log(1 / v)
        size_ok = -2 * r * math.log(v) <= math.log(g.n)
    pre = [("nu >= nu_G", bool(v >= stats.nu)), ("r <= log(1/nu)/(12 log(8/p))", bool(cap_ok)),
           ("nu^(-2r) <= n", bool(size_ok))]
    mu2 = stats.mu ** 2
    t12 = density(complete_bipartite(1, 2), f)
    t22 = density(complete(2).disjoint_union(complete(2)), f)
    side = [("|t_K12(f)| <= mu^2", bool(abs(t12) <= mu2 + (0 if mode == EXACT else FLOAT_TOL))),
            ("|t_K2+K2(f)| <= mu^2", bool(abs(t22) <= mu2 + (0 if mode == EXACT else FLOAT_TOL)))]
    return DiscrepancyReport(disc, bound, r, v, stats, pre, side)
