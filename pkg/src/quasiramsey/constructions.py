"""Block graphons, W-random graphs, Paley graphs and a small Ramsey oracle."""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import _accel
from .errors import DomainError, SizeError, UsageError
from .graphs import SimpleGraph, parse_graph_text, words_for
from .kernels import (EXACT, StepKernel, center, density, kernel_from_json, to_fraction)
from .patterns import CENSUS_CAP, PatternGraph, builtin_pattern, connected_spanning_classes

RAMSEY_NMAX_CAP = 9

# rows sampled per block when drawing random graphs
_SAMPLE_ROWS = 512


# -- block graphon ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BlockGraphon:
    """``W(x, y) = (1 + [x, y in the same block]) / 2`` on ``m`` equal blocks."""

    m: int
    kernel: StepKernel

    def mean(self) -> Fraction:
        return Fraction(1, 2) + Fraction(1, 2 * self.m)


def block_graphon(m: int, mode: str = EXACT) -> BlockGraphon:
    if m < 1:
        raise DomainError("m must be at least 1")
    half = Fraction(1, 2)
    vals = [[Fraction(1) if i == j else half for j in range(m)] for i in range(m)]
    if mode != EXACT:
        vals = [[float(x) for x in row] for row in vals]
        weights = [1.0 / m] * m
    else:
        weights = [Fraction(1, m)] * m
    return BlockGraphon(m, StepKernel.build(weights, vals, mode))


def connected_density(j: PatternGraph, m: int, check: bool = True) -> Fraction:
    """``t_J(W - 1/2) = 2^(-e(J)) m^(1 - v(J))`` for the ``m``-block graphon and connected ``J``."""
    if j.vertex_count == 0 or not j.is_connected():
        raise UsageError("pattern must be nonempty and connected")
    value = Fraction(1, 2 ** j.edge_count) * Fraction(1, m ** (j.vertex_count - 1))
    if check:
        direct = density(j, center(block_graphon(m).kernel, Fraction(1, 2)))
        if direct != value:
            raise AssertionError(f"closed form {value} disagrees with density {direct}")
    return value


@dataclass(frozen=True)
class DeviationBound:
    r: int
    m: int
    connected_r_term_sum: Fraction
    floor: Fraction

    @property
    def holds(self) -> bool:
        return self.connected_r_term_sum >= self.floor


def deviation_lower_bound(r: int, m: int) -> DeviationBound:
    """Sum over connected spanning ``J`` of ``K_r`` of ``C_{K_r,J} 2^e(J) t_J(W - 1/2)``.

    Compared against ``2^C(r-1,2) m^(1-r)``.
    """
    if r < 2:
        raise DomainError("r must be at least 2")
    if r > CENSUS_CAP:
        raise SizeError(f"r={r} exceeds the census cap {CENSUS_CAP}")
    f = center(block_graphon(m).kernel, Fraction(1, 2))
    total = Fraction(0)
    for j, count in connected_spanning_classes(r).items():
        total += count * 2 ** j.edge_count * density(j.representative, f)
    floor = Fraction(2 ** math.comb(r - 1, 2), m ** (r - 1))
    result = DeviationBound(r, m, total, floor)
    if not result.holds:
        raise AssertionError(f"deviation sum {total} below floor {floor}")
    return result


# -- random graphs -----------------------------------------------------------------

def _pack(hit: np.ndarray) -> np.ndarray:
    """Pack boolean rows (length a multiple of 64 after padding) into uint64 words."""
    rows, cols = hit.shape
    width = -(-cols // 64) * 64
    if width != cols:
        hit = np.concatenate([hit, np.zeros((rows, width - cols), dtype=bool)], axis=1)
    return np.packbits(hit, axis=1, bitorder="little").view(np.uint64)


def _sample_upper(n: int, rng: np.random.Generator, threshold_rows, dyadic: bool) -> SimpleGraph:
    """Draw each pair ``x < y`` independently and mirror it.

    ``threshold_rows(x0, x1, y0)`` gives per-pair thresholds for rows
    ``x0:x1`` and columns ``y0:n``: integer thresholds out of 256 compared with
    random bytes when ``dyadic``, float32 probabilities otherwise.
    """
    w = words_for(n)
    bits = np.zeros((n, w), dtype=np.uint64)
    for x0 in range(0, n, _SAMPLE_ROWS):
        x1 = min(n, x0 + _SAMPLE_ROWS)
        rows, cols = x1 - x0, n - x0
        if dyadic:
            u = np.frombuffer(rng.bytes(rows * cols), dtype=np.uint8).reshape(rows, cols)
        else:
            u = rng.random((rows, cols), dtype=np.float32)
        # x0 is a multiple of 64, so the packed block starts on a word boundary
        bits[x0:x1, x0 // 64:] = _pack(u < threshold_rows(x0, x1, x0))
    _accel.symmetrize_upper(bits)
    return SimpleGraph(n, bits)


def _sample_halves(n: int, rng: np.random.Generator, types: np.ndarray, table: np.ndarray) -> SimpleGraph:
    """Fast path for probabilities in {0, 1/2, 1}: one random bit per pair."""
    w = words_for(n)
    half = np.stack([_pack((table[t, types] == 0.5)[None, :])[0] for t in range(len(table))])
    one = np.stack([_pack((table[t, types] == 1.0)[None, :])[0] for t in range(len(table))])
    bits = np.empty((n, w), dtype=np.uint64)
    for x0 in range(0, n, _SAMPLE_ROWS):
        x1 = min(n, x0 + _SAMPLE_ROWS)
        raw = rng.bit_generator.random_raw((x1 - x0) * w).reshape(x1 - x0, w)
        t = types[x0:x1]
        bits[x0:x1] = (raw & half[t]) | one[t]
    _accel.symmetrize_upper(bits)
    return SimpleGraph(n, bits)


def _is_halves(table: np.ndarray) -> bool:
    return bool(np.isin(table, (0.0, 0.5, 1.0)).all())


def _dyadic_thresholds(table: np.ndarray):
    scaled = table * 256.0
    if np.array_equal(scaled, np.round(scaled)):
        return scaled.astype(np.uint16)
    return None


def w_random_graph(w: StepKernel, n: int, seed) -> SimpleGraph:
    """Sample ``G(n, W)``: atom types drawn by weight, then independent edges."""
    if n < 1:
        raise DomainError("n must be positive")
    if not w.is_graphon:
        raise UsageError("W-random graphs need a graphon")
    rng = np.random.default_rng(seed)
    weights = np.array([float(x) for x in w.weights])
    types = rng.choice(w.atom_count, size=n, p=weights / weights.sum())
    table = np.array([[float(x) for x in row] for row in w.values])
    if _is_halves(table):
        return _sample_halves(n, rng, types, table)
    thr = _dyadic_thresholds(table)
    if thr is None:
        thr = table.astype(np.float32)
    return _sample_upper(n, rng, lambda x0, x1, y0: thr[types[x0:x1, None], types[None, y0:]],
                         thr.dtype == np.uint16)


def gnp(n: int, p, seed) -> SimpleGraph:
    """Erdős–Rényi graph with edge probability ``p``."""
    q = float(to_fraction(p)) if isinstance(p, str) else float(p)
    if not (0 <= q <= 1):
        raise DomainError("p must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    if q in (0.0, 0.5, 1.0):
        return _sample_halves(n, rng, np.zeros(n, dtype=np.intp), np.array([[q]]))
    thr = _dyadic_thresholds(np.array([[q]]))
    if thr is not None:
        t = thr[0, 0]
        return _sample_upper(n, rng, lambda x0, x1, y0: t, True)
    return _sample_upper(n, rng, lambda x0, x1, y0: np.float32(q), False)


# -- deterministic families ------------------------------------------------------

def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % d for d in range(2, math.isqrt(q) + 1))


def paley(q: int) -> SimpleGraph:
    """Paley graph on ``Z_q``: ``x ~ y`` iff ``x - y`` is a nonzero square mod ``q``."""
    if not _is_prime(q) or q % 4 != 1:
        raise DomainError(f"Paley graphs need a prime q = 1 mod 4, got {q}")
    squares = {(x * x) % q for x in range(1, q)}
    return circulant(q, sorted(squares))


def circulant(n: int, offsets: Sequence[int]) -> SimpleGraph:
    """``x ~ y`` iff ``x - y = +/- d (mod n)`` for some listed ``d``."""
    edges = set()
    for d in offsets:
        d = int(d) % n
        if d == 0:
            raise DomainError("offset 0 would create loops")
        for x in range(n):
            y = (x + d) % n
            edges.add((min(x, y), max(x, y)))
    return SimpleGraph.from_edges(n, edges)


# -- cliques, independent sets and the Ramsey oracle -------------------------------

def _masks(g: SimpleGraph) -> List[int]:
    return [g.row_int(x) for x in range(g.n)]


def _max_clique(adj: List[int], cand: int, size: int, best: int) -> int:
    if cand == 0:
        return max(best, size)
    if size + bin(cand).count("1") <= best:
        return best
    while cand:
        if size + bin(cand).count("1") <= best:
            break
        v = cand.bit_length() - 1
        cand &= ~(1 << v)
        best = _max_clique(adj, cand & adj[v], size + 1, best)
    return best


def clique_number(g: SimpleGraph) -> int:
    return _max_clique(_masks(g), (1 << g.n) - 1, 0, 0)


def independence_number(g: SimpleGraph) -> int:
    return clique_number(g.complement())


def _has_clique(mask: int, adj: Sequence[int], size: int) -> bool:
    if size <= 0:
        return True
    while mask:
        if bin(mask).count("1") < size:
            return False
        v = mask.bit_length() - 1
        mask &= ~(1 << v)
        if _has_clique(mask & adj[v], adj, size - 1):
            return True
    return False


@dataclass(frozen=True)
class RamseyWitness:
    """Graph with no ``K_{k+1}`` and no independent set of size ``l + 1``."""

    graph: SimpleGraph
    k: int
    l: int


def certify_witness(g: SimpleGraph, k: int, l: int) -> RamseyWitness:
    """Exhaustively confirm ``omega(G) <= k`` and ``alpha(G) <= l``."""
    omega, alpha = clique_number(g), independence_number(g)
    if omega > k or alpha > l:
        raise UsageError(f"graph has clique number {omega} and independence number {alpha}")
    return RamseyWitness(g, k, l)


def _extend_levels(s: int, t: int, n_max: int):
    """Labelled graphs on ``1..n_max`` vertices avoiding ``K_s`` and independent ``t``-sets.

    Every such graph restricts to one on its first ``n - 1`` vertices, so
    extending each survivor by every possible new neighbourhood is exhaustive.
    Yields ``(n, graphs)`` per level and stops at the first empty level.
    """
    graphs: List[Tuple[int, ...]] = [()]
    for n in range(1, n_max + 1):
        k = n - 1
        full = (1 << k) - 1
        nxt = []
        for adj in graphs:
            comp = tuple((~a) & full & ~(1 << i) for i, a in enumerate(adj))
            for nb in range(1 << k):
                if _has_clique(nb, adj, s - 1) or _has_clique(full & ~nb, comp, t - 1):
                    continue
                nxt.append(tuple(a | (((nb >> i) & 1) << k) for i, a in enumerate(adj)) + (nb,))
        yield n, nxt
        if not nxt:
            return
        graphs = nxt


def _from_masks(adj: Sequence[int]) -> SimpleGraph:
    n = len(adj)
    return SimpleGraph.from_edges(n, ((x, y) for x in range(n) for y in range(x + 1, n)
                                      if (adj[x] >> y) & 1))


def ramsey_search(s: int, t: int, n_max: int) -> Tuple[Optional[int], Optional[RamseyWitness]]:
    """Smallest forcing order (or ``None`` above ``n_max``) and a largest witness found."""
    if s < 2 or t < 2:
        raise DomainError("s and t must be at least 2")
    if n_max > RAMSEY_NMAX_CAP:
        raise SizeError(f"n_max capped at {RAMSEY_NMAX_CAP}")
    witness = None
    for n, graphs in _extend_levels(s, t, n_max):
        if not graphs:
            return n, witness
        witness = RamseyWitness(_from_masks(graphs[0]), s - 1, t - 1)
    return None, witness


def ramsey_exact(s: int, t: int, n_max: int) -> Optional[int]:
    """Least ``n <= n_max`` forcing ``K_s`` or an independent ``t``-set; ``None`` if unknown."""
    return ramsey_search(s, t, n_max)[0]


def ramsey_witness(s: int, t: int, n_max: int) -> Optional[RamseyWitness]:
    return ramsey_search(s, t, n_max)[1]


# -- textual generator specs -----------------------------------------------------------

def graph_from_spec(spec: str) -> SimpleGraph:
    """``gnp:n:p:seed``, ``wrand:m:n:seed``, ``paley:q``, ``circulant:n:d1,d2``,
    a builtin pattern name, or a path to an edge-list / graph6 file."""
    head, _, rest = spec.partition(":")
    parts = rest.split(":") if rest else []
    try:
        if head == "gnp" and len(parts) == 3:
            return gnp(int(parts[0]), to_fraction(parts[1]), int(parts[2]))
        if head == "wrand" and len(parts) == 3:
            return w_random_graph(block_graphon(int(parts[0])).kernel, int(parts[1]), int(parts[2]))
        if head == "paley" and len(parts) == 1:
            return paley(int(parts[0]))
        if head == "circulant" and len(parts) == 2:
            return circulant(int(parts[0]), [int(d) for d in parts[1].split(",") if d])
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad graph spec {spec!r}: {exc}") from exc
    if os.path.isfile(spec):
        with open(spec) as fh:
            return parse_graph_text(fh.read())
    try:
        return SimpleGraph.from_pattern(builtin_pattern(spec))
    except ValueError:
        pass
    raise UsageError(f"unrecognised graph {spec!r}")


def kernel_from_spec(spec: str, mode: str = EXACT) -> StepKernel:
    """``block:m``, a kernel JSON file, or any graph spec (embedded)."""
    from .kernels import embed_graph

    head, _, rest = spec.partition(":")
    if head == "block" and rest:
        try:
            return block_graphon(int(rest), mode).kernel
        except ValueError as exc:
            raise UsageError(f"bad kernel spec {spec!r}") from exc
    if os.path.isfile(spec) and spec.endswith(".json"):
        with open(spec) as fh:
            return kernel_from_json(fh.read())
    return embed_graph(graph_from_spec(spec), mode)
