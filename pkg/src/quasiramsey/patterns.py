"""Small pattern graphs, canonical forms, and subgraph census.

A pattern is a labeled simple graph on vertices ``0..r-1``.  Isomorphism
classes are identified by the minimum adjacency encoding over all vertex
orderings: position ``k`` contributes a ``k``-bit block recording adjacency
to positions ``0..k-1``, earlier blocks being more significant.
"""
from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Iterator, List, Mapping, Tuple, Union

import numpy as np

from .errors import SizeError, UsageError

CANONICAL_CAP = 10
CENSUS_CAP = 7
# orders up to this size use a precomputed table over all permutations
_TABLE_CAP = 7

Edge = Tuple[int, int]


@dataclass(frozen=True)
class PatternGraph:
    """Labeled simple graph on ``range(vertex_count)``."""

    vertex_count: int
    edges: FrozenSet[Edge] = frozenset()

    def __post_init__(self):
        r = self.vertex_count
        if isinstance(r, bool) or int(r) != r or r < 0:
            raise ValueError(f"vertex_count must be a nonnegative integer, got {r!r}")
        r = int(r)
        norm = set()
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < r and 0 <= v < r):
                raise ValueError(f"edge {e} has an endpoint outside [0, {r})")
            norm.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "vertex_count", r)
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, vertex_count: int, edges) -> "PatternGraph":
        return cls(vertex_count, frozenset(tuple(e) for e in edges))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_list(self) -> List[Edge]:
        return sorted(self.edges)

    @cached_property
    def adjacency(self) -> Tuple[int, ...]:
        """Neighbourhoods as bit masks."""
        adj = [0] * self.vertex_count
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    def degree(self, v: int) -> int:
        return bin(self.adjacency[v]).count("1")

    def degrees(self) -> Tuple[int, ...]:
        return tuple(bin(a).count("1") for a in self.adjacency)

    def neighbors(self, v: int) -> List[int]:
        a = self.adjacency[v]
        return [u for u in range(self.vertex_count) if (a >> u) & 1]

    def isolated_vertices(self) -> List[int]:
        return [v for v, a in enumerate(self.adjacency) if a == 0]

    def is_connected(self) -> bool:
        if self.vertex_count <= 1:
            return True
        seen, frontier = 1, 1
        while frontier:
            nxt = 0
            m = frontier
            while m:
                low = m & -m
                nxt |= self.adjacency[low.bit_length() - 1]
                m ^= low
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.vertex_count) - 1

    def is_bipartition(self, side: FrozenSet[int]) -> bool:
        return all((u in side) != (v in side) for u, v in self.edges)

    def relabel(self, mapping) -> "PatternGraph":
        """Apply ``v -> mapping[v]``; mapping must be a bijection onto ``range(r)``."""
        if sorted(mapping[v] for v in range(self.vertex_count)) != list(range(self.vertex_count)):
            raise ValueError("relabeling is not a permutation")
        return PatternGraph(self.vertex_count, frozenset((mapping[u], mapping[v]) for u, v in self.edges))

    def drop_isolated(self) -> "PatternGraph":
        active = [v for v, a in enumerate(self.adjacency) if a]
        index = {v: i for i, v in enumerate(active)}
        return PatternGraph(len(active), frozenset((index[u], index[v]) for u, v in self.edges))

    def disjoint_union(self, other: "PatternGraph") -> "PatternGraph":
        r = self.vertex_count
        shifted = {(u + r, v + r) for u, v in other.edges}
        return PatternGraph(r + other.vertex_count, self.edges | shifted)

    def complement(self) -> "PatternGraph":
        r = self.vertex_count
        return PatternGraph(r, frozenset(itertools.combinations(range(r), 2)) - self.edges)

    def to_text(self) -> str:
        lines = [str(self.vertex_count)] + [f"{u} {v}" for u, v in self.edge_list]
        return "\n".join(lines) + "\n"


# -- named builtins -----------------------------------------------------------

def complete(n: int) -> PatternGraph:
    return PatternGraph(n, frozenset(itertools.combinations(range(n), 2)))


def empty(n: int) -> PatternGraph:
    return PatternGraph(n)


def cycle(n: int) -> PatternGraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return PatternGraph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def path(n_edges: int) -> PatternGraph:
    """Path with ``n_edges`` edges (and ``n_edges + 1`` vertices)."""
    return PatternGraph(n_edges + 1, frozenset((i, i + 1) for i in range(n_edges)))


def complete_bipartite(a: int, b: int) -> PatternGraph:
    return PatternGraph(a + b, frozenset((i, a + j) for i in range(a) for j in range(b)))


_BUILTIN_RE = [
    (re.compile(r"^K_?\{?(\d+),(\d+)\}?$"), lambda m: complete_bipartite(int(m[1]), int(m[2]))),
    (re.compile(r"^K_?(\d+)$"), lambda m: complete(int(m[1]))),
    (re.compile(r"^C_?(\d+)$"), lambda m: cycle(int(m[1]))),
    (re.compile(r"^P_?(\d+)$"), lambda m: path(int(m[1]))),
    (re.compile(r"^E_?(\d+)$"), lambda m: empty(int(m[1]))),
]


def builtin_pattern(name: str) -> PatternGraph:
    """``K<n>``, ``C<n>``, ``P<n>``, ``K<a>,<b>``, ``E<n>``; ``+`` joins disjoint copies."""
    parts = [p.strip() for p in name.strip().split("+")]
    graph = None
    for part in parts:
        for pattern, build in _BUILTIN_RE:
            m = pattern.match(part)
            if m:
                piece = build(m)
                break
        else:
            raise ValueError(f"unknown pattern name {part!r}")
        graph = piece if graph is None else graph.disjoint_union(piece)
    return graph


def parse_edge_list(text: str) -> PatternGraph:
    lines = [ln.split("#")[0].strip() for ln in text.strip().splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty graph description")
    r = int(lines[0])
    edges = []
    for ln in lines[1:]:
        u, v = ln.split()
        edges.append((int(u), int(v)))
    return PatternGraph.from_edges(r, edges)


def parse_pattern(text: str) -> PatternGraph:
    """Builtin name or edge-list text (first line ``r``, then ``u v`` lines)."""
    stripped = text.strip()
    if "\n" in stripped or stripped.isdigit():
        return parse_edge_list(stripped)
    return builtin_pattern(stripped)


# -- canonical forms ----------------------------------------------------------

@dataclass(frozen=True)
class IsoClass:
    """Isomorphism class; equality is decided by ``(vertex_count, code)``."""

    vertex_count: int
    edge_count: int
    code: int
    representative: PatternGraph = field(compare=False, repr=False)

    @property
    def canonical_code(self) -> Tuple[int, int]:
        return (self.vertex_count, self.code)

    @property
    def name(self) -> str:
        if self.vertex_count == 0:
            return "empty"
        known = _known_names()
        if self.canonical_code in known:
            return known[self.canonical_code]
        return f"G{self.vertex_count}e{self.edge_count}#{self.code:x}"

    def __str__(self) -> str:
        return self.name


EMPTY_CLASS = IsoClass(0, 0, 0, PatternGraph(0))


@lru_cache(maxsize=None)
def _perm_table(n: int):
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    total = n * (n - 1) // 2
    table = np.zeros((len(perms), n, n), dtype=np.int64)
    for u, v in itertools.combinations(range(n), 2):
        a, b = perms[:, u], perms[:, v]
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        weight = np.left_shift(np.int64(1), total - 1 - (hi * (hi - 1) // 2 + lo))
        table[:, u, v] = weight
    return perms, table


def _canonical_table(n: int, edges: List[Edge]) -> Tuple[int, List[int]]:
    perms, table = _perm_table(n)
    if not edges:
        return 0, list(range(n))
    us = np.fromiter((u for u, _ in edges), dtype=np.int64)
    vs = np.fromiter((v for _, v in edges), dtype=np.int64)
    codes = table[:, us, vs].sum(axis=1)
    i = int(np.argmin(codes))
    position = perms[i]
    order = [0] * n
    for v in range(n):
        order[position[v]] = v
    return int(codes[i]), order


def _canonical_search(n: int, adj: Tuple[int, ...]) -> Tuple[int, List[int]]:
    """Prefix-pruned search for the minimum encoding.

    Swapping twins (equal neighbourhoods outside the pair) is an automorphism,
    so twins are placed in index order without changing the minimum.
    """
    prereq = [0] * n
    for u, v in itertools.combinations(range(n), 2):
        if adj[u] & ~(1 << v) == adj[v] & ~(1 << u):
            prereq[v] |= 1 << u
    states: List[Tuple[int, Tuple[int, ...]]] = [(0, ())]
    code = 0
    for k in range(n):
        best = None
        nxt: List[Tuple[int, Tuple[int, ...]]] = []
        for placed, order in states:
            for v in range(n):
                if (placed >> v) & 1 or prereq[v] & ~placed:
                    continue
                block = 0
                row = adj[v]
                for u in order:
                    block = (block << 1) | ((row >> u) & 1)
                if best is None or block < best:
                    best = block
                    nxt = [(placed | (1 << v), order + (v,))]
                elif block == best:
                    nxt.append((placed | (1 << v), order + (v,)))
        states = nxt
        code = (code << k) | best
    return code, list(states[0][1])


def canonical_form(g: PatternGraph, cap: int = CANONICAL_CAP) -> IsoClass:
    n = g.vertex_count
    if n > cap:
        raise SizeError(f"canonical form capped at {cap} vertices, got {n}")
    if n <= _TABLE_CAP:
        code, order = _canonical_table(n, g.edge_list)
    else:
        code, order = _canonical_search(n, g.adjacency)
    position = {v: k for k, v in enumerate(order)}
    return IsoClass(n, g.edge_count, code, g.relabel(position))


@lru_cache(maxsize=200_000)
def _class_of_compact(n: int, edges: Tuple[Edge, ...]) -> IsoClass:
    return canonical_form(PatternGraph(n, frozenset(edges)), cap=max(n, CANONICAL_CAP))


def nonisolated_class(g: PatternGraph) -> IsoClass:
    """Class of ``g`` after dropping isolated vertices."""
    h = g.drop_isolated()
    return _class_of_compact(h.vertex_count, tuple(h.edge_list))


def is_isomorphic(g: PatternGraph, h: PatternGraph) -> bool:
    if g.vertex_count != h.vertex_count or g.edge_count != h.edge_count:
        return False
    cap = max(g.vertex_count, CANONICAL_CAP)
    return canonical_form(g, cap) == canonical_form(h, cap)


@lru_cache(maxsize=None)
def _known_names() -> Dict[Tuple[int, int], str]:
    names = ["K2", "K3", "K4", "K5", "K1,2", "K1,3", "K1,4", "K2,2", "K2,3", "K3,3",
             "P3", "P4", "C5", "C6", "K2+K2", "K2+K2+K2", "K3+K2", "K2+K1,2", "K2+P3",
             "K6", "K2,4", "K1,5"]
    out = {}
    for name in names:
        cls = canonical_form(builtin_pattern(name))
        out.setdefault(cls.canonical_code, name)
    return out


# -- statistics and census ----------------------------------------------------

@dataclass(frozen=True)
class PatternStats:
    edge_count: int
    triangle_count: int
    path2_count: int
    disjoint_edge_pairs: int


def pattern_stats(g: PatternGraph) -> PatternStats:
    """Edges, triangles, unordered 2-paths and disjoint edge pairs, by enumeration."""
    adj = g.adjacency
    triangles = sum(
        1
        for a, b, c in itertools.combinations(range(g.vertex_count), 3)
        if (adj[a] >> b) & 1 and (adj[a] >> c) & 1 and (adj[b] >> c) & 1
    )
    paths = 0
    disjoint = 0
    for e, f in itertools.combinations(g.edge_list, 2):
        if set(e) & set(f):
            paths += 1
        else:
            disjoint += 1
    return PatternStats(g.edge_count, triangles, paths, disjoint)


@dataclass(frozen=True)
class SubgraphCensus:
    """Counts ``C[H, J]`` of subgraphs of ``H`` isomorphic to each class ``J``."""

    entries: Mapping[IsoClass, int]

    def __getitem__(self, key: Union[IsoClass, PatternGraph, str]) -> int:
        return self.entries.get(_as_class(key), 0)

    def __iter__(self) -> Iterator[IsoClass]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def items(self):
        return self.entries.items()

    def total(self) -> int:
        return sum(self.entries.values())

    def with_vertex_count(self, s: int) -> Dict[IsoClass, int]:
        return {j: c for j, c in self.entries.items() if j.vertex_count == s}


def _as_class(key) -> IsoClass:
    if isinstance(key, IsoClass):
        return key
    if isinstance(key, str):
        key = builtin_pattern(key)
    return nonisolated_class(key)


@lru_cache(maxsize=64)
def _census_cached(g: PatternGraph) -> SubgraphCensus:
    edges = g.edge_list
    counts: Counter = Counter()
    for mask in range(1 << len(edges)):
        chosen = [edges[i] for i in range(len(edges)) if (mask >> i) & 1]
        if not chosen:
            counts[EMPTY_CLASS] += 1
            continue
        verts = sorted({x for e in chosen for x in e})
        index = {v: i for i, v in enumerate(verts)}
        compact = tuple(sorted((index[u], index[v]) for u, v in chosen))
        counts[_class_of_compact(len(verts), compact)] += 1
    ordered = sorted(counts.items(), key=lambda kv: (kv[0].vertex_count, kv[0].edge_count, kv[0].code))
    return SubgraphCensus(dict(ordered))


def census(g: PatternGraph, cap: int = CENSUS_CAP) -> SubgraphCensus:
    """Tally every edge subset of ``g`` by the class of its non-isolated part.

    The empty edge set is recorded as the empty class (0 vertices, 0 edges).
    """
    if g.vertex_count > cap:
        raise SizeError(f"census capped at {cap} vertices, got {g.vertex_count}")
    return _census_cached(g)


@lru_cache(maxsize=None)
def all_classes(max_vertices: int) -> Tuple[IsoClass, ...]:
    """Every class without isolated vertices on 1..max_vertices vertices."""
    full = census(complete(max_vertices), cap=max(max_vertices, CENSUS_CAP))
    return tuple(j for j in full if j.vertex_count > 0)


def connected_spanning_classes(r: int) -> Dict[IsoClass, int]:
    """Connected classes on exactly ``r`` vertices with their multiplicity in ``K_r``."""
    full = census(complete(r), cap=max(r, CENSUS_CAP))
    return {j: c for j, c in full.with_vertex_count(r).items() if j.representative.is_connected()}
