"""Simple graphs stored as packed adjacency bit rows."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Tuple

import numpy as np

from .patterns import PatternGraph


def words_for(n: int) -> int:
    return max(1, (n + 63) // 64)


@dataclass(frozen=True, eq=False)
class SimpleGraph:
    """Graph on ``range(n)``; bit ``j % 64`` of ``bits[x, j // 64]`` marks ``x ~ j``."""

    n: int
    bits: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a graph needs at least one vertex")
        bits = np.ascontiguousarray(self.bits, dtype=np.uint64)
        if bits.shape != (self.n, words_for(self.n)):
            raise ValueError(f"bit rows have shape {bits.shape}, expected {(self.n, words_for(self.n))}")
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    # -- construction ---------------------------------------------------------

    @classmethod
    def from_adjacency(cls, adj) -> "SimpleGraph":
        a = np.asarray(adj).astype(bool)
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError("adjacency matrix must be square")
        if a.diagonal().any():
            raise ValueError("adjacency matrix has a nonzero diagonal")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency matrix is not symmetric")
        return cls(n, pack_rows(a))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "SimpleGraph":
        bits = np.zeros((n, words_for(n)), dtype=np.uint64)
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            bits[u, v >> 6] |= np.uint64(1) << np.uint64(v & 63)
            bits[v, u >> 6] |= np.uint64(1) << np.uint64(u & 63)
        return cls(n, bits)

    @classmethod
    def from_pattern(cls, h: PatternGraph) -> "SimpleGraph":
        return cls.from_edges(h.vertex_count, h.edges)

    @classmethod
    def from_networkx(cls, g) -> "SimpleGraph":
        nodes = list(g.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[u], index[v]) for u, v in g.edges() if u != v))

    # -- queries --------------------------------------------------------------

    @property
    def words(self) -> int:
        return self.bits.shape[1]

    def degrees(self) -> np.ndarray:
        return np.bitwise_count(self.bits).sum(axis=1, dtype=np.int64)

    def edge_count(self) -> int:
        return int(self.degrees().sum()) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool((int(self.bits[u, v >> 6]) >> (v & 63)) & 1)

    def row_int(self, x: int) -> int:
        """Neighbourhood of ``x`` as a Python integer bit mask."""
        return int.from_bytes(self.bits[x].tobytes(), "little")

    def adjacency_matrix(self) -> np.ndarray:
        rows = self.bits.view(np.uint8)
        return np.unpackbits(rows, axis=1, bitorder="little")[:, : self.n].astype(np.uint8)

    def edges(self) -> Iterator[Tuple[int, int]]:
        a = self.adjacency_matrix()
        us, vs = np.nonzero(np.triu(a, 1))
        return zip(us.tolist(), vs.tolist())

    def complement(self) -> "SimpleGraph":
        a = 1 - self.adjacency_matrix()
        np.fill_diagonal(a, 0)
        return SimpleGraph(self.n, pack_rows(a.astype(bool)))

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    def __eq__(self, other) -> bool:
        return isinstance(other, SimpleGraph) and self.n == other.n and np.array_equal(self.bits, other.bits)

    def __hash__(self) -> int:
        return hash((self.n, self.bits.tobytes()))

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, edges={self.edge_count()})"

    # -- text formats ---------------------------------------------------------

    def to_edge_list(self) -> str:
        lines = [str(self.n)] + [f"{u} {v}" for u, v in self.edges()]
        return "\n".join(lines) + "\n"

    def to_graph6(self) -> str:
        import networkx as nx

        return nx.to_graph6_bytes(self.to_networkx(), header=False).decode("ascii").strip()


def pack_rows(adj: np.ndarray) -> np.ndarray:
    """Pack a boolean ``n x n`` matrix into little-endian uint64 rows."""
    n = adj.shape[0]
    w = words_for(n)
    padded = np.zeros((n, 64 * w), dtype=bool)
    padded[:, :n] = adj
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view(np.uint64).reshape(n, w)


def from_graph6(text: str) -> SimpleGraph:
    import networkx as nx

    data = text.strip()
    if data.startswith(">>graph6<<"):
        data = data[len(">>graph6<<"):]
    return SimpleGraph.from_networkx(nx.from_graph6_bytes(data.encode("ascii")))


def parse_graph_text(text: str) -> SimpleGraph:
    """Edge-list text (``n`` then ``u v`` lines) or a graph6 string."""
    stripped = text.strip()
    first = stripped.splitlines()[0].strip() if stripped else ""
    if first.isdigit():
        from .patterns import parse_edge_list

        return SimpleGraph.from_pattern(parse_edge_list(stripped))
    return from_graph6(stripped)
