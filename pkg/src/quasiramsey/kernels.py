"""Finite probability spaces, symmetric step kernels and homomorphism densities.

Kernels come in two arithmetic modes.  ``exact`` stores ``Fraction`` values and
returns exact rationals; ``float`` stores doubles.  A kernel's mode is fixed at
construction and converting between modes is always explicit.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from numbers import Rational, Real
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from .errors import BudgetError, DomainError, UsageError
from .graphs import SimpleGraph
from .patterns import PatternGraph, complete_bipartite

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

# elementary multiply-adds allowed per density evaluation
DEFAULT_BUDGET = 2 * 10**8
EXACT_BUDGET = 2 * 10**7

_INT64_SAFE = 2**62

Number = Union[Fraction, float]


def to_fraction(x) -> Fraction:
    """Parse ints, Fractions, floats and ``"p/q"`` strings into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, (float, np.floating)):
        if not math.isfinite(x):
            raise DomainError(f"non-finite value {x!r}")
        return Fraction(float(x))
    raise TypeError(f"cannot interpret {x!r} as a rational")


def _check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    return mode


@dataclass(frozen=True, eq=False)
class FiniteSpace:
    """Probability space on ``atom_count`` atoms."""

    weights: np.ndarray
    mode: str = EXACT

    def __post_init__(self):
        mode = _check_mode(self.mode)
        if mode == EXACT:
            w = np.array([to_fraction(x) for x in self.weights], dtype=object)
        else:
            w = np.asarray([float(x) for x in self.weights], dtype=np.float64)
        if w.ndim != 1 or len(w) == 0:
            raise ValueError("a space needs at least one atom")
        if any(x < 0 for x in w):
            raise ValueError("weights must be nonnegative")
        total = sum(w, Fraction(0)) if mode == EXACT else math.fsum(w)
        if (mode == EXACT and total != 1) or (mode == FLOAT and abs(total - 1.0) > 1e-12):
            raise ValueError(f"weights sum to {total}, not 1")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls, m: int, mode: str = EXACT) -> "FiniteSpace":
        if mode == EXACT:
            return cls([Fraction(1, m)] * m, EXACT)
        return cls([1.0 / m] * m, FLOAT)

    @property
    def atom_count(self) -> int:
        return len(self.weights)


@dataclass(frozen=True, eq=False)
class StepKernel:
    """Symmetric step function on ``space x space`` with ``|values| <= 1``."""

    space: FiniteSpace
    values: np.ndarray

    def __post_init__(self):
        mode = self.space.mode
        m = self.space.atom_count
        raw = self.values
        if mode == EXACT:
            v = np.empty((m, m), dtype=object)
            rows = [list(r) for r in raw]
            if len(rows) != m or any(len(r) != m for r in rows):
                raise ValueError(f"values must be {m} x {m}")
            for i in range(m):
                for j in range(m):
                    v[i, j] = to_fraction(rows[i][j])
            sym = all(v[i, j] == v[j, i] for i in range(m) for j in range(i))
            big = max(abs(x) for x in v.flat)
            tol = 0
        else:
            v = np.array(raw, dtype=np.float64)
            if v.shape != (m, m):
                raise ValueError(f"values must be {m} x {m}")
            if not np.isfinite(v).all():
                raise DomainError("kernel values must be finite")
            sym = np.array_equal(v, v.T)
            big = float(np.abs(v).max())
            tol = 1e-12
        if not sym:
            raise ValueError("kernel values are not symmetric")
        if big > 1 + tol:
            raise ValueError(f"sup-norm {big} exceeds 1")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def build(cls, weights, values, mode: str = EXACT) -> "StepKernel":
        return cls(FiniteSpace(weights, mode), values)

    @classmethod
    def constant(cls, c, m: int = 1, mode: str = EXACT) -> "StepKernel":
        return cls(FiniteSpace.uniform(m, mode), [[c] * m for _ in range(m)])

    # -- properties -----------------------------------------------------------

    @property
    def mode(self) -> str:
        return self.space.mode

    @property
    def weights(self) -> np.ndarray:
        return self.space.weights

    @property
    def atom_count(self) -> int:
        return self.space.atom_count

    def sup_norm(self) -> Number:
        return max(abs(x) for x in self.values.flat)

    @property
    def is_graphon(self) -> bool:
        return all(0 <= x <= 1 for x in self.values.flat)

    def zero(self) -> Number:
        return Fraction(0) if self.mode == EXACT else 0.0

    def to_float(self) -> "StepKernel":
        return StepKernel.build([float(x) for x in self.weights],
                                [[float(x) for x in row] for row in self.values], FLOAT)

    def to_exact(self) -> "StepKernel":
        """Exact copy; float entries convert to their binary rational value."""
        w = [to_fraction(x) for x in self.weights]
        total = sum(w, Fraction(0))
        w = [x / total for x in w]
        return StepKernel.build(w, [[to_fraction(x) for x in row] for row in self.values], EXACT)

    def permuted(self, perm: Sequence[int]) -> "StepKernel":
        """Kernel with atom ``i`` renamed ``perm[i]``."""
        inv = np.argsort(np.asarray(perm))
        w = [self.weights[i] for i in inv]
        vals = [[self.values[i, j] for j in inv] for i in inv]
        return StepKernel.build(w, vals, self.mode)

    def __repr__(self) -> str:
        return f"StepKernel(atoms={self.atom_count}, mode={self.mode})"


# -- kernel builders ----------------------------------------------------------

def embed_graph(g: SimpleGraph, mode: str = EXACT) -> StepKernel:
    """Uniform-weight kernel with ``W(i, j) = 1`` exactly on edges."""
    a = g.adjacency_matrix().astype(int).tolist()
    return StepKernel(FiniteSpace.uniform(g.n, _check_mode(mode)), a)


def _as_probability(p, mode: str) -> Number:
    q = to_fraction(p) if mode == EXACT else float(p)
    if not (0 < q < 1):
        raise DomainError(f"p must lie strictly between 0 and 1, got {p}")
    return q


def center(w: StepKernel, p) -> StepKernel:
    """Pointwise ``w - p`` for a graphon ``w`` and ``p`` in (0, 1)."""
    q = _as_probability(p, w.mode)
    if not w.is_graphon:
        raise UsageError("centering needs a graphon (values in [0, 1])")
    m = w.atom_count
    vals = [[w.values[i, j] - q for j in range(m)] for i in range(m)]
    return StepKernel(w.space, vals)


def random_signed_kernel(rng: np.random.Generator, atoms: Tuple[int, int] = (2, 8),
                         mode: str = FLOAT, grid: int = 1000) -> StepKernel:
    """Random symmetric kernel with values in [-1, 1] and Dirichlet weights.

    In exact mode values and weights are rounded to multiples of ``1/grid``
    (weights then renormalised) to keep rationals small.
    """
    m = int(rng.integers(atoms[0], atoms[1] + 1))
    raw = rng.uniform(-1.0, 1.0, size=(m, m))
    vals = (raw + raw.T) / 2.0
    wts = rng.dirichlet(np.ones(m))
    if mode == FLOAT:
        return StepKernel.build(wts, vals, FLOAT)
    iv = [[Fraction(int(round(x * grid)), grid) for x in row] for row in vals]
    for i in range(m):
        for j in range(i):
            iv[i][j] = iv[j][i]
    counts = [max(1, int(round(x * grid))) for x in wts]
    total = sum(counts)
    return StepKernel.build([Fraction(c, total) for c in counts], iv, EXACT)


# -- integer scaling for exact arithmetic -------------------------------------

@dataclass(frozen=True)
class _Scaled:
    values: np.ndarray      # integer numerators over den_values
    weights: np.ndarray     # integer numerators over den_weights
    den_values: int
    den_weights: int
    max_value: int
    max_weight: int


def _lcm_den(xs) -> int:
    return reduce(math.lcm, (x.denominator for x in xs), 1)


@lru_cache(maxsize=64)
def _scaled(kernel: "StepKernel") -> _Scaled:
    """Integer numerators with common denominators (kernels hash by identity)."""
    dv = _lcm_den(kernel.values.flat)
    dw = _lcm_den(kernel.weights)
    iv = np.array([[int(x * dv) for x in row] for row in kernel.values], dtype=object)
    iw = np.array([int(x * dw) for x in kernel.weights], dtype=object)
    return _Scaled(iv, iw, dv, dw, int(max(abs(x) for x in iv.flat)), int(max(iw)))


def _int_arrays(s: _Scaled, bound: int):
    """Use int64 when ``bound`` (an upper bound on every partial sum) fits."""
    if bound < _INT64_SAFE:
        return s.values.astype(np.int64), s.weights.astype(np.int64)
    return s.values, s.weights


# -- density via variable elimination -----------------------------------------

@lru_cache(maxsize=4096)
def _elimination_plan(vertex_count: int, edges: Tuple[Tuple[int, int], ...]):
    """Greedy min-scope elimination order.

    Returns a list of steps ``(vertex, factor_indices, scope)``: the factors
    with those indices are multiplied, ``vertex`` is summed out and the result
    lives on ``scope`` minus ``vertex``.  Factor indices refer to a list that
    starts with one factor per edge, then one weight factor per vertex, and
    grows by one per step.
    """
    scopes: List[Tuple[int, ...]] = [tuple(e) for e in edges] + [(v,) for v in range(vertex_count)]
    alive = set(range(len(scopes)))
    steps = []
    remaining = set(range(vertex_count))
    while remaining:
        def cost(v):
            union = set()
            for i in alive:
                if v in scopes[i]:
                    union.update(scopes[i])
            return (len(union), v)

        v = min(remaining, key=cost)
        used = sorted(i for i in alive if v in scopes[i])
        union = sorted({x for i in used for x in scopes[i]})
        steps.append((v, tuple(used), tuple(union)))
        alive.difference_update(used)
        scopes.append(tuple(x for x in union if x != v))
        alive.add(len(scopes) - 1)
        remaining.discard(v)
    return tuple(steps), tuple(sorted(alive))


def density_work(h: PatternGraph, atom_count: int) -> int:
    """Multiply-adds the elimination will perform for ``h`` on ``atom_count`` atoms."""
    steps, _ = _elimination_plan(h.vertex_count, tuple(h.edge_list))
    return sum(atom_count ** len(scope) * max(1, len(used)) for _, used, scope in steps)


def _contract(h: PatternGraph, values: np.ndarray, weights: np.ndarray):
    steps, finals = _elimination_plan(h.vertex_count, tuple(h.edge_list))
    factors: List = [(e, values) for e in h.edge_list] + [((v,), weights) for v in range(h.vertex_count)]
    for v, used, scope in steps:
        args = []
        for i in used:
            sc, arr = factors[i]
            args.extend((arr, list(sc)))
        out = [x for x in scope if x != v]
        factors.append((tuple(out), np.einsum(*args, out)))
    result = None
    for i in finals:
        val = factors[i][1]
        val = val.item() if isinstance(val, np.ndarray) else val
        result = val if result is None else result * val
    return result


def _budget_for(mode: str, budget) -> int:
    if budget is not None:
        return budget
    return EXACT_BUDGET if mode == EXACT else DEFAULT_BUDGET


def _check_budget(h: PatternGraph, w: StepKernel, work: int, limit: int) -> None:
    if work > limit:
        raise BudgetError(f"density of a {h.vertex_count}-vertex pattern on {w.atom_count} atoms "
                          f"needs ~{work} operations, budget is {limit}")


def density(h: PatternGraph, w: StepKernel, budget: int = None) -> Number:
    """Homomorphism density ``t_H(w)``.

    Exact kernels give a ``Fraction``.  Raises ``BudgetError`` when the
    elimination would exceed ``budget`` multiply-adds.
    """
    if h.vertex_count == 0:
        return Fraction(1) if w.mode == EXACT else 1.0
    work = density_work(h, w.atom_count)
    _check_budget(h, w, work, _budget_for(FLOAT, budget))
    if w.mode == FLOAT:
        return float(_contract(h, w.values, w.weights))
    s = _scaled(w)
    bound = s.max_value ** h.edge_count * (s.max_weight * w.atom_count) ** h.vertex_count
    vals, wts = _int_arrays(s, bound)
    # machine integers run at float speed; only big-integer objects get the tight budget
    native = vals.dtype == np.int64
    _check_budget(h, w, work, _budget_for(FLOAT if native else EXACT, budget))
    total = int(_contract(h, vals, wts))
    return Fraction(total, s.den_values ** h.edge_count * s.den_weights ** h.vertex_count)


def density_enumerate(h: PatternGraph, w: StepKernel, budget: int = 10**7) -> Number:
    """Reference density: explicit sum over all vertex maps with zero pruning."""
    r, m = h.vertex_count, w.atom_count
    if m ** r > budget:
        raise BudgetError(f"{m}^{r} vertex maps exceed budget {budget}")
    zero = w.zero()
    one = Fraction(1) if w.mode == EXACT else 1.0
    vals = w.values.tolist()
    wts = list(w.weights)
    back = [[u for u in h.neighbors(v) if u < v] for v in range(r)]
    image = [0] * r

    def walk(v, acc):
        if v == r:
            return acc
        total = zero
        for a in range(m):
            term = acc * wts[a]
            if term == 0:
                continue
            row = vals[a]
            for u in back[v]:
                term = term * row[image[u]]
                if term == 0:
                    break
            if term == 0:
                continue
            image[v] = a
            total = total + walk(v + 1, term)
        return total

    return walk(0, one)


# -- codegrees ----------------------------------------------------------------

def codegree(w: StepKernel, xs: Sequence[int]) -> Number:
    """``E_y prod_i w(x_i, y)``."""
    xs = list(xs)
    if not xs:
        raise UsageError("codegree needs at least one atom")
    total = w.zero()
    for y in range(w.atom_count):
        term = w.weights[y]
        for x in xs:
            term = term * w.values[x, y]
        total = total + term
    return total


def _multiset_weight(counts: Sequence[int]) -> int:
    out = math.factorial(sum(counts))
    for c in counts:
        out //= math.factorial(c)
    return out


def kab_work(a: int, b: int, atom_count: int) -> int:
    a = min(a, b)
    return math.comb(atom_count + a - 1, a) * atom_count * a


def kab_density(a: int, b: int, w: StepKernel, budget: int = None) -> Number:
    """``t_{K_{a,b}}(w) = E_{x_1..x_a} (w_{x_1..x_a})^b``.

    The smaller side is enumerated over multisets of atoms.
    """
    if a < 1 or b < 1:
        raise UsageError("K_{a,b} needs a, b >= 1")
    if a > b:
        a, b = b, a
    m = w.atom_count
    work = kab_work(a, b, m)
    limit = _budget_for(w.mode, budget)
    if work > limit:
        raise BudgetError(f"K_{{{a},{b}}} on {m} atoms needs ~{work} operations, budget is {limit}")
    if w.mode == FLOAT:
        vals, wts = w.values, w.weights
        total = 0.0
        for xs in itertools.combinations_with_replacement(range(m), a):
            cod = float(np.dot(np.prod(vals[list(xs)], axis=0), wts))
            mult = _multiset_weight([xs.count(x) for x in set(xs)])
            total += mult * float(np.prod(wts[list(xs)])) * cod ** b
        return total
    s = _scaled(w)
    vals, wts = s.values, s.weights
    total = 0
    for xs in itertools.combinations_with_replacement(range(m), a):
        row = vals[xs[0]]
        for x in xs[1:]:
            row = row * vals[x]
        cod = int(np.dot(row, wts))
        wx = 1
        for x in xs:
            wx *= int(wts[x])
        total += _multiset_weight([xs.count(x) for x in set(xs)]) * wx * cod ** b
    den = s.den_weights ** a * (s.den_values ** a * s.den_weights) ** b
    return Fraction(total, den)


def kab_pattern(a: int, b: int) -> PatternGraph:
    return complete_bipartite(a, b)


# -- kernel file format --------------------------------------------------------

def _dump_number(x, mode):
    if mode == EXACT:
        return str(x)
    return float(x)


def kernel_to_json(w: StepKernel) -> str:
    data = {
        "mode": w.mode,
        "weights": [_dump_number(x, w.mode) for x in w.weights],
        "values": [[_dump_number(x, w.mode) for x in row] for row in w.values],
    }
    return json.dumps(data)


def kernel_from_json(text: str) -> StepKernel:
    data = json.loads(text)
    mode = data.get("mode", EXACT)
    if "weights" not in data or "values" not in data:
        raise ValueError("kernel file needs 'weights' and 'values'")
    if mode == EXACT:
        parse = to_fraction
    else:
        def parse(x):
            return float(to_fraction(x)) if isinstance(x, str) else float(x)
    weights = [parse(x) for x in data["weights"]]
    values = [[parse(x) for x in row] for row in data["values"]]
    return StepKernel.build(weights, values, mode)
