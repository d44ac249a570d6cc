"""Pure numpy versions of the pair-codegree kernels in ``_core``.

Counts come from float32 BLAS products of unpacked 0/1 row blocks; every
count is an integer below 2**24, so the products are exact.
"""
from __future__ import annotations

import numpy as np

BACKEND = "python"

_CHUNK = 1024


def isa() -> str:
    return "numpy"


def _unpack(bits: np.ndarray, lo: int, hi: int, n: int) -> np.ndarray:
    rows = np.ascontiguousarray(bits[lo:hi]).view(np.uint8)
    return np.unpackbits(rows, axis=1, bitorder="little")[:, :n].astype(np.float32)


def common_counts(bits: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=np.int32)
    for x0 in range(0, n, _CHUNK):
        x1 = min(n, x0 + _CHUNK)
        X = _unpack(bits, x0, x1, n)
        for y0 in range(x0, n, _CHUNK):
            y1 = min(n, y0 + _CHUNK)
            Y = X if y0 == x0 else _unpack(bits, y0, y1, n)
            block = (X @ Y.T).astype(np.int32)
            out[x0:x1, y0:y1] = block
            out[y0:y1, x0:x1] = block.T
    return out


def _scan(bits, degrees, score):
    n = degrees.shape[0]
    if n < 2:
        return None
    best = None
    for x0 in range(0, n, _CHUNK):
        x1 = min(n, x0 + _CHUNK)
        X = _unpack(bits, x0, x1, n)
        for y0 in range(x0, n, _CHUNK):
            y1 = min(n, y0 + _CHUNK)
            Y = X if y0 == x0 else _unpack(bits, y0, y1, n)
            s = score(X @ Y.T, degrees[x0:x1, None], degrees[None, y0:y1])
            rows = np.arange(x0, x1)[:, None]
            cols = np.arange(y0, y1)[None, :]
            s = np.where(cols > rows, s, _floor(s))
            i, j = divmod(int(np.argmax(s)), s.shape[1])
            x, y = x0 + i, y0 + j
            if y <= x:
                continue
            value = s[i, j]
            # ties resolve to the lexicographically first pair, as in _core
            if best is None or value > best[0] or (value == best[0] and (x, y) < best[1:]):
                best = (value, x, y)
    return best


def _floor(s):
    if np.issubdtype(s.dtype, np.integer):
        return np.iinfo(s.dtype).min
    return -np.inf


def max_pair_int(bits: np.ndarray, degrees: np.ndarray, num: int, den: int):
    def score(c, dx, dy):
        return den * c.astype(np.int64) - num * (dx + dy)

    hit = _scan(bits, degrees, score)
    return None if hit is None else (int(hit[0]), int(hit[1]), int(hit[2]))


def max_pair_float(bits: np.ndarray, degrees: np.ndarray, p: float):
    def score(c, dx, dy):
        return c.astype(np.float64) - p * (dx + dy).astype(np.float64)

    hit = _scan(bits, degrees, score)
    return None if hit is None else (float(hit[0]), int(hit[1]), int(hit[2]))


def symmetrize_upper(bits: np.ndarray) -> None:
    """In place: drop bits on or below the diagonal and mirror the rest."""
    n, w = bits.shape
    upper = np.empty_like(bits)
    for x0 in range(0, n, _CHUNK):
        x1 = min(n, x0 + _CHUNK)
        rows = np.unpackbits(np.ascontiguousarray(bits[x0:x1]).view(np.uint8), axis=1,
                             bitorder="little")
        cols = np.arange(rows.shape[1])
        rows &= (cols[None, :] > np.arange(x0, x1)[:, None]) & (cols[None, :] < n)
        upper[x0:x1] = np.packbits(rows, axis=1, bitorder="little").view(np.uint64)
    bits[:] = upper
    for y0 in range(0, n, _CHUNK):
        y1 = min(n, y0 + _CHUNK)
        w0, w1 = y0 // 64, (y1 + 63) // 64
        cols = np.unpackbits(np.ascontiguousarray(upper[:, w0:w1]).view(np.uint8), axis=1,
                             bitorder="little")[:, y0 - 64 * w0: y1 - 64 * w0]
        block = np.zeros((y1 - y0, 64 * w), dtype=np.uint8)
        block[:, :n] = cols.T
        bits[y0:y1] |= np.packbits(block, axis=1, bitorder="little").view(np.uint64)
