"""Backend selection for the pair-codegree kernels.

The compiled extension is used when it imported cleanly; otherwise the
numpy implementation takes over with identical results.
"""
from __future__ import annotations

from . import _fallback

try:
    from . import _core as _impl
except ImportError:  # extension not built
    _impl = _fallback

BACKEND: str = _impl.BACKEND

common_counts = _impl.common_counts
max_pair_int = _impl.max_pair_int
max_pair_float = _impl.max_pair_float
isa = _impl.isa
symmetrize_upper = _impl.symmetrize_upper

__all__ = ["BACKEND", "common_counts", "max_pair_int", "max_pair_float", "isa", "symmetrize_upper"]
