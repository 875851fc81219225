"""GF(2) kernel selection: compiled extension if available, else pure Python."""

from __future__ import annotations

try:
    from ._gf2core import GF2ColumnReducer

    BACKEND = "cython"
except ImportError:  # extension not built; same interface, slower
    from ._gf2py import GF2ColumnReducer

    BACKEND = "python"


def get_backend(name: str):
    """Explicit backend lookup ('cython' or 'python'), for benchmarks/tests."""
    if name == "python":
        from ._gf2py import GF2ColumnReducer as cls
    elif name == "cython":
        from ._gf2core import GF2ColumnReducer as cls
    else:
        raise ValueError(f"unknown backend {name!r}")
    return cls


def gf2_rank(columns, n_rows: int) -> int:
    """Rank over GF(2) of the matrix whose columns are given as row-index lists."""
    red = GF2ColumnReducer(n_rows)
    for col in columns:
        red.push(col)
    return red.n_pivots


__all__ = ["GF2ColumnReducer", "BACKEND", "get_backend", "gf2_rank"]
