"""Kernel selection: compiled extension if available, pure Python otherwise.

Set LATMOD_PURE_PYTHON=1 to force the fallback (used by the benchmark).
"""

import os

if os.environ.get("LATMOD_PURE_PYTHON"):
    from latmod._hnf_py import IMPLEMENTATION, hnf_columns, snf_diagonal
else:
    try:
        from latmod._hnf_c import IMPLEMENTATION, hnf_columns, snf_diagonal
    except ImportError:
        from latmod._hnf_py import IMPLEMENTATION, hnf_columns, snf_diagonal

__all__ = ["IMPLEMENTATION", "hnf_columns", "snf_diagonal"]
