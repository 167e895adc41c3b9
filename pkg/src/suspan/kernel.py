"""Select the longest-match kernel: compiled extension if built, else pure Python.

Set ``SUSPAN_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _kernel_py

if os.environ.get("SUSPAN_PURE_PYTHON", "") not in ("", "0"):
    longest_ends = _kernel_py.longest_ends
    BACKEND = "python"
else:
    try:
        from ._kernel import longest_ends
        BACKEND = "cython"
    except ImportError:
        longest_ends = _kernel_py.longest_ends
        BACKEND = "python"

__all__ = ["longest_ends", "BACKEND"]
