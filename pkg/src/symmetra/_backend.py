"""Select the compiled search core, falling back to pure Python.

Set ``SYMMETRA_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _bnb_py

BACKEND = "python"
search = _bnb_py.search

if not os.environ.get("SYMMETRA_PURE_PYTHON"):
    try:
        from . import _bnb
    except ImportError:  # extension not built
        _bnb = None
    else:
        BACKEND = "cython"
        search = _bnb.search
else:
    _bnb = None


def get_search(backend=None):
    """Return the search function for ``backend`` ("cython", "python" or None)."""
    if backend is None:
        return search
    if backend == "python":
        return _bnb_py.search
    if backend == "cython":
        if _bnb is None:
            raise RuntimeError("compiled search core is not available")
        return _bnb.search
    raise ValueError(f"unknown backend {backend!r}")
