"""Embedding kernels used by the miner's inner loops.

The compiled extension is used when it was built; otherwise, or when
``CIGMINE_PURE_PYTHON`` is set to a non-empty value, the pure-Python module
is used. ``BACKEND`` names the active one.
"""

import os

from . import _pykernels as python

compiled = None
if not os.environ.get("CIGMINE_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled
    except ImportError:  # extension not built
        compiled = None

_active = compiled if compiled is not None else python
BACKEND = "cython" if compiled is not None else "python"

extensions = _active.extensions
induced = _active.induced

__all__ = ["BACKEND", "compiled", "python", "extensions", "induced"]
