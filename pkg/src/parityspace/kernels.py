"""Select the compiled displacement kernel when it is importable.

Set ``PARITYSPACE_PURE=1`` to force the numpy implementation.
"""
import os

from . import _kernels_py

BACKEND = "numpy"
displacement_blocks = _kernels_py.displacement_blocks

if os.environ.get("PARITYSPACE_PURE") != "1":
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        displacement_blocks = _compiled.displacement_blocks
        BACKEND = "cython"


def backends():
    """Every importable implementation, keyed by name."""
    found = {"numpy": _kernels_py.displacement_blocks}
    try:
        from . import _kernels as _compiled
    except ImportError:
        return found
    found["cython"] = _compiled.displacement_blocks
    return found
