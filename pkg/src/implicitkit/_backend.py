"""Kernel backend selection.

The compiled ``_kernels`` extension is used when it imports; setting the
environment variable ``IMPLICITKIT_PURE=1`` forces the pure-Python fallback.
"""

import os

from . import _fallback

kernels = _fallback
if not os.environ.get("IMPLICITKIT_PURE"):
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:  # extension not built
        kernels = _fallback

BACKEND = kernels.NAME
rref_mod_p = kernels.rref_mod_p
det_linear_mod_p = kernels.det_linear_mod_p


def det_linear_int(entries):
    """Integer determinant of linear forms (pure Python; no overflow)."""
    return _fallback.det_linear_mod_p(entries, 0)
