"""Kernel lane selection.

The hot kernel (profile evaluation and minimum refinement for the shifted
second moment) exists twice: a Cython extension and a pure-numpy reference
with identical semantics.  The compiled lane is preferred when importable;
set ``RINGVAR_KERNEL=python`` or ``RINGVAR_KERNEL=compiled`` to force one.
"""

import os

from . import _reference

_requested = os.environ.get("RINGVAR_KERNEL", "").strip().lower()

if _requested == "python":
    _impl = _reference
elif _requested == "compiled":
    from . import _compiled as _impl
else:
    try:
        from . import _compiled as _impl
    except ImportError:
        _impl = _reference

profile_curves = _impl.profile_curves
point_eval = _impl.point_eval
refine_minimum = _impl.refine_minimum
SLOPE_TOL_SCALE = _impl.SLOPE_TOL_SCALE


def backend() -> str:
    """Name of the active kernel lane ('compiled' or 'python')."""
    return _impl.BACKEND
