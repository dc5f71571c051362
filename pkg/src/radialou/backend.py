"""Selects the stepping-kernel backend at import time.

The compiled extension (``radialou._accel``) is preferred; the pure-numpy
module is the fallback and the reference semantics. Set the environment
variable ``RADIALOU_PURE=1`` before import to force the fallback, e.g. to
benchmark one against the other.
"""

import os

from . import _pure

if os.environ.get("RADIALOU_PURE", "") == "1":
    _impl = _pure
else:
    try:
        from . import _accel as _impl
    except ImportError:
        _impl = _pure

NAME = _impl.NAME

fp_explicit_steps = _impl.fp_explicit_steps
sde_evolve = _impl.sde_evolve
sde_path = _impl.sde_path


def backend_name():
    """Name of the active stepping backend: "cython" or "numpy"."""
    return NAME
