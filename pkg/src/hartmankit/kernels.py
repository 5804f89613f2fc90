"""Backend selection for the scattering kernels.

The compiled extension is used when it imports; otherwise the numpy
versions are used. Set ``HARTMANKIT_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

if os.environ.get("HARTMANKIT_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

slab_amplitudes = _impl.slab_amplitudes
stack_amplitudes = _impl.stack_amplitudes


def available_backends():
    """Map backend name to kernel module for every backend that imports."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out
