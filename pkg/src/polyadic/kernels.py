"""Backend selection for the exhaustive-search kernels.

The compiled extension is used when it was built; otherwise the numpy
implementation is used.  Set ``POLYADIC_PURE=1`` to force the fallback.
"""

import os

if os.environ.get("POLYADIC_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
latin_violation = _impl.latin_violation
assoc_violation = _impl.assoc_violation
hom_violation = _impl.hom_violation
enumerate_hom_maps = _impl.enumerate_hom_maps


def available_backends():
    """Kernel modules importable in this environment, compiled first."""
    mods = []
    try:
        from . import _kernels
        mods.append(_kernels)
    except ImportError:
        pass
    from . import _kernels_py
    mods.append(_kernels_py)
    return mods


def budget(default):
    """Enumeration cap; ``POLYADIC_BUDGET`` overrides every default."""
    env = os.environ.get("POLYADIC_BUDGET")
    if env:
        return int(float(env))
    return default
