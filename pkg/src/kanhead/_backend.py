"""Kernel backend selection.

The compiled extension is preferred; the pure-numpy fallback is used when
it is missing. KANHEAD_BACKEND=python|cython forces a choice.
"""

import os

_forced = os.environ.get("KANHEAD_BACKEND")

if _forced == "python":
    from . import _kernels_py as impl
elif _forced == "cython":
    from . import _kernels as impl  # type: ignore[no-redef]
elif _forced is None:
    try:
        from . import _kernels as impl  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as impl
else:
    raise ImportError(f"unknown KANHEAD_BACKEND value: {_forced!r}")

BACKEND = impl.NAME
