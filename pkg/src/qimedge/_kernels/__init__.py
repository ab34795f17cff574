"""Kernel backend selection.

Prefers the compiled Cython core and falls back to the numpy
implementation when the extension is not built.  Set QIMEDGE_KERNELS to
``numpy`` or ``cython`` to force a backend (forcing an unavailable one
raises at import).
"""

import os

_forced = os.environ.get("QIMEDGE_KERNELS", "")
if _forced not in ("", "cython", "numpy"):
    raise RuntimeError(f"QIMEDGE_KERNELS must be 'cython' or 'numpy', got {_forced!r}")

if _forced == "numpy":
    from . import _numpy as _impl

    BACKEND = "numpy"
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        if _forced == "cython":
            raise RuntimeError(
                "QIMEDGE_KERNELS=cython but the compiled core is not built; "
                "run 'python setup.py build_ext --inplace' or reinstall"
            ) from None
        from . import _numpy as _impl

        BACKEND = "numpy"

apply_2x2 = _impl.apply_2x2
apply_x = _impl.apply_x
apply_controlled_ry = _impl.apply_controlled_ry
decrement = _impl.decrement
born_p1 = _impl.born_p1
collapse = _impl.collapse
