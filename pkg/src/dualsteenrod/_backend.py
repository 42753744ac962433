"""Kernel backend selection.

Prefers the compiled Cython kernel; falls back to the pure-Python twin.
Set ``DUALSTEENROD_BACKEND=python`` to force the fallback (used by the
backend-equivalence tests and the benchmark).
"""

from __future__ import annotations

import os

if os.environ.get("DUALSTEENROD_BACKEND", "").lower() in {"py", "python"}:
    from . import _kernel_py as kernel
else:
    try:
        from . import _kernel as kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as kernel

BACKEND_NAME: str = kernel.BACKEND_NAME
UNIT_MONO = kernel.UNIT_MONO
mask_merge_sign = kernel.mask_merge_sign
mono_mul = kernel.mono_mul
mono_degree = kernel.mono_degree
elem_addmul = kernel.elem_addmul
elem_scale = kernel.elem_scale
elem_mul = kernel.elem_mul
tensor_mul = kernel.tensor_mul
