"""Kernel backend selection.

The compiled kernel is preferred when it imported cleanly; the pure-Python
twin is the fallback.  ``PAINTSHOP_KERNEL=py`` or ``=c`` forces a backend
(useful for the parity tests and the kernel benchmark).
"""

import os

from . import _kernel_py

_forced = os.environ.get("PAINTSHOP_KERNEL", "").strip().lower()
if _forced not in ("", "c", "py"):
    raise RuntimeError(f"PAINTSHOP_KERNEL must be 'c' or 'py', got {_forced!r}")

if _forced == "py":
    _impl = _kernel_py
    BACKEND = "py"
else:
    try:
        from . import _kernel_cy as _impl  # type: ignore[attr-defined]

        BACKEND = "c"
    except ImportError:
        if _forced == "c":
            raise
        _impl = _kernel_py
        BACKEND = "py"

step = _impl.step
compute_mask = _impl.compute_mask
encode_obs = _impl.encode_obs
replay_stats = _impl.replay_stats

KIND_RETRIEVE = _kernel_py.KIND_RETRIEVE
KIND_STORE = _kernel_py.KIND_STORE
INVALID_REWARD = _kernel_py.INVALID_REWARD
