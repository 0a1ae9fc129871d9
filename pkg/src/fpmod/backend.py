"""Select the integer normal-form kernel at import time.

Prefers the compiled Cython kernel; falls back to the pure-Python port.
Set FPMOD_PURE=1 to force the pure backend (used by the benchmark and
the determinism tests).
"""

import os

if os.environ.get("FPMOD_PURE"):
    from . import _snf_pure as _impl

    BACKEND = "pure"
else:
    try:
        from . import _snf_cy as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _snf_pure as _impl

        BACKEND = "pure"

hnf_int = _impl.hnf_int
snf_int = _impl.snf_int
