"""Kernel selection: the compiled Cython core when importable, else the pure twin.

``BLOCKSENS_PURE=1`` in the environment forces the pure kernels even when the
extension is built (used by the parity tests and the benchmark).
"""

from __future__ import annotations

import os

from . import pure

if os.environ.get("BLOCKSENS_PURE") == "1":
    impl = pure
    HAVE_FAST = False
else:
    try:
        from . import _fastcore as impl  # type: ignore[no-redef]

        HAVE_FAST = True
    except ImportError:
        impl = pure
        HAVE_FAST = False


def active_kernel() -> str:
    return impl.KERNEL_NAME
