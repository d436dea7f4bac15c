"""Kernel backend selection.

Imports the compiled kernel when it was built, otherwise the pure-Python
implementation.  Set FIBERWALK_PURE=1 to force the fallback (used by the
benchmark and the parity tests).
"""

import os

from . import pure

if os.environ.get("FIBERWALK_PURE"):
    impl = pure
else:
    try:
        from . import _fast as impl  # type: ignore[attr-defined]
    except ImportError:
        impl = pure

BACKEND = impl.BACKEND
pack_moves = impl.pack_moves
neighbors = impl.neighbors
neighbors_signed = impl.neighbors_signed
forward_neighbors = impl.forward_neighbors
component = impl.component
