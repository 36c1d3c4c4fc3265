"""Backend selection for the inner-loop kernels.

Imports the compiled extension when available, otherwise the pure-Python
fallback.  Set ``QONTOLOGY_PURE=1`` in the environment to force the fallback
even when the extension is built (used by the benchmark and the parity tests).
"""

from __future__ import annotations

import os

if os.environ.get("QONTOLOGY_PURE", "") not in ("", "0"):
    from . import _fallback as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _fallback as _impl

measurement_block = _impl.measurement_block
amplitude_table = _impl.amplitude_table
BACKEND = _impl.BACKEND_NAME


def backend() -> str:
    """Name of the active kernel backend: "compiled" or "pure"."""
    return BACKEND
