"""Backend selection for the hot kernels.

The compiled extension is used when it was built; set ``BARTREE_PURE=1`` to
force the pure-Python fallback.
"""
from __future__ import annotations

import os

from . import _pure

try:
    from . import _speedups
except ImportError:  # extension not built
    _speedups = None

if _speedups is not None and not os.environ.get("BARTREE_PURE"):
    scan_markup = _speedups.scan_markup
    match_pairs = _speedups.match_pairs
    BACKEND = "cython"
else:
    scan_markup = _pure.scan_markup
    match_pairs = _pure.match_pairs
    BACKEND = "python"

TEXT = _pure.TEXT
OPEN = _pure.OPEN
CLOSE = _pure.CLOSE


def available_backends() -> dict[str, object]:
    """Map backend name to kernel module, for benchmarking and tests."""
    backends: dict[str, object] = {"python": _pure}
    if _speedups is not None:
        backends["cython"] = _speedups
    return backends
