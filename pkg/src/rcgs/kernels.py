"""Backend selection for the enforce kernel.

The compiled extension is preferred; ``RCGS_PURE_PYTHON=1`` or a missing
build selects the pure-Python twin.  Both take the flat ``array('q')``
buffers built by :func:`rcgs.checker.enforce`.
"""
import os

from rcgs import _enforce_py

try:
    from rcgs import _enforce as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"python": _enforce_py.enforce_scan}
if _compiled is not None:
    BACKENDS["cython"] = _compiled.enforce_scan

if _compiled is not None and not os.environ.get("RCGS_PURE_PYTHON"):
    BACKEND = "cython"
else:
    BACKEND = "python"


def get_kernel(name: str | None = None):
    """Kernel by backend name; ``None`` gives the import-time choice."""
    name = name or BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None
