"""Hot-loop kernels with a compiled core and a pure-Python fallback.

The compiled extension is used when it was built; otherwise the package
silently falls back to the pure-Python module. Both expose the same
functions with the same semantics.
"""
from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

DEFAULT_BACKEND = "cython" if _ckernels is not None else "python"


def get_backend(name=None):
    """Return the kernel module for ``name`` (default: fastest available)."""
    if name is None:
        name = DEFAULT_BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"kernel backend {name!r} unavailable; have {sorted(BACKENDS)}"
        ) from None
