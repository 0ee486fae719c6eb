"""Backend selection for the F_p search kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module.  ``HOCHPROD_KERNELS=python`` forces the fallback.
"""
from __future__ import annotations

import importlib
import os

from . import _kernels_py

_BACKENDS = {"python": _kernels_py}
try:
    _BACKENDS["cython"] = importlib.import_module("hochprod._kernels")
except ImportError:  # extension not built
    pass

_active = _BACKENDS.get("cython", _kernels_py)
if os.environ.get("HOCHPROD_KERNELS") == "python":
    _active = _kernels_py


def available_backends():
    return sorted(_BACKENDS)


def backend_name():
    return _active.BACKEND


def use_backend(name):
    """Switch the active backend; returns the previous name."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"kernel backend {name!r} not available")
    previous = _active.BACKEND
    _active = _BACKENDS[name]
    return previous


def multiplicative_vectors(T, unit, n, p, limit=0):
    return _active.multiplicative_vectors(list(T), list(unit), n, p, limit)


def morphism_search(cA, uA, cB, uB, n, p, order=None, limit=0):
    return _active.morphism_search(list(cA), list(uA), list(cB), list(uB), n, p,
                                   None if order is None else list(order), limit)
