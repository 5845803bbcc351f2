"""Backend selection for the oracle's hot loops.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
numpy/pure-Python ``_pykernels`` module.  Setting ``DGSCERT_PURE_PYTHON=1``
forces the fallback.

Both backends expose:

``charpoly_keys(n, masks)``
    int64 array, one row per edge mask: the non-leading coefficients of the
    characteristic polynomials of A and of its complement.
``canonical_masks(n, masks)``
    uint64 array of canonical edge masks (equal iff the graphs are isomorphic).
"""

from __future__ import annotations

import importlib
import os
from types import ModuleType

from . import _pykernels

MAX_N = _pykernels.MAX_N


def load_backend(name: str) -> ModuleType:
    if name == "python":
        return _pykernels
    if name == "cython":
        return importlib.import_module("dgscert._ckernels")
    raise ValueError(f"unknown kernel backend {name!r}")


def available_backends() -> list[str]:
    names = ["python"]
    try:
        load_backend("cython")
    except ImportError:
        pass
    else:
        names.insert(0, "cython")
    return names


if os.environ.get("DGSCERT_PURE_PYTHON"):
    BACKEND = "python"
else:
    BACKEND = available_backends()[0]

_impl = load_backend(BACKEND)
charpoly_keys = _impl.charpoly_keys
canonical_masks = _impl.canonical_masks
