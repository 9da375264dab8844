"""Kernel selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise, or
when the environment variable ``HDCHECKERBOARD_PURE_PYTHON`` is set to a
non-empty value, the pure-Python ``_pykernels`` twin is used.
"""
from __future__ import annotations

import importlib
import os
from types import ModuleType

from . import _pykernels


def _load_compiled() -> ModuleType | None:
    try:
        return importlib.import_module("hdcheckerboard._ckernels")
    except ImportError:
        return None


compiled = _load_compiled()

if compiled is not None and not os.environ.get("HDCHECKERBOARD_PURE_PYTHON"):
    kernels: ModuleType = compiled
else:
    kernels = _pykernels

BACKEND = kernels.NAME


def get_kernels(name: str | None = None) -> ModuleType:
    """Return the kernel module by name (``"cython"`` or ``"python"``)."""
    if name is None:
        return kernels
    if name == "python":
        return _pykernels
    if name == "cython":
        if compiled is None:
            raise RuntimeError("compiled kernels are not built")
        return compiled
    raise ValueError(f"unknown kernel backend {name!r}")


def dp_counts(n_links, steps, start, factor, mul, backend=None):
    mod = get_kernels(backend)
    try:
        return mod.dp_counts(n_links, steps, start, factor, mul)
    except OverflowError:
        return _pykernels.dp_counts(n_links, steps, start, factor, mul)


def decomposition_scan(radius_halves, backend=None):
    return get_kernels(backend).decomposition_scan(radius_halves)
