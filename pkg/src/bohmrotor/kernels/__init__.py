"""Numerical kernel backends.

Two interchangeable implementations of the hot loops live here: a jitted
one (numba) and a vectorized pure-numpy one. Selection happens once at
import time from the BOHMROTOR_BACKEND environment variable:

  auto   (default) use numba when importable, else fall back to numpy
  numba  require the jitted backend, fail loudly if unavailable
  numpy  skip numba entirely

``active`` is the chosen module; ``backend_name()`` reports which one won.
``get_backend(name)`` imports a specific backend on demand regardless of
the environment choice (used by the parity tests and the benchmark).
"""
from __future__ import annotations

import importlib
import os

_CHOICES = ("auto", "numba", "numpy")


def get_backend(name):
    """Import and return one backend module by name ('numba' or 'numpy')."""
    if name not in ("numba", "numpy"):
        raise ValueError("backend must be 'numba' or 'numpy', got %r" % (name,))
    return importlib.import_module("._" + name, __name__)


def _select():
    requested = os.environ.get("BOHMROTOR_BACKEND", "auto").strip().lower()
    if requested not in _CHOICES:
        raise ImportError(
            "BOHMROTOR_BACKEND must be one of %s, got %r" % (_CHOICES, requested)
        )
    if requested == "numpy":
        return get_backend("numpy")
    if requested == "numba":
        return get_backend("numba")
    try:
        return get_backend("numba")
    except ImportError:
        return get_backend("numpy")


active = _select()


def backend_name():
    return active.BACKEND
