"""Backend selection for the reduction kernel.

Two implementations of the polynomial division loop exist: a numba-compiled
one (prime characteristic only, int64 coefficients) and a pure-numpy one
that also carries exact rationals.  The environment variable REESPOW_BACKEND
pins the choice: "numba" | "numpy" | "auto" (default).  Characteristic zero
always runs on the numpy path regardless of the flag.
"""

from __future__ import annotations

import os

try:
    import numba  # noqa: F401

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

_ENV_VAR = "REESPOW_BACKEND"
_FORCED: str | None = None


def configure(choice: str | None) -> None:
    """Override backend selection in-process (None restores env control)."""
    global _FORCED
    if choice is not None and choice not in ("numba", "numpy", "auto"):
        raise ValueError(f"unknown backend {choice!r}")
    _FORCED = choice


def selected() -> str:
    """Resolve the active backend name for prime characteristic."""
    choice = _FORCED if _FORCED is not None else os.environ.get(_ENV_VAR, "auto")
    if choice == "numba" and not HAS_NUMBA:
        raise RuntimeError("REESPOW_BACKEND=numba but numba is not importable")
    if choice == "auto":
        return "numba" if HAS_NUMBA else "numpy"
    return choice


def use_numba(char: int) -> bool:
    """True when the compiled kernel should serve this characteristic."""
    return char > 0 and selected() == "numba"
