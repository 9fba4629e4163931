"""Kernel backend selection.

The compiled extension accelerates the hot game-tree loops; the pure
Python module is a drop-in twin.  Set LINKGAME_PURE=1 to force the
fallback (the benchmark and the backend-parity tests rely on having
both importable).
"""

from __future__ import annotations

import os

from . import _kernel_py as pure

if os.environ.get("LINKGAME_PURE") == "1":
    active = pure
else:
    try:
        from . import _kernel as active  # type: ignore[attr-defined]
    except ImportError:
        active = pure

BACKEND = active.BACKEND

fraction_nets = active.fraction_nets
splittable_nets = active.splittable_nets
all_terminals_splittable = active.all_terminals_splittable
solve_sizes = active.solve_sizes
solve_concrete = active.solve_concrete


def backends() -> dict:
    """All importable kernel backends, keyed by name."""
    found = {"python": pure}
    try:
        from . import _kernel  # type: ignore[attr-defined]

        found["compiled"] = _kernel
    except ImportError:
        pass
    return found
