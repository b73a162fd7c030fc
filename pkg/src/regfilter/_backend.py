"""Kernel backend selection.

Hot numerical loops live in :mod:`regfilter.kernels` in two variants: a
numba ``@njit`` version and a pure-numpy one.  The active variant is chosen
once, at import time, from the ``REGFILTER_BACKEND`` environment variable:

* ``auto`` (or unset) -- use numba when importable, else fall back to numpy;
* ``numba``           -- require numba, raise if it is missing;
* ``numpy``           -- force the pure-numpy path.
"""

import os

_choice = os.environ.get("REGFILTER_BACKEND", "auto").strip().lower()

if _choice in ("", "auto"):
    try:
        import numba  # noqa: F401

        BACKEND = "numba"
    except ImportError:
        BACKEND = "numpy"
elif _choice == "numba":
    import numba  # noqa: F401

    BACKEND = "numba"
elif _choice == "numpy":
    BACKEND = "numpy"
else:
    raise ValueError(
        f"REGFILTER_BACKEND={_choice!r} not understood (use auto, numba or numpy)"
    )

USING_NUMBA = BACKEND == "numba"
