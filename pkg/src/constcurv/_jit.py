"""Switch between numba-compiled kernels and the numpy fallback.

Set ``CONSTCURV_JIT=0`` to force the numpy path.  The flag is read once at
import time; :func:`set_backend` changes it afterwards (tests, benchmarks).
"""

import os

try:
    import numba  # noqa: F401
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

_state = {"numba": HAVE_NUMBA and os.environ.get("CONSTCURV_JIT", "1").lower() not in ("0", "false", "no")}


def use_numba() -> bool:
    return _state["numba"]


def set_backend(name: str) -> None:
    if name not in ("numba", "numpy"):
        raise ValueError("backend must be 'numba' or 'numpy'")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    _state["numba"] = name == "numba"


def backend() -> str:
    return "numba" if use_numba() else "numpy"


if HAVE_NUMBA:
    from numba import njit
else:  # pragma: no cover
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f
