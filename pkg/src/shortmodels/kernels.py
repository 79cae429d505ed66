"""Prime-field hot loops, compiled when available.

The compiled extension ``_ckernels`` is used unless it failed to build or the
environment variable ``SHORTMODELS_PURE_PYTHON`` is set to a non-empty value,
in which case the pure-Python module is used.  ``BACKEND`` records the choice.
"""

import os

from . import _pykernels

# Values above this bound could overflow the 64-bit accumulators of the
# compiled code; such moduli are always routed to the Python versions.
C_MAX_MODULUS = 1 << 31


def _load():
    if os.environ.get("SHORTMODELS_PURE_PYTHON"):
        return None
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels


_compiled = _load()
BACKEND = "cython" if _compiled is not None else "python"


def _pick(p):
    if _compiled is not None and p < C_MAX_MODULUS:
        return _compiled
    return _pykernels


def rref_mod_p(rows, ncols, p):
    return _pick(p).rref_mod_p(rows, ncols, p)


def rank_mod_p(rows, ncols, p):
    return _pick(p).rank_mod_p(rows, ncols, p)


def polmul_mod_p(a, b, p):
    return _pick(p).polmul_mod_p(a, b, p)


def series_mul_mod_p(a, b, m, p):
    return _pick(p).series_mul_mod_p(a, b, m, p)
