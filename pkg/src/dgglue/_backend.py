"""Selects the elimination kernels at import time.

The compiled extension is used when it was built and ``DGGLUE_PURE_PYTHON``
is unset; otherwise the pure-Python kernels are used.  Both produce
identical ranks; the compiled int64 path hands over to the big-integer path
when it detects overflow.
"""

import os

from . import _pykernels

_ext = None
if not os.environ.get("DGGLUE_PURE_PYTHON"):
    try:
        from . import _kernels as _ext
    except ImportError:
        _ext = None

BACKEND = "compiled" if _ext is not None else "python"


_BIG_PRIME = 2147483647


def rank_int(rows, ncols):
    if _ext is not None:
        r = _ext.rank_int64(rows, ncols)
        if r >= 0:
            return r
        # the rank mod p never exceeds the rational rank, so a full rank mod p is exact
        red = [{k: v % _BIG_PRIME for k, v in row.items() if v % _BIG_PRIME} for row in rows]
        r = _ext.rank_mod_p(red, ncols, _BIG_PRIME)
        if r == min(len(rows), ncols):
            return r
    return _pykernels.rank_int(rows, ncols)


def rank_mod_p(rows, ncols, p):
    if _ext is not None and p < (1 << 31):
        return _ext.rank_mod_p(rows, ncols, p)
    return _pykernels.rank_mod_p(rows, ncols, p)
