"""Pair-sum kernels with a compiled core and a NumPy fallback.

The compiled extension (Cython) is preferred when present; set
DIRCAP_NO_EXT=1 to force the NumPy implementation.  Both backends expose
the same functions and agree to floating-point roundoff; see
tests/test_kernels.py and benchmarks/bench_kernels.py.
"""

import os

from . import _slow

if os.environ.get("DIRCAP_NO_EXT"):
    _impl = _slow
else:
    try:
        from . import _fast as _impl
    except ImportError:
        _impl = _slow

BACKEND = _impl.BACKEND

douglas_offdiag = _impl.douglas_offdiag
local_row = _impl.local_row
local_rows = _impl.local_rows
lemma6_offdiag = _impl.lemma6_offdiag
crs_row = _impl.crs_row
gamma_split = _impl.gamma_split
