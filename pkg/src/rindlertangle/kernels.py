"""Backend selection for the hot numeric kernels.

The convex-roof search spends essentially all of its time in
``roof_objective``/``roof_descend``, so those carry a numba-compiled
implementation. Setting the environment variable ``RINDLERTANGLE_NO_NUMBA``
to any non-empty value forces the pure-numpy fallback; the fallback is also
used automatically when numba cannot be imported. ``benchmarks/bench_kernels.py``
times the two paths against each other.
"""

import os

_FORCE_NUMPY = bool(os.environ.get("RINDLERTANGLE_NO_NUMBA"))

if _FORCE_NUMPY:
    from . import _kernels_numpy as _impl

    _BACKEND = "numpy"
else:
    try:
        from . import _kernels_numba as _impl

        _BACKEND = "numba"
    except ImportError:
        from . import _kernels_numpy as _impl

        _BACKEND = "numpy"


def backend_name():
    """Active kernel backend: 'numba' or 'numpy'."""
    return _BACKEND


hyperdet_batch = _impl.hyperdet_batch
roof_objective = _impl.roof_objective
roof_descend = _impl.roof_descend
