"""Backend selection for the integer elimination kernels.

The compiled extension is used when it was built; otherwise, or when
``QWDIST_PURE_PYTHON=1`` is set, the pure-Python module is used.  Both
expose ``rref(rows, ncols)``, ``nullspace(rows, ncols)``,
``restrict(basis, rows, ncols)`` and ``restrict_pair(basis, a, b, n)``.
"""
import os

from qwdist import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("QWDIST_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from qwdist import _kernels as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

rref = _impl.rref
nullspace = _impl.nullspace
restrict = _impl.restrict
restrict_pair = _impl.restrict_pair
