"""Backend selection for the PBW multiplication kernel.

The compiled extension ``qpd._kernel`` is used when it has been built; the
pure-Python twin ``qpd._kernel_py`` is the fallback.  Setting the environment
variable ``QPD_PURE_PYTHON=1`` forces the fallback.
"""

import os

if os.environ.get("QPD_PURE_PYTHON"):
    from qpd import _kernel_py as _impl
    BACKEND = "python"
else:
    try:
        from qpd import _kernel as _impl
        BACKEND = "cython"
    except ImportError:
        from qpd import _kernel_py as _impl
        BACKEND = "python"

Tables = _impl.Tables
mul = _impl.mul
mono_mul = _impl.mono_mul
reduce_rho = _impl.reduce_rho
