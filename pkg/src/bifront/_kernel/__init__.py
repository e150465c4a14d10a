"""Float LP kernel selection.

Imports the compiled simplex when the extension built, otherwise the
pure-Python mirror. Both produce bit-identical results; the environment
variable BIFRONT_FORCE_PURE_KERNEL=1 forces the fallback, which the
kernel benchmark and the equivalence tests use.
"""

import os

from . import _purelp

OPTIMAL = _purelp.OPTIMAL
INFEASIBLE = _purelp.INFEASIBLE
STALLED = _purelp.STALLED
UNBOUNDED = _purelp.UNBOUNDED

if os.environ.get("BIFRONT_FORCE_PURE_KERNEL") == "1":
    _impl = _purelp
else:
    try:
        from . import _fastlp as _impl
    except ImportError:
        _impl = _purelp

solve_bounded_lp = _impl.solve_bounded_lp
KERNEL_NAME = _impl.KERNEL_NAME


def available_kernels():
    """Name -> solver callable for every importable kernel."""
    kernels = {"pure": _purelp.solve_bounded_lp}
    try:
        from . import _fastlp

        kernels["compiled"] = _fastlp.solve_bounded_lp
    except ImportError:
        pass
    return kernels
