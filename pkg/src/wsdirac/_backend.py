"""Select the kernel implementation once, at import.

``WSDIRAC_BACKEND=python`` forces the fallback even when the extension is
built (used by the benchmark and the backend-equivalence tests).
"""
import os

from . import _pykernels

python = _pykernels
try:
    from . import _core as compiled
except ImportError:  # extension not built
    compiled = None

if compiled is not None and os.environ.get("WSDIRAC_BACKEND", "").lower() != "python":
    kernels = compiled
    NAME = "compiled"
else:
    kernels = python
    NAME = "python"

hyp2f1_series = kernels.hyp2f1_series
hyp2f1_series_many = kernels.hyp2f1_series_many
rk4_dirac = kernels.rk4_dirac
