"""Select the Durbin–Levinson backend at import time.

The compiled ``_dlcore`` extension is used when it was built; otherwise the
NumPy fallback. Set ``HYPERDECAY_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _dlpy

if os.environ.get("HYPERDECAY_PURE_PYTHON", "") not in ("", "0"):
    _impl = _dlpy
else:
    try:
        from . import _dlcore as _impl
    except ImportError:  # extension not built
        _impl = _dlpy

BACKEND = "cython" if _impl is not _dlpy else "python"

levinson = _impl.levinson
innovations = _impl.innovations
simulate = _impl.simulate
