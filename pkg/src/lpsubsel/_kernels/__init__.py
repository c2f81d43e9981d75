"""Hot-kernel backend selection.

Prefers the compiled extension; falls back to pure NumPy/Python when the
extension is absent or LPSUBSEL_PURE_PYTHON is set. Both backends consume
caller-supplied randomness and are bit-identical for a fixed seed.
"""

import os

from . import pyfallback

if os.environ.get("LPSUBSEL_PURE_PYTHON"):
    _impl = pyfallback
else:
    try:
        from . import _native as _impl
    except ImportError:
        _impl = pyfallback

BACKEND = _impl.BACKEND
run_walks = _impl.run_walks
update_bank = _impl.update_bank


def available_backends():
    """Importable kernel modules keyed by backend name."""
    backends = {pyfallback.BACKEND: pyfallback}
    try:
        from . import _native
        backends[_native.BACKEND] = _native
    except ImportError:
        pass
    return backends
