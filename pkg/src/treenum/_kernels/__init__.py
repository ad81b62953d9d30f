"""Hot kernels: compiled ``_core`` when built, ``_pure`` otherwise.

Set ``TREENUM_PURE=1`` to force the pure-Python versions.
"""

import os

from . import _pure

BACKEND = "pure"

if os.environ.get("TREENUM_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _core as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _pure
else:
    _impl = _pure

deliver = _impl.deliver
lowlink_bridges = _impl.lowlink_bridges
removal_bridges = _impl.removal_bridges

__all__ = ["BACKEND", "deliver", "lowlink_bridges", "removal_bridges"]
