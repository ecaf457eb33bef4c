"""Hot kernels with two interchangeable backends.

The compiled Cython module is preferred when it imported cleanly; the numpy
implementation is the fallback and the reference. Set LATCOLOR_KERNELS=pure
or =compiled to force a backend (forcing "compiled" when the extension is
missing raises, which is the point).
"""

from __future__ import annotations

import os

from latcolor.kernels import _pure

_forced = os.environ.get("LATCOLOR_KERNELS")

if _forced == "pure":
    _impl = _pure
    BACKEND = "pure"
elif _forced == "compiled":
    from latcolor.kernels import _speed as _impl  # type: ignore[no-redef]

    BACKEND = "compiled"
else:
    try:
        from latcolor.kernels import _speed as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _pure
        BACKEND = "pure"

box_edges = _impl.box_edges
conflict_pairs = _impl.conflict_pairs
dsatur_chromatic = _impl.dsatur_chromatic
max_independent_set = _impl.max_independent_set
