"""Hot-loop dispatch: compiled kernels when built, pure Python otherwise.

Set ``TROPELIM_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"

if not os.environ.get("TROPELIM_PURE_PYTHON"):
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py
else:
    _impl = _kernels_py

evaluate_facets = _impl.evaluate_facets
subfaces = _impl.subfaces
box_lattice_points = _impl.box_lattice_points
ray_crossings = _impl.ray_crossings
horizon_ridges = _impl.horizon_ridges
