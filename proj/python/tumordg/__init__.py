"""Structure-preserving upwind-DG solver for a phase-field tumor growth model.

The C++ core exposes the mesh generator, the P0/P1 projection operators,
the pointwise model functions, the edge-based upwind form and both the
DG and FE time steppers; `run` drives a full simulation from a RunConfig.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401
