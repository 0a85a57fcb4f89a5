"""Supersonic divergent-nozzle potential-flow laboratory.

Thin Python layer over the C++ core: background solves, radial marching of
the axisymmetric potential equation, and the weighted-energy diagnostics.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
