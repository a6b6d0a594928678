"""Reverse-engineered control fields for two-level quantum systems.

Thin Python layer over the C++ core: trajectory families, constraint
validation, analytic field synthesis, and Schrodinger integration with and
without the rotating-wave approximation.
"""

from ._revfield import *  # noqa: F401,F403
from ._revfield import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
