"""Telephone-model information freshness: simulation, schedule synthesis and
brute-force oracles, backed by the C++ core."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__doc__ = _core_doc
__version__ = "0.1.0"
