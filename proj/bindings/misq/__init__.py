"""Modulated infinite-server queue toolkit: exact Poisson-mean evaluation,
two-route simulation, attainable intervals and large-deviations numerics."""

from ._misq import *  # noqa: F401,F403
from ._misq import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
