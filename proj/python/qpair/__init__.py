"""Exact intercept-resend simulations for BB84 and its entangled-pair variant."""

from ._core import *  # noqa: F401,F403
from ._core import InvariantViolation  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
