"""Deterministic k-site message-passing simulator with exact bit accounting."""

from msgpass._core import *  # noqa: F401,F403
from msgpass._core import __version__  # noqa: F401
