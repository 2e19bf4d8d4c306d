"""Exact distribution evolution and mixing-time analysis for finite Markov chains."""

from mixlab._core import *  # noqa: F401,F403
from mixlab._core import __version__  # noqa: F401
