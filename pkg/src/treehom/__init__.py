"""Exact tree-homomorphism counting and an extremal-inequality verification
harness."""

from .graphcore import *  # noqa: F401,F403
from .homcount import *  # noqa: F401,F403

__version__ = "0.1.0"
