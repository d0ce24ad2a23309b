"""Frequency-jump squeezing of a trapped-atom oscillator.

Frequencies are angular (rad/s) except where a name ends in ``_hz``.
"""

from ._fjsq import *  # noqa: F401,F403
from ._fjsq import __doc__  # noqa: F401

__version__ = "0.1.0"
