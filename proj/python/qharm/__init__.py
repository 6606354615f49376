"""Harmonic analysis on the quantum groups SU_q(2) and E_q(2)."""

from ._qharm import *  # noqa: F401,F403
from ._qharm import __doc__  # noqa: F401
