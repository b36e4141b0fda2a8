"""NV-center spin physics in the weak orthogonal-field regime.

Energies are in MHz, magnetic fields in mT, electric fields in V/cm and
times in microseconds.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
