"""Velocity fields, trajectories and arrival times for a free Dirac
particle in two spatial dimensions, at graphene-scale units.

The package is organized bottom-up:

* :mod:`dbbdirac.units` - constants and the dispersion relation;
* :mod:`dbbdirac.special` - Bessel and error function wrappers;
* :mod:`dbbdirac.spinor` - two-component values, density and flux;
* :mod:`dbbdirac.stationary` - single-momentum angular-momentum states;
* :mod:`dbbdirac.packet` - Gaussian superpositions and their velocity field;
* :mod:`dbbdirac.observables` - norms, energy moments, characteristic radii;
* :mod:`dbbdirac.dynamics` - trajectory integration, loop counts, decay times;
* :mod:`dbbdirac.arrival` - times of flight and arrival-time densities;
* :mod:`dbbdirac.goldens` - frozen reference values and their checker;
* :mod:`dbbdirac.cli` - the ``dbbdirac`` command-line tool.
"""

from .units import C, HBAR, CONSTANTS, energy_of_momentum
from .stationary import StationaryState
from .packet import PacketSpec, QuadratureConfig
from .arrival import DetectorSpec

__version__ = "0.1.0"

__all__ = ["C", "HBAR", "CONSTANTS", "energy_of_momentum", "StationaryState",
           "PacketSpec", "QuadratureConfig", "DetectorSpec", "__version__"]
