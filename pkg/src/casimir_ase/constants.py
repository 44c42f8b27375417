"""Shared physical and mathematical constants (SI units throughout)."""

import math

from scipy.constants import c as C_LIGHT          # speed of light [m/s]
from scipy.constants import epsilon_0 as EPS0     # vacuum permittivity [F/m]
from scipy.constants import hbar as HBAR          # reduced Planck constant [J s]
from scipy.constants import k as K_B              # Boltzmann constant [J/K]

PI = math.pi

# Riemann zeta values entering the static term and the phonon integral.
ZETA3 = 1.2020569031595943
ZETA5 = 1.0369277551433699

__all__ = ["C_LIGHT", "EPS0", "HBAR", "K_B", "PI", "ZETA3", "ZETA5"]
