"""Physical constants shared across the package (SI units)."""

import math

from scipy.constants import c as SPEED_OF_LIGHT
from scipy.constants import epsilon_0 as VACUUM_PERMITTIVITY
from scipy.constants import hbar as HBAR

TWO_PI = 2.0 * math.pi

__all__ = ["SPEED_OF_LIGHT", "VACUUM_PERMITTIVITY", "HBAR", "TWO_PI"]
