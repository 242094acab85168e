"""Physical constants (SI, CODATA 2018).

Values are module-level floats; treat them as read-only. ``CONSTANTS`` is an
immutable view of the same numbers for code that wants to iterate.
"""

from types import MappingProxyType

E_CHARGE = 1.602176634e-19  # C, exact
HBAR = 1.054571817e-34  # J s
C_LIGHT = 299792458.0  # m / s, exact
M_ELECTRON = 9.1093837015e-31  # kg
EPS0 = 8.8541878128e-12  # F / m
AMU = 1.66053906660e-27  # kg

EV = E_CHARGE  # J per eV

CONSTANTS = MappingProxyType(
    {
        "e": E_CHARGE,
        "hbar": HBAR,
        "c": C_LIGHT,
        "m_e": M_ELECTRON,
        "eps0": EPS0,
        "amu": AMU,
    }
)
