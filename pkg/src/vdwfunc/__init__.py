"""Van der Waals interaction energy of two harmonically bound dipoles.

Retarded log-determinant energy (real and imaginary parts), its weak-coupling
closed form and asymptotes, the strong-coupling normal-mode thresholds, and
the weak-coupling energy for a general central potential.
"""

__version__ = "0.1.0"

from .energy import ComplexEnergy, energy_dimensionless, energy_physical, imaginary_onsets
from .errors import (
    CorrelatorRangeError,
    DomainError,
    IntegrandError,
    QuadratureError,
    RangeError,
)
from .general import (
    asymptote_general,
    energy_general,
    harmonic_correlator,
    load_correlator,
    london_general,
    tabulated_correlator,
)
from .model import AtomParams, DimensionlessPoint, Mode, coupling_ratio, mode_argument, nondimensionalize
from .quadrature import QuadResult, integrate_semi_infinite
from .regimes import (
    instantaneous_energy,
    london_energy,
    normal_modes,
    thresholds,
    vdw_asymptote,
    weak_energy_closed,
    weak_energy_integral,
)
from .specfun import aux_f, aux_g, cosine_integral, sine_integral

__all__ = [
    "AtomParams",
    "ComplexEnergy",
    "CorrelatorRangeError",
    "DimensionlessPoint",
    "DomainError",
    "IntegrandError",
    "Mode",
    "QuadResult",
    "QuadratureError",
    "RangeError",
    "asymptote_general",
    "aux_f",
    "aux_g",
    "cosine_integral",
    "coupling_ratio",
    "energy_dimensionless",
    "energy_general",
    "energy_physical",
    "harmonic_correlator",
    "imaginary_onsets",
    "instantaneous_energy",
    "integrate_semi_infinite",
    "load_correlator",
    "london_energy",
    "london_general",
    "mode_argument",
    "nondimensionalize",
    "normal_modes",
    "sine_integral",
    "tabulated_correlator",
    "thresholds",
    "vdw_asymptote",
    "weak_energy_closed",
    "weak_energy_integral",
]
