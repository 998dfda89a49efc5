"""Atom parameters, reduced variables and the per-polarization log arguments.

Natural units (hbar = c = 1).  Everything downstream depends on the pair
``x = Omega r`` and ``kappa = q^2 Omega / (2 pi m)`` only.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc

from .errors import DomainError


@dataclass(frozen=True)
class AtomParams:
    """Harmonically bound dipole: coupling charge, electron mass, renormalized Omega."""

    q: float
    m: float
    omega: float

    def __post_init__(self):
        if not (self.m > 0.0 and math.isfinite(self.m)):
            raise DomainError(f"mass must be positive, got {self.m!r}")
        if not (self.omega > 0.0 and math.isfinite(self.omega)):
            raise DomainError(f"omega must be positive, got {self.omega!r}")
        if not math.isfinite(self.q):
            raise DomainError(f"q must be finite, got {self.q!r}")

    @property
    def kappa(self) -> float:
        return self.q**2 * self.omega / (2.0 * math.pi * self.m)

    @property
    def alpha_e(self) -> float:
        """Static electric susceptibility q^2 / (m Omega^2)."""
        return self.q**2 / (self.m * self.omega**2)


@dataclass(frozen=True)
class DimensionlessPoint:
    """Reduced distance ``x = Omega r`` and reduced coupling ``kappa``."""

    x: float
    kappa: float

    def __post_init__(self):
        if not (self.x > 0.0 and math.isfinite(self.x)):
            raise DomainError(f"x must be positive, got {self.x!r}")
        if not (self.kappa >= 0.0 and math.isfinite(self.kappa)):
            raise DomainError(f"kappa must be non-negative, got {self.kappa!r}")

    @property
    def g(self) -> float:
        return coupling_ratio(self)


class Mode(enum.Enum):
    PARALLEL = "parallel"  # two transverse polarizations, xi_parallel
    PERP = "perp"  # polarization along the axis, xi_perp


@dataclass(frozen=True)
class ModeArgument:
    mode: Mode
    value: float


def nondimensionalize(p: AtomParams, r: float) -> DimensionlessPoint:
    if not r > 0.0:
        raise DomainError(f"distance must be positive, got {r!r}")
    return DimensionlessPoint(p.omega * r, p.kappa)


def coupling_ratio(pt: DimensionlessPoint) -> float:
    """g = kappa / x^3 = q^2 / (2 pi m Omega^2 r^3)."""
    return pt.kappa / pt.x**3


def parallel_argument(u, x, kappa):
    """xi_par^2 e^{-2u} in reduced variables; accepts arrays for ``u``."""
    u = np.asarray(u, dtype=float)
    amp = 0.5 * kappa * (1.0 + u + u * u) * np.exp(-u) / (x * (u * u + x * x))
    return amp * amp


def perp_argument(u, x, kappa):
    """xi_perp^2 e^{-2u} in reduced variables; accepts arrays for ``u``."""
    u = np.asarray(u, dtype=float)
    amp = kappa * (1.0 + u) * np.exp(-u) / (x * (u * u + x * x))
    return amp * amp


def one_minus_amplitude(mode, u, x, kappa):
    """1 - sqrt(a_mode(u)) without cancellation near a crossing.

    With G = sqrt(a_mode(0)) and a_mode = (G phi(u))^2, phi(0) = 1, this is
    (1 - G) + G (1 - phi(u)), where 1 - phi is built from regularized
    incomplete gamma functions instead of a difference of nearly equal terms.
    """
    u = np.asarray(u, dtype=float)
    s = (u / x) ** 2
    if Mode(mode) is Mode.PERP:
        amp0 = kappa / x**3
        # 1 - (1 + u) e^{-u}
        poly_gap = gammainc(2.0, u)
    else:
        amp0 = 0.5 * kappa / x**3
        # 1 - (1 + u + u^2) e^{-u}
        poly_gap = gammainc(3.0, u) - 0.5 * u * u * np.exp(-u)
    return (1.0 - amp0) + amp0 * (s + poly_gap) / (1.0 + s)


_ARGUMENT = {Mode.PARALLEL: parallel_argument, Mode.PERP: perp_argument}


def argument_function(mode: Mode):
    return _ARGUMENT[Mode(mode)]


def mode_argument(mode: Mode, u: float, pt: DimensionlessPoint) -> ModeArgument:
    if not u >= 0.0:
        raise DomainError(f"u must be non-negative, got {u!r}")
    mode = Mode(mode)
    return ModeArgument(mode, float(_ARGUMENT[mode](u, pt.x, pt.kappa)))
