"""Limiting regimes of the interaction energy.

* weak coupling: leading term of the log expansion, as a quadrature and in
  closed form through the auxiliary functions f and g;
* long-distance (retarded, 1/r^7) and London (non-retarded, 1/r^6) asymptotes;
* strong coupling at short distance: the instantaneous (Coulomb) kernel turns
  the two atoms into six coupled oscillators whose normal modes soften at
  g = 1 and g = 2.

Dimensionless energies are in units of Omega; physical ones in the units of
the supplied parameters (hbar = c = 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .energy import ComplexEnergy
from .errors import DomainError
from .model import AtomParams, DimensionlessPoint, nondimensionalize
from .quadrature import integrate_semi_infinite
from .specfun import aux_fg

DEFAULT_TOL = 1e-10

#: int_0^inf e^{-2u} (u^4 + 2u^3 + 5u^2 + 6u + 3) du
WEIGHT_INTEGRAL = 23.0 / 4.0
#: retarded coefficient 23/(4 pi)^3
RETARDED_COEFF = 23.0 / (4.0 * math.pi) ** 3
#: London coefficient of A/x^6
LONDON_COEFF = 3.0 / (64.0 * math.pi**2)

# coefficients of u^4 + 2u^3 + 5u^2 + 6u + 3, lowest power first
WEIGHT_POLY = (3.0, 6.0, 5.0, 2.0, 1.0)

ASYMPTOTIC_BRACKET_MIN = 64.0


def weight_poly(u):
    u = np.asarray(u, dtype=float)
    return (((u + 2.0) * u + 5.0) * u + 6.0) * u + 3.0


def coupling_amplitude(pt: DimensionlessPoint) -> float:
    """A = (q^2 Omega / m)^2 = (2 pi kappa)^2."""
    return (2.0 * math.pi * pt.kappa) ** 2


# -- weak coupling ---------------------------------------------------------

def weak_integral(x: float, tol: float = DEFAULT_TOL):
    """int_0^inf e^{-2u} P(u) / (u^2 + x^2)^2 du as a QuadResult."""
    x2 = x * x

    def h(u):
        d = u * u + x2
        return np.exp(-2.0 * u) * weight_poly(u) / (d * d)

    bps = (x,) if x < 8.0 else ()
    return integrate_semi_infinite(h, bps, 1e-300, tol, vectorized=True)


def weak_energy_integral(pt: DimensionlessPoint, tol: float = DEFAULT_TOL) -> float:
    """Weak-coupling energy in units of Omega, by quadrature."""
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    if pt.kappa == 0.0:
        return 0.0
    a = coupling_amplitude(pt)
    return -a / (16.0 * math.pi**3 * pt.x**3) * weak_integral(pt.x, tol).value


def _bracket_asymptotic(x):
    """Large-x series of the closed-form bracket, free of cancellation.

    x (6 - x^2) + (3 - 7x^2 + x^4) f(2x) + 2x (3 - 3x^2 + x^4) g(2x)
      = (2/x) sum_j (-1)^j (j+1) M_{2j} / x^{2j},
    with M_n = int_0^inf e^{-2u} u^n P(u) du.
    """
    inv2 = 1.0 / (x * x)
    total = 0.0
    prev = math.inf
    scale = 1.0
    for j in range(200):
        n = 2 * j
        moment = sum(c * math.factorial(n + k) / 2.0 ** (n + k + 1) for k, c in enumerate(WEIGHT_POLY))
        term = (-1) ** j * (j + 1) * moment * scale
        if abs(term) >= prev:
            break
        total += term
        prev = abs(term)
        if prev <= 1e-17 * abs(total):
            break
        scale *= inv2
    return 2.0 * total / x


def weak_bracket(x: float) -> float:
    """x (6 - x^2) + (3 - 7x^2 + x^4) f(2x) + 2x (3 - 3x^2 + x^4) g(2x)."""
    if not x > 0.0:
        raise DomainError(f"x must be positive, got {x!r}")
    if x >= ASYMPTOTIC_BRACKET_MIN:
        return _bracket_asymptotic(x)
    f, g = aux_fg(2.0 * x)
    x2 = x * x
    return x * (6.0 - x2) + (3.0 - 7.0 * x2 + x2 * x2) * f.value + 2.0 * x * (
        3.0 - 3.0 * x2 + x2 * x2
    ) * g.value


def weak_energy_over_a(x: float) -> float:
    """Closed-form weak-coupling energy divided by A = (q^2 Omega/m)^2."""
    return -weak_bracket(x) / (32.0 * math.pi**3 * x**6)


def weak_energy_closed(pt: DimensionlessPoint) -> float:
    """Weak-coupling energy in units of Omega, closed form."""
    if pt.kappa == 0.0:
        return 0.0
    return coupling_amplitude(pt) * weak_energy_over_a(pt.x)


# -- asymptotes --------------------------------------------------------------

def retarded_tail(q: float, g0: float, r: float) -> float:
    """-23/(4 pi)^3 q^4 G(0)^2 / r^7, shared by the harmonic and general forms."""
    if not r > 0.0:
        raise DomainError(f"distance must be positive, got {r!r}")
    return -RETARDED_COEFF * (q * q * g0) ** 2 / r**7


def vdw_asymptote(p: AtomParams, r: float) -> float:
    """Long-distance energy -23/(4 pi)^3 alpha_E^2 / r^7."""
    return retarded_tail(p.q, 1.0 / (p.m * p.omega**2), r)


def london_energy(p: AtomParams, r: float) -> float:
    """Non-retarded energy -3/4 (q^2/(4 pi m Omega))^2 / (Omega r^6)."""
    if not r > 0.0:
        raise DomainError(f"distance must be positive, got {r!r}")
    return -0.75 * (p.q**2 / (4.0 * math.pi * p.m * p.omega)) ** 2 / (p.omega * r**6)


def vdw_asymptote_dimensionless(pt: DimensionlessPoint) -> float:
    return -RETARDED_COEFF * coupling_amplitude(pt) / pt.x**7


def london_energy_dimensionless(pt: DimensionlessPoint) -> float:
    return -LONDON_COEFF * coupling_amplitude(pt) / pt.x**6


def vdw_london_ratio(x: float) -> float:
    """Retarded-to-London ratio at reduced distance x: 23 / (3 pi x)."""
    return RETARDED_COEFF / LONDON_COEFF / x


# -- strong coupling: instantaneous normal modes ---------------------------

@dataclass(frozen=True)
class NormalModeSpectrum:
    """Squared normal-mode frequencies in units of Omega^2.

    Index 0 and 1 are the transverse modes, index 2 the one along the axis.
    ``plus`` refers to x1 + x2, which softens.
    """

    omega_sq_plus: tuple[float, float, float]
    omega_sq_minus: tuple[float, float, float]


@dataclass(frozen=True)
class Thresholds:
    r1: float
    r2: float
    x1: float
    x2: float


def normal_modes_reduced(g: float) -> NormalModeSpectrum:
    return NormalModeSpectrum(
        (1.0 - 0.5 * g, 1.0 - 0.5 * g, 1.0 - g),
        (1.0 + 0.5 * g, 1.0 + 0.5 * g, 1.0 + g),
    )


def normal_modes(p: AtomParams, r: float) -> NormalModeSpectrum:
    return normal_modes_reduced(nondimensionalize(p, r).g)


def _pair_shift(a):
    """sqrt(1 - a) + sqrt(1 + a) - 2 as (real, imag), for a >= 0."""
    s2 = math.sqrt(1.0 + a)
    if a <= 1.0:
        s1 = math.sqrt(1.0 - a)
        return -2.0 * a * a / ((s1 + s2) * (1.0 + s1) * (1.0 + s2)), 0.0
    return s2 - 2.0, math.sqrt(a - 1.0)


def instantaneous_energy_reduced(g: float) -> ComplexEnergy:
    """E_0 - 3 Omega in units of Omega, from the coupled-oscillator spectrum."""
    if not g >= 0.0:
        raise DomainError(f"coupling ratio must be non-negative, got {g!r}")
    re = im = 0.0
    for a, mult in ((0.5 * g, 2), (g, 1)):
        dr, di = _pair_shift(a)
        re += mult * dr
        im += mult * di
    return ComplexEnergy(0.5 * re, 0.5 * im, 8 * 2.220446049250313e-16 * (1.0 + g))


def instantaneous_energy(p: AtomParams, r: float) -> ComplexEnergy:
    """Ground energy of the instantaneous-coupling oscillators, self energy removed."""
    return instantaneous_energy_reduced(nondimensionalize(p, r).g).scaled(p.omega)


def thresholds_reduced(kappa: float) -> tuple[float, float]:
    """(x1, x2) = (kappa^(1/3), (kappa/2)^(1/3))."""
    if not kappa > 0.0:
        raise DomainError(f"thresholds need kappa > 0, got {kappa!r}")
    return float(np.cbrt(kappa)), float(np.cbrt(0.5 * kappa))


def thresholds(p: AtomParams) -> Thresholds:
    if p.q == 0.0:
        raise DomainError("no instability threshold for q = 0")
    x1, x2 = thresholds_reduced(p.kappa)
    return Thresholds(x1 / p.omega, x2 / p.omega, x1, x2)
