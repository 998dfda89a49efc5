r"""Full interaction energy from the log-determinant formula.

In units of :math:`\Omega`,

.. math::

    \mathcal{E}_I(x) = \frac{1}{x}\int_0^\infty \frac{du}{2\pi}
        \left[2\ln(1 - a_\parallel(u)) + \ln(1 - a_\perp(u))\right],

with the mode arguments from :mod:`vdwfunc.model`.  Wherever a mode argument
exceeds one the logarithm picks up ``+i pi``; the imaginary part is therefore
the measure of those u-intervals times ``1/(2x)`` (per mode, weighted by its
multiplicity), and the real part is the integral of ``ln|1 - a|`` with the
crossing points passed to the quadrature as breakpoints.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError
from .model import (
    AtomParams,
    DimensionlessPoint,
    Mode,
    argument_function,
    nondimensionalize,
    one_minus_amplitude,
    parallel_argument,
    perp_argument,
)
from .quadrature import integrate_semi_infinite

DEFAULT_TOL = 1e-10
SCAN_SAMPLES = 4096
ROOT_XTOL = 1e-14
TAIL_LEVEL = 1e-12
_EPS = np.finfo(float).eps

MULTIPLICITY = {Mode.PARALLEL: 2, Mode.PERP: 1}


@dataclass(frozen=True)
class ComplexEnergy:
    """Energy with separate real and (non-negative) imaginary parts."""

    re: float
    im: float
    est_error: float

    def scaled(self, factor: float) -> "ComplexEnergy":
        return ComplexEnergy(self.re * factor, self.im * factor, self.est_error * abs(factor))


@dataclass(frozen=True)
class Onset:
    """A maximal u-interval on which one mode argument exceeds 1."""

    mode: Mode
    lo: float
    hi: float

    @property
    def length(self) -> float:
        return self.hi - self.lo


def _log_one_minus(mode, u, x, kappa):
    """ln|1 - a_mode(u)|.

    log1p where the argument is small; otherwise ln|1 - sqrt(a)| + ln(1 + sqrt(a))
    with the first factor from the cancellation-free form.
    """
    a = argument_function(mode)(u, x, kappa)
    small = a < 0.5
    out = np.empty_like(a)
    out[small] = np.log1p(-a[small])
    if not small.all():
        ub = u[~small]
        gap = np.abs(one_minus_amplitude(mode, ub, x, kappa))
        # floor at the rounding level so an abscissa landing on a root stays finite
        gap = np.maximum(gap, _EPS * np.finfo(float).eps)
        out[~small] = np.log(gap) + np.log1p(np.sqrt(a[~small]))
    return out


def _scan_limit(func):
    """Smallest u = 2^k >= 1 with func(u) < TAIL_LEVEL.

    Both mode arguments decrease monotonically for u >= 1.
    """
    u = 1.0
    while func(u) >= TAIL_LEVEL:
        u *= 2.0
    return u


def _mode_intervals(mode, pt):
    func = argument_function(mode)

    def gap(u):
        return float(one_minus_amplitude(mode, u, pt.x, pt.kappa))

    u_max = _scan_limit(lambda u: float(func(u, pt.x, pt.kappa)))
    grid = np.linspace(0.0, u_max, SCAN_SAMPLES + 1)
    above = one_minus_amplitude(mode, grid, pt.x, pt.kappa) < 0.0
    if not above.any():
        return []

    intervals = []
    start = 0.0 if above[0] else None
    for i in np.flatnonzero(above[1:] != above[:-1]):
        root = brentq(gap, grid[i], grid[i + 1], xtol=ROOT_XTOL)
        if above[i + 1]:
            start = root
        else:
            intervals.append(Onset(mode, start, root))
            start = None
    if start is not None:  # pragma: no cover - a(u_max) < 1e-12 by construction
        intervals.append(Onset(mode, start, u_max))
    return intervals


def imaginary_onsets(pt: DimensionlessPoint) -> list[Onset]:
    """Intervals in u where a mode argument exceeds 1, parallel mode first."""
    if pt.kappa == 0.0:
        return []
    return _mode_intervals(Mode.PARALLEL, pt) + _mode_intervals(Mode.PERP, pt)


def _integrand(pt):
    x, kappa = pt.x, pt.kappa
    norm = 1.0 / (2.0 * math.pi * x)

    def h(u):
        u = np.asarray(u, dtype=float)
        return norm * (
            2.0 * _log_one_minus(Mode.PARALLEL, u, x, kappa) + _log_one_minus(Mode.PERP, u, x, kappa)
        )

    return h


def _breakpoints(onsets):
    pts = sorted({o.lo for o in onsets if o.lo > 0.0} | {o.hi for o in onsets})
    merged = []
    for p in pts:
        if not merged or p - merged[-1] > 4 * ROOT_XTOL:
            merged.append(p)
    return merged


def energy_dimensionless(pt: DimensionlessPoint, tol: float = DEFAULT_TOL) -> ComplexEnergy:
    """Interaction energy in units of Omega at reduced point ``pt``.

    ``tol`` is the relative accuracy requested from the quadrature.  When some
    mode argument exceeds 2 the integrand changes sign and the error target
    becomes ``tol`` times the L1 norm of the integrand.
    """
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    if pt.kappa == 0.0:
        return ComplexEnergy(0.0, 0.0, 0.0)

    onsets = imaginary_onsets(pt)
    bps = _breakpoints(onsets)
    h = _integrand(pt)

    # ln|1 - a| keeps one sign unless some argument exceeds 2; only then does
    # the integral need an absolute error floor.
    abs_tol = 1e-300
    peak = max(
        (
            float(np.max(argument_function(o.mode)(np.linspace(o.lo, o.hi, 257), pt.x, pt.kappa)))
            for o in onsets
        ),
        default=0.0,
    )
    if peak > 2.0:
        l1 = integrate_semi_infinite(
            lambda u: np.abs(h(u)), bps, 1e-300, 1e-4, vectorized=True
        ).value
        abs_tol = tol * l1

    res = integrate_semi_infinite(h, bps, abs_tol, tol, vectorized=True)

    measure = sum(MULTIPLICITY[o.mode] * o.length for o in onsets)
    im = measure / (2.0 * pt.x)
    im_err = len(onsets) * 2 * ROOT_XTOL / pt.x
    return ComplexEnergy(res.value, im, res.est_error + im_err)


def energy_physical(p: AtomParams, r: float, tol: float = DEFAULT_TOL) -> ComplexEnergy:
    """Interaction energy in absolute energy units: ``Omega * E_I(Omega r)``."""
    return energy_dimensionless(nondimensionalize(p, r), tol).scaled(p.omega)


def series_energy(pt: DimensionlessPoint, n_terms: int, tol: float = DEFAULT_TOL):
    """Truncated expansion of the logarithms: -1/x int du/2pi sum_n (2 a_par^n + a_perp^n)/n.

    Returns the :class:`~vdwfunc.quadrature.QuadResult`.
    """
    x, kappa = pt.x, pt.kappa
    norm = 1.0 / (2.0 * math.pi * x)

    def h(u):
        ap = parallel_argument(u, x, kappa)
        an = perp_argument(u, x, kappa)
        total = np.zeros_like(ap)
        for n in range(1, n_terms + 1):
            total += (2.0 * ap**n + an**n) / n
        return -norm * total

    return integrate_semi_infinite(h, (), 1e-300, tol, vectorized=True)


def series_remainder_bound(pt: DimensionlessPoint, n: int, tol: float = DEFAULT_TOL):
    """Bound on |E_I - series_energy(pt, n-1)| valid while every argument is below 1.

    Uses sum_{k>=n} a^k/k <= a^n / (n (1 - a)).
    """
    x, kappa = pt.x, pt.kappa
    if pt.kappa / x**3 >= 1.0:
        raise DomainError("remainder bound needs coupling ratio g < 1")
    norm = 1.0 / (2.0 * math.pi * x)

    def h(u):
        ap = parallel_argument(u, x, kappa)
        an = perp_argument(u, x, kappa)
        return norm * (2.0 * ap**n / (1.0 - ap) + an**n / (1.0 - an)) / n

    return integrate_semi_infinite(h, (), 1e-300, tol, vectorized=True)
