r"""Sine and cosine integrals and the auxiliary functions f, g.

.. math::

    f(x) = \mathrm{Ci}(x)\sin x - \mathrm{si}(x)\cos x, \qquad
    g(x) = -\mathrm{Ci}(x)\cos x - \mathrm{si}(x)\sin x,

with :math:`\mathrm{si}(x) = \mathrm{Si}(x) - \pi/2`.

Power series are used for arguments up to 4.  Above that, f and g are
computed first (continued fraction for :math:`e^{iz}E_1(iz) = g - i f`, or
the asymptotic series for large arguments) and Si, Ci are rebuilt from them,
so no cancellation happens in the quantities the weak-coupling energy needs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, RangeError

EULER_GAMMA = 0.57721566490153286060651209008240243
EPS = 2.220446049250313e-16

SERIES_MAX = 4.0
ASYMPTOTIC_MIN = 40.0


@dataclass(frozen=True)
class SpecFunResult:
    """A special-function value with an absolute error bound."""

    value: float
    est_error: float


def _series_si_ci(x):
    """Si(x) and Ci(x) from their power series, with error bounds."""
    x2 = x * x
    # Si: sum_{n>=0} (-1)^n x^(2n+1) / ((2n+1) (2n+1)!)
    term = x  # x^(2n+1)/(2n+1)!
    si_sum = x
    si_abs = x
    n = 0
    while True:
        n += 1
        k = 2 * n + 1
        term *= -x2 / ((k - 1) * k)
        contrib = term / k
        si_sum += contrib
        si_abs += abs(contrib)
        if abs(contrib) <= 0.5 * EPS * abs(si_sum):
            break

    # Ci - gamma - ln x: sum_{n>=1} (-1)^n x^(2n) / (2n (2n)!)
    term = 1.0  # x^(2n)/(2n)!
    ci_sum = 0.0
    ci_abs = 0.0
    n = 0
    while True:
        n += 1
        k = 2 * n
        term *= -x2 / ((k - 1) * k)
        contrib = term / k
        ci_sum += contrib
        ci_abs += abs(contrib)
        if abs(contrib) <= 0.5 * EPS * max(abs(ci_sum), 1e-300):
            break
    log_x = math.log(x)
    ci = EULER_GAMMA + log_x + ci_sum
    ci_err = 4 * EPS * (EULER_GAMMA + abs(log_x) + ci_abs)
    si_err = 4 * EPS * si_abs
    return si_sum, si_err, ci, ci_err


def _fg_continued_fraction(x):
    """f(x), g(x) for moderate x from the continued fraction of E1(ix).

    Modified Lentz evaluation of
    e^z E1(z) = 1/(z+1 - 1/(z+3 - 4/(z+5 - ...))) at z = ix.
    """
    tiny = 1e-300
    b = complex(1.0, x)
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    n_iter = 1
    for i in range(2, 10000):
        a = -float((i - 1) * (i - 1))
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        n_iter = i
        if abs(delta.real - 1.0) + abs(delta.imag) < EPS:
            break
    else:  # pragma: no cover - converges in < 100 steps for x > 4
        raise ArithmeticError(f"continued fraction for E1(i*{x}) did not converge")
    err = 2 * n_iter * EPS * abs(h)
    return -h.imag, err, h.real, err


def _fg_asymptotic(x):
    """f(x), g(x) from their asymptotic series, truncated at the smallest term."""
    inv2 = 1.0 / (x * x)
    # f ~ sum (-1)^k (2k)! / x^(2k+1),  g ~ sum (-1)^k (2k+1)! / x^(2k+2)
    tf = 1.0 / x
    tg = inv2
    f_sum = tf
    g_sum = tg
    k = 0
    while True:
        k += 1
        nf = -tf * (2 * k - 1) * (2 * k) * inv2
        ng = -tg * (2 * k) * (2 * k + 1) * inv2
        if abs(nf) >= abs(tf) or abs(ng) >= abs(tg):
            break
        tf, tg = nf, ng
        f_sum += tf
        g_sum += tg
        if abs(tf) <= 0.25 * EPS * f_sum and abs(tg) <= 0.25 * EPS * g_sum:
            break
    f_err = abs(tf) + 2 * EPS * f_sum
    g_err = abs(tg) + 2 * EPS * g_sum
    return f_sum, f_err, g_sum, g_err


def _fg_large(x):
    if x >= ASYMPTOTIC_MIN:
        return _fg_asymptotic(x)
    return _fg_continued_fraction(x)


def cisi(x: float) -> tuple[SpecFunResult, SpecFunResult]:
    """Return ``(Si(x), Ci(x))`` with error bounds, for ``x > 0``."""
    x = float(x)
    if not x > 0.0 or math.isinf(x):
        raise DomainError(f"cisi requires 0 < x < inf, got {x!r}")
    if x <= SERIES_MAX:
        si, si_err, ci, ci_err = _series_si_ci(x)
        return SpecFunResult(si, si_err), SpecFunResult(ci, ci_err)
    f, f_err, g, g_err = _fg_large(x)
    s, c = math.sin(x), math.cos(x)
    ci = f * s - g * c
    si_minus = -f * c - g * s
    err = f_err + g_err + 2 * EPS * (abs(f) + abs(g))
    si = 0.5 * math.pi + si_minus
    return SpecFunResult(si, err + EPS * si), SpecFunResult(ci, err)


def cosine_integral(x: float) -> float:
    """Ci(x) = gamma + ln x + int_0^x (cos t - 1)/t dt for x > 0."""
    if not x > 0.0:
        raise DomainError(f"cosine integral requires x > 0, got {x!r}")
    return cisi(x)[1].value


def sine_integral(x: float) -> float:
    """Si(x) = int_0^x sin(t)/t dt for x >= 0."""
    if not x >= 0.0:
        raise DomainError(f"sine integral requires x >= 0, got {x!r}")
    if x == 0.0:
        return 0.0
    return cisi(x)[0].value


def aux_fg(x: float) -> tuple[SpecFunResult, SpecFunResult]:
    """Return ``(f(x), g(x))`` with error bounds, for ``x > 0``."""
    x = float(x)
    if not x > 0.0 or math.isinf(x):
        raise DomainError(f"aux_fg requires 0 < x < inf, got {x!r}")
    if x > SERIES_MAX:
        f, f_err, g, g_err = _fg_large(x)
        return SpecFunResult(f, f_err), SpecFunResult(g, g_err)
    si, si_err, ci, ci_err = _series_si_ci(x)
    si_minus = si - 0.5 * math.pi
    s, c = math.sin(x), math.cos(x)
    f = ci * s - si_minus * c
    g = -(ci * c + si_minus * s)
    err = ci_err + si_err + 2 * EPS * (abs(ci) + abs(si_minus))
    return SpecFunResult(f, err), SpecFunResult(g, err)


def aux_f(x: float) -> float:
    """f(x) = Ci(x) sin(x) - si(x) cos(x); f(0) = pi/2."""
    if not x >= 0.0:
        raise DomainError(f"aux_f requires x >= 0, got {x!r}")
    if x == 0.0:
        return 0.5 * math.pi
    return aux_fg(x)[0].value


def aux_g(x: float) -> float:
    """g(x) = -(Ci(x) cos(x) + si(x) sin(x)); logarithmically divergent at 0."""
    if x == 0.0:
        raise RangeError("aux_g diverges at x = 0")
    if not x > 0.0:
        raise DomainError(f"aux_g requires x > 0, got {x!r}")
    return aux_fg(x)[1].value
