"""Weak-coupling energy for a general central binding potential.

The atom enters only through the position autocorrelation G(nu) (isotropic,
so a single scalar).  The order-q^4 energy is

    E = -q^4 / (16 pi^3 r^7) int_0^inf du e^{-2u} G(u/r)^2 (u^4 + 2u^3 + 5u^2 + 6u + 3).

For the harmonic atom G(nu) = 1/(m (nu^2 + Omega^2)) and this reduces to the
weak-coupling result of :mod:`vdwfunc.regimes`.
"""
from __future__ import annotations

import math
import re
from pathlib import Path

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq

from .errors import CorrelatorRangeError, DomainError, RangeError
from .quadrature import integrate_semi_infinite
from .regimes import WEIGHT_INTEGRAL, WEIGHT_POLY, retarded_tail, weight_poly

DEFAULT_TOL = 1e-10

#: Fraction of the weight e^{-2u} P(u) allowed to fall beyond the table.
TAIL_WEIGHT_FRACTION = 1e-4


def _weight_tail(u):
    """int_u^inf e^{-2t} P(t) dt in closed form."""
    total = 0.0
    for n, c in enumerate(WEIGHT_POLY):
        # int_u^inf t^n e^{-2t} dt = e^{-2u} sum_k n!/k! u^k / 2^(n-k+1)
        total += c * sum(
            math.factorial(n) / math.factorial(k) * u**k / 2.0 ** (n - k + 1) for k in range(n + 1)
        )
    return math.exp(-2.0 * u) * total


#: u beyond which the weight carries less than TAIL_WEIGHT_FRACTION of its total.
#: Because G is non-increasing, the same bound holds for G(u/r)^2 times the weight.
U_REQUIRED = brentq(lambda u: _weight_tail(u) / WEIGHT_INTEGRAL - TAIL_WEIGHT_FRACTION, 0.0, 50.0)


class Correlator:
    """Scalar position autocorrelation G(nu), nu >= 0 (evaluates on arrays)."""

    kind = "abstract"
    #: largest frequency backed by data (inf for closed forms)
    nu_max = math.inf

    def __call__(self, nu):
        raise NotImplementedError

    def at_zero(self) -> float:
        raise NotImplementedError

    def scale(self) -> float:
        """Frequency where G falls to half its zero-frequency value."""
        raise NotImplementedError


class HarmonicCorrelator(Correlator):
    kind = "harmonic"

    def __init__(self, m: float, omega: float):
        if not (m > 0.0 and omega > 0.0):
            raise DomainError("harmonic correlator needs m > 0 and omega > 0")
        self.m = float(m)
        self.omega = float(omega)

    def __call__(self, nu):
        nu = np.asarray(nu, dtype=float)
        return 1.0 / (self.m * (nu * nu + self.omega**2))

    def at_zero(self) -> float:
        return 1.0 / (self.m * self.omega**2)

    def scale(self) -> float:
        return self.omega

    def __repr__(self):
        return f"HarmonicCorrelator(m={self.m!r}, omega={self.omega!r})"


class TabulatedCorrelator(Correlator):
    """G(nu) from samples.

    Monotone cubic (PCHIP) in ln nu vs ln G between samples.  Below the first
    positive sample G is interpolated linearly in nu^2 from a nu = 0 sample,
    or held flat if there is none.  Above the last sample G = c / nu^2 with c
    matched to the last sample.
    """

    kind = "tabulated"

    def __init__(self, nu, values):
        nu = np.asarray(nu, dtype=float)
        values = np.asarray(values, dtype=float)
        if nu.ndim != 1 or nu.shape != values.shape:
            raise DomainError("nu and values must be 1-D arrays of equal length")
        if not (np.all(np.isfinite(nu)) and np.all(np.isfinite(values))):
            raise DomainError("correlator samples must be finite")
        if nu[0] < 0.0:
            raise DomainError("correlator frequencies must be >= 0")
        if np.any(np.diff(nu) <= 0.0):
            raise DomainError("correlator frequencies must be strictly increasing")
        if np.any(values <= 0.0):
            raise DomainError("correlator values must be positive")
        if np.any(np.diff(values) > 0.0):
            raise DomainError("correlator values must be non-increasing in nu")

        self.nu = nu
        self.values = values
        self._zero = values[0] if nu[0] == 0.0 else None
        pos = nu > 0.0
        if np.count_nonzero(pos) < 2:
            raise DomainError("need at least two samples with nu > 0")
        self._nu_pos = nu[pos]
        self._g_pos = values[pos]
        self._log_interp = PchipInterpolator(np.log(self._nu_pos), np.log(self._g_pos))
        self.nu_max = float(nu[-1])
        self._tail_c = float(values[-1] * nu[-1] ** 2)

    def __call__(self, nu):
        nu = np.asarray(nu, dtype=float)
        out = np.empty(nu.shape)
        lo, hi = self._nu_pos[0], self._nu_pos[-1]
        below = nu < lo
        above = nu > hi
        mid = ~(below | above)
        out[mid] = np.exp(self._log_interp(np.log(nu[mid])))
        out[above] = self._tail_c / (nu[above] * nu[above])
        if self._zero is None:
            out[below] = self._g_pos[0]
        else:
            t = (nu[below] / lo) ** 2
            out[below] = self._zero + (self._g_pos[0] - self._zero) * t
        return out

    def at_zero(self) -> float:
        return float(self._zero if self._zero is not None else self._g_pos[0])

    def scale(self) -> float:
        half = 0.5 * self.at_zero()
        idx = np.flatnonzero(self.values <= half)
        if idx.size:
            return float(self.nu[idx[0]]) if self.nu[idx[0]] > 0 else float(self._nu_pos[0])
        return self.nu_max

    def __repr__(self):
        return f"TabulatedCorrelator(n={self.nu.size}, nu_max={self.nu_max!r})"


def harmonic_correlator(m: float, omega: float) -> HarmonicCorrelator:
    return HarmonicCorrelator(m, omega)


def tabulated_correlator(nu, values) -> TabulatedCorrelator:
    return TabulatedCorrelator(nu, values)


class CorrelatorParseError(DomainError):
    """Malformed correlator file; ``line`` is the 1-based line number (or None)."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


_UNITS_RE = re.compile(r"^#\s*units\s*:\s*(\S+)\s*$", re.IGNORECASE)


def parse_correlator(text: str, omega: float = 1.0) -> TabulatedCorrelator:
    """Parse the two-column ``nu g_tilde`` format.

    Lines starting with ``#`` are comments.  A header ``# units: omega`` means
    the nu column is in units of ``omega`` and is multiplied by it;
    ``# units: absolute`` (the default) takes it as is.
    """
    units = "absolute"
    nus, gs = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _UNITS_RE.match(line)
            if m:
                units = m.group(1).lower()
                if units not in ("omega", "absolute"):
                    raise CorrelatorParseError(f"unknown units {units!r}", lineno)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise CorrelatorParseError(f"expected 2 columns, got {len(parts)}", lineno)
        try:
            nu, g = float(parts[0]), float(parts[1])
        except ValueError:
            raise CorrelatorParseError(f"not a number: {line!r}", lineno) from None
        if nus and nu <= nus[-1]:
            raise CorrelatorParseError("nu must be strictly increasing", lineno)
        nus.append(nu)
        gs.append(g)
    if not nus:
        raise CorrelatorParseError("no data rows")
    nu = np.array(nus)
    if units == "omega":
        nu = nu * omega
    try:
        return TabulatedCorrelator(nu, np.array(gs))
    except CorrelatorParseError:
        raise
    except DomainError as exc:
        raise CorrelatorParseError(str(exc)) from None


def load_correlator(path, omega: float = 1.0) -> TabulatedCorrelator:
    return parse_correlator(Path(path).read_text(), omega)


def _check_range(c: Correlator, r: float):
    needed = U_REQUIRED / r
    if c.nu_max < needed:
        raise CorrelatorRangeError(
            f"correlator table ends at nu = {c.nu_max:.6g}; "
            f"distance r = {r:.6g} needs nu_max >= {needed:.6g}",
            nu_max_needed=needed,
        )


def energy_general(c: Correlator, q: float, r: float, tol: float = DEFAULT_TOL) -> float:
    """Order-q^4 interaction energy for autocorrelation ``c`` at distance ``r``."""
    if not r > 0.0:
        raise DomainError(f"distance must be positive, got {r!r}")
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    if q == 0.0:
        return 0.0
    _check_range(c, r)

    def h(u):
        gv = c(u / r)
        return np.exp(-2.0 * u) * weight_poly(u) * gv * gv

    u_scale = c.scale() * r
    bps = (u_scale,) if u_scale < 8.0 else ()
    res = integrate_semi_infinite(h, bps, 1e-300, tol, vectorized=True)
    return -(q**4) / (16.0 * math.pi**3 * r**7) * res.value


def asymptote_general(c: Correlator, q: float, r: float) -> float:
    """Long-distance limit -23/(4 pi)^3 q^4 G(0)^2 / r^7."""
    g0 = c.at_zero()
    if not math.isfinite(g0):
        raise RangeError("correlator diverges at zero frequency")
    return retarded_tail(q, g0, r)


def correlator_square_integral(c: Correlator, tol: float = DEFAULT_TOL) -> float:
    """int_0^inf G(nu)^2 dnu."""
    s = c.scale()

    def h(t):
        gv = c(s * t)
        return gv * gv

    return s * integrate_semi_infinite(h, (1.0,), 1e-300, tol, vectorized=True).value


def london_general(
    c: Correlator, q: float, r: float, tol: float = DEFAULT_TOL, *, printed: bool = False
) -> float:
    """Short-distance (non-retarded) limit of :func:`energy_general`.

    Returns -3 q^4 / (16 pi^3 r^6) int_0^inf G^2 dnu, the r -> 0 limit of the
    reduced integral.  With ``printed=True`` the alternative prefactor
    -3/4 (q^2/4pi)^2 pi / r^6 is used instead; it is larger by pi^2/4 and does
    not reproduce the harmonic London energy.  Kept only as a diagnostic.
    """
    if not r > 0.0:
        raise DomainError(f"distance must be positive, got {r!r}")
    if q == 0.0:
        return 0.0
    integral = correlator_square_integral(c, tol)
    if printed:
        return -0.75 * (q * q / (4.0 * math.pi)) ** 2 * math.pi / r**6 * integral
    return -3.0 * q**4 / (16.0 * math.pi**3 * r**6) * integral
