import math

import mpmath as mp
import numpy as np
import pytest

from oracles import si_ci_reference
from vdwfunc.errors import DomainError, RangeError
from vdwfunc.quadrature import integrate_semi_infinite
from vdwfunc.specfun import (
    EULER_GAMMA,
    aux_f,
    aux_fg,
    aux_g,
    cisi,
    cosine_integral,
    sine_integral,
)

# frozen from mpmath: gamma + quad((cos t - 1)/t, [0, 1]) and the Taylor series of Si
CI_1 = 0.33740392290096813466
SI_1 = 0.94608307036718301494
# frozen from mpmath quadrature of the Laplace representations at x = 100
F_100 = 0.0099980023928399618249
G_100 = 0.000099940119499589493169


def test_ci_log_limit_against_series():
    x = 1e-6
    with mp.workdps(30):
        series = mp.fsum((-1) ** n * mp.mpf(x) ** (2 * n) / (2 * n * mp.factorial(2 * n)) for n in range(1, 51))
    assert cosine_integral(x) - math.log(x) == pytest.approx(EULER_GAMMA + float(series), abs=1e-14)
    assert cosine_integral(x) - math.log(x) == pytest.approx(0.5772156649, abs=1e-10)


def test_ci_at_one():
    assert cosine_integral(1.0) == pytest.approx(CI_1, rel=1e-14)


def test_ci_decays():
    assert abs(cosine_integral(1e4)) < 1e-3


def test_si_values():
    assert sine_integral(0.0) == 0.0
    assert sine_integral(1.0) == pytest.approx(SI_1, rel=1e-14)
    assert abs(sine_integral(1e4) - math.pi / 2) < 1e-3


@pytest.mark.parametrize("x", [1e-8, 1e-3, 0.3, 0.6165, 1.0, 3.99, 4.0, 4.01, 10.0, 39.9, 40.1, 123.4, 1e4])
def test_si_ci_match_reference(x):
    si_ref, ci_ref = si_ci_reference(x)
    assert sine_integral(x) == pytest.approx(si_ref, rel=1e-13)
    assert cosine_integral(x) == pytest.approx(ci_ref, rel=1e-12, abs=1e-15)


def test_domain_errors():
    with pytest.raises(DomainError):
        cosine_integral(0.0)
    with pytest.raises(DomainError):
        cosine_integral(-1.0)
    with pytest.raises(DomainError):
        sine_integral(-1e-3)
    with pytest.raises(DomainError):
        aux_f(-1.0)
    with pytest.raises(DomainError):
        aux_g(-1.0)
    with pytest.raises(RangeError):
        aux_g(0.0)


def test_f_limits():
    assert aux_f(0.0) == math.pi / 2
    assert aux_f(1e-12) == pytest.approx(math.pi / 2, rel=1e-10)
    assert aux_f(100.0) == pytest.approx(1 / 100, rel=5e-4)
    assert aux_f(100.0) == pytest.approx(F_100, rel=1e-13)


def test_g_limits():
    assert aux_g(100.0) == pytest.approx(1 / 100**2, rel=1e-2)
    assert aux_g(100.0) == pytest.approx(G_100, rel=1e-13)


@pytest.mark.parametrize("x", np.geomspace(0.01, 100, 15))
def test_laplace_representations(x):
    # t = s / x keeps the decay scale of the integrand at one
    f_int = integrate_semi_infinite(lambda s: x * np.exp(-s) / (x * x + s * s), vectorized=True)
    g_int = integrate_semi_infinite(lambda s: s * np.exp(-s) / (x * x + s * s), vectorized=True)
    assert aux_f(x) == pytest.approx(f_int.value, rel=1e-9)
    assert aux_g(x) == pytest.approx(g_int.value, rel=1e-9)


def test_positive_and_decreasing():
    xs = np.geomspace(0.1, 100, 400)
    f = np.array([aux_f(x) for x in xs])
    g = np.array([aux_g(x) for x in xs])
    assert np.all(f > 0) and np.all(g > 0)
    assert np.all(np.diff(f) < 0) and np.all(np.diff(g) < 0)


@pytest.mark.parametrize("x", [0.5, 2.0, 20.0])
def test_derivative_relations(x):
    h = 1e-5 * x
    df = (aux_f(x + h) - aux_f(x - h)) / (2 * h)
    dg = (aux_g(x + h) - aux_g(x - h)) / (2 * h)
    assert df == pytest.approx(-aux_g(x), rel=1e-6)
    assert dg == pytest.approx(aux_f(x) - 1 / x, rel=1e-6)


def test_error_bounds_invariant():
    for x in np.geomspace(1e-8, 1e4, 300):
        si, ci = cisi(x)
        f, g = aux_fg(x)
        for r in (si, ci, f, g):
            assert 0.0 <= r.est_error <= 1e-12 * max(1.0, abs(r.value))


def test_error_bounds_cover_actual_error():
    for x in [0.01, 0.5, 3.0, 7.0, 25.0, 60.0]:
        si, ci = cisi(x)
        with mp.workdps(30):
            assert abs(si.value - float(mp.si(x))) <= si.est_error
            assert abs(ci.value - float(mp.ci(x))) <= ci.est_error
