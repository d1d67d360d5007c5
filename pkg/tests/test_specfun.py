"""Special-function kernel tests against independent oracles (mpmath and
hand-rolled rational series) plus the internal consistency properties."""

import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from coulombext import specfun
from coulombext.errors import ConvergenceError

mpmath.mp.dps = 30


# ---------------------------------------------------------------------------
# Frozen golden values.
# ---------------------------------------------------------------------------

def test_digamma_at_one_golden():
    assert abs(specfun.digamma(1.0).value.real
               - (-0.5772156649015329)) < 1e-14


def test_whittaker_w_golden_exact():
    # tau=1, mu=1/2 makes the U factor equal 1, so W = e^{-z/2} z
    got = specfun.whittaker_w(1.0, 0.5, 2.0).value.real
    assert abs(got - 2.0 * math.exp(-1.0)) < 1e-13
    got = specfun.whittaker_w(1.0, 0.5, 1.0).value.real
    assert abs(got - math.exp(-0.5)) < 1e-13


def test_kummer_golden_rational_series():
    # independent oracle: exact rational partial sums of the defining series
    a, b, z = Fraction(1, 2), Fraction(3, 2), Fraction(-2)
    term = Fraction(1)
    total = Fraction(1)
    for k in range(200):
        term *= (a + k) * z / ((b + k) * (k + 1))
        total += term
    got = specfun.kummer_m(0.5, 1.5, -2.0).value.real
    assert abs(got - float(total)) < 1e-13


# ---------------------------------------------------------------------------
# mpmath cross-checks.
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("x", [0.3, 1.7, 4.2, 11.5, 29.0, -0.4, -2.3, -7.8])
def test_gamma_vs_mpmath(x):
    got = specfun.gamma_fn(x).value.real
    want = float(mpmath.gamma(x))
    assert abs(got - want) < 1e-12 * abs(want)


@pytest.mark.parametrize("x", [0.25, 1.0, 3.7, 15.2, -0.6, -3.3, -9.9])
def test_digamma_vs_mpmath(x):
    got = specfun.digamma(x).value.real
    want = float(mpmath.digamma(x))
    assert abs(got - want) < 1e-12 * max(1.0, abs(want))


@pytest.mark.parametrize("tau,mu,z", [
    (0.3, 0.5, 0.2), (0.3, 0.5, 3.0), (1.7, 0.5, 8.0), (2.6, 0.5, 14.0),
    (0.9, 0.5, 29.0), (1.2, 0.5, 45.0), (0.5, 0.0, 0.7), (1.1, 0.0, 12.0),
    (0.8, 1.5, 5.0), (2.2, 2.5, 20.0),
])
def test_whittaker_vs_mpmath(tau, mu, z):
    for ours, theirs in ((specfun.whittaker_w, mpmath.whitw),
                         (specfun.whittaker_m, mpmath.whitm)):
        res = ours(tau, mu, z)
        want = float(theirs(tau, mu, z))
        assert abs(res.value.real - want) <= max(
            1e-11 * abs(want), 2.0 * res.abs_err_estimate, 1e-13), \
            (ours.__name__, tau, mu, z)


@pytest.mark.parametrize("tau,mu,z", [
    (0.3, 0.5, 2.0), (1.7, 0.5, 11.0), (0.5, 0.0, 6.5), (0.9, 1.5, 27.0),
])
def test_error_estimates_are_honest(tau, mu, z):
    for ours, theirs in ((specfun.whittaker_w, mpmath.whitw),
                         (specfun.whittaker_m, mpmath.whitm)):
        res = ours(tau, mu, z)
        want = float(theirs(tau, mu, z))
        assert abs(res.value.real - want) <= 10.0 * res.abs_err_estimate \
            + 1e-14 * abs(want)


def test_complex_whittaker_vs_mpmath():
    s = math.sqrt(8.0) * complex(math.cos(-math.pi / 8),
                                 math.sin(-math.pi / 8))
    tau = 2.0 / s
    for r in (0.01, 0.3, 2.0, 9.0):
        z = s * r
        got, err = specfun._whittaker_w_c(tau, complex(0.5), z)
        want = complex(mpmath.whitw(mpmath.mpc(tau), 0.5, mpmath.mpc(z)))
        assert abs(got - want) <= max(1e-9 * abs(want), 5 * err)


# ---------------------------------------------------------------------------
# Properties.
# ---------------------------------------------------------------------------

def test_digamma_recurrence_and_reflection():
    for x in np.linspace(0.12, 6.9, 40):
        d = specfun.digamma(x).value.real
        d1 = specfun.digamma(x + 1.0).value.real
        assert abs(d1 - d - 1.0 / x) < 1e-10 * max(1.0, abs(d1))
        if abs(x - round(x)) > 1e-6:
            dm = specfun.digamma(1.0 - x).value.real
            want = dm - math.pi / math.tan(math.pi * x)
            assert abs(d - want) < 1e-10 * max(1.0, abs(d))


def test_kummer_recurrence():
    # (b - a) M(a-1, b, z) + (2a - b + z) M(a, b, z) - a M(a+1, b, z) = 0
    for a, b, z in [(0.7, 1.0, 3.0), (1.3, 2.0, 9.0), (0.4, 1.0, -4.0),
                    (2.1, 2.0, 17.0)]:
        m0 = specfun.kummer_m(a - 1, b, z).value
        m1 = specfun.kummer_m(a, b, z).value
        m2 = specfun.kummer_m(a + 1, b, z).value
        resid = (b - a) * m0 + (2 * a - b + z) * m1 - a * m2
        scale = max(abs(m0), abs(m1), abs(m2))
        assert abs(resid) < 1e-9 * scale


def test_whittaker_wronskian_constancy():
    # W(M, W) = -Gamma(2 mu + 1) / Gamma(mu - tau + 1/2), independent of z
    d = 1e-5
    for tau, mu in [(0.3, 0.5), (1.7, 0.5), (0.5, 0.0), (0.8, 1.5)]:
        want = -float(mpmath.gamma(2 * mu + 1)
                      * mpmath.rgamma(mu - tau + 0.5))
        for z in (0.8, 3.0, 12.0):
            m = specfun.whittaker_m(tau, mu, z).value.real
            w = specfun.whittaker_w(tau, mu, z).value.real
            mp = (specfun.whittaker_m(tau, mu, z + d).value.real
                  - specfun.whittaker_m(tau, mu, z - d).value.real) / (2 * d)
            wp = (specfun.whittaker_w(tau, mu, z + d).value.real
                  - specfun.whittaker_w(tau, mu, z - d).value.real) / (2 * d)
            got = m * wp - mp * w
            assert abs(got - want) < 1e-6 * max(1.0, abs(want))


def test_branch_crossover_band():
    # series and asymptotic branches agree across the handover region for
    # the parameter window the package uses
    for a in (0.2, 0.5, 1.0, 1.3):
        for b in (1.0, 2.0):
            for z in (25.0, 28.0, 31.0, 35.0):
                s, _ = specfun._kummer_series(complex(a), complex(b),
                                              complex(z))
                asym, _ = specfun._kummer_asym(complex(a), complex(b),
                                               complex(z))
                assert abs(s - asym) < 1e-8 * abs(s), (a, b, z)


def test_kummer_raises_when_unreliable():
    with pytest.raises(ConvergenceError):
        # far out on the Stokes line with large parameters the asymptotic
        # error estimate cannot meet the accuracy contract
        specfun.kummer_m(14.7, 1.0, 70.0)


# ---------------------------------------------------------------------------
# Airy.
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("t", [-12.3, -6.0, -1.5, 0.0, 2.0, 6.5, 10.0])
def test_airy_vs_mpmath(t):
    res = specfun.airy_ai(t)
    want = float(mpmath.airyai(t))
    assert abs(res.value.real - want) < max(1e-11 * abs(want),
                                            2 * res.abs_err_estimate, 5e-13)
    resp = specfun.airy_ai_prime(t)
    wantp = float(mpmath.airyai(t, 1))
    assert abs(resp.value.real - wantp) < max(1e-11 * abs(wantp),
                                              2 * resp.abs_err_estimate, 5e-13)


@pytest.mark.parametrize("n,which", [(1, "ai"), (4, "ai"), (10, "ai"),
                                     (1, "aiprime"), (7, "aiprime")])
def test_airy_zeros_vs_mpmath(n, which):
    got = specfun.airy_zero(n, which)
    want = float(mpmath.airyaizero(n, 1 if which == "aiprime" else 0))
    assert abs(got - want) < 1e-10 * abs(want)
