"""Linear-potential spectrum and the self-adjointness summary table."""

import pytest

from coulombext import laplace, oracle
from coulombext.errors import DomainError
from coulombext.extensions import PhysParams

P = PhysParams()


def test_interlacing_and_parity():
    sp = laplace.airy_spectrum_1d(P, 10)
    assert [pe.parity for pe in sp] == ["even", "odd"] * 5
    assert all(b.energy > a.energy for a, b in zip(sp, sp[1:]))
    assert [pe.index for pe in sp] == list(range(1, 11))


def test_matches_fd_oracle():
    sp = laplace.airy_spectrum_1d(P, 8)
    fd = oracle.fd_linear_levels(P, 8)
    for pe, (e, parity) in zip(sp, fd):
        assert pe.parity == parity
        assert abs(pe.energy - e) < 1e-6 * e


def test_scaling_with_units():
    p2 = PhysParams(hbar=2.0, mass=0.5, kappa=3.0)
    s = (2.0 * p2.mass * p2.kappa / p2.hbar ** 2) ** (1.0 / 3.0)
    sp1 = laplace.airy_spectrum_1d(P, 3)
    sp2 = laplace.airy_spectrum_1d(p2, 3)
    for a, b in zip(sp1, sp2):
        # zeros are dimensionless; energies scale as kappa / s
        assert abs(b.energy - a.energy * (p2.kappa / s) / (1.0 / 2.0 ** (1 / 3))) \
            < 1e-10 * b.energy


def test_asymptotic_formula_value():
    # n = 1 evaluates to 0.5 (3 pi / 4)^(2/3)
    import math
    want = 0.5 * (3.0 * math.pi / 4.0) ** (2.0 / 3.0)
    assert abs(laplace.airy_asymptotic(P, 1) - want) < 1e-14
    vals = [laplace.airy_asymptotic(P, n) for n in range(1, 30)]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_asymptotic_convention_comparison():
    errs = []
    for n in (10, 20, 40, 80):
        c = laplace.compare_asymptotic_conventions(P, n)
        errs.append(c["even_class_index"]["rel_error"])
        assert c["even_class_index"]["rel_error"] < 0.01
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_selfadjointness_report_queries():
    assert laplace.query_deficiency("VC", "R minus 0") == 2
    assert laplace.query_deficiency("VC", "R^2 minus 0") == 1
    assert laplace.query_deficiency("VC", "R^3 minus 0") == 1
    assert laplace.query_deficiency("VC", "R^3") == 0
    assert laplace.query_deficiency("V1", "R") == 0
    rep = laplace.selfadjointness_report()
    assert rep["V2"]["spectrum"] == "empty essential spectrum"
    assert rep["V2"]["essentially_selfadjoint"]
    with pytest.raises(DomainError):
        laplace.query_deficiency("VC", "torus")
    with pytest.raises(DomainError):
        laplace.query_deficiency("V9", "R")


def test_validation():
    with pytest.raises(DomainError):
        laplace.airy_spectrum_1d(P, 0)
    with pytest.raises(DomainError):
        laplace.airy_asymptotic(P, 0)
