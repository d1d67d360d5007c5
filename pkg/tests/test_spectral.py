"""Spectral solver tests: exact ladders, example extensions, omega
behaviour near poles, Green's function structure."""

import math

import mpmath
import numpy as np
import pytest

from coulombext.errors import DomainError, EigenvalueHit, PoleError
from coulombext.extensions import PhysParams, Unitary2, named_extension
from coulombext.spectral import (dirichlet_spectrum_3d, eigenfunction_eval,
                                 energy_of_tau, greens_dirichlet, omega,
                                 solve_spectrum_1d, spectrum_3d_lambda,
                                 tau_of_energy, w_boundary_data)

mpmath.mp.dps = 30

P = PhysParams()
R2 = math.sqrt(2) / 2
EX1 = Unitary2(1j * np.eye(2))
EX2 = Unitary2(np.diag([-1.0, 1.0]))
EX3 = Unitary2(1j * np.array([[R2, -R2], [R2, R2]]))


def test_tau_energy_round_trip():
    te = tau_of_energy(P, -0.3)
    assert abs(energy_of_tau(P, te.tau).energy - (-0.3)) < 1e-14
    with pytest.raises(DomainError):
        tau_of_energy(P, 0.1)


def test_omega_matches_mpmath():
    # omega = p [ln((hbar^2/2m) tau) - 2 gamma - Psi(1 - tau)] - s/2
    for e in (-0.31, -0.057, -1.4):
        te = tau_of_energy(P, e)
        want = float(2.0 * (mpmath.log(0.5 * te.tau) - 2 * mpmath.euler
                            - mpmath.digamma(1.0 - te.tau)) - 0.5 * te.scale)
        assert abs(omega(P, e).omega - want) < 1e-10 * max(1.0, abs(want))


def test_omega_pole():
    with pytest.raises(PoleError):
        omega(P, energy_of_tau(P, 2.0).energy)


def test_boundary_data_consistency():
    # w_boundary_data equals (1/Gamma(1-tau), omega/Gamma(1-tau)) off poles
    e = -0.37
    te = tau_of_energy(P, e)
    bd = w_boundary_data(P, e, "plus")
    g = float(mpmath.rgamma(1.0 - te.tau))
    assert abs(bd.phi_plus - g) < 1e-12 * max(1.0, abs(g))
    assert abs(bd.phitilde_plus - omega(P, e).omega * g) < 1e-10


def test_dirichlet_1d_ladder():
    recs = solve_spectrum_1d(named_extension("dirichlet"), P, 6.5)
    assert len(recs) == 6
    for n, r in enumerate(recs, start=1):
        assert abs(r.energy - (-0.5 / n ** 2)) < 1e-10 * 0.5 / n ** 2
        assert r.multiplicity == 2


def test_example_uniform_phase():
    # U = iI: single coupling a = 1, so the condition is omega(E) = -1,
    # every level twofold degenerate
    recs = solve_spectrum_1d(EX1, P, 4.2)
    assert [r.multiplicity for r in recs] == [2, 2, 2, 2]
    for r in recs:
        assert abs(omega(P, r.energy).omega + 1.0) < 1e-9


def test_example_decoupled_mixed():
    # U = diag(-1,1): an omega = 0 ladder (right half-line) interleaved
    # with the Dirichlet ladder (left half-line), all simple
    recs = solve_spectrum_1d(EX2, P, 4.2)
    assert all(r.multiplicity == 1 for r in recs)
    dirich = [r for r in recs if abs(r.tau - round(r.tau)) < 1e-9]
    other = [r for r in recs if abs(r.tau - round(r.tau)) >= 1e-9]
    assert len(dirich) == 4
    for r in other:
        assert abs(omega(P, r.energy).omega) < 1e-9
    # support sides: omega-ladder states are right-supported
    for r in other:
        c = r.nullspace[:, 0]
        assert abs(c[0]) < 1e-8  # no left (Theta(-x)) component


def test_example_rotated_phase():
    # two distinct channels omega = -(sqrt2 + 1) and omega = -(sqrt2 - 1),
    # all levels simple
    recs = solve_spectrum_1d(EX3, P, 4.2)
    assert all(r.multiplicity == 1 for r in recs)
    targets = (-(math.sqrt(2) + 1), -(math.sqrt(2) - 1))
    for r in recs:
        w = omega(P, r.energy).omega
        assert min(abs(w - t) for t in targets) < 1e-8


def test_dirichlet_3d_multiplicities():
    recs = dirichlet_spectrum_3d(P, 4)
    assert [r.multiplicity for r in recs] == [1, 4, 9, 16]
    for n, r in enumerate(recs, start=1):
        assert abs(r.energy - (-0.5 / n ** 2)) < 1e-12


def test_spectrum_3d_lambda_reduces_to_dirichlet():
    recs = spectrum_3d_lambda(P, 0.0, 3.5)
    assert [r.tau for r in recs] == [1.0, 2.0, 3.0]


def test_spectrum_3d_lambda_shifts_levels():
    recs = spectrum_3d_lambda(P, 0.7, 3.5)
    for r in recs:
        assert abs(r.tau - round(r.tau)) > 1e-3  # strictly off the ladder


def test_eigenfunction_eval_sides():
    recs = solve_spectrum_1d(EX2, P, 2.5)
    r = next(rec for rec in recs if abs(rec.tau - 1.0) < 1e-9)
    left = eigenfunction_eval(r, (1.0, 0.0), -1.3)
    right = eigenfunction_eval(r, (1.0, 0.0), 1.3)
    assert abs(left) > 0 and right == 0


def test_greens_zero_across_origin_and_symmetry():
    assert greens_dirichlet(P, -0.3, 1.0, -2.0) == 0.0
    assert greens_dirichlet(P, -0.3, -1.0, 2.0) == 0.0
    a = greens_dirichlet(P, -0.3, 0.7, 1.9)
    b = greens_dirichlet(P, -0.3, 1.9, 0.7)
    assert abs(a - b) < 1e-12 * abs(a)
    c = greens_dirichlet(P, -0.3, -0.7, -1.9)
    assert abs(a - c) < 1e-12 * abs(a)


def test_greens_eigenvalue_hit():
    with pytest.raises(EigenvalueHit):
        greens_dirichlet(P, -0.5, 0.3, 0.4)


def test_greens_solves_ode_pointwise():
    # for fixed y, (H - E) G(., y) = 0 away from x = y
    e, y = -0.3, 2.0
    d = 1e-4
    for x in (0.8, 3.1):
        g0 = greens_dirichlet(P, e, x, y)
        gp = greens_dirichlet(P, e, x + d, y)
        gm = greens_dirichlet(P, e, x - d, y)
        lhs = -0.5 * (gp - 2 * g0 + gm) / d ** 2 - g0 / x - e * g0
        assert abs(lhs) < 1e-5 * max(1.0, abs(g0))
