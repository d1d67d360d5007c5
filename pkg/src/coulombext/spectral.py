"""Bound-state spectra for the Coulomb extensions.

The 1D eigenvalue problem reduces to a 2x2 linear condition on the
coefficients of the decaying Whittaker solutions on each half-line.
Diagonalizing the coupling matrix U splits that condition into scalar
channels: a U-eigenvalue of 1 forces 1/Gamma(1-tau) = 0 (the Dirichlet
ladder tau = 1, 2, ...), and any other eigenvalue u_k forces
omega(E) = -a_k with a_k = -i(1+u_k)/(1-u_k) real.

omega(E) is evaluated as the actual lateral limit of the regularized
derivative data, p [ln((hbar^2/2m) tau) + 2 Psi(1) - Psi(1-tau)]
- sqrt(-2 E m)/hbar.  Near integer tau both omega and 1/Gamma(1-tau)
blow up / vanish; only their product enters the eigencondition, and it
is computed in pole-free form throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from . import specfun
from .errors import BracketError, DomainError, EigenvalueHit, PoleError
from .extensions import (BoundaryData, ExtensionSpec, PhysParams, Unitary2,
                         residual_matrix)

_EULER = 0.5772156649015329
_POLE_TOL = 1e-8      # how close tau may come to a positive integer
_MULT_TOL = 1e-8      # singular-value threshold for multiplicity
_SCAN_STEP = 1e-3     # tau-space scan resolution


@dataclass(frozen=True)
class TauEnergy:
    energy: float
    tau: float
    scale: float      # Whittaker argument scale, z = scale * |x|


@dataclass(frozen=True)
class OmegaValue:
    energy: float
    omega: float
    nearest_pole_tau: int


@dataclass(frozen=True)
class EigenBasisFn:
    """Descriptor of Theta(side*x) * W_{tau,mu}(scale*|x|)."""

    side: int         # +1 or -1
    tau: float
    mu: float
    scale: float


@dataclass(frozen=True)
class EigenRecord:
    energy: float
    multiplicity: int
    basis: tuple
    extension: ExtensionSpec
    tau: float = 0.0
    nullspace: Optional[np.ndarray] = None   # columns = coefficient vectors


def tau_of_energy(params: PhysParams, energy: float) -> TauEnergy:
    if not energy < 0:
        raise DomainError("bound-state energy must be negative, got %g" % energy)
    q = 2.0 * params.mass * energy / params.hbar ** 2
    scale = math.sqrt(-4.0 * q)
    return TauEnergy(float(energy), params.p / scale, scale)


def energy_of_tau(params: PhysParams, tau: float) -> TauEnergy:
    if not tau > 0:
        raise DomainError("tau must be positive, got %g" % tau)
    energy = -params.kappa ** 2 * params.mass / (2.0 * params.hbar ** 2 * tau ** 2)
    return TauEnergy(energy, float(tau), params.p / tau)


def omega(params: PhysParams, energy: float) -> OmegaValue:
    te = tau_of_energy(params, energy)
    tau = te.tau
    nearest = max(1, int(round(tau)))
    if abs(tau - round(tau)) < _POLE_TOL and round(tau) >= 1:
        raise PoleError("omega pole: tau = %.12g is (close to) a positive "
                        "integer" % tau)
    p = params.p
    val = p * (math.log(params.hbar ** 2 / (2.0 * params.mass) * tau)
               - 2.0 * _EULER
               - specfun.digamma(1.0 - tau).value.real) - 0.5 * te.scale
    return OmegaValue(float(energy), val, nearest)


def _g_of_tau(tau: float) -> float:
    """1/Gamma(1-tau); entire, zero exactly on the Dirichlet ladder."""
    return specfun._rgamma_c(complex(1.0 - tau)).real


def _psi_over_gamma(tau: float) -> float:
    """Psi(1-tau)/Gamma(1-tau), pole-free via the reflection formula."""
    t = complex(tau)
    g = specfun._gamma_c(t)
    psi = specfun._digamma_c(t)
    val = g * (psi * specfun._sinpi(t) + math.pi * specfun._cospi(t)) / math.pi
    return val.real


def _w_of_tau(params: PhysParams, tau: float) -> float:
    """omega(E) / Gamma(1-tau); finite for every tau > 0."""
    p = params.p
    scale = p / tau
    g = _g_of_tau(tau)
    lead = p * (math.log(params.hbar ** 2 / (2.0 * params.mass) * tau)
                - 2.0 * _EULER) - 0.5 * scale
    return lead * g - p * _psi_over_gamma(tau)


def w_boundary_data(params: PhysParams, energy: float, side: str) -> BoundaryData:
    te = tau_of_energy(params, energy)
    g = _g_of_tau(te.tau)
    w = _w_of_tau(params, te.tau)
    if side == "plus":
        return BoundaryData(g, 0.0, w, 0.0)
    if side == "minus":
        return BoundaryData(0.0, g, 0.0, -w)
    raise DomainError("side must be 'plus' or 'minus', got %r" % (side,))


def eigencondition_matrix(u: Unitary2, params: PhysParams,
                          energy: float) -> np.ndarray:
    """M(E) with M c = 0 iff c1 Theta(-x) W + c2 Theta(x) W is an eigenfunction."""
    r = residual_matrix(u)
    col_left = r @ w_boundary_data(params, energy, "minus").as_vector()
    col_right = r @ w_boundary_data(params, energy, "plus").as_vector()
    return np.column_stack([col_left, col_right])


def _channels(u: Unitary2) -> List[Tuple[str, Optional[float]]]:
    vals = np.linalg.eigvals(u.entries)
    out = []
    for lam in vals:
        if abs(lam - 1.0) <= 1e-10:
            out.append(("dirichlet", None))
        else:
            a = -1j * (1.0 + lam) / (1.0 - lam)
            out.append(("omega", float(a.real)))
    return out


def _scan_channel(params: PhysParams, a: float, tau_max: float) -> List[float]:
    """Roots of w(tau) + a g(tau) = 0 for tau in (0, tau_max]."""

    def h(tau):
        return _w_of_tau(params, tau) + a * _g_of_tau(tau)

    roots = []
    n_steps = int(math.ceil(tau_max / _SCAN_STEP))
    t_prev = _SCAN_STEP
    f_prev = h(t_prev)
    for k in range(2, n_steps + 1):
        t = k * _SCAN_STEP
        if t > tau_max + 1e-15:
            break
        f = h(t)
        if f == 0.0:
            roots.append(t)
        elif f_prev * f < 0.0:
            try:
                root = brentq(h, t_prev, t, xtol=1e-13, rtol=8.9e-16)
            except Exception as exc:
                raise BracketError("failed to refine root in (%g, %g): %s"
                                   % (t_prev, t, exc))
            roots.append(root)
        t_prev, f_prev = t, f
    return roots


def solve_spectrum_1d(u: Unitary2, params: PhysParams,
                      tau_max: float) -> List[EigenRecord]:
    if tau_max < 1:
        raise DomainError("tau_max must be >= 1")
    taus: List[float] = []
    for kind, a in _channels(u):
        if kind == "dirichlet":
            taus.extend(float(n) for n in range(1, int(tau_max + 1e-12) + 1))
        else:
            taus.extend(_scan_channel(params, a, tau_max))
    taus.sort()
    merged: List[float] = []
    for t in taus:
        if merged and abs(t - merged[-1]) < 1e-9:
            continue
        merged.append(t)
    records = []
    for t in merged:
        te = energy_of_tau(params, t)
        m = eigencondition_matrix(u, params, te.energy)
        _, s, vh = np.linalg.svd(m)
        # at a doubly degenerate root every entry of M vanishes, so the
        # threshold must be set by M's natural scale, not by s[0]
        g = _g_of_tau(t)
        w = _w_of_tau(params, t)
        mscale = max(s[0],
                     np.linalg.norm(residual_matrix(u), 2) * max(abs(g), abs(w)))
        mult = int(np.sum(s < _MULT_TOL * mscale))
        mult = min(2, max(1, mult))
        null = vh.conj().T[:, 2 - mult:]
        basis = (EigenBasisFn(-1, t, 0.5, te.scale),
                 EigenBasisFn(+1, t, 0.5, te.scale))
        records.append(EigenRecord(te.energy, mult, basis,
                                   ExtensionSpec.one_d(u), tau=t,
                                   nullspace=null))
    records.sort(key=lambda r: r.energy)
    return records


def dirichlet_spectrum_3d(params: PhysParams, n_max: int) -> List[EigenRecord]:
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    records = []
    for n in range(1, n_max + 1):
        te = energy_of_tau(params, float(n))
        mult = sum(2 * l + 1 for l in range(n))
        assert mult == n * n
        basis = tuple(EigenBasisFn(+1, float(n), l + 0.5, te.scale)
                      for l in range(n))
        records.append(EigenRecord(te.energy, mult, basis,
                                   ExtensionSpec.three_d(0.0), tau=float(n)))
    return records


def spectrum_3d_lambda(params: PhysParams, lam: float,
                       tau_max: float) -> List[EigenRecord]:
    """s-wave levels of the 3D extension psi(0+) = lambda psitilde(0+).
    lambda = 0 is the Dirichlet ladder, lambda = inf the condition
    psitilde(0+) = 0.  Higher angular momenta are unaffected by the
    extension choice and are not included here."""
    if tau_max < 1:
        raise DomainError("tau_max must be >= 1")
    if lam == 0.0:
        taus = [float(n) for n in range(1, int(tau_max + 1e-12) + 1)]
    else:
        if math.isinf(lam):
            def h(tau):
                return _w_of_tau(params, tau)
        else:
            def h(tau):
                return _g_of_tau(tau) - lam * _w_of_tau(params, tau)
        taus = []
        n_steps = int(math.ceil(tau_max / _SCAN_STEP))
        t_prev = _SCAN_STEP
        f_prev = h(t_prev)
        for k in range(2, n_steps + 1):
            t = k * _SCAN_STEP
            if t > tau_max + 1e-15:
                break
            f = h(t)
            if f == 0.0:
                taus.append(t)
            elif f_prev * f < 0.0:
                try:
                    taus.append(brentq(h, t_prev, t, xtol=1e-13, rtol=8.9e-16))
                except Exception as exc:
                    raise BracketError("failed to refine root in (%g, %g): %s"
                                       % (t_prev, t, exc))
            t_prev, f_prev = t, f
    records = []
    for t in taus:
        te = energy_of_tau(params, t)
        basis = (EigenBasisFn(+1, t, 0.5, te.scale),)
        records.append(EigenRecord(te.energy, 1, basis,
                                   ExtensionSpec.three_d(lam), tau=t))
    return records


def eigenfunction_eval(rec: EigenRecord, c, x: float) -> complex:
    c = np.asarray(c, dtype=complex)
    if c.shape != (len(rec.basis),) or not np.linalg.norm(c) > 0:
        raise DomainError("coefficient vector must be nonzero, one entry per "
                          "basis function")
    if x == 0:
        raise DomainError("eigenfunctions are evaluated away from x = 0")
    total = 0.0 + 0.0j
    for ck, fn in zip(c, rec.basis):
        if fn.side * x > 0:
            total += ck * specfun.whittaker_w(fn.tau, fn.mu,
                                              fn.scale * abs(x)).value
    return total


def greens_dirichlet(params: PhysParams, energy: float, x: float,
                     y: float) -> float:
    te = tau_of_energy(params, energy)
    if abs(te.tau - round(te.tau)) < _POLE_TOL and round(te.tau) >= 1:
        raise EigenvalueHit("E = %g sits on the Dirichlet spectrum "
                            "(tau = %.12g)" % (energy, te.tau))
    if x == 0 or y == 0:
        raise DomainError("Green's function is evaluated away from the origin")
    if x * y < 0:
        return 0.0
    zmax = te.scale * max(abs(x), abs(y))
    zmin = te.scale * min(abs(x), abs(y))
    gam = specfun.gamma_fn(1.0 - te.tau).value.real
    pref = (2.0 * params.mass / params.hbar ** 2) * gam / te.scale
    w = specfun.whittaker_w(te.tau, 0.5, zmax).value.real
    m = specfun.whittaker_m(te.tau, 0.5, zmin).value.real
    return pref * w * m
