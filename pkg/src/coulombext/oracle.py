"""Independent numerical verification of the closed-form spectra.

Eigenvalues are recomputed by a shooting scheme that never touches the
Whittaker machinery: the decaying solution is marched inward from the
far end with a three-term recurrence, and the boundary behaviour at the
origin is read off at a matching radius x_c through a local Frobenius
basis of the singular point.  For the Coulomb singularity the basis is
{F0, F1} with F0 = 1 + ... + log-corrected terms normalized so that its
regularized data is (phi0, phitilde0) = (1, 0), and F1 = x + ... with
data (0, 1); the Wronskians of the marched solution against F0 and F1
recover (phi0, phitilde0) directly.  A naive grid that imposes a Robin
row at a tiny radius is *inconsistent* here (the local truncation error
h^2 phi'''' ~ h^2/x^3 sums to O(1) whenever phi(0) != 0), which is why
the matching radius sits at a moderate x_c instead.

Also here: square-integrability evidence for the deficiency indices
(solutions of (h - i) phi = 0 probed at both endpoints) and a
finite-difference solver for the linear potential kappa |x|.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import brentq

from . import specfun
from .errors import (BracketError, DomainError, GridError, InconclusiveError)
from .extensions import PhysParams, Unitary2
from .spectral import _channels, energy_of_tau

try:
    from numba import njit as _njit

    def _jit(fn):
        return _njit(cache=True)(fn)
except Exception:  # pragma: no cover - numba is expected to be present
    def _jit(fn):
        return fn


@_jit
def _march_inward(e: float, twom: float, kappa: float, ccoef: float,
                  big_l: float, h: float, xc: float):
    """March u'' = [ccoef/x^2 - twom*(kappa/x + e)] u from big_l down to
    xc - h, seeded with the decaying data u(L) = 0, u(L - h) = 1.
    Returns u at (xc - h, xc, xc + h), normalized to unit max."""
    n = int(round((big_l - (xc - h)) / h))
    u2 = 0.0
    u1 = 1.0
    um = 0.0
    uc = 0.0
    up = 0.0
    for j in range(n - 1, 0, -1):
        x = xc - h + j * h
        f = ccoef / (x * x) - twom * (kappa / x + e)
        u0 = 2.0 * u1 - u2 + h * h * f * u1
        if abs(u0) > 1e250:
            u0 *= 1e-250
            u1 *= 1e-250
            up *= 1e-250
            uc *= 1e-250
        if j - 1 == 2:
            up = u0
        elif j - 1 == 1:
            uc = u0
        elif j - 1 == 0:
            um = u0
        u2 = u1
        u1 = u0
    m = max(abs(um), abs(uc), abs(up))
    return um / m, uc / m, up / m


def _log_basis(p: float, qhat: float, kappa: float, xc: float,
               nterms: int = 22):
    """Values and derivatives at xc of the Frobenius pair {F0, F1} of
    u'' + (p/x) u + qhat u = 0 normalized to boundary data (1,0), (0,1)."""
    a0 = np.zeros(nterms)
    b0 = np.zeros(nterms)
    a1 = np.zeros(nterms)
    a0[0] = 1.0
    b0[1] = -p
    a0[1] = p * (1.0 - math.log(kappa))
    a1[1] = 1.0
    for k in range(2, nterms):
        b0[k] = (-p * b0[k - 1] - qhat * b0[k - 2]) / (k * (k - 1.0))
        a0[k] = (-p * a0[k - 1] - qhat * a0[k - 2]
                 - (2.0 * k - 1.0) * b0[k]) / (k * (k - 1.0))
        a1[k] = (-p * a1[k - 1] - qhat * a1[k - 2]) / (k * (k - 1.0))
    lx = math.log(xc)
    powers = xc ** np.arange(nterms)
    f0 = a0 @ powers + lx * (b0 @ powers)
    f1 = a1 @ powers
    kr = np.arange(nterms)
    dpow = np.zeros(nterms)
    dpow[1:] = kr[1:] * xc ** (kr[1:] - 1)
    f0p = a0 @ dpow + lx * (b0 @ dpow) + (b0 @ powers) / xc
    f1p = a1 @ dpow
    return f0, f0p, f1, f1p


def _reg_basis(p: float, qhat: float, alpha: float, ccoef: float, xc: float,
               nterms: int = 22):
    """Value and derivative at xc of the regular Frobenius solution
    x^alpha (1 + ...) of u'' = (ccoef/x^2 - p/x ... ) u."""
    c = np.zeros(nterms)
    c[0] = 1.0
    for k in range(1, nterms):
        denom = (alpha + k) * (alpha + k - 1.0) - ccoef
        c[k] = (-p * c[k - 1] - (qhat * c[k - 2] if k >= 2 else 0.0)) / denom
    kr = np.arange(nterms)
    val = float(c @ xc ** (alpha + kr))
    der = float(c @ ((alpha + kr) * xc ** (alpha + kr - 1.0)))
    return val, der


def _extract_log_data(params: PhysParams, e: float, ccoef: float,
                      big_l: float, h: float, xc: float):
    """(phi0, phitilde0) of the decaying solution, up to one overall scale."""
    twom = 2.0 * params.mass / params.hbar ** 2
    um, uc, up = _march_inward(e, twom, params.kappa, ccoef, big_l, h, xc)
    u = uc
    uprime = (up - um) / (2.0 * h)
    qhat = twom * e
    f0, f0p, f1, f1p = _log_basis(params.p, qhat, params.kappa, xc)
    phi0 = u * f1p - uprime * f1          # Wronskian against F1
    phit0 = uprime * f0 - u * f0p         # minus Wronskian against F0
    norm = math.hypot(phi0, phit0)
    return phi0 / norm, phit0 / norm


def _reg_defect(params: PhysParams, e: float, alpha: float, ccoef: float,
                big_l: float, h: float, xc: float) -> float:
    """Wronskian of the marched solution against the regular Frobenius
    solution; vanishes exactly at the regular (Dirichlet-type) levels."""
    twom = 2.0 * params.mass / params.hbar ** 2
    um, uc, up = _march_inward(e, twom, params.kappa, ccoef, big_l, h, xc)
    uprime = (up - um) / (2.0 * h)
    qhat = twom * e
    val, der = _reg_basis(params.p, qhat, alpha, ccoef, xc)
    scale = (abs(uc) + abs(uprime)) * (abs(val) + abs(der))
    return (uc * der - uprime * val) / max(scale, 1e-300)


def _length_unit(params: PhysParams) -> float:
    return params.hbar ** 2 / (params.mass * params.kappa)


def _tau_window(params: PhysParams, e_bracket) -> Tuple[float, float]:
    e_lo, e_hi = e_bracket
    if not (e_lo < e_hi < 0):
        raise DomainError("E_bracket must satisfy e_lo < e_hi < 0")
    from .spectral import tau_of_energy
    return tau_of_energy(params, e_lo).tau, tau_of_energy(params, e_hi).tau


def _scan_and_refine(fn, tau_lo: float, tau_hi: float,
                     step: float = 0.02) -> List[float]:
    """Roots (in tau) of a continuous scalar function, scan + brentq."""
    roots = []
    n = int(math.ceil((tau_hi - tau_lo) / step))
    t_prev = tau_lo
    f_prev = fn(t_prev)
    for k in range(1, n + 1):
        t = min(tau_lo + k * step, tau_hi)
        f = fn(t)
        if f == 0.0:
            roots.append(t)
        elif f_prev * f < 0.0:
            try:
                roots.append(brentq(fn, t_prev, t, xtol=1e-11, rtol=8.9e-16))
            except Exception as exc:
                raise BracketError("cannot refine oracle root in "
                                   "(%g, %g): %s" % (t_prev, t, exc))
        t_prev, f_prev = t, f
        if t >= tau_hi:
            break
    return roots


def _refined_levels(params: PhysParams, residual_of, tau_lo: float,
                    tau_hi: float, h: float, xc: float,
                    grid_tol: float) -> List[float]:
    """Scan at step h, re-refine each root at h/2, Richardson-extrapolate."""
    def fn_at(step):
        def fn(tau):
            e = energy_of_tau(params, tau).energy
            big_l = max(15.0, 35.0 * tau) * _length_unit(params)
            # deep levels live on the scale tau * a0; refine the step with it
            return residual_of(e, big_l, step * min(1.0, tau / 1.5))
        return fn

    coarse = _scan_and_refine(fn_at(h), tau_lo, tau_hi)
    levels = []
    for t in coarse:
        fine = _scan_and_refine(fn_at(0.5 * h), max(tau_lo, t - 0.02),
                                min(tau_hi, t + 0.02), step=0.005)
        if not fine:
            raise GridError("root at tau = %g lost under grid refinement" % t)
        t2 = min(fine, key=lambda s: abs(s - t))
        e1 = energy_of_tau(params, t).energy
        e2 = energy_of_tau(params, t2).energy
        e_rich = (4.0 * e2 - e1) / 3.0
        if abs(e_rich - e2) > grid_tol * max(1.0, abs(e_rich)):
            raise GridError("eigenvalue near tau = %g not grid-converged "
                            "(shift %g)" % (t, abs(e_rich - e2)))
        levels.append(e_rich)
    return levels


def shoot_eigenvalues_halfline(params: PhysParams, l: int = 0, dim: int = 3,
                               bc_at_eps="dirichlet",
                               eps: Optional[float] = None,
                               L: Optional[float] = None,
                               e_bracket: Optional[Tuple[float, float]] = None,
                               h: Optional[float] = None,
                               grid_tol: float = 1e-6) -> List[float]:
    """Eigenvalues of the half-line radial operator, independently of the
    closed-form machinery.  bc_at_eps: 'dirichlet', ('lambda', value) for
    the 3D s-wave coupling psi(0+) = lambda psitilde(0+), or
    ('robin', (c0, c1)) imposing c0 phi0 + c1 phitilde0 = 0."""
    if dim not in (1, 2, 3):
        raise DomainError("dim must be 1, 2 or 3")
    if dim == 3:
        ccoef = float(l * (l + 1))
        alpha = float(l + 1)
    elif dim == 2:
        ccoef = float(l * l) - 0.25
        alpha = abs(l) + 0.5
    else:
        ccoef = 0.0
        alpha = 1.0
    unit = _length_unit(params)
    xc = (0.1 * unit) if eps is None else float(eps)
    h = (1.2e-3 * unit) if h is None else float(h)
    if xc < 10.0 * h:
        raise DomainError("matching radius eps must exceed 10 h")
    if e_bracket is None:
        lo = energy_of_tau(params, 0.2).energy
        hi = energy_of_tau(params, 4.3).energy
        e_bracket = (lo, hi)
    tau_lo, tau_hi = _tau_window(params, e_bracket)

    log_case = ccoef == 0.0 or (dim == 3 and l == 0)
    if bc_at_eps == "dirichlet":
        if log_case:
            def residual(e, big_l, step):
                phi0, _ = _extract_log_data(params, e, ccoef, big_l, step, xc)
                return phi0
        else:
            def residual(e, big_l, step):
                return _reg_defect(params, e, alpha, ccoef, big_l, step, xc)
    else:
        kind, val = bc_at_eps
        if not log_case:
            raise DomainError("coupled boundary conditions exist only in the "
                              "logarithmic (s-wave / 1D) case")
        if kind == "lambda":
            lam = float(val)

            def residual(e, big_l, step):
                phi0, phit0 = _extract_log_data(params, e, ccoef, big_l,
                                                step, xc)
                if math.isinf(lam):
                    return phit0
                return phi0 - lam * phit0
        elif kind == "robin":
            c0, c1 = float(val[0]), float(val[1])

            def residual(e, big_l, step):
                phi0, phit0 = _extract_log_data(params, e, ccoef, big_l,
                                                step, xc)
                return c0 * phi0 + c1 * phit0
        else:
            raise DomainError("unknown boundary condition %r" % (bc_at_eps,))

    return _refined_levels(params, residual, tau_lo, tau_hi, h, xc, grid_tol)


def shoot_spectrum_1d(u: Unitary2, params: PhysParams, tau_max: float,
                      eps: Optional[float] = None, h: Optional[float] = None,
                      grid_tol: float = 1e-6) -> List[Tuple[float, int]]:
    """Full-line oracle: per-channel half-line shooting for the extension U.
    Returns (energy, multiplicity) sorted ascending."""
    unit = _length_unit(params)
    xc = (0.1 * unit) if eps is None else float(eps)
    h = (1.2e-3 * unit) if h is None else float(h)
    tau_lo = min(0.25, 0.9 / tau_max) if tau_max > 1 else 0.25
    levels: List[float] = []
    for kind, a in _channels(u):
        if kind == "dirichlet":
            def residual(e, big_l, step):
                phi0, _ = _extract_log_data(params, e, 0.0, big_l, step, xc)
                return phi0
        else:
            def residual(e, big_l, step, a=a):
                phi0, phit0 = _extract_log_data(params, e, 0.0, big_l,
                                                step, xc)
                return phit0 + a * phi0
        levels.extend(_refined_levels(params, residual, tau_lo, tau_max,
                                      h, xc, grid_tol))
    levels.sort()
    merged: List[Tuple[float, int]] = []
    for e in levels:
        if merged and abs(e - merged[-1][0]) < 1e-6 * abs(e):
            merged[-1] = (merged[-1][0], merged[-1][1] + 1)
        else:
            merged.append((e, 1))
    return merged


# ---------------------------------------------------------------------------
# Square-integrability evidence for the deficiency indices.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntegrabilityReport:
    dim: int
    l: int
    flags: Dict[str, str]           # e.g. {"M_at_0": "convergent", ...}
    l2_count_at_0: int
    l2_count_at_inf: int
    sector_contribution: int        # deficiency contribution of this sector
    operator_index: Optional[int]   # full-operator index when derivable
    origin_kept_3d_index: int = 0   # metadata: smooth functions on all of R^3


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(48)


def _gl_integral(fn, a: float, b: float) -> float:
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    total = 0.0
    for t, w in zip(_GL_NODES, _GL_WEIGHTS):
        total += w * fn(mid + half * t)
    return total * half


def _trend(increments: Sequence[float], label: str) -> str:
    """Classify a sequence of per-interval contributions to the running
    integral: divergent when the running total keeps growing by more than
    10% per refinement, convergent when the growth dies out monotonically."""
    totals = np.cumsum(increments)
    growth = [increments[j] / totals[j - 1] for j in range(1, len(increments))]
    tail = growth[-4:]
    if all(g > 0.10 for g in tail):
        return "divergent"
    inc_tail = increments[-4:]
    if all(g < 0.10 for g in tail) and all(
            inc_tail[i + 1] <= inc_tail[i] * 1.001 + 1e-300
            for i in range(len(inc_tail) - 1)):
        return "convergent"
    raise InconclusiveError("%s: no monotone convergence trend (growth %s)"
                            % (label, ["%.3g" % g for g in tail]))


def integrability_evidence(params: PhysParams, dim: int,
                           l: int = 0) -> IntegrabilityReport:
    if dim not in (1, 2, 3):
        raise DomainError("dim must be 1, 2 or 3")
    if dim == 1:
        mu = 0.5
    elif dim == 2:
        mu = float(abs(l))
    else:
        mu = abs(l) + 0.5
    # solutions of (h - i) phi = 0 through the complex Whittaker kernel
    q = complex(0.0, 2.0 * params.mass / params.hbar ** 2)
    s = cmath.sqrt(-4.0 * q)
    tau = params.p / s
    unit = _length_unit(params)

    def density(which, r):
        z = s * r
        if which == "M":
            v, _ = specfun._whittaker_m_c(tau, complex(mu), z)
        else:
            v, _ = specfun._whittaker_w_c(tau, complex(mu), z)
        return abs(v) ** 2

    flags: Dict[str, str] = {}
    l2_at_0 = 0
    for which in ("M", "W"):
        incs = []
        c = 0.5 * unit
        for j in range(7):
            a, b = c * 10.0 ** (-(j + 1)), c * 10.0 ** (-j)
            # integrate in log r; the integrand is power-law-like there
            incs.append(_gl_integral(
                lambda t: density(which, math.exp(t)) * math.exp(t),
                math.log(a), math.log(b)))
        # incs[0] is the outermost decade; refinement adds inner decades
        verdict = _trend(incs, "%s at 0 (dim %d, l %d)" % (which, dim, l))
        flags["%s_at_0" % which] = verdict
        if verdict == "convergent":
            l2_at_0 += 1
    l2_at_inf = 0
    for which in ("M", "W"):
        incs = []
        c = 2.0 * unit
        for j in range(6):
            incs.append(_gl_integral(lambda r: density(which, r),
                                     c * 2.0 ** j, c * 2.0 ** (j + 1)))
        verdict = _trend(incs, "%s at inf (dim %d, l %d)" % (which, dim, l))
        flags["%s_at_inf" % which] = verdict
        if verdict == "convergent":
            l2_at_inf += 1
    sector = max(0, l2_at_0 + l2_at_inf - 2)
    if dim == 1:
        operator = 2 * sector          # two half-lines
    elif l == 0:
        operator = sector              # only the s-wave sector contributes
    else:
        operator = None
    return IntegrabilityReport(dim, l, flags, l2_at_0, l2_at_inf, sector,
                               operator)


# ---------------------------------------------------------------------------
# Finite-difference oracle for the linear potential kappa |x|.
# ---------------------------------------------------------------------------

def fd_linear_levels(params: PhysParams, n_max: int,
                     L: Optional[float] = None,
                     n_grid: int = 6000) -> List[Tuple[float, str]]:
    """Lowest n_max levels of -(hbar^2/2m) u'' + kappa |x| u = E u, via
    parity-reduced tridiagonal matrices on two grids with Richardson
    extrapolation.  Returns (energy, parity) sorted ascending."""
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    coef = params.hbar ** 2 / (2.0 * params.mass)
    s = (2.0 * params.mass * params.kappa / params.hbar ** 2) ** (1.0 / 3.0)
    k_per = (n_max + 2) // 2 + 1
    e_est = (params.kappa / s) * (3.0 * math.pi * (4.0 * k_per + 2.0) / 8.0) \
        ** (2.0 / 3.0)
    if L is None:
        L = 1.5 * e_est / params.kappa + 12.0 / s

    def levels(parity: str, n: int) -> np.ndarray:
        h = L / n
        if parity == "even":
            x = (np.arange(n - 1) + 0.5) * h
            diag = coef * 2.0 / h ** 2 + params.kappa * x
            diag[0] -= coef / h ** 2        # Neumann fold u_{-1} = u_0
        else:
            x = np.arange(1, n) * h
            diag = coef * 2.0 / h ** 2 + params.kappa * x
        off = np.full(len(diag) - 1, -coef / h ** 2)
        vals = eigh_tridiagonal(diag, off, select="i",
                                select_range=(0, k_per - 1),
                                eigvals_only=True)
        return vals

    out = []
    for parity in ("even", "odd"):
        e1 = levels(parity, n_grid)
        e2 = levels(parity, 2 * n_grid)
        rich = (4.0 * e2 - e1) / 3.0
        for e in rich[:k_per]:
            out.append((float(e), parity))
    out.sort()
    return out[:n_max]
