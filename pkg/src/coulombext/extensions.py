"""Self-adjoint extension families of the Coulomb Hamiltonian.

The 1D family is labeled by a 2x2 unitary matrix U coupling the
regularized boundary data on the two half-lines, the 3D family by a
single real parameter lambda (with lambda = infinity allowed), and the
2D family by an angle theta carried as an opaque label.  This module
holds the value types, the boundary-condition residual, and the
translation between U and the self-adjoint Cayley matrix A.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import DomainError, NormalizationError

_RANK_TOL = 1e-10  # relative singular-value threshold for (I -+ U) invertibility


@dataclass(frozen=True)
class PhysParams:
    """The constants hbar, m, kappa fixing the Hamiltonian."""

    hbar: float = 1.0
    mass: float = 1.0
    kappa: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "mass", "kappa"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise DomainError("%s must be a positive finite real, got %r"
                                  % (name, v))

    @property
    def p(self) -> float:
        """The coupling scale 2 m kappa / hbar^2."""
        return 2.0 * self.mass * self.kappa / self.hbar ** 2


class Unitary2:
    """A 2x2 complex unitary matrix labeling a 1D extension."""

    def __init__(self, entries):
        m = np.asarray(entries, dtype=complex)
        if m.shape != (2, 2):
            raise DomainError("Unitary2 needs a 2x2 matrix, got shape %s"
                              % (m.shape,))
        if not np.all(np.isfinite(m.view(float))):
            raise DomainError("Unitary2 entries must be finite")
        dev = np.abs(m @ m.conj().T - np.eye(2)).max()
        if dev > 1e-12:
            raise DomainError("matrix is not unitary (deviation %g)" % dev)
        self._m = m

    @property
    def entries(self) -> np.ndarray:
        return self._m.copy()

    def __repr__(self):
        return "Unitary2(%r)" % (self._m.tolist(),)


_NAMED = {
    "dirichlet": [[1, 0], [0, 1]],
    "neumannlike": [[-1, 0], [0, -1]],
    "periodic": [[0, 1], [1, 0]],
    "antiperiodic": [[0, -1], [-1, 0]],
}


def named_extension(name: str) -> Unitary2:
    key = str(name).strip().lower().replace("-", "").replace("_", "")
    if key not in _NAMED:
        raise DomainError("unknown named extension %r (choose from %s)"
                          % (name, sorted(_NAMED)))
    return Unitary2(_NAMED[key])


def unitary_from_params(theta: float, a: complex, b: complex) -> Unitary2:
    """General 2x2 unitary e^{i theta} ((a, -conj b), (b, conj a))."""
    a = complex(a)
    b = complex(b)
    norm = abs(a) ** 2 + abs(b) ** 2
    if abs(norm - 1.0) > 1e-10:
        raise NormalizationError("|a|^2 + |b|^2 = %g, expected 1" % norm)
    ph = cmath.exp(1j * float(theta))
    m = ph * np.array([[a, -b.conjugate()], [b, a.conjugate()]])
    # renormalize rounding residue so the Unitary2 invariant holds exactly
    return Unitary2(m / math.sqrt(norm))


@dataclass(frozen=True)
class BoundaryData:
    """Regularized lateral limits (phi(0+), phi(0-), phitilde(0+), phitilde(0-))."""

    phi_plus: complex
    phi_minus: complex
    phitilde_plus: complex
    phitilde_minus: complex

    def __post_init__(self):
        for name in ("phi_plus", "phi_minus", "phitilde_plus", "phitilde_minus"):
            v = complex(getattr(self, name))
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise DomainError("%s must be finite" % name)

    def as_vector(self) -> np.ndarray:
        return np.array([self.phi_plus, self.phi_minus,
                         self.phitilde_plus, self.phitilde_minus],
                        dtype=complex)


def boundary_data_from_vector(v) -> BoundaryData:
    v = np.asarray(v, dtype=complex)
    return BoundaryData(v[0], v[1], v[2], v[3])


@dataclass(frozen=True)
class ExtensionSpec:
    """Dimension-tagged extension label."""

    variant: str                      # "one_d" | "two_d" | "three_d"
    unitary: Optional[Unitary2] = None
    theta: Optional[float] = None
    lam: Optional[float] = None       # may be math.inf

    @staticmethod
    def one_d(u: Unitary2) -> "ExtensionSpec":
        return ExtensionSpec("one_d", unitary=u)

    @staticmethod
    def two_d(theta: float) -> "ExtensionSpec":
        t = math.fmod(float(theta), 2.0 * math.pi)
        if t < 0:
            t += 2.0 * math.pi
        return ExtensionSpec("two_d", theta=t)

    @staticmethod
    def three_d(lam: float) -> "ExtensionSpec":
        lam = float(lam)
        if math.isnan(lam):
            raise DomainError("lambda must be real or inf")
        return ExtensionSpec("three_d", lam=lam)

    def __post_init__(self):
        if self.variant not in ("one_d", "two_d", "three_d"):
            raise DomainError("unknown variant %r" % (self.variant,))
        if self.variant == "one_d" and self.unitary is None:
            raise DomainError("one_d spec needs a unitary")
        if self.variant == "two_d" and self.theta is None:
            raise DomainError("two_d spec needs theta")
        if self.variant == "three_d" and self.lam is None:
            raise DomainError("three_d spec needs lambda")


@dataclass(frozen=True)
class BCForm:
    """Boundary-condition normal form of a 1D extension."""

    case_tag: str                     # AMatrixFromIMinusU | AMatrixFromIPlusU
                                      # | DoublyDegenerate
    a_matrix: Optional[np.ndarray] = None
    uv_params: Optional[Tuple[float, complex]] = None


def _invertible(m: np.ndarray) -> bool:
    s = np.linalg.svd(m, compute_uv=False)
    return s[-1] > _RANK_TOL * max(s[0], 1.0)


def cayley_to_bc(u: Unitary2) -> BCForm:
    m = u.entries
    eye = np.eye(2)
    m_minus = eye - m
    m_plus = eye + m
    if _invertible(m_minus):
        a = -1j * np.linalg.solve(m_minus, m_plus)
        a = 0.5 * (a + a.conj().T)  # remove rounding skew; exact A is self-adjoint
        return BCForm("AMatrixFromIMinusU", a_matrix=a)
    if _invertible(m_plus):
        a = 1j * np.linalg.solve(m_plus, m_minus)
        a = 0.5 * (a + a.conj().T)
        return BCForm("AMatrixFromIPlusU", a_matrix=a)
    # both singular: eigenvalues are {+1, -1}, so U is hermitian, traceless
    u_r = m[1, 1].real
    v = m[0, 1]
    model = np.array([[-u_r, v], [v.conjugate(), u_r]])
    if np.abs(m - model).max() > 1e-9:
        raise DomainError("doubly degenerate case has unexpected form")
    return BCForm("DoublyDegenerate", uv_params=(u_r, v))


def inverse_cayley(bc: BCForm) -> Unitary2:
    if bc.a_matrix is None:
        raise DomainError("inverse Cayley needs an A matrix case")
    a = np.asarray(bc.a_matrix, dtype=complex)
    eye = np.eye(2)
    if bc.case_tag == "AMatrixFromIMinusU":
        m = np.linalg.solve((eye + 1j * a).T, (1j * a - eye).T).T
    elif bc.case_tag == "AMatrixFromIPlusU":
        m = np.linalg.solve((a + 1j * eye).T, (1j * eye - a).T).T
    else:
        raise DomainError("unknown case_tag %r" % (bc.case_tag,))
    return Unitary2(_project_unitary(m))


def _project_unitary(m: np.ndarray) -> np.ndarray:
    # polar projection absorbs rounding so the Unitary2 invariant holds
    w, _, vh = np.linalg.svd(m)
    return w @ vh


def residual_matrix(u: Unitary2) -> np.ndarray:
    """2x4 matrix R with bc_residual(u, bd) = R @ bd.as_vector()."""
    m = u.entries
    eye = np.eye(2)
    r = np.zeros((2, 4), dtype=complex)
    jplus = 1j * (eye + m)
    r[:, 0] = -jplus[:, 0]   # phi_plus enters with a minus sign
    r[:, 1] = jplus[:, 1]
    r[:, 2:] = eye - m
    return r


def bc_residual(u: Unitary2, bd: BoundaryData) -> np.ndarray:
    """(I-U) (phitilde+, phitilde-)^T + i (I+U) (-phi+, phi-)^T."""
    return residual_matrix(u) @ bd.as_vector()


def domain_basis(u: Unitary2) -> np.ndarray:
    """4x2 orthonormal basis of the extension's boundary-data null space."""
    _, s, vh = np.linalg.svd(residual_matrix(u))
    if s[1] <= 1e-8 * max(s[0], 1.0):
        raise DomainError("boundary system is rank deficient")
    return vh.conj().T[:, 2:]


def bc_3d(lam: float, bd_radial: Tuple[complex, complex]) -> bool:
    """Whether radial data (psi(0+), psitilde(0+)) satisfies psi = lambda psitilde."""
    psi0 = complex(bd_radial[0])
    psit0 = complex(bd_radial[1])
    if math.isinf(lam):
        return abs(psit0) <= 1e-10 * max(abs(psi0), abs(psit0), 1e-300)
    resid = psi0 - lam * psit0
    scale = max(abs(psi0), abs(lam * psit0), 1.0)
    return abs(resid) <= 1e-10 * scale


# ---------------------------------------------------------------------------
# JSON serialization (complex numbers as [re, im] pairs).
# ---------------------------------------------------------------------------

def _c2j(z: complex):
    z = complex(z)
    return [z.real, z.imag]


def _j2c(pair) -> complex:
    return complex(pair[0], pair[1])


def _m2j(m: np.ndarray):
    return [[_c2j(m[i, j]) for j in range(m.shape[1])] for i in range(m.shape[0])]


def _j2m(rows) -> np.ndarray:
    return np.array([[_j2c(e) for e in row] for row in rows], dtype=complex)


def extension_to_json(spec: ExtensionSpec) -> dict:
    if spec.variant == "one_d":
        return {"variant": "one_d", "unitary": _m2j(spec.unitary.entries)}
    if spec.variant == "two_d":
        return {"variant": "two_d", "theta": spec.theta}
    return {"variant": "three_d",
            "lambda": "inf" if math.isinf(spec.lam) else spec.lam}


def extension_from_json(obj: dict) -> ExtensionSpec:
    variant = obj.get("variant")
    if variant == "one_d":
        return ExtensionSpec.one_d(Unitary2(_j2m(obj["unitary"])))
    if variant == "two_d":
        return ExtensionSpec.two_d(float(obj["theta"]))
    if variant == "three_d":
        lam = obj["lambda"]
        return ExtensionSpec.three_d(math.inf if lam == "inf" else float(lam))
    raise DomainError("unknown extension variant %r" % (variant,))


def bcform_to_json(bc: BCForm) -> dict:
    out = {"case_tag": bc.case_tag}
    if bc.a_matrix is not None:
        out["a_matrix"] = _m2j(bc.a_matrix)
    if bc.uv_params is not None:
        out["uv_params"] = {"u": bc.uv_params[0], "v": _c2j(bc.uv_params[1])}
    return out
