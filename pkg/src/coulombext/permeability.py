"""Probability current at the origin and permeability classification.

For boundary data (phi(0+), phi(0-), phitilde(0+), phitilde(0-)) in the
domain of an extension, the current through the origin is
j(0) = Im(phitilde(0+) conj phi(0+)) = Im(phitilde(0-) conj phi(0-));
the logarithmic counterterm drops out because it multiplies |phi|^2.

An extension is impermeable when j(0) = 0 for every state in its
domain.  That happens exactly when the off-diagonal entry of its Cayley
matrix vanishes (invertible cases) or when v = 0 (doubly degenerate
case).  Permeable verdicts come with an explicit witness, found by
maximizing |j(0)| over the two-dimensional boundary-data null space:
j is a Hermitian quadratic form there, so the witness is an
eigenvector of a 2x2 Hermitian matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NotAnEigenpair
from .extensions import (BoundaryData, PhysParams, Unitary2,
                         boundary_data_from_vector, cayley_to_bc, domain_basis,
                         residual_matrix)
from .spectral import (_g_of_tau, _w_of_tau, eigencondition_matrix,
                       tau_of_energy, w_boundary_data)

_ZERO_TOL = 1e-10

# j(0) = bd^dagger J bd on the vector (phi+, phi-, phitilde+, phitilde-)
_J_FORM = np.zeros((4, 4), dtype=complex)
_J_FORM[0, 2] = -0.5j
_J_FORM[2, 0] = 0.5j


@dataclass(frozen=True)
class PermeabilityVerdict:
    verdict: str                 # "Impermeable" | "Permeable"
    case_tag: str                # "Case1" | "Case2" | "Case3"
    witness: Optional[BoundaryData] = None
    witness_j0: Optional[float] = None


def current_at_origin(bd: BoundaryData) -> float:
    return (bd.phitilde_plus * complex(bd.phi_plus).conjugate()).imag


def current_at_origin_minus(bd: BoundaryData) -> float:
    """The x -> 0- limit; equals current_at_origin on domain data."""
    return (bd.phitilde_minus * complex(bd.phi_minus).conjugate()).imag


def _best_witness(u: Unitary2):
    basis = domain_basis(u)                       # 4x2, orthonormal columns
    k = basis.conj().T @ _J_FORM @ basis          # Hermitian 2x2
    vals, vecs = np.linalg.eigh(0.5 * (k + k.conj().T))
    idx = int(np.argmax(np.abs(vals)))
    bd_vec = basis @ vecs[:, idx]
    return boundary_data_from_vector(bd_vec), float(vals[idx])


def classify_extension(u: Unitary2) -> PermeabilityVerdict:
    bc = cayley_to_bc(u)
    if bc.case_tag == "AMatrixFromIMinusU":
        case = "Case1"
        coupling = abs(bc.a_matrix[0, 1])
    elif bc.case_tag == "AMatrixFromIPlusU":
        case = "Case2"
        coupling = abs(bc.a_matrix[0, 1])
    else:
        case = "Case3"
        coupling = abs(bc.uv_params[1])
    if coupling <= _ZERO_TOL:
        return PermeabilityVerdict("Impermeable", case)
    witness, j0 = _best_witness(u)
    return PermeabilityVerdict("Permeable", case, witness=witness,
                               witness_j0=j0)


def j0_for_eigenstate(u: Unitary2, params: PhysParams, energy: float,
                      c) -> float:
    c = np.asarray(c, dtype=complex)
    m = eigencondition_matrix(u, params, energy)
    tau = tau_of_energy(params, energy).tau
    mscale = max(np.linalg.norm(m, 2),
                 np.linalg.norm(residual_matrix(u), 2)
                 * max(abs(_g_of_tau(tau)), abs(_w_of_tau(params, tau))))
    resid = np.linalg.norm(m @ c)
    if resid > 1e-8 * mscale * np.linalg.norm(c):
        raise NotAnEigenpair("M(E) c residual %g exceeds tolerance" % resid)
    bd_vec = (c[0] * w_boundary_data(params, energy, "minus").as_vector()
              + c[1] * w_boundary_data(params, energy, "plus").as_vector())
    return current_at_origin(boundary_data_from_vector(bd_vec))
