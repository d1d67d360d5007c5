"""Self-adjoint extensions of the 1D/2D/3D Coulomb Hamiltonian:
bound-state spectra, Green's function, and permeability of the origin."""

from .errors import (BracketError, ConvergenceError, DomainError,
                     EigenvalueHit, GridError, InconclusiveError,
                     NormalizationError, NotAnEigenpair, PoleError)
from .extensions import (BCForm, BoundaryData, ExtensionSpec, PhysParams,
                         Unitary2, bc_3d, bc_residual, cayley_to_bc,
                         domain_basis, extension_from_json, extension_to_json,
                         inverse_cayley, named_extension, residual_matrix,
                         unitary_from_params)
from .laplace import (ParityEigen, airy_asymptotic, airy_spectrum_1d,
                      compare_asymptotic_conventions, query_deficiency,
                      selfadjointness_report)
from .oracle import (IntegrabilityReport, fd_linear_levels,
                     integrability_evidence, shoot_eigenvalues_halfline,
                     shoot_spectrum_1d)
from .permeability import (PermeabilityVerdict, classify_extension,
                           current_at_origin, j0_for_eigenstate)
from .spectral import (EigenRecord, OmegaValue, TauEnergy,
                       dirichlet_spectrum_3d, eigenfunction_eval,
                       energy_of_tau, greens_dirichlet, omega,
                       solve_spectrum_1d, spectrum_3d_lambda, tau_of_energy)

__version__ = "0.1.0"
