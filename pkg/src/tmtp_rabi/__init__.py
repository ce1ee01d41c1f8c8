"""Exact and squeezed-frame spectra of the two-mode two-photon Rabi model.

The Hamiltonian H = w1 a+a + w2 b+b + J sx + lam sz (ab + a+b+) carries a
bosonic parity and a conserved photon-number difference; this package turns
those into symmetric tridiagonal sector problems, adds the squeezed-frame
and bare 2x2 truncation approximations, and verifies every closed-form
ingredient against brute-force oracles. See the README for the resolved
sign and index conventions of the squeezing matrix elements.
"""

from .approximants import (
    CollapseRegime,
    SqueezeFrame,
    SqueezeMatrix,
    collapse_point,
    rwa_energies,
    sgrwa_diag_energy,
    sgrwa_energies,
    squeeze_elements_closed,
    squeeze_elements_oracle,
    squeeze_frame,
)
from .linalg import (
    DenseSym,
    NumericFailure,
    TridiagMatrix,
    eig_sym_dense,
    eig_sym_tridiag,
    eig_sym_tridiag_bisect,
    expm_antisymmetric,
    sturm_count,
)
from .model import (
    FullHamiltonian,
    ModelParams,
    SectorKey,
    build_full_hamiltonian,
    build_sector_hamiltonian,
    fulton_gouterman_residual,
    parity_sign_total,
    sector_parity_sign,
)
from .specialfuncs import JacobiParams, jacobi_poly, jacobi_sequence, log_gamma_ratio
from .spectra import (
    AccuracyReport,
    SpectrumRecord,
    SpectrumTable,
    SweepConfig,
    accuracy_report,
    exact_full_spectrum,
    exact_sector_spectrum,
    lambda_sweep,
    sector_union_spectrum,
)
from .verify import CheckResult, run_checks

__version__ = "0.1.0"

__all__ = [
    "CollapseRegime",
    "SqueezeFrame",
    "SqueezeMatrix",
    "collapse_point",
    "rwa_energies",
    "sgrwa_diag_energy",
    "sgrwa_energies",
    "squeeze_elements_closed",
    "squeeze_elements_oracle",
    "squeeze_frame",
    "DenseSym",
    "NumericFailure",
    "TridiagMatrix",
    "eig_sym_dense",
    "eig_sym_tridiag",
    "eig_sym_tridiag_bisect",
    "expm_antisymmetric",
    "sturm_count",
    "FullHamiltonian",
    "ModelParams",
    "SectorKey",
    "build_full_hamiltonian",
    "build_sector_hamiltonian",
    "fulton_gouterman_residual",
    "parity_sign_total",
    "sector_parity_sign",
    "JacobiParams",
    "jacobi_poly",
    "jacobi_sequence",
    "log_gamma_ratio",
    "AccuracyReport",
    "SpectrumRecord",
    "SpectrumTable",
    "SweepConfig",
    "accuracy_report",
    "exact_full_spectrum",
    "exact_sector_spectrum",
    "lambda_sweep",
    "sector_union_spectrum",
    "CheckResult",
    "run_checks",
    "__version__",
]
