"""Steady-state toolkit for a driven optomechanical cavity containing an
atomic condensate: mean-field branches and optical bistability, linearized
fluctuation dynamics with algebraic stability, stationary covariances,
cooling figures of merit and bipartite Gaussian entanglement.
"""

from .model import (HBAR, K_B, C_LIGHT, BecParams, CavityParams,
                    DerivedQuantities, DriveParams, EffectiveBecParams,
                    MicroscopicBecParams, MirrorParams, ParameterError,
                    SystemParams, bose_occupation, derive_quantities,
                    drive_rate, effective_from_microscopic)
from .steady_state import (BistabilityWindow, MeanFieldBranch,
                           bistability_window, mean_field_cubic,
                           power_at_photon_number, solve_mean_field,
                           threshold_power)
from .linear_dynamics import (NumericalError, characteristic_polynomial,
                              diffusion_matrix, drift_matrix, is_stable,
                              solve_lyapunov, stability_oracle)
from .gaussian_measures import (ATOM_FIELD, BIPARTITIONS, MIRROR_ATOM,
                                MIRROR_FIELD, Bipartition,
                                EntanglementResult, bogoliubov_excitations,
                                log_negativity, mirror_phonons,
                                reduce_bipartition)
from .sweep import SweepRow, SweepSpec, Variant, emit, run_sweep
from .presets import FIGURE_IDS, baseline_params, figure_preset
from .config import ConfigError, load_config

__version__ = "0.1.0"

__all__ = [
    "HBAR", "K_B", "C_LIGHT",
    "BecParams", "CavityParams", "DerivedQuantities", "DriveParams",
    "EffectiveBecParams", "MicroscopicBecParams", "MirrorParams",
    "ParameterError", "SystemParams", "bose_occupation", "derive_quantities",
    "drive_rate", "effective_from_microscopic",
    "BistabilityWindow", "MeanFieldBranch", "bistability_window",
    "mean_field_cubic", "power_at_photon_number", "solve_mean_field",
    "threshold_power",
    "NumericalError", "characteristic_polynomial", "diffusion_matrix",
    "drift_matrix", "is_stable", "solve_lyapunov", "stability_oracle",
    "ATOM_FIELD", "BIPARTITIONS", "MIRROR_ATOM", "MIRROR_FIELD",
    "Bipartition", "EntanglementResult", "bogoliubov_excitations",
    "log_negativity", "mirror_phonons", "reduce_bipartition",
    "SweepRow", "SweepSpec", "Variant", "emit", "run_sweep",
    "FIGURE_IDS", "baseline_params", "figure_preset",
    "ConfigError", "load_config",
    "__version__",
]
