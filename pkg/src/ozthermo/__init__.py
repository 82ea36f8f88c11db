"""Analytic OZ-equation thermodynamics for hard-sphere and primitive-model
fluids, with a grid-based numerical solver as the independent oracle."""

from . import errors
from .bmcsl import (
    MixtureThermo,
    bmcsl_z,
    bmcsl_z_from_moments,
    excess_helmholtz,
    ln_gamma_hs,
    ln_gamma_hs_all,
    mixture_thermo,
)
from .core import Mixture, Moments, Species, make_mixture, moments
from .msa import (
    MsaSolution,
    a_coefficient,
    helmholtz_charging,
    internal_energy,
    internal_energy_from_moments,
    ln_gamma_elec,
    ln_gamma_elec_all,
    ln_gamma_total_all,
    n_coefficient,
    q_coefficients,
    solve_gamma,
    waisman_lebowitz_gamma,
)
from .oz_solver import (
    CorrelationTable,
    RadialGrid,
    contact_extrapolate,
    c_hat_zero,
    inverse_sine_transform,
    inverse_structure_factor_zero,
    sine_transform,
    solve_py_numeric,
    write_table_csv,
)
from .percus_yevick import (
    PySingleSolution,
    baxter_q,
    contact_value,
    direct_correlation,
    excess_mu_single,
    solve_py_single,
    z_carnahan_starling,
    z_compressibility,
    z_virial,
)

__version__ = "0.1.0"

__all__ = [
    "errors",
    "Species", "Mixture", "Moments", "make_mixture", "moments",
    "PySingleSolution", "solve_py_single", "baxter_q", "contact_value",
    "z_compressibility", "z_virial", "z_carnahan_starling",
    "direct_correlation", "excess_mu_single",
    "MixtureThermo", "bmcsl_z", "bmcsl_z_from_moments", "excess_helmholtz",
    "ln_gamma_hs", "ln_gamma_hs_all", "mixture_thermo",
    "MsaSolution", "solve_gamma", "n_coefficient", "a_coefficient",
    "q_coefficients", "internal_energy", "internal_energy_from_moments",
    "helmholtz_charging", "ln_gamma_elec", "ln_gamma_elec_all",
    "ln_gamma_total_all", "waisman_lebowitz_gamma",
    "RadialGrid", "CorrelationTable", "sine_transform",
    "inverse_sine_transform", "solve_py_numeric", "contact_extrapolate",
    "c_hat_zero", "inverse_structure_factor_zero", "write_table_csv",
]
