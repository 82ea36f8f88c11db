"""Hard-sphere mixture thermodynamics (BMCSL).

The Boublik-Mansoori-Carnahan-Starling-Leland equation of state is
implemented in the Mansoori composite form

    Z = [(1 + xi + xi^2) - 3*xi*(y1 + y2*xi) - xi^3*y3] / (1 - xi)^3,

which is algebraically identical to the moment (Boublik) form

    Z = 1/D + 3*xi1*xi2/(xi0*D^2) + (3 - xi3)*xi2^3/(xi0*D^3),  D = 1-xi3.

The excess Helmholtz energy is the exact isochoric integral of Z at
constant composition, and activity coefficients are its exact density
derivatives; both reduce to the Carnahan-Starling results for a single
species.  Valences are ignored here: this is the uncharged reference
part of the thermodynamics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Mixture, moments


@dataclass(frozen=True)
class MixtureThermo:
    """Bundle of the mixture-level hard-sphere results."""

    z_bmcsl: float
    a_ex_per_particle: float
    ln_gamma_hs: tuple[float, ...]
    y1: float
    y2: float
    y3: float


def _composites(m: Mixture) -> tuple[float, float, float]:
    """Mansoori composites (y1, y2, y3) from pairwise size asymmetries."""
    sig = m.sigmas
    rho = m.rhos
    rho_tot = float(np.sum(rho))
    if rho_tot == 0.0:
        return 0.0, 0.0, 1.0
    x = rho / rho_tot
    xi_i = np.pi / 6.0 * rho * sig ** 3
    xi = float(np.sum(xi_i))
    if xi == 0.0:
        return 0.0, 0.0, 1.0
    frac = xi_i / xi
    y1 = 0.0
    y2 = 0.0
    inner = float(np.sum(frac / sig))       # sum_k (xi_k/xi)/sigma_k
    n = m.n_species
    for i in range(n):
        for j in range(i + 1, n):
            root = np.sqrt(sig[i] * sig[j])
            d_ij = (np.sqrt(xi_i[i] * xi_i[j]) / xi
                    * (sig[i] - sig[j]) ** 2 / (sig[i] * sig[j])
                    * np.sqrt(x[i] * x[j]))
            y1 += d_ij * (sig[i] + sig[j]) / root
            y2 += d_ij * root * inner
    y3 = float(np.sum(frac ** (2.0 / 3.0) * x ** (1.0 / 3.0))) ** 3
    return float(y1), float(y2), float(y3)


def bmcsl_z(m: Mixture) -> float:
    """BMCSL compressibility factor P / (k_B T sum_i rho_i)."""
    mom = moments(m)            # raises PackingOverflowError for eta >= 1
    xi = mom.xi3
    if mom.xi0 == 0.0:
        return 1.0
    y1, y2, y3 = _composites(m)
    return ((1.0 + xi + xi ** 2) - 3.0 * xi * (y1 + y2 * xi)
            - xi ** 3 * y3) / (1.0 - xi) ** 3


def bmcsl_z_from_moments(m: Mixture) -> float:
    """BMCSL Z in the moment (Boublik) form; equals :func:`bmcsl_z`.

    Kept public as an independent route for consistency checks.
    """
    mom = moments(m)
    if mom.xi0 == 0.0:
        return 1.0
    d = mom.delta
    return (1.0 / d
            + 3.0 * mom.xi1 * mom.xi2 / (mom.xi0 * d ** 2)
            + (3.0 - mom.xi3) * mom.xi2 ** 3 / (mom.xi0 * d ** 3))


def excess_helmholtz(m: Mixture) -> float:
    """Excess Helmholtz energy per particle, A_ex / (N k_B T).

    Exact isochoric integral of the BMCSL Z from zero density at fixed
    composition:

        (xi2^3/(xi0*xi3^2) - 1)*ln(D) + 3*xi1*xi2/(xi0*D)
            + xi2^3/(xi0*xi3*D^2),   D = 1 - xi3.
    """
    mom = moments(m)
    if mom.xi0 == 0.0 or mom.xi3 == 0.0:
        return 0.0
    d = mom.delta
    r = mom.xi2 ** 3 / (mom.xi0 * mom.xi3 ** 2)
    return ((r - 1.0) * np.log(d)
            + 3.0 * mom.xi1 * mom.xi2 / (mom.xi0 * d)
            + r * mom.xi3 / d ** 2)


def _moment_derivatives(m: Mixture) -> tuple[float, float, float, float]:
    """d(xi0 * a_ex)/d(xi_n) for n = 0..3 (free energy density in moment
    variables); contracting with sigma_i^n gives beta*mu_i^ex."""
    mom = moments(m)
    d = mom.delta
    ln_d = np.log(d)
    xi0, xi1, xi2, xi3 = mom.xi0, mom.xi1, mom.xi2, mom.xi3
    d0 = -ln_d
    d1 = 3.0 * xi2 / d
    d2 = (3.0 * xi2 ** 2 / xi3 ** 2 * ln_d
          + 3.0 * xi1 / d
          + 3.0 * xi2 ** 2 / (xi3 * d ** 2))
    d3 = (-2.0 * xi2 ** 3 / xi3 ** 3 * ln_d
          - (xi2 ** 3 / xi3 ** 2 - xi0) / d
          + 3.0 * xi1 * xi2 / d ** 2
          - xi2 ** 3 / (xi3 ** 2 * d ** 2)
          + 2.0 * xi2 ** 3 / (xi3 * d ** 3))
    return d0, d1, d2, d3


def ln_gamma_hs_all(m: Mixture) -> np.ndarray:
    """Hard-sphere activity coefficients ln gamma_i for every species.

    Exact derivative of N * a_ex with respect to N_i at fixed T, V and
    the other particle numbers (equivalently of the excess free energy
    per volume with respect to rho_i).
    """
    mom = moments(m)
    if mom.xi0 == 0.0 or mom.xi3 == 0.0:
        return np.zeros(m.n_species)
    d0, d1, d2, d3 = _moment_derivatives(m)
    sig = m.sigmas
    return d0 + d1 * sig + d2 * sig ** 2 + d3 * sig ** 3


def ln_gamma_hs(m: Mixture, i: int) -> float:
    """Hard-sphere ln gamma for species ``i`` (input order)."""
    if not 0 <= i < m.n_species:
        raise IndexError(f"species index {i} out of range "
                         f"(mixture has {m.n_species})")
    return float(ln_gamma_hs_all(m)[i])


def mixture_thermo(m: Mixture) -> MixtureThermo:
    """Evaluate Z, a_ex and all ln gamma_i in one call."""
    y1, y2, y3 = _composites(m)
    return MixtureThermo(
        z_bmcsl=bmcsl_z(m),
        a_ex_per_particle=excess_helmholtz(m),
        ln_gamma_hs=tuple(float(v) for v in ln_gamma_hs_all(m)),
        y1=y1, y2=y2, y3=y3,
    )
