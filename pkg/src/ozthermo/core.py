"""System definitions shared by every solver.

Reduced units throughout: lengths in units of a reference diameter,
energies in k_B*T.  The Coulomb coupling enters only through the bundle
alpha^2 = 4*pi*beta*e^2/eps0 (dimension: length), so no dielectric or
temperature bookkeeping is needed anywhere else.

All types are immutable after construction and all operations are pure
functions, so everything here is safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ChargeImbalanceError,
    EmptyMixtureError,
    NegativeCouplingError,
    NegativeDensityError,
    NonPositiveDiameterError,
    PackingOverflowError,
)

#: absolute tolerance on sum(rho_i * z_i) for a charged system
CHARGE_BALANCE_TOL = 1e-12


@dataclass(frozen=True)
class Species:
    """One hard-sphere species.

    Parameters
    ----------
    sigma : float
        Diameter (reduced length), > 0.
    rho : float
        Number density (1/length^3), >= 0.
    z : int
        Signed valence; 0 for a neutral sphere.
    """

    sigma: float
    rho: float
    z: int = 0


@dataclass(frozen=True)
class Mixture:
    """An ordered collection of species plus the Coulomb coupling.

    Species order is preserved; every per-species output in the package
    aligns to it.  ``alpha_sq`` = 4*pi*beta*e^2/eps0 in reduced length
    units; 0 denotes an uncharged system.  Use :func:`make_mixture` to
    construct a validated instance.
    """

    species: tuple[Species, ...]
    alpha_sq: float = 0.0
    label: str = ""

    @property
    def n_species(self) -> int:
        return len(self.species)

    @property
    def sigmas(self) -> np.ndarray:
        return np.array([s.sigma for s in self.species], dtype=float)

    @property
    def rhos(self) -> np.ndarray:
        return np.array([s.rho for s in self.species], dtype=float)

    @property
    def valences(self) -> np.ndarray:
        return np.array([s.z for s in self.species], dtype=float)

    @property
    def is_charged(self) -> bool:
        return self.alpha_sq > 0.0 and any(s.z != 0 for s in self.species)

    def contact_distances(self) -> np.ndarray:
        """Matrix R_ij = (sigma_i + sigma_j)/2."""
        s = self.sigmas
        return 0.5 * (s[:, None] + s[None, :])

    def core_shifts(self) -> np.ndarray:
        """Matrix S_ij = |sigma_i - sigma_j|/2."""
        s = self.sigmas
        return 0.5 * np.abs(s[:, None] - s[None, :])


@dataclass(frozen=True)
class Moments:
    """Geometric size moments xi_n = (pi/6) * sum_k rho_k sigma_k^n.

    ``delta`` = 1 - xi3 is the void-volume fraction and ``eta`` = xi3
    the total packing fraction.
    """

    xi0: float
    xi1: float
    xi2: float
    xi3: float
    delta: float = field(init=False)
    eta: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "delta", 1.0 - self.xi3)
        object.__setattr__(self, "eta", self.xi3)


def make_mixture(species, alpha_sq: float = 0.0, label: str = "") -> Mixture:
    """Validate and build a :class:`Mixture`.

    Raises
    ------
    EmptyMixtureError
        No species given.
    NonPositiveDiameterError, NegativeDensityError, NegativeCouplingError
        Out-of-domain fields.
    ChargeImbalanceError
        Charges present but |sum rho_i z_i| > 1e-12.
    """
    species = tuple(species)
    if not species:
        raise EmptyMixtureError("a mixture needs at least one species")
    for idx, s in enumerate(species):
        if not s.sigma > 0:
            raise NonPositiveDiameterError(
                f"species {idx}: sigma = {s.sigma} (must be > 0)")
        if s.rho < 0:
            raise NegativeDensityError(
                f"species {idx}: rho = {s.rho} (must be >= 0)")
    if alpha_sq < 0:
        raise NegativeCouplingError(f"alpha_sq = {alpha_sq} (must be >= 0)")
    if any(s.z != 0 for s in species):
        imbalance = float(sum(s.rho * s.z for s in species))
        if abs(imbalance) > CHARGE_BALANCE_TOL:
            raise ChargeImbalanceError(
                f"sum rho_i z_i = {imbalance:.3e} exceeds "
                f"{CHARGE_BALANCE_TOL:.0e}")
    return Mixture(species=species, alpha_sq=float(alpha_sq), label=label)


def moments(m: Mixture) -> Moments:
    """Geometric moments of the size distribution.

    Raises
    ------
    PackingOverflowError
        If xi3 >= 1 (unphysical packing).
    """
    rho = m.rhos
    sig = m.sigmas
    xi = [float(np.pi / 6.0 * np.sum(rho * sig ** n)) for n in range(4)]
    if xi[3] >= 1.0:
        raise PackingOverflowError(f"packing fraction eta = {xi[3]} >= 1")
    return Moments(*xi)
