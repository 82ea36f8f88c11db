"""Mean Spherical Approximation for the primitive-model electrolyte.

Blum's Wiener-Hopf solution reduces the MSA for charged hard spheres to
one nonlinear equation for the screening parameter Gamma,

    2*Gamma = alpha * sqrt( sum_i rho_i [ (z_i - (pi/2D) sigma_i^2 P_n)
                                          / (1 + Gamma sigma_i) ]^2 ),

with P_n = (1/Omega) sum_k rho_k sigma_k z_k / (1 + Gamma sigma_k) and
Omega = 1 + (pi/2D) sum_k rho_k sigma_k^3 / (1 + Gamma sigma_k), where
D = 1 - xi3 is the void fraction.  Once Gamma is known, every Baxter
coefficient (N_i, a_i, Q'_ij, Q''_ij) is explicit, and the electrostatic
internal energy, charging free energy and activity coefficients follow
in closed form (Blum 1975; Blum & Hoye 1977).

For equal diameters the equation collapses to the Waisman-Lebowitz
quadratic, and for point ions to the Debye-Hueckel limit 2*Gamma -> kappa.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bmcsl
from .core import Mixture, make_mixture, moments
from .errors import (
    NegativeXError,
    NoConvergenceError,
    NotChargedError,
    QuadTooCoarseError,
    ZeroGammaError,
)


@dataclass(frozen=True)
class MsaSolution:
    """Converged MSA factorization state for one mixture.

    Per-species arrays follow the mixture's species order; ``q_prime``
    and ``q_dprime`` are (n, n) pair matrices.  ``residual`` is the
    relative defect of the Gamma equation at return.
    """

    mixture: Mixture
    gamma: float
    p_n: float
    omega: float
    n_coeff: np.ndarray
    a_coeff: np.ndarray
    q_prime: np.ndarray
    q_dprime: np.ndarray
    m0: float
    iterations: int
    residual: float


def waisman_lebowitz_gamma(x: float) -> tuple[float, float]:
    """Equal-diameter closed form.

    For x = alpha*sigma*sqrt(sum rho z^2) returns (Gamma*sigma, B) with

        Gamma*sigma = (-1 + sqrt(1 + 2x)) / 2,
        B = -Gamma*sigma / (1 + Gamma*sigma).
    """
    if x < 0:
        raise NegativeXError(f"x = {x} (must be >= 0)")
    gs = 0.5 * (-1.0 + np.sqrt(1.0 + 2.0 * x))
    return float(gs), float(-gs / (1.0 + gs))


def _pn_omega(gamma, sig, rho, z, delta):
    omega = 1.0 + np.pi / (2.0 * delta) * np.sum(
        rho * sig ** 3 / (1.0 + gamma * sig))
    p_n = np.sum(rho * sig * z / (1.0 + gamma * sig)) / omega
    return p_n, omega


def _d_a(gamma, sig, rho, z, delta):
    p_n, _ = _pn_omega(gamma, sig, rho, z, delta)
    return np.sum(rho * ((z - np.pi / (2.0 * delta) * sig ** 2 * p_n)
                         / (1.0 + gamma * sig)) ** 2)


def _zero_solution(m: Mixture) -> MsaSolution:
    """Gamma = 0 state for uncharged input (continuity with pure HS)."""
    n = m.n_species
    mom = moments(m)
    sig = m.sigmas
    d = mom.delta
    omega = 1.0 + np.pi / (2.0 * d) * float(np.sum(m.rhos * sig ** 3))
    q_prime = 2.0 * np.pi / d * (m.contact_distances()
                                 + np.pi / (4.0 * d)
                                 * np.outer(sig, sig) * mom.xi2)
    q_dprime = np.broadcast_to(
        2.0 * np.pi / d * (1.0 + np.pi / (2.0 * d) * mom.xi2 * sig),
        (n, n)).copy()
    return MsaSolution(mixture=m, gamma=0.0, p_n=0.0, omega=omega,
                       n_coeff=np.zeros(n), a_coeff=np.zeros(n),
                       q_prime=q_prime, q_dprime=q_dprime, m0=0.0,
                       iterations=0, residual=0.0)


def solve_gamma(m: Mixture, tol: float = 1e-12,
                max_iter: int = 500) -> MsaSolution:
    """Solve the MSA screening equation and populate all coefficients.

    Damped fixed point Gamma <- (1-w)*Gamma + w*(alpha/2)*sqrt(D_a(Gamma))
    with w = 0.5 from Gamma_0 = kappa_D/2, falling back to bisection on
    f(Gamma) = 2*Gamma - alpha*sqrt(D_a) if the fixed point stalls.
    P_n is recomputed exactly at every Gamma evaluation, so there is no
    nested iteration.  Uncharged input returns a valid Gamma = 0 state.

    Raises
    ------
    NoConvergenceError
        Neither scheme reached the requested relative residual.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    if not m.is_charged:
        return _zero_solution(m)

    sig = m.sigmas
    rho = m.rhos
    z = m.valences
    mom = moments(m)
    delta = mom.delta
    alpha = np.sqrt(m.alpha_sq)
    kappa = alpha * np.sqrt(np.sum(rho * z ** 2))

    def residual_of(g):
        return 2.0 * g - alpha * np.sqrt(_d_a(g, sig, rho, z, delta))

    gamma = 0.5 * kappa
    iterations = 0
    converged = False
    for iterations in range(1, max_iter + 1):
        target = 0.5 * alpha * np.sqrt(_d_a(gamma, sig, rho, z, delta))
        new = 0.5 * gamma + 0.5 * target
        gamma = new
        resid = abs(residual_of(gamma)) / max(2.0 * gamma, 1e-300)
        if resid <= tol:
            converged = True
            break

    if not converged:
        lo, hi = 0.0, 10.0 * kappa
        f_lo = residual_of(lo)
        for _ in range(256):
            mid = 0.5 * (lo + hi)
            f_mid = residual_of(mid)
            if f_lo * f_mid <= 0:
                hi = mid
            else:
                lo, f_lo = mid, f_mid
            iterations += 1
            gamma = 0.5 * (lo + hi)
            resid = abs(residual_of(gamma)) / max(2.0 * gamma, 1e-300)
            if resid <= tol:
                converged = True
                break
        if not converged:
            raise NoConvergenceError(iterations, resid)

    p_n, omega = _pn_omega(gamma, sig, rho, z, delta)
    pref = np.pi / (2.0 * delta)
    n_coeff = -(gamma * z + pref * sig * p_n) / (1.0 + gamma * sig)
    a_coeff = m.alpha_sq * (z - pref * sig ** 2 * p_n) \
        / (2.0 * gamma * (1.0 + gamma * sig))
    r_ij = m.contact_distances()
    q_prime = (2.0 * np.pi / delta
               * (r_ij + np.pi / (4.0 * delta) * np.outer(sig, sig) * mom.xi2)
               - 2.0 * gamma ** 2 / m.alpha_sq * np.outer(a_coeff, a_coeff))
    # pair-independent of i; the a_j P_n term carries pi/delta so that the
    # central relation Q'_ij - sigma_i/2 * Q''_ij = pi sigma_j/delta + N_i a_j
    # holds exactly
    q_dprime_row = (2.0 * np.pi / delta
                    * (1.0 + np.pi / (2.0 * delta) * mom.xi2 * sig)
                    + np.pi / delta * a_coeff * p_n)
    q_dprime = np.broadcast_to(q_dprime_row, (m.n_species, m.n_species)).copy()
    m0 = float(np.pi / 6.0 * np.sum(
        rho * sig ** 2 * (2.0 * gamma * a_coeff / m.alpha_sq + 0.5 * z)))
    return MsaSolution(mixture=m, gamma=float(gamma), p_n=float(p_n),
                       omega=float(omega), n_coeff=n_coeff, a_coeff=a_coeff,
                       q_prime=q_prime, q_dprime=q_dprime, m0=m0,
                       iterations=iterations, residual=float(resid))


def n_coefficient(sol: MsaSolution, i: int) -> float:
    """Baxter coefficient N_i = -[Gamma z_i + (pi/2D) sigma_i P_n] /
    (1 + Gamma sigma_i)."""
    _check_index(sol, i)
    return float(sol.n_coeff[i])


def a_coefficient(sol: MsaSolution, j: int) -> float:
    """Charge-smearing coefficient a_j; requires Gamma > 0."""
    _check_index(sol, j)
    if sol.gamma == 0.0:
        raise ZeroGammaError("a_j is defined only for Gamma > 0")
    return float(sol.a_coeff[j])


def q_coefficients(sol: MsaSolution, i: int, j: int) -> tuple[float, float]:
    """Pair coefficients (Q'_ij, Q''_ij) of the quadratic Baxter function."""
    _check_index(sol, i)
    _check_index(sol, j)
    return float(sol.q_prime[i, j]), float(sol.q_dprime[i, j])


def _check_index(sol: MsaSolution, i: int) -> None:
    if not 0 <= i < sol.mixture.n_species:
        raise IndexError(f"species index {i} out of range "
                         f"(mixture has {sol.mixture.n_species})")


def internal_energy(sol: MsaSolution) -> float:
    """Electrostatic internal energy density, k_B T per volume:

        dE = (alpha^2 / 4 pi) * sum_j rho_j z_j N_j.
    """
    m = sol.mixture
    return float(m.alpha_sq / (4.0 * np.pi)
                 * np.sum(m.rhos * m.valences * sol.n_coeff))


def internal_energy_from_moments(sol: MsaSolution) -> float:
    """Second route to dE, algebraically identical to
    :func:`internal_energy`:

        dE = -(alpha^2 / 4 pi) * [ Gamma sum rho z^2/(1+Gamma sigma)
                                   + (pi/2D) P_n^2 Omega ].
    """
    m = sol.mixture
    if not m.is_charged:
        return 0.0
    sig, rho, z = m.sigmas, m.rhos, m.valences
    delta = moments(m).delta
    term = (sol.gamma * np.sum(rho * z ** 2 / (1.0 + sol.gamma * sig))
            + np.pi / (2.0 * delta) * sol.p_n ** 2 * sol.omega)
    return float(-m.alpha_sq / (4.0 * np.pi) * term)


def helmholtz_charging(m: Mixture, quad_points: int = 32) -> float:
    """Electrostatic free energy density by Kirkwood charging.

    Scaling all charges by lambda in [0, 1] is the same as scaling
    alpha^2 by lambda^2, so

        dA = int_0^1 2*dE(lambda^2 alpha^2) / lambda dlambda,

    evaluated by Gauss-Legendre quadrature with Gamma re-solved at every
    node.  The node count is doubled once as a self-check.

    Raises
    ------
    QuadTooCoarseError
        If doubling the nodes moves the result by more than 1e-8.
    NoConvergenceError
        Propagated from an inner Gamma solve.
    """
    if not m.is_charged:
        return 0.0

    def quad(n_nodes):
        nodes, weights = np.polynomial.legendre.leggauss(n_nodes)
        lam = 0.5 * (nodes + 1.0)
        w = 0.5 * weights
        total = 0.0
        for lam_k, w_k in zip(lam, w):
            scaled = make_mixture(m.species, alpha_sq=lam_k ** 2 * m.alpha_sq,
                                  label=m.label)
            e_k = internal_energy(solve_gamma(scaled))
            total += w_k * 2.0 * e_k / lam_k
        return total

    coarse = quad(quad_points)
    fine = quad(2 * quad_points)
    if abs(fine - coarse) > 1e-8:
        raise QuadTooCoarseError(
            f"charging integral moved by {abs(fine - coarse):.3e} "
            f"when doubling {quad_points} nodes")
    return float(fine)


def ln_gamma_elec_all(sol: MsaSolution) -> np.ndarray:
    """Electrostatic activity coefficients for every species:

        ln gamma_i = (alpha^2/4 pi) z_i (N_i - M_0)
                     - (P_n sigma_i / 4D) (Gamma a_i
                       + (pi/12D) alpha^2 P_n sigma_i^2)

    (the species-independent reference constant is taken as zero; it
    cancels in any electroneutral mean ionic combination).
    """
    m = sol.mixture
    if sol.gamma == 0.0:
        return np.zeros(m.n_species)
    sig, z = m.sigmas, m.valences
    delta = moments(m).delta
    first = m.alpha_sq / (4.0 * np.pi) * z * (sol.n_coeff - sol.m0)
    second = (sol.p_n * sig / (4.0 * delta)
              * (sol.gamma * sol.a_coeff
                 + np.pi / (12.0 * delta) * m.alpha_sq * sol.p_n * sig ** 2))
    return first - second


def ln_gamma_elec(sol: MsaSolution, i: int) -> float:
    """Electrostatic ln gamma for species ``i``."""
    _check_index(sol, i)
    return float(ln_gamma_elec_all(sol)[i])


def ln_gamma_total_all(sol: MsaSolution) -> np.ndarray:
    """Total ln gamma_i = electrostatic part + hard-sphere part."""
    return ln_gamma_elec_all(sol) + bmcsl.ln_gamma_hs_all(sol.mixture)


def require_charged(m: Mixture) -> None:
    """Raise :class:`NotChargedError` unless the mixture carries charges."""
    if not m.is_charged:
        raise NotChargedError(
            "system has no electrostatics (all z = 0 or alpha_sq = 0)")
