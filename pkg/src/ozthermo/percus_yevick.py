"""Closed-form Percus-Yevick solution for one-component hard spheres.

Baxter's factorization reduces the PY problem to a quadratic function
Q(r) supported on [0, R] with coefficients (Wertheim 1963, Thiele 1963,
Baxter 1968)

    a = (1 + 2*eta) / (1 - eta)^2,     b = -3*R*eta / (2*(1 - eta)^2).

Everything else follows from Q: the zero-wavenumber factor Q_hat(0),
the compressibility and virial equations of state, the contact value of
g(r), and the direct correlation function inside the core.  The
Carnahan-Starling equation is included as the standard 2:1 blend of the
two PY routes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EtaOutOfRangeError, NonPositiveRadiusError

# 3-point Gauss-Legendre: exact for the cubic convolution integrand below
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(3)


def _check_eta(eta: float) -> float:
    eta = float(eta)
    if not 0.0 <= eta < 1.0:
        raise EtaOutOfRangeError(f"eta = {eta} outside [0, 1)")
    return eta


@dataclass(frozen=True)
class PySingleSolution:
    """Baxter coefficients for one packing fraction and diameter.

    ``a`` and ``b`` parameterize Q(r) = a/2*(r^2 - R^2) + b*(r - R) on
    [0, R]; ``q_hat_zero`` is Q_hat(0) = 1 + 4*eta*a + 6*eta*b/R, which
    also equals (1 + 2*eta)/(1 - eta)^2.
    """

    eta: float
    diameter: float
    a: float
    b: float
    q_hat_zero: float

    @property
    def rho(self) -> float:
        return 6.0 * self.eta / (np.pi * self.diameter ** 3)


def solve_py_single(eta: float, diameter: float = 1.0) -> PySingleSolution:
    """Solve the one-component PY hard-sphere problem in closed form."""
    eta = _check_eta(eta)
    if not diameter > 0:
        raise NonPositiveRadiusError(f"diameter = {diameter} (must be > 0)")
    one = (1.0 - eta) ** 2
    a = (1.0 + 2.0 * eta) / one
    b = -1.5 * diameter * eta / one
    q0 = 1.0 + 4.0 * eta * a + 6.0 * eta * b / diameter
    return PySingleSolution(eta=eta, diameter=float(diameter),
                            a=a, b=b, q_hat_zero=q0)


def baxter_q(r, s: PySingleSolution):
    """Baxter factor function Q(r); zero outside [0, R].

    Accepts a scalar or array ``r``.
    """
    r = np.asarray(r, dtype=float)
    R = s.diameter
    inside = (r >= 0.0) & (r <= R)
    q = np.where(inside, 0.5 * s.a * (r ** 2 - R ** 2) + s.b * (r - R), 0.0)
    return q if q.ndim else float(q)


def contact_value(eta: float) -> float:
    """PY contact value g(R+) = (1 + eta/2) / (1 - eta)^2."""
    eta = _check_eta(eta)
    return (1.0 + 0.5 * eta) / (1.0 - eta) ** 2


def z_compressibility(eta: float) -> float:
    """Compressibility-route PY equation of state."""
    eta = _check_eta(eta)
    return (1.0 + eta + eta ** 2) / (1.0 - eta) ** 3


def z_virial(eta: float) -> float:
    """Virial (pressure) route PY equation of state."""
    eta = _check_eta(eta)
    return (1.0 + 2.0 * eta + 3.0 * eta ** 2) / (1.0 - eta) ** 2


def z_carnahan_starling(eta: float) -> float:
    """Carnahan-Starling equation of state, (2*Z_c + Z_v)/3."""
    eta = _check_eta(eta)
    return (1.0 + eta + eta ** 2 - eta ** 3) / (1.0 - eta) ** 3


def direct_correlation(r, s: PySingleSolution):
    """PY direct correlation function c(r); zero for r >= R.

    Inside the core,

        r*c(r) = -Q'(r) + 2*pi*rho * int_0^{R-r} Q(t) Q'(t+r) dt,

    with the convolution evaluated by 3-point Gauss-Legendre quadrature
    (exact: the integrand is cubic).  This form has the correct
    zero-density limit c -> -1 inside the core.  Accepts a scalar or
    array ``r``.
    """
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r_arr <= 0.0):
        raise NonPositiveRadiusError("direct_correlation requires r > 0")
    R = s.diameter
    rho = s.rho

    def q(t):
        return 0.5 * s.a * (t ** 2 - R ** 2) + s.b * (t - R)

    def qprime(t):
        return s.a * t + s.b

    out = np.zeros_like(r_arr)
    inside = r_arr < R
    ri = r_arr[inside]
    half = 0.5 * (R - ri)                       # half-width of [0, R-r]
    t = half[:, None] * (_GL_NODES[None, :] + 1.0)
    conv = np.sum(_GL_WEIGHTS[None, :] * q(t) * qprime(t + ri[:, None]),
                  axis=1) * half
    out[inside] = (-qprime(ri) + 2.0 * np.pi * rho * conv) / ri
    return out if np.ndim(r) else float(out[0])


def excess_mu_single(eta: float) -> float:
    """Single-component closed form for the excess chemical potential
    quoted alongside the mixture activity expressions:

        -ln(1-eta) + eta*(3-eta)/(1-eta)^2 + eta^2*(3-2*eta)/(2*(1-eta)^3)
    """
    eta = _check_eta(eta)
    if eta == 0.0:
        return 0.0
    one = 1.0 - eta
    return (-np.log(one)
            + eta * (3.0 - eta) / one ** 2
            + eta ** 2 * (3.0 - 2.0 * eta) / (2.0 * one ** 3))
