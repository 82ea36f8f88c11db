import numpy as np
import pytest
from scipy.integrate import quad

from conftest import random_electroneutral
from ozthermo import (
    Species,
    bmcsl_z,
    bmcsl_z_from_moments,
    excess_helmholtz,
    excess_mu_single,
    ln_gamma_hs,
    ln_gamma_hs_all,
    make_mixture,
    mixture_thermo,
    moments,
    z_carnahan_starling,
)
from ozthermo.errors import PackingOverflowError


def single(eta, sigma=1.0):
    return make_mixture([Species(sigma, 6 * eta / (np.pi * sigma ** 3))])


def random_hs_mixture(rng, eta_max=0.45):
    n = rng.randint(1, 5)
    sig = rng.uniform(0.5, 2.0, n)
    w = rng.uniform(0.1, 1.0, n)
    eta = rng.uniform(0.05, eta_max)
    rho = w * eta / (np.pi / 6 * np.sum(w * sig ** 3))
    return make_mixture([Species(float(s), float(r))
                         for s, r in zip(sig, rho)])


def test_single_species_equals_carnahan_starling():
    assert bmcsl_z(single(0.3)) == pytest.approx(3.973761, abs=5e-7)
    for eta in np.linspace(0.0, 0.55, 150)[1:]:
        assert abs(bmcsl_z(single(eta)) - z_carnahan_starling(eta)) <= 1e-12


def test_ideal_gas_limit():
    m = make_mixture([Species(1.0, 0.0), Species(2.0, 0.0)])
    assert bmcsl_z(m) == 1.0
    assert excess_helmholtz(m) == 0.0
    assert np.all(ln_gamma_hs_all(m) == 0.0)


def test_label_splitting_invariance(rng):
    for _ in range(10):
        m = random_hs_mixture(rng)
        split = []
        for s in m.species:
            f = rng.uniform(0.2, 0.8)
            split.extend([Species(s.sigma, s.rho * f),
                          Species(s.sigma, s.rho * (1 - f))])
        m2 = make_mixture(split)
        assert abs(bmcsl_z(m2) - bmcsl_z(m)) <= 1e-12
        assert abs(excess_helmholtz(m2) - excess_helmholtz(m)) <= 1e-12
        lg1 = ln_gamma_hs_all(m)
        lg2 = ln_gamma_hs_all(m2)
        assert np.max(np.abs(np.repeat(lg1, 2) - lg2)) <= 1e-12


def test_composite_and_moment_forms_agree(rng):
    for _ in range(20):
        m = random_hs_mixture(rng)
        assert bmcsl_z(m) == pytest.approx(bmcsl_z_from_moments(m),
                                           rel=1e-13)


def test_packing_overflow_propagates():
    m = make_mixture([Species(1.0, 6 / np.pi * 1.1)])
    for fn in (bmcsl_z, excess_helmholtz, ln_gamma_hs_all):
        with pytest.raises(PackingOverflowError):
            fn(m)


def test_excess_helmholtz_single_species():
    # Carnahan-Starling a_ex = (4 eta - 3 eta^2)/(1-eta)^2
    assert excess_helmholtz(single(0.3)) == pytest.approx(0.93 / 0.49,
                                                          rel=1e-14)


def test_excess_helmholtz_matches_quadrature(rng):
    for _ in range(5):
        m = random_hs_mixture(rng, eta_max=0.4)
        xi3 = moments(m).xi3

        def integrand(t):
            scaled = make_mixture([Species(s.sigma, s.rho * t / xi3)
                                   for s in m.species])
            return (bmcsl_z(scaled) - 1.0) / t

        ref, err = quad(integrand, 0.0, xi3, limit=200,
                        epsabs=1e-12, epsrel=1e-12)
        assert excess_helmholtz(m) == pytest.approx(ref, abs=1e-8)


def test_ln_gamma_single_component_consistency():
    # exact derivative: beta*mu_ex = a_ex + (Z - 1) for one component
    m = single(0.3)
    expected = excess_helmholtz(m) + bmcsl_z(m) - 1.0
    assert ln_gamma_hs(m, 0) == pytest.approx(expected, rel=1e-12)


def test_ln_gamma_matches_finite_difference(rng):
    for _ in range(10):
        m = random_hs_mixture(rng, eta_max=0.4)
        lg = ln_gamma_hs_all(m)
        for i, sp in enumerate(m.species):
            h = 1e-7 * sp.rho
            def f(delta):
                species = list(m.species)
                species[i] = Species(sp.sigma, sp.rho + delta)
                pert = make_mixture(species)
                return np.sum(pert.rhos) * excess_helmholtz(pert)
            fd = (f(h) - f(-h)) / (2 * h)
            assert lg[i] == pytest.approx(fd, rel=1e-5)


def test_gibbs_duhem_identity(rng):
    for _ in range(10):
        m = random_hs_mixture(rng)
        x = m.rhos / np.sum(m.rhos)
        resid = (np.sum(x * ln_gamma_hs_all(m)) - excess_helmholtz(m)
                 - (bmcsl_z(m) - 1.0))
        assert abs(resid) <= 1e-8


def test_ln_gamma_permutation_symmetry(rng):
    m = random_hs_mixture(rng)
    perm = rng.permutation(m.n_species)
    m2 = make_mixture([m.species[j] for j in perm])
    assert np.allclose(ln_gamma_hs_all(m)[perm], ln_gamma_hs_all(m2),
                       rtol=0, atol=1e-14)


def test_ln_gamma_index_checked():
    with pytest.raises(IndexError):
        ln_gamma_hs(single(0.2), 1)


def test_valences_ignored(rng):
    m = random_electroneutral(rng, eta_max=0.3)
    neutral = make_mixture([Species(s.sigma, s.rho) for s in m.species])
    assert bmcsl_z(m) == bmcsl_z(neutral)
    assert np.all(ln_gamma_hs_all(m) == ln_gamma_hs_all(neutral))


def test_mixture_thermo_bundle():
    m = single(0.3)
    t = mixture_thermo(m)
    assert t.z_bmcsl == bmcsl_z(m)
    assert t.a_ex_per_particle == excess_helmholtz(m)
    assert t.ln_gamma_hs == tuple(ln_gamma_hs_all(m))
    assert (t.y1, t.y2, t.y3) == (0.0, 0.0, 1.0)


def test_single_component_limit_disagrees_with_quoted_closed_form():
    # The exact BMCSL derivative does NOT reproduce the compact
    # single-component formula kept in excess_mu_single: that expression
    # leads with 4*eta instead of the 8*eta any B2-consistent chemical
    # potential must have.  The derivative is the thermodynamically
    # consistent quantity (see the FD and Gibbs-Duhem tests above).
    m = single(0.3)
    assert ln_gamma_hs(m, 0) == pytest.approx(4.871720, abs=5e-7)
    assert abs(ln_gamma_hs(m, 0) - excess_mu_single(0.3)) > 2.5
