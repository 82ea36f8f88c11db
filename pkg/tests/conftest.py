import numpy as np
import pytest

from ozthermo import Species, make_mixture


def random_electroneutral(rng, n_species=None, eta_max=0.3,
                          alpha_bounds=(1.0, 1e3), equal_sigma=False):
    """Random charged, electroneutral mixture for consistency sweeps.

    The last species carries valence +-1 and the exact balancing
    density, so sum(rho*z) vanishes in floating point.
    """
    n = n_species or rng.randint(2, 5)
    if equal_sigma:
        sig = np.full(n, rng.uniform(0.5, 2.0))
    else:
        sig = rng.uniform(0.5, 2.0, n)
    z = np.zeros(n, dtype=int)
    while np.all(z[:-1] == 0):
        z[:-1] = rng.randint(-3, 4, n - 1)
    w = rng.uniform(0.2, 1.0, n)
    balance = float(np.sum(w[:-1] * z[:-1]))
    z[-1] = 1 if balance <= 0 else -1
    w[-1] = abs(balance)
    eta_target = rng.uniform(0.02, eta_max)
    eta_raw = np.pi / 6.0 * np.sum(w * sig ** 3)
    rho = w * (eta_target / eta_raw)
    lo, hi = alpha_bounds
    alpha_sq = float(np.exp(rng.uniform(np.log(lo), np.log(hi))))
    species = [Species(float(s), float(r), int(v))
               for s, r, v in zip(sig, rho, z)]
    return make_mixture(species, alpha_sq=alpha_sq)


@pytest.fixture
def rng():
    return np.random.RandomState(20260811)
