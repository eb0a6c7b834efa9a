import numpy as np
import pytest
import scipy.linalg


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def h2(t):
    """Binary entropy written out independently of the package."""
    return float(-sum(x * np.log2(x) for x in (t, 1 - t) if x > 0))


def relent_logm(rho, sigma):
    """Relative entropy via matrix logarithms (full-rank sigma only)."""
    r = np.asarray(rho)
    s = np.asarray(sigma)
    w = np.linalg.eigvalsh(r)
    w = w[w > 1e-15]
    return float(np.sum(w * np.log2(w)) - np.trace(r @ scipy.linalg.logm(s)).real / np.log(2))
