"""Shared construction helpers for the test suite."""

import numpy as np

SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)  # |g><e|
SIGMA_PLUS = SIGMA_MINUS.conj().T
SIGMA_Z = np.diag([1.0, -1.0]).astype(complex)
ZERO2 = np.zeros((2, 2), dtype=complex)


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_hermitian(rng, d):
    a = random_complex(rng, (d, d))
    return (a + a.conj().T) / 2.0


def random_unitary(rng, d):
    q, r = np.linalg.qr(random_complex(rng, (d, d)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density(rng, d):
    a = random_complex(rng, (d, d))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def random_gaussian_nm(rng, n_max=2.0, fill=0.95):
    """Random (n, m) strictly inside the physical region."""
    n = rng.uniform(0.0, n_max)
    radius = fill * rng.uniform(0.0, 1.0) * np.sqrt(n * (n + 1.0))
    m = radius * np.exp(2j * np.pi * rng.uniform())
    return n, m


def ladder(cutoff):
    """Independent truncated annihilator (oracle-side copy)."""
    a = np.zeros((cutoff, cutoff), dtype=complex)
    for k in range(1, cutoff):
        a[k - 1, k] = np.sqrt(k)
    return a
