import numpy as np
import pytest


def permute_qubits(amps, perm):
    """Amplitudes of the same state with qubit i taken from old position perm[i]."""
    n = len(perm)
    return np.asarray(amps).reshape((2,) * n).transpose(perm).reshape(-1)


def random_unitary_2x2(rng):
    z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def apply_one_qubit(amps, gate, pos, n):
    pre, post = 2**pos, 2 ** (n - pos - 1)
    block = np.asarray(amps).reshape(pre, 2, post)
    return np.einsum("xy,ayb->axb", gate, block).reshape(-1)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
