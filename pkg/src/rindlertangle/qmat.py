"""Dense complex linear algebra on labeled qubit registers.

Everything operates on plain ``numpy`` arrays. A register is a tuple of
distinct qubit labels; the leftmost label owns the slowest-varying bit of
the tensor-product index, so ``|abc>`` maps to index ``4a + 2b + c``.
"""

import numpy as np

KNOWN_LABELS = ("A", "B", "C", "I", "II", "I+", "I-", "II+", "II-")

HERMITIAN_TOL = 1e-12
RANK_EPS = 1e-10


class InvariantViolation(ValueError):
    """A state or matrix failed one of its defining numerical invariants."""


def check_register(register):
    """Validate a register and return it as a tuple of labels."""
    reg = tuple(register)
    if not reg:
        raise ValueError("register must contain at least one qubit")
    for label in reg:
        if label not in KNOWN_LABELS:
            raise ValueError(f"unknown qubit label {label!r}")
    if len(set(reg)) != len(reg):
        raise ValueError(f"duplicate labels in register {reg}")
    return reg


def tensor(a, b):
    """Kronecker product with ``a``'s indices as the slow-varying block."""
    return np.kron(np.asarray(a), np.asarray(b))


def is_hermitian(m, tol=HERMITIAN_TOL):
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and np.abs(m - m.conj().T).max() <= tol


def partial_trace(rho, keep, register):
    """Reduced matrix on the ``keep`` qubits, traced over the rest.

    Kept qubits stay in their original relative order regardless of the
    ordering of ``keep``. Tracing over nothing returns a copy; tracing
    everything returns the 1x1 matrix ``[[tr rho]]``.
    """
    reg = check_register(register)
    keep = tuple(keep)
    for label in keep:
        if label not in reg:
            raise ValueError(f"keep label {label!r} not in register {reg}")
    rho = np.asarray(rho, dtype=complex)
    n = len(reg)
    if rho.shape != (2**n, 2**n):
        raise ValueError(f"matrix shape {rho.shape} does not match register of {n} qubits")

    keep_pos = [i for i, label in enumerate(reg) if label in keep]
    trace_pos = [i for i in range(n) if i not in keep_pos]
    reduced = rho.reshape((2,) * (2 * n))
    remaining = n
    for pos in sorted(trace_pos, reverse=True):
        reduced = np.trace(reduced, axis1=pos, axis2=pos + remaining)
        remaining -= 1
    dim = 2 ** len(keep_pos)
    return reduced.reshape(dim, dim)


def eig_hermitian(m):
    """Eigenvalues (descending, real) and matching orthonormal eigenvector columns."""
    m = np.asarray(m, dtype=complex)
    if not is_hermitian(m):
        raise InvariantViolation("matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh(m)
    return w[::-1].copy(), v[:, ::-1].copy()


def psd_rank(eigenvalues, eps=RANK_EPS):
    """Number of eigenvalues counted as nonzero (above ``eps``)."""
    return int(np.sum(np.asarray(eigenvalues) > eps))
