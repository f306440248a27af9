"""State construction and validation.

Provides the canonical five-term form of a three-qubit pure state, raw
amplitude vectors, a couple of named reference states, seeded Haar-random
states, and the JSON file format used by the command line.
"""

import json
from dataclasses import dataclass

import numpy as np

from .qmat import InvariantViolation, check_register, is_hermitian

NORM_TOL = 1e-12
PSD_TOL = -1e-10


def _freeze(arr):
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class AcinParams:
    """Parameters (lambda0..lambda4, phi) of the canonical five-term state.

    The lambdas are nonnegative with unit sum of squares; phi is folded
    into [0, 2*pi) without any canonicity claim.
    """

    lambdas: tuple
    phi: float = 0.0

    def __post_init__(self):
        lams = tuple(float(x) for x in self.lambdas)
        if len(lams) != 5:
            raise ValueError("expected exactly five lambda values")
        if any(x < 0 for x in lams):
            raise InvariantViolation("lambda values must be nonnegative")
        total = sum(x * x for x in lams)
        if abs(total - 1.0) > NORM_TOL:
            raise InvariantViolation(f"sum of squared lambdas is {total}, not 1")
        object.__setattr__(self, "lambdas", lams)
        object.__setattr__(self, "phi", float(self.phi) % (2.0 * np.pi))

    def amplitudes(self):
        """The five nonzero amplitudes in basis order 000, 100, 101, 110, 111."""
        l0, l1, l2, l3, l4 = self.lambdas
        return (l0, l1 * np.exp(1j * self.phi), l2, l3, l4)

    def swapped_bc(self):
        """Parameters of the same state with the last two qubits exchanged."""
        l0, l1, l2, l3, l4 = self.lambdas
        return AcinParams((l0, l1, l3, l2, l4), self.phi)


@dataclass(frozen=True)
class PureState:
    register: tuple
    amplitudes: np.ndarray
    normalization: float = 1.0  # norm divided out when built from raw amplitudes

    def __post_init__(self):
        reg = check_register(self.register)
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != 2 ** len(reg):
            raise ValueError(
                f"{amps.size} amplitudes do not fit a register of {len(reg)} qubits"
            )
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise InvariantViolation(f"squared norm is {norm_sq}, not 1")
        object.__setattr__(self, "register", reg)
        object.__setattr__(self, "amplitudes", _freeze(amps))

    @property
    def qubit_count(self):
        return len(self.register)

    def density_matrix(self):
        rho = np.outer(self.amplitudes, self.amplitudes.conj())
        return DensityMatrix(self.register, rho)

    def overlap(self, other):
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class DensityMatrix:
    register: tuple
    matrix: np.ndarray

    def __post_init__(self):
        reg = check_register(self.register)
        m = np.asarray(self.matrix, dtype=complex)
        dim = 2 ** len(reg)
        if m.shape != (dim, dim):
            raise ValueError(f"matrix shape {m.shape} does not fit register {reg}")
        if not is_hermitian(m):
            raise InvariantViolation("density matrix is not Hermitian within 1e-12")
        tr = m.trace()
        if abs(tr - 1.0) > NORM_TOL:
            raise InvariantViolation(f"trace is {tr}, not 1")
        smallest = float(np.linalg.eigvalsh(m)[0])
        if smallest < PSD_TOL:
            raise InvariantViolation(f"negative eigenvalue {smallest} beyond tolerance")
        object.__setattr__(self, "register", reg)
        object.__setattr__(self, "matrix", _freeze(m))

    def eigenvalues(self):
        """Eigenvalues in descending order."""
        return np.linalg.eigvalsh(self.matrix)[::-1]

    @property
    def qubit_count(self):
        return len(self.register)


def from_acin(params):
    """Build the five-term canonical state |psi> on register (A, B, C)."""
    amps = np.zeros(8, dtype=complex)
    a000, a100, a101, a110, a111 = params.amplitudes()
    amps[0] = a000
    amps[4] = a100
    amps[5] = a101
    amps[6] = a110
    amps[7] = a111
    amps /= np.linalg.norm(amps)
    return PureState(("A", "B", "C"), amps)


def from_amplitudes(register, amps):
    """Normalized pure state from a raw amplitude vector.

    Non-normalized input is accepted; the applied norm is recorded on the
    returned state. A zero vector is rejected.
    """
    amps = np.asarray(amps, dtype=complex).reshape(-1)
    norm = float(np.linalg.norm(amps))
    if norm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return PureState(tuple(register), amps / norm, normalization=norm)


def random_pure(register, seed):
    """Haar-random pure state, deterministic for a fixed seed.

    Amplitudes are independent standard complex Gaussians divided by their
    norm, which is exactly the unitarily invariant measure.
    """
    reg = check_register(register)
    rng = np.random.default_rng(seed)
    dim = 2 ** len(reg)
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureState(reg, z / np.linalg.norm(z))


def random_acin(seed):
    """Random canonical-form parameters: |N(0,1)| lambdas normalized, phi uniform."""
    rng = np.random.default_rng(seed)
    lams = np.abs(rng.standard_normal(5))
    lams /= np.linalg.norm(lams)
    return AcinParams(tuple(lams), float(rng.uniform(0.0, np.pi)))


_NAMED = {
    "ghz": (("A", "B", "C"), {0: 1.0, 7: 1.0}),
    "w": (("A", "B", "C"), {1: 1.0, 2: 1.0, 4: 1.0}),
    "bell00": (("A", "B"), {0: 1.0, 3: 1.0}),
}


def named_state(name):
    """One of the reference states: ghz, w, bell00."""
    key = name.lower()
    if key not in _NAMED:
        raise ValueError(f"unknown named state {name!r}; choose from {sorted(_NAMED)}")
    register, entries = _NAMED[key]
    amps = np.zeros(2 ** len(register), dtype=complex)
    for idx, val in entries.items():
        amps[idx] = val
    return PureState(register, amps / np.linalg.norm(amps))


def state_to_json(psi):
    return {
        "register": list(psi.register),
        "amplitudes": [[float(a.real), float(a.imag)] for a in psi.amplitudes],
    }


def state_from_json(doc):
    """Read a state from either accepted JSON form.

    Amplitude form: {"register": [...], "amplitudes": [[re, im], ...]}
    Canonical form: {"acin": {"lambda": [l0..l4], "phi": phi}}
    """
    if "acin" in doc:
        entry = doc["acin"]
        lams = tuple(float(x) for x in entry["lambda"])
        phi = float(entry.get("phi", 0.0))
        return from_acin(AcinParams(lams, phi))
    if "amplitudes" in doc:
        register = tuple(doc.get("register", ()))
        if not register:
            raise ValueError("amplitude form requires a register")
        amps = np.array([complex(re, im) for re, im in doc["amplitudes"]])
        return from_amplitudes(register, amps)
    raise ValueError("state file must contain either 'amplitudes' or 'acin'")


def load_state(path):
    with open(path, "r", encoding="utf-8") as fh:
        return state_from_json(json.load(fh))


def save_state(psi, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(state_to_json(psi), fh, indent=1)
