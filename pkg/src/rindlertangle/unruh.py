"""Accelerated-observer machinery.

A uniformly accelerated party sees the inertial vacuum through a two-mode
squeezing of fermionic Rindler modes. In the single-mode approximation the
party's qubit spreads over the two causally disconnected wedges:

    |0>  ->  cos(r) |0>_I |0>_II + sin(r) |1>_I |1>_II
    |1>  ->  |1>_I |0>_II

with the statistical angle r fixed by cos(r) = 1/sqrt(1 + exp(-2*pi*omega*c/a)).
Region II is unreachable behind the horizon, so it is traced out, which is
where the entanglement loss comes from. The full mode dictionary (particle
and antiparticle wedge modes weighted by q_R, q_L) is implemented as well,
along with the particle-sector reduction of the canonical five-term state.
"""

from dataclasses import dataclass

import numpy as np

from .qmat import InvariantViolation
from .states import AcinParams, DensityMatrix, PureState, from_acin

R_MAX = np.pi / 4.0
_R_GRACE = 1e-9


def r_from_acceleration(a, omega, c):
    """Statistical angle r for acceleration a, central frequency omega, light speed c.

    Strictly increasing in a, approaching pi/4 at the horizon limit a -> inf.
    Accepts a = inf and returns pi/4 exactly there.
    """
    if not (a > 0.0 and omega > 0.0 and c > 0.0):
        raise ValueError("acceleration, frequency and light speed must all be positive")
    exponent = 2.0 * np.pi * omega * c / a
    cos_r = 1.0 / np.sqrt(1.0 + np.exp(-exponent))
    return float(np.arccos(min(cos_r, 1.0)))


def _check_r(r):
    r = float(r)
    if not (-_R_GRACE <= r <= R_MAX + _R_GRACE):
        raise ValueError(f"statistical angle {r} outside [0, pi/4]")
    return min(max(r, 0.0), R_MAX)


@dataclass(frozen=True)
class RindlerParams:
    """Statistical angle, optionally tied to a physical (a, omega, c) triple."""

    r: float
    a: float = None
    omega: float = None
    c: float = None

    def __post_init__(self):
        object.__setattr__(self, "r", _check_r(self.r))
        triple = (self.a, self.omega, self.c)
        if any(x is not None for x in triple):
            if any(x is None for x in triple):
                raise ValueError("supply all of (a, omega, c) or none")
            expected = r_from_acceleration(self.a, self.omega, self.c)
            if abs(np.cos(self.r) - np.cos(expected)) > 1e-12:
                raise InvariantViolation(
                    f"r={self.r} inconsistent with acceleration triple (expected {expected})"
                )

    @classmethod
    def from_acceleration(cls, a, omega, c):
        return cls(r_from_acceleration(a, omega, c), a, omega, c)


@dataclass(frozen=True)
class UnruhModeParams:
    """Weights q_r, q_l of the right/left wedge one-particle modes, plus r_omega."""

    q_r: complex
    q_l: complex
    r_omega: float

    def __post_init__(self):
        total = abs(self.q_r) ** 2 + abs(self.q_l) ** 2
        if abs(total - 1.0) > 1e-12:
            raise InvariantViolation(f"|q_r|^2 + |q_l|^2 = {total}, not 1")
        object.__setattr__(self, "q_r", complex(self.q_r))
        object.__setattr__(self, "q_l", complex(self.q_l))
        object.__setattr__(self, "r_omega", _check_r(self.r_omega))

    @classmethod
    def right_weighted(cls, q_r, r_omega):
        """Fill q_l from normalization, taking q_r as given."""
        q_r = complex(q_r)
        rest = 1.0 - abs(q_r) ** 2
        if rest < -1e-12:
            raise InvariantViolation(f"|q_r| = {abs(q_r)} exceeds 1")
        return cls(q_r, np.sqrt(max(rest, 0.0)), r_omega)


def _party_position(psi, accelerated):
    if accelerated not in psi.register:
        raise ValueError(f"label {accelerated!r} not in register {psi.register}")
    return psi.register.index(accelerated)


def apply_single_mode_channel(psi, accelerated, r):
    """Single-mode wedge expansion of one party's qubit.

    The accelerated party's slot becomes the region-I qubit (label I) and a
    region-II qubit is appended at the end of the register. Unitary, so the
    norm is preserved.
    """
    r = _check_r(r)
    pos = _party_position(psi, accelerated)
    if "I" in psi.register or "II" in psi.register:
        raise ValueError("register already carries wedge labels")
    n = psi.qubit_count
    pre, post = 2**pos, 2 ** (n - pos - 1)
    amps = psi.amplitudes.reshape(pre, 2, post)
    out = np.zeros((pre, 2, post, 2), dtype=complex)
    out[:, 0, :, 0] = np.cos(r) * amps[:, 0, :]
    out[:, 1, :, 1] = np.sin(r) * amps[:, 0, :]
    out[:, 1, :, 0] += amps[:, 1, :]
    register = list(psi.register)
    register[pos] = "I"
    register.append("II")
    return PureState(tuple(register), out.reshape(-1))


def reduced_state(psi, accelerated, r):
    """Mixed state seen once region II is traced away.

    Rank is at most 2: the traced wedge qubit can only purify two branches.
    """
    big = apply_single_mode_channel(psi, accelerated, r)
    half = big.amplitudes.reshape(-1, 2)
    rho = half @ half.conj().T
    return DensityMatrix(big.register[:-1], rho)


def unruh_mode_kets(params: UnruhModeParams):
    """Wedge-mode dictionary for one Unruh frequency.

    Keys zero_r/one_r live on the (I+, II-) pair and zero_l/one_l on the
    (I-, II+) pair; vacuum/one_particle are the composite 16-dimensional
    kets over (I+, I-, II+, II-). one_l is included for completeness even
    though the channel itself never populates it.
    """
    c, s = np.cos(params.r_omega), np.sin(params.r_omega)
    zero_r = np.array([c, 0.0, 0.0, s], dtype=complex)
    zero_l = np.array([c, 0.0, 0.0, -s], dtype=complex)
    one_r = np.array([0.0, 0.0, 1.0, 0.0], dtype=complex)
    one_l = np.array([0.0, 1.0, 0.0, 0.0], dtype=complex)

    def compose(r_part, l_part):
        # (I+, II-) x (I-, II+) -> (I+, I-, II+, II-)
        out = np.zeros(16, dtype=complex)
        for ip in range(2):
            for iim in range(2):
                for im in range(2):
                    for iip in range(2):
                        val = r_part[2 * ip + iim] * l_part[2 * im + iip]
                        out[8 * ip + 4 * im + 2 * iip + iim] = val
        return out

    vacuum = compose(zero_r, zero_l)
    one_particle = params.q_r * compose(one_r, zero_l) + params.q_l * compose(zero_r, one_l)
    return {
        "zero_r": zero_r,
        "zero_l": zero_l,
        "one_r": one_r,
        "one_l": one_l,
        "vacuum": vacuum,
        "one_particle": one_particle,
    }


def apply_unruh_mode(psi, accelerated, params: UnruhModeParams):
    """Full wedge-mode expansion of one party's qubit.

    The party slot becomes the particle region-I qubit (I+); the antiparticle
    and region-II qubits (I-, II+, II-) are appended at the end.
    """
    pos = _party_position(psi, accelerated)
    for label in ("I+", "I-", "II+", "II-"):
        if label in psi.register:
            raise ValueError("register already carries wedge labels")
    kets = unruh_mode_kets(params)
    n = psi.qubit_count
    pre, post = 2**pos, 2 ** (n - pos - 1)
    amps = psi.amplitudes.reshape(pre, 2, post)
    out = np.zeros((pre, 2, post, 8), dtype=complex)
    for source, ket in ((0, kets["vacuum"]), (1, kets["one_particle"])):
        block = ket.reshape(2, 8)
        for ip in range(2):
            for env in range(8):
                if block[ip, env] != 0.0:
                    out[:, ip, :, env] += block[ip, env] * amps[:, source, :]
    register = list(psi.register)
    register[pos] = "I+"
    register.extend(["I-", "II+", "II-"])
    return PureState(tuple(register), out.reshape(-1))


def particle_sector_state(params: AcinParams, mode: UnruhModeParams, sector="particle"):
    """Reduced state of the inertial pair plus one wedge sector of Charlie.

    Charlie is the accelerated party. sector='particle' keeps (A, B, I+);
    sector='antiparticle' keeps (A, B, I-). Generic parameters give rank 4
    in the particle sector.
    """
    if sector not in ("particle", "antiparticle"):
        raise ValueError("sector must be 'particle' or 'antiparticle'")
    big = apply_unruh_mode(from_acin(params), "C", mode)
    kept = "I+" if sector == "particle" else "I-"
    axes = [big.register.index(lab) for lab in ("A", "B", kept)]
    traced = [i for i in range(6) if i not in axes]
    tensor = big.amplitudes.reshape((2,) * 6)
    mat = np.moveaxis(tensor, axes + traced, range(6)).reshape(8, 8)
    rho = mat @ mat.conj().T
    return DensityMatrix(("A", "B", kept), rho)


def particle_sector_template(params: AcinParams, mode: UnruhModeParams):
    """Closed-form 8x8 matrix of the particle-sector reduction.

    Independent of the constructive route above; used to cross-check it
    entrywise. Basis ordering is |A B I+> with the usual binary index.
    """
    l0, l1, l2, l3, l4 = params.lambdas
    eip = np.exp(1j * params.phi)
    qr, ql = mode.q_r, mode.q_l
    qrc = np.conj(qr)
    c, s = np.cos(mode.r_omega), np.sin(mode.r_omega)
    c2, s2 = c * c, s * s
    aql2 = abs(ql) ** 2
    aqr2 = abs(qr) ** 2
    t1 = l1 * l1 + aql2 * l2 * l2
    t2 = l1 * l3 * eip + aql2 * l2 * l4
    t3 = l1 * l1 + l2 * l2
    t4 = aqr2 * l2 * l2
    t5 = l1 * l3 * eip + l2 * l4
    t6 = aqr2 * l2 * l4
    t7 = l3 * l3 + aql2 * l4 * l4
    t8 = l3 * l3 + l4 * l4
    t9 = aqr2 * l4 * l4

    m = np.zeros((8, 8), dtype=complex)
    m[0, 0] = l0 * l0 * c2
    m[0, 4] = l0 * l1 * np.conj(eip) * c2
    m[0, 5] = qrc * l0 * l2 * c
    m[0, 6] = l0 * l3 * c2
    m[0, 7] = qrc * l0 * l4 * c
    m[1, 1] = l0 * l0 * s2
    m[1, 5] = l0 * l1 * np.conj(eip) * s2
    m[1, 7] = l0 * l3 * s2
    m[4, 4] = t1 * c2
    m[4, 5] = qrc * l1 * l2 * eip * c
    m[4, 6] = t2 * c2
    m[4, 7] = qrc * l1 * l4 * eip * c
    m[5, 5] = t3 * s2 + t4 * c2
    m[5, 6] = qr * l2 * l3 * c
    m[5, 7] = t5 * s2 + t6 * c2
    m[6, 6] = t7 * c2
    m[6, 7] = qrc * l3 * l4 * c
    m[7, 7] = t8 * s2 + t9 * c2
    for i in range(8):
        for j in range(i):
            m[i, j] = np.conj(m[j, i])
    return m
