"""Entanglement quantifiers.

Wootters concurrence for two-qubit pure and mixed states, the three-tangle
of three-qubit pure states through the hyperdeterminant coefficients, the
closed-form shortcut for canonical five-term states, and the monogamy
residual. The hyperdeterminant here is written out term by term on purpose:
it is the independent oracle against which the table-driven kernel version
is checked.
"""

from dataclasses import dataclass

import numpy as np

from .qmat import InvariantViolation, eig_hermitian, partial_trace
from .states import AcinParams, DensityMatrix

SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_YY = np.kron(SIGMA_Y, SIGMA_Y)

# Relative floor for eigenvalues of the spin-flipped product: rounding noise
# sits near 1e-16 and would inflate to ~1e-8 after the square root, which
# the cos(r) comparisons at 1e-9 cannot absorb.
_SPECTRUM_FLOOR = 1e-12

_KINDS = ("concurrence", "three_tangle")
_PROVENANCES = ("analytic", "optimized")


@dataclass(frozen=True)
class HyperdetCoefficients:
    d1: complex
    d2: complex
    d3: complex

    @property
    def combination(self):
        return self.d1 - 2.0 * self.d2 + 4.0 * self.d3


@dataclass(frozen=True)
class MeasureResult:
    value: float
    kind: str
    provenance: str

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown measure kind {self.kind!r}")
        if self.provenance not in _PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if not (-1e-12 <= self.value <= 1.0 + 1e-9):
            raise InvariantViolation(f"measure value {self.value} outside [0, 1]")
        object.__setattr__(self, "value", float(max(self.value, 0.0)))


def hyperdet_coefficients(amps):
    """Coefficients d1, d2, d3 of the three-qubit hyperdeterminant.

    Amplitude index convention: a[4i + 2j + k] is the coefficient of |ijk>.
    """
    a = np.asarray(amps, dtype=complex).reshape(-1)
    if a.size != 8:
        raise ValueError("expected 8 amplitudes")
    d1 = (
        a[0] ** 2 * a[7] ** 2
        + a[1] ** 2 * a[6] ** 2
        + a[2] ** 2 * a[5] ** 2
        + a[4] ** 2 * a[3] ** 2
    )
    d2 = (
        a[0] * a[7] * a[3] * a[4]
        + a[0] * a[7] * a[5] * a[2]
        + a[0] * a[7] * a[6] * a[1]
        + a[3] * a[4] * a[5] * a[2]
        + a[3] * a[4] * a[6] * a[1]
        + a[5] * a[2] * a[6] * a[1]
    )
    d3 = a[0] * a[6] * a[5] * a[3] + a[7] * a[1] * a[2] * a[4]
    return HyperdetCoefficients(complex(d1), complex(d2), complex(d3))


def hyperdet(amps):
    """The combination d1 - 2*d2 + 4*d3 as a single complex number."""
    return hyperdet_coefficients(amps).combination


def tangle_of_amplitudes(amps):
    """Three-tangle 4*|d1 - 2*d2 + 4*d3| of a normalized 8-amplitude vector."""
    return 4.0 * abs(hyperdet(amps))


def three_tangle_pure(psi):
    """Three-tangle of a three-qubit pure state."""
    if psi.qubit_count != 3:
        raise ValueError("three-tangle needs a three-qubit state")
    return MeasureResult(tangle_of_amplitudes(psi.amplitudes), "three_tangle", "analytic")


def three_tangle_acin(params: AcinParams):
    """Closed form 4*lambda0^2*lambda4^2 for the canonical five-term state."""
    l0, _, _, _, l4 = params.lambdas
    return MeasureResult(4.0 * l0 * l0 * l4 * l4, "three_tangle", "analytic")


def concurrence_pure(psi):
    """Concurrence 2*|a00*a11 - a01*a10| of a two-qubit pure state."""
    if psi.qubit_count != 2:
        raise ValueError("concurrence needs a two-qubit state")
    a = psi.amplitudes
    return MeasureResult(2.0 * abs(a[0] * a[3] - a[1] * a[2]), "concurrence", "analytic")


def _sqrt_psd(m):
    w, v = eig_hermitian(m)
    if w[-1] < -1e-10:
        raise InvariantViolation(f"matrix not positive semidefinite: eigenvalue {w[-1]}")
    w = np.where(w < 1e-14 * max(w[0], 0.0), 0.0, w)
    return (v * np.sqrt(w)) @ v.conj().T


def wootters_spectrum(rho_matrix):
    """Descending eigenvalues of sqrt(rho) rho~ sqrt(rho).

    This Hermitian similarity shares its spectrum with rho*rho~ (the usual
    non-Hermitian spin-flip product). Eigenvalues below the relative floor
    are clamped to exact zero; values below -1e-10 raise.
    """
    rho = np.asarray(rho_matrix, dtype=complex)
    rho_tilde = _YY @ rho.conj() @ _YY
    sq = _sqrt_psd(rho)
    m = sq @ rho_tilde @ sq
    m = 0.5 * (m + m.conj().T)
    w = np.linalg.eigvalsh(m)[::-1].copy()
    if w[-1] < -1e-10:
        raise InvariantViolation(f"spin-flip spectrum has eigenvalue {w[-1]}")
    floor = _SPECTRUM_FLOOR * max(w[0], 0.0)
    return np.where(w < floor, 0.0, w)


def concurrence_mixed(rho: DensityMatrix):
    """Wootters concurrence of a two-qubit density matrix."""
    if rho.qubit_count != 2:
        raise ValueError("concurrence needs a two-qubit density matrix")
    w = wootters_spectrum(rho.matrix)
    roots = np.sqrt(w)
    value = max(0.0, roots[0] - roots[1] - roots[2] - roots[3])
    return MeasureResult(value, "concurrence", "analytic")


def monogamy_residual(psi, focus):
    """C^2(focus|rest) minus the two pairwise squared concurrences.

    Equals the three-tangle for pure three-qubit states.
    """
    if psi.qubit_count != 3:
        raise ValueError("monogamy residual needs a three-qubit state")
    if focus not in psi.register:
        raise ValueError(f"focus {focus!r} not in register {psi.register}")
    rho_full = np.outer(psi.amplitudes, psi.amplitudes.conj())
    rho_focus = partial_trace(rho_full, [focus], psi.register)
    det = float((rho_focus[0, 0] * rho_focus[1, 1] - rho_focus[0, 1] * rho_focus[1, 0]).real)
    c_focus_rest_sq = 4.0 * max(det, 0.0)
    residual = c_focus_rest_sq
    others = [label for label in psi.register if label != focus]
    for other in others:
        pair = partial_trace(rho_full, [focus, other], psi.register)
        keep = tuple(label for label in psi.register if label in (focus, other))
        c = concurrence_mixed(DensityMatrix(keep, pair)).value
        residual -= c * c
    return residual
