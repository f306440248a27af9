"""Rank-2 decompositions of the reduced state and the convex-roof tangle.

The reduced state after tracing the hidden wedge has rank at most two, so
its decompositions form a small family: rows of an m x 2 isometry applied
to the weighted eigenbasis. This module carries

* the closed-form plus/minus eigenpair for each choice of accelerated
  party (built directly from the canonical five-term parameters),
* the equal-weight theta family interpolating between them, whose average
  tangle is minimized at theta = pi/2,
* a spectral route that needs no canonical form, and
* an independent multi-start coordinate-descent minimizer over
  decompositions of size m in {2, 3, 4}.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from ._kernels_numpy import unit_pair
from .measures import MeasureResult, hyperdet, tangle_of_amplitudes, three_tangle_pure
from .qmat import InvariantViolation, RANK_EPS, eig_hermitian
from .states import AcinParams, DensityMatrix, PureState, from_acin
from .unruh import _check_r, reduced_state

_DEGENERATE_DISC = 1e-12
_VANISHING_NORM_SQ = 1e-30
_BRACKET_TOL = 1e-10

PARTIES = ("A", "B", "C")


class DegenerateRankError(ValueError):
    """The reduced state is rank 1; the mixed tangle is just the pure tangle."""


@dataclass(frozen=True)
class Rank2Decomposition:
    """Spectral pair of a rank-2 reduced state with its analytic intermediates.

    ratio_plus/ratio_minus are the signed quantities whose fourth powers give
    the branch tangles once multiplied by tangle_scale = 4*l0^2*l4^2*cos^2(r).
    """

    branch: str
    p: float
    discriminant: float
    state_plus: PureState
    state_minus: PureState
    ratio_plus: float
    ratio_minus: float
    tangle_scale: float
    intermediates: dict
    source: DensityMatrix
    theta: float = np.pi / 2.0


@dataclass(frozen=True)
class RoofCandidate:
    weights: np.ndarray
    states: tuple
    average_tangle: float

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if np.any(w < -1e-12) or abs(w.sum() - 1.0) > 1e-12:
            raise InvariantViolation("decomposition weights must be a probability vector")
        object.__setattr__(self, "weights", w)

    def reconstruction(self):
        dim = self.states[0].amplitudes.size
        rho = np.zeros((dim, dim), dtype=complex)
        for w, st in zip(self.weights, self.states):
            rho += w * np.outer(st.amplitudes, st.amplitudes.conj())
        return rho


def _stabilize_pair(v0, v1):
    v1 = v1 - v0 * np.vdot(v0, v1)
    return v1 / np.linalg.norm(v1)


def _minus_state_numerical(rho):
    _, v = eig_hermitian(rho.matrix)
    vec = v[:, 1].copy()
    vec /= np.linalg.norm(vec)
    return PureState(rho.register, vec)


def _degenerate_pair(branch, p, disc, rho, scale):
    # both closed-form numerators vanish only where the eigenvalues meet
    # (p = 1/2) and the tangle scale is identically zero; fall back to the
    # numerical eigenpair and flag the decomposition
    _, v = eig_hermitian(rho.matrix)
    v1 = _stabilize_pair(v[:, 0], v[:, 1])
    return Rank2Decomposition(
        branch=branch,
        p=p,
        discriminant=disc,
        state_plus=PureState(rho.register, v[:, 0] / np.linalg.norm(v[:, 0])),
        state_minus=PureState(rho.register, v1),
        ratio_plus=0.0,
        ratio_minus=0.0,
        tangle_scale=scale,
        intermediates={"degenerate_pair": True},
        source=rho,
    )


def alice_decomposition(params: AcinParams, r):
    """Plus/minus eigenpair of the reduced state when the first party accelerates."""
    r = _check_r(r)
    l0, l1, l2, l3, l4 = params.lambdas
    s2 = np.sin(r) ** 2
    c = np.cos(r)
    a0 = 1.0 - 2.0 * l0 * l0 * s2
    disc = a0 * a0 + 4.0 * l0 * l0 * l1 * l1 * s2
    sq = np.sqrt(disc)
    if sq >= 1.0 - _DEGENERATE_DISC:
        raise DegenerateRankError(f"discriminant {disc} leaves a rank-1 state")
    p = (1.0 + sq) / 2.0
    z_plus = a0 + sq
    # cancellation-free forms of the small branch quantities
    z_minus = -4.0 * l0 * l0 * l1 * l1 * s2 / z_plus if z_plus > 0.0 else a0 - sq
    eip = np.exp(1j * params.phi)
    y_plus = eip * l1 * (1.0 + sq)
    one_minus_disc = 4.0 * l0 * l0 * s2 * (1.0 - l0 * l0 * s2 - l1 * l1)
    y_minus = eip * l1 * one_minus_disc / (1.0 + sq)
    tail = 1.0 - l0 * l0 * s2 - l1 * l1

    def assemble(z, y):
        amps = np.zeros(8, dtype=complex)
        amps[0] = l0 * c * z
        amps[4] = y
        amps[5] = l2 * z
        amps[6] = l3 * z
        amps[7] = l4 * z
        return amps

    psi = from_acin(params)
    rho = reduced_state(psi, "A", r)
    scale = 4.0 * l0 * l0 * l4 * l4 * c * c
    n_plus_sq = tail * z_plus * z_plus + abs(y_plus) ** 2
    n_minus_sq = tail * z_minus * z_minus + abs(y_minus) ** 2
    if n_plus_sq < _VANISHING_NORM_SQ:
        return _degenerate_pair("alice", p, disc, rho, scale)
    n_plus = np.sqrt(n_plus_sq)
    state_plus = PureState(rho.register, assemble(z_plus, y_plus) / n_plus)
    if n_minus_sq < _VANISHING_NORM_SQ:
        # template numerator vanishes on a measure-zero set (l1 = 0); the
        # eigenvector itself is still well defined
        state_minus = _minus_state_numerical(rho)
        ratio_minus = 0.0
        n_minus = 0.0
    else:
        n_minus = np.sqrt(n_minus_sq)
        state_minus = PureState(rho.register, assemble(z_minus, y_minus) / n_minus)
        ratio_minus = z_minus / n_minus
    return Rank2Decomposition(
        branch="alice",
        p=p,
        discriminant=disc,
        state_plus=state_plus,
        state_minus=state_minus,
        ratio_plus=z_plus / n_plus,
        ratio_minus=ratio_minus,
        tangle_scale=scale,
        intermediates={
            "z_plus": z_plus,
            "z_minus": z_minus,
            "y_plus": y_plus,
            "y_minus": y_minus,
            "n_plus": n_plus,
            "n_minus": n_minus,
        },
        source=rho,
    )


def _bob_pieces(params: AcinParams, r):
    l0, l1, l2, l3, l4 = params.lambdas
    s2 = np.sin(r) ** 2
    c = np.cos(r)
    eip = np.exp(1j * params.phi)
    k0 = 1.0 - 2.0 * s2 * (l0 * l0 + l1 * l1 + l2 * l2)
    cross = l1 * l3 * np.conj(eip) + l2 * l4
    cross_sq = abs(cross) ** 2
    sigma = k0 * k0 + 4.0 * s2 * cross_sq
    sq = np.sqrt(sigma)
    k_plus = k0 + sq
    k_minus = -4.0 * s2 * cross_sq / k_plus if k_plus > 0.0 else k0 - sq

    def coefficients(k):
        a = np.zeros(8, dtype=complex)
        a[0] = l0 * c * k
        a[2] = 2.0 * l0 * s2 * cross
        a[4] = eip * l1 * c * k
        a[5] = l2 * c * k
        a[6] = l3 * (k + 2.0 * s2 * l1 * l1) + 2.0 * eip * l1 * l2 * l4 * s2
        a[7] = l4 * (k + 2.0 * s2 * l2 * l2) + 2.0 * np.conj(eip) * l1 * l2 * l3 * s2
        return a

    return sigma, sq, k_plus, k_minus, cross_sq, s2, c, coefficients


def bob_decomposition(params: AcinParams, r):
    """Plus/minus eigenpair of the reduced state when the second party accelerates."""
    r = _check_r(r)
    sigma, sq, k_plus, k_minus, cross_sq, s2, c, coefficients = _bob_pieces(params, r)
    if sq >= 1.0 - _DEGENERATE_DISC:
        raise DegenerateRankError(f"discriminant {sigma} leaves a rank-1 state")
    p = (1.0 + sq) / 2.0
    psi = from_acin(params)
    rho = reduced_state(psi, "B", r)
    l0, _, _, _, l4 = params.lambdas
    scale = 4.0 * l0 * l0 * l4 * l4 * c * c
    amps_plus = coefficients(k_plus)
    amps_minus = coefficients(k_minus)
    n_plus_sq = float(np.sum(np.abs(amps_plus) ** 2))
    n_minus_sq = float(np.sum(np.abs(amps_minus) ** 2))
    if n_plus_sq < _VANISHING_NORM_SQ:
        return _degenerate_pair("bob", p, sigma, rho, scale)
    n_plus = np.sqrt(n_plus_sq)
    state_plus = PureState(rho.register, amps_plus / n_plus)
    if n_minus_sq < _VANISHING_NORM_SQ:
        state_minus = _minus_state_numerical(rho)
        ratio_minus = 0.0
        n_minus = 0.0
        z_term = 0.0
    else:
        n_minus = np.sqrt(n_minus_sq)
        state_minus = PureState(rho.register, amps_minus / n_minus)
        ratio_minus = k_minus / n_minus
        z_term = 8.0 * s2 * np.sqrt(p * (1.0 - p)) * cross_sq / (n_plus * n_minus)
    x_term = p * (k_plus / n_plus) ** 2
    y_term = (1.0 - p) * ratio_minus**2
    return Rank2Decomposition(
        branch="bob",
        p=p,
        discriminant=sigma,
        state_plus=state_plus,
        state_minus=state_minus,
        ratio_plus=k_plus / n_plus,
        ratio_minus=ratio_minus,
        tangle_scale=scale,
        intermediates={
            "k_plus": k_plus,
            "k_minus": k_minus,
            "n_plus": n_plus,
            "n_minus": n_minus,
            "x": x_term,
            "y": y_term,
            "z": z_term,
            "cross_sq": cross_sq,
        },
        source=rho,
    )


def _swap_bc_amplitudes(amps):
    out = amps.copy()
    out[[1, 2]] = out[[2, 1]]
    out[[5, 6]] = out[[6, 5]]
    return out


def charlie_decomposition(params: AcinParams, r):
    """Third-party counterpart: the l2 <-> l3 swap maps it onto the second-party case."""
    r = _check_r(r)
    swapped = bob_decomposition(params.swapped_bc(), r)
    psi = from_acin(params)
    rho = reduced_state(psi, "C", r)
    register = rho.register

    def back(state):
        return PureState(register, _swap_bc_amplitudes(np.array(state.amplitudes)))

    return Rank2Decomposition(
        branch="bob",
        p=swapped.p,
        discriminant=swapped.discriminant,
        state_plus=back(swapped.state_plus),
        state_minus=back(swapped.state_minus),
        ratio_plus=swapped.ratio_plus,
        ratio_minus=swapped.ratio_minus,
        tangle_scale=swapped.tangle_scale,
        intermediates=dict(swapped.intermediates),
        source=rho,
    )


def decomposition_for(params: AcinParams, r, party):
    if party == "A":
        return alice_decomposition(params, r)
    if party == "B":
        return bob_decomposition(params, r)
    if party == "C":
        return charlie_decomposition(params, r)
    raise ValueError(f"party must be one of {PARTIES}, got {party!r}")


def equal_weight_family(decomp, theta):
    """The pair (|F,theta>, |F,theta+pi>) mixing the eigenpair with equal weights.

    Their equal mixture reconstructs the source state for every theta.
    """
    root_p = np.sqrt(decomp.p)
    root_q = np.sqrt(1.0 - decomp.p)
    phase = np.exp(1j * theta)
    plus = decomp.state_plus.amplitudes
    minus = decomp.state_minus.amplitudes
    first = root_p * plus + phase * root_q * minus
    second = root_p * plus - phase * root_q * minus
    register = decomp.state_plus.register
    return PureState(register, first), PureState(register, second)


def branch_tangle_closed_form(decomp, sign):
    """Tangle of the plus or minus eigenstate from the closed form."""
    ratio = decomp.ratio_plus if sign > 0 else decomp.ratio_minus
    return decomp.tangle_scale * ratio**4


def _reject_degenerate_pair(decomp):
    if decomp.intermediates.get("degenerate_pair"):
        raise ValueError("theta-family brackets are undefined at the degenerate eigenvalue point")


def family_tangle_closed_form(decomp, theta):
    """Closed-form tangle of |F,theta> itself."""
    _reject_degenerate_pair(decomp)
    p, q = decomp.p, 1.0 - decomp.p
    if decomp.branch == "alice":
        bracket = (
            p * decomp.ratio_plus**2
            + q * decomp.ratio_minus**2
            + 2.0 * np.sqrt(p * q) * decomp.ratio_plus * decomp.ratio_minus * np.cos(theta)
        )
        return decomp.tangle_scale * bracket**2
    x = decomp.intermediates["x"]
    y = decomp.intermediates["y"]
    z = decomp.intermediates["z"]
    ct = np.cos(theta)
    bracket = (x - y) ** 2 + z * z + 4.0 * x * y * ct * ct - 2.0 * z * (x + y) * ct
    return decomp.tangle_scale * bracket


def mixture_bracket(decomp, theta):
    """Average-tangle bracket of the theta family; identically 1 at theta = pi/2."""
    _reject_degenerate_pair(decomp)
    p, q = decomp.p, 1.0 - decomp.p
    x = p * decomp.ratio_plus**2
    y = q * decomp.ratio_minus**2
    ct = np.cos(theta)
    if decomp.branch == "alice":
        return (x + y) ** 2 + 4.0 * x * y * ct * ct
    z = decomp.intermediates["z"]
    return (x - y) ** 2 + z * z + 4.0 * x * y * ct * ct


def analytic_mixed_tangle(params: AcinParams, r, party):
    """Mixed three-tangle of the reduced state, via the closed decomposition.

    Returns 4*l0^2*l4^2*cos^2(r) after checking that the theta = pi/2 bracket
    of the chosen branch evaluates to 1.
    """
    r = _check_r(r)
    l0, _, _, _, l4 = params.lambdas
    scale = 4.0 * l0 * l0 * l4 * l4 * np.cos(r) ** 2
    try:
        decomp = decomposition_for(params, r, party)
    except DegenerateRankError:
        # rank-1 reduced state (r = 0 or l0 = 0): tangle of the survivor
        rho = reduced_state(from_acin(params), party, r)
        w, v = eig_hermitian(rho.matrix)
        survivor = v[:, 0] / np.linalg.norm(v[:, 0])
        pure = tangle_of_amplitudes(survivor)
        if abs(pure - scale) > 1e-9:
            raise InvariantViolation(
                f"rank-1 tangle {pure} disagrees with closed form {scale}"
            )
        return MeasureResult(scale, "three_tangle", "analytic")
    if decomp.intermediates.get("degenerate_pair"):
        # only reachable where the closed form vanishes identically
        if scale > 1e-12:
            raise InvariantViolation("degenerate eigenpair with a nonzero tangle scale")
        return MeasureResult(0.0, "three_tangle", "analytic")
    bracket = mixture_bracket(decomp, np.pi / 2.0)
    if abs(bracket - 1.0) > _BRACKET_TOL:
        raise InvariantViolation(f"pi/2 bracket evaluates to {bracket}, not 1")
    return MeasureResult(scale, "three_tangle", "analytic")


def _theta_polynomial(x_amps, y_amps):
    # D(x + t*y) is degree 4 in t; sample at fifth roots of unity and invert
    roots = np.exp(2j * np.pi * np.arange(5) / 5.0)
    samples = np.array([hyperdet(x_amps + t * y_amps) for t in roots])
    powers = np.exp(-2j * np.pi * np.outer(np.arange(5), np.arange(5)) / 5.0)
    return powers @ samples / 5.0


def spectral_mixed_tangle(rho: DensityMatrix, grid=721):
    """Mixed three-tangle of a rank-2 state from its raw spectral pair.

    Eigenvector phases from the eigensolver are arbitrary, so the optimal
    relative phase of the equal-weight family is located by a scan plus
    golden-section refinement instead of being pinned at pi/2.
    """
    if rho.qubit_count != 3:
        raise ValueError("needs a three-qubit density matrix")
    w, v = eig_hermitian(rho.matrix)
    if w[2] > RANK_EPS:
        raise ValueError(f"rank exceeds 2 (third eigenvalue {w[2]})")
    p = float(w[0])
    q = max(float(w[1]), 0.0)
    if q < 1e-12:
        top = v[:, 0] / np.linalg.norm(v[:, 0])
        return MeasureResult(tangle_of_amplitudes(top), "three_tangle", "analytic")
    v0 = v[:, 0].copy()
    v1 = v[:, 1].copy()
    if abs(p - q) < 1e-10:
        v1 = _stabilize_pair(v0, v1)
    coeffs = _theta_polynomial(np.sqrt(p) * v0, np.sqrt(q) * v1)
    signs = np.array([1.0, -1.0, 1.0, -1.0, 1.0])

    def average(theta):
        t = np.exp(1j * theta) ** np.arange(5)
        return 2.0 * (abs(coeffs @ t) + abs((coeffs * signs) @ t))

    thetas = np.linspace(0.0, 2.0 * np.pi, grid)
    values = np.array([average(th) for th in thetas])
    best = int(np.argmin(values))
    lo = thetas[best] - 2.0 * np.pi / (grid - 1)
    hi = thetas[best] + 2.0 * np.pi / (grid - 1)
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    fc, fd = average(c), average(d)
    for _ in range(60):
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - invphi * (hi - lo)
            fc = average(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + invphi * (hi - lo)
            fd = average(d)
    value = min(values[best], average(0.5 * (lo + hi)))
    return MeasureResult(value, "three_tangle", "analytic")


def optimize_roof(
    rho: DensityMatrix,
    m,
    seed=20240917,
    n_starts=16,
    grid_points=24,
    max_sweeps=500,
    tol=1e-10,
):
    """Minimize the average pure tangle over size-m decompositions.

    Decompositions are parametrized by m x 2 isometries acting on the
    weighted eigenbasis (the complete family for a rank-2 state). Multi-start
    coordinate descent with golden-section line search; deterministic for a
    fixed seed. Rank-1 input short-circuits to the pure tangle.
    """
    if m not in (2, 3, 4):
        raise ValueError("decomposition size m must be 2, 3, or 4")
    if rho.qubit_count != 3:
        raise ValueError("needs a three-qubit density matrix")
    w, v = eig_hermitian(rho.matrix)
    if w[2] > RANK_EPS:
        raise ValueError(f"rank exceeds 2 (third eigenvalue {w[2]})")
    p = float(w[0])
    q = max(float(w[1]), 0.0)
    if q < 1e-12:
        top = v[:, 0] / np.linalg.norm(v[:, 0])
        state = PureState(rho.register, top)
        return RoofCandidate(np.array([1.0]), (state,), three_tangle_pure(state).value)
    v0 = v[:, 0].copy()
    v1 = v[:, 1].copy()
    if abs(p - q) < 1e-10:
        v1 = _stabilize_pair(v0, v1)
    b0 = np.sqrt(p) * v0
    b1 = np.sqrt(q) * v1
    rng = np.random.default_rng(seed)
    n_ang = 3 * m - 4
    starts = rng.uniform(0.0, 2.0 * np.pi, size=(n_starts, n_ang))
    _, angles = kernels.roof_descend(b0, b1, m, starts, grid_points, max_sweeps, tol)

    u, vv = unit_pair(angles, m)
    raw = u[:, None] * b0[None, :] + vv[:, None] * b1[None, :]
    weights = (np.abs(raw) ** 2).sum(axis=1)
    states = []
    average = 0.0
    fallback = b0 / np.linalg.norm(b0)
    for i in range(m):
        if weights[i] > 1e-14:
            st = PureState(rho.register, raw[i] / np.sqrt(weights[i]))
            average += weights[i] * three_tangle_pure(st).value
        else:
            st = PureState(rho.register, fallback)
        states.append(st)
    weights = weights / weights.sum()
    return RoofCandidate(weights, tuple(states), float(average))
