"""Pure-numpy implementations of the hot numeric kernels.

These mirror the numba versions in ``_kernels_numba`` step for step so the
two backends return the same values up to floating-point noise. The inner
objective is the weighted tangle of a candidate decomposition: rows of an
m x 2 isometry applied to the weighted eigenbasis of a rank-2 state.
"""

import numpy as np

TWO_PI = 2.0 * np.pi
_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0

# Degree-4 monomials of the three-qubit hyperdeterminant, as amplitude
# index quadruples with their integer coefficients.
_HD_COEFF = np.array([1, 1, 1, 1, -2, -2, -2, -2, -2, -2, 4, 4], dtype=float)
_HD_IDX = np.array(
    [
        [0, 0, 7, 7],
        [1, 1, 6, 6],
        [2, 2, 5, 5],
        [4, 4, 3, 3],
        [0, 7, 3, 4],
        [0, 7, 5, 2],
        [0, 7, 6, 1],
        [3, 4, 5, 2],
        [3, 4, 6, 1],
        [5, 2, 6, 1],
        [0, 6, 5, 3],
        [7, 1, 2, 4],
    ]
).T


def hyperdet_batch(amps):
    """Hyperdeterminant combination d1 - 2*d2 + 4*d3 for (..., 8) amplitudes."""
    a = np.asarray(amps)
    prod = a[..., _HD_IDX[0]] * a[..., _HD_IDX[1]] * a[..., _HD_IDX[2]] * a[..., _HD_IDX[3]]
    return prod @ _HD_COEFF.astype(prod.dtype)


def _sphere(angles, k):
    """Unit vector in R^k from k-1 nested angles."""
    out = np.empty(k)
    prod = 1.0
    for j in range(k - 1):
        out[j] = prod * np.cos(angles[j])
        prod = prod * np.sin(angles[j])
    out[k - 1] = prod
    return out


def unit_pair(angles, m):
    """Real unit vector u and complex unit vector v orthogonal to it.

    u comes from spherical angles; a Householder reflection supplies a real
    orthonormal basis of the orthogonal complement, and the remaining angles
    pick magnitudes and phases of v inside that complement. Every m x 2
    isometry modulo row phases is reached this way.
    """
    u = _sphere(angles, m)
    s0 = 1.0 if u[0] >= 0.0 else -1.0
    w = u.copy()
    w[0] += s0
    wn = float(w @ w)
    k = m - 1
    mag = _sphere(angles[m - 1 :], k)
    phases = np.asarray(angles[m - 1 + k - 1 : m - 1 + k - 1 + k])
    coeff = mag * (np.cos(phases) + 1j * np.sin(phases))
    basis = np.eye(m)[:, 1:] - 2.0 * np.outer(w, w[1:]) / wn
    v = basis @ coeff
    return u, v


def roof_objective(angles, b0, b1, m):
    """Average pure tangle of the decomposition encoded by ``angles``."""
    u, v = unit_pair(angles, m)
    psis = u[:, None] * b0[None, :] + v[:, None] * b1[None, :]
    weights = (np.abs(psis) ** 2).sum(axis=1)
    dets = hyperdet_batch(psis)
    total = 0.0
    for i in range(m):
        if weights[i] > 1e-15:
            total += 4.0 * abs(dets[i]) / weights[i]
    return float(total)


def roof_descend(b0, b1, m, starts, grid_points=24, max_sweeps=500, tol=1e-10):
    """Multi-start coordinate descent with golden-section line search."""
    n_ang = starts.shape[1]
    best_val = np.inf
    best_ang = np.zeros(n_ang)
    for s in range(starts.shape[0]):
        ang = starts[s].copy()
        cur = roof_objective(ang, b0, b1, m)
        for _sweep in range(max_sweeps):
            prev = cur
            for j in range(n_ang):
                gb_t = ang[j]
                gb_f = cur
                for g in range(grid_points):
                    th = TWO_PI * g / grid_points
                    ang[j] = th
                    f = roof_objective(ang, b0, b1, m)
                    if f < gb_f:
                        gb_f = f
                        gb_t = th
                lo = gb_t - TWO_PI / grid_points
                hi = gb_t + TWO_PI / grid_points
                c = hi - _INVPHI * (hi - lo)
                d = lo + _INVPHI * (hi - lo)
                ang[j] = c
                fc = roof_objective(ang, b0, b1, m)
                ang[j] = d
                fd = roof_objective(ang, b0, b1, m)
                for _it in range(40):
                    if fc < fd:
                        hi, d, fd = d, c, fc
                        c = hi - _INVPHI * (hi - lo)
                        ang[j] = c
                        fc = roof_objective(ang, b0, b1, m)
                    else:
                        lo, c, fc = c, d, fd
                        d = lo + _INVPHI * (hi - lo)
                        ang[j] = d
                        fd = roof_objective(ang, b0, b1, m)
                mid = 0.5 * (lo + hi)
                ang[j] = mid
                fm = roof_objective(ang, b0, b1, m)
                if gb_f < fm:
                    ang[j] = gb_t
                    cur = gb_f
                else:
                    cur = fm
            if prev - cur < tol:
                break
        if cur < best_val:
            best_val = cur
            best_ang = ang.copy()
    return float(best_val), best_ang
