"""Numba-compiled twins of the kernels in ``_kernels_numpy``.

Same algorithms, written as explicit loops for nopython mode. Compiled
lazily on first call and cached on disk.
"""

import numpy as np
from numba import njit

TWO_PI = 2.0 * np.pi
_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0


@njit(cache=True)
def _hyperdet(a):
    d1 = (
        a[0] * a[0] * a[7] * a[7]
        + a[1] * a[1] * a[6] * a[6]
        + a[2] * a[2] * a[5] * a[5]
        + a[4] * a[4] * a[3] * a[3]
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
    return d1 - 2.0 * d2 + 4.0 * d3


@njit(cache=True)
def hyperdet_batch(amps):
    n = amps.shape[0]
    out = np.empty(n, np.complex128)
    for i in range(n):
        out[i] = _hyperdet(amps[i])
    return out


@njit(cache=True)
def _sphere_into(angles, offset, k, out):
    prod = 1.0
    for j in range(k - 1):
        out[j] = prod * np.cos(angles[offset + j])
        prod = prod * np.sin(angles[offset + j])
    out[k - 1] = prod


@njit(cache=True)
def roof_objective(angles, b0, b1, m):
    u = np.empty(m)
    _sphere_into(angles, 0, m, u)
    s0 = 1.0 if u[0] >= 0.0 else -1.0
    w = u.copy()
    w[0] += s0
    wn = 0.0
    for i in range(m):
        wn += w[i] * w[i]
    k = m - 1
    mag = np.empty(k)
    _sphere_into(angles, m - 1, k, mag)
    v = np.zeros(m, np.complex128)
    for j in range(k):
        ph = angles[m - 1 + k - 1 + j]
        cj = mag[j] * complex(np.cos(ph), np.sin(ph))
        for i in range(m):
            hij = (1.0 if i == j + 1 else 0.0) - 2.0 * w[i] * w[j + 1] / wn
            v[i] += cj * hij
    total = 0.0
    a = np.empty(8, np.complex128)
    for i in range(m):
        nrm = 0.0
        for t in range(8):
            a[t] = u[i] * b0[t] + v[i] * b1[t]
            nrm += a[t].real * a[t].real + a[t].imag * a[t].imag
        if nrm > 1e-15:
            total += 4.0 * abs(_hyperdet(a)) / nrm
    return total


@njit(cache=True)
def roof_descend(b0, b1, m, starts, grid_points=24, max_sweeps=500, tol=1e-10):
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
                        hi = d
                        d = c
                        fd = fc
                        c = hi - _INVPHI * (hi - lo)
                        ang[j] = c
                        fc = roof_objective(ang, b0, b1, m)
                    else:
                        lo = c
                        c = d
                        fc = fd
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
    return best_val, best_ang
