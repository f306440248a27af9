import os
import subprocess
import sys

import numpy as np
import pytest

from rindlertangle import _kernels_numpy, kernels

try:
    from rindlertangle import _kernels_numba

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba unavailable")


def _random_basis(rng):
    v = rng.standard_normal((8, 2)) + 1j * rng.standard_normal((8, 2))
    q, _ = np.linalg.qr(v)
    mu = rng.uniform(0.2, 0.8)
    return np.ascontiguousarray(np.sqrt(mu) * q[:, 0]), np.ascontiguousarray(
        np.sqrt(1 - mu) * q[:, 1]
    )


def test_backend_reports_a_name():
    assert kernels.backend_name() in ("numba", "numpy")


@needs_numba
def test_hyperdet_backends_agree(rng):
    batch = rng.standard_normal((64, 8)) + 1j * rng.standard_normal((64, 8))
    a = _kernels_numpy.hyperdet_batch(batch)
    b = _kernels_numba.hyperdet_batch(batch)
    assert np.abs(a - b).max() < 1e-12


@needs_numba
def test_objective_backends_agree(rng):
    for m in (2, 3, 4):
        b0, b1 = _random_basis(rng)
        for _ in range(20):
            angles = rng.uniform(0, 2 * np.pi, 3 * m - 4)
            a = _kernels_numpy.roof_objective(angles, b0, b1, m)
            b = _kernels_numba.roof_objective(angles, b0, b1, m)
            assert abs(a - b) < 1e-12


@needs_numba
def test_descend_backends_agree(rng):
    b0, b1 = _random_basis(rng)
    for m in (2, 3):
        starts = rng.uniform(0, 2 * np.pi, (4, 3 * m - 4))
        va, _ = _kernels_numpy.roof_descend(b0, b1, m, starts, 12, 40, 1e-9)
        vb, _ = _kernels_numba.roof_descend(b0, b1, m, starts, 12, 40, 1e-9)
        assert abs(va - vb) < 1e-9


def test_objective_matches_measures_route(rng):
    # kernel objective vs the literal hyperdeterminant formulas applied to
    # the normalized decomposition elements
    from rindlertangle.measures import tangle_of_amplitudes

    for m in (2, 3, 4):
        b0, b1 = _random_basis(rng)
        for _ in range(10):
            angles = rng.uniform(0, 2 * np.pi, 3 * m - 4)
            got = _kernels_numpy.roof_objective(angles, b0, b1, m)
            u, v = _kernels_numpy.unit_pair(angles, m)
            manual = 0.0
            for i in range(m):
                raw = u[i] * b0 + v[i] * b1
                weight = float(np.vdot(raw, raw).real)
                if weight > 1e-15:
                    manual += weight * tangle_of_amplitudes(raw / np.sqrt(weight))
            assert abs(got - manual) < 1e-12


def test_unit_pair_is_isometry(rng):
    for m in (2, 3, 4):
        for _ in range(30):
            angles = rng.uniform(0, 2 * np.pi, 3 * m - 4)
            u, v = _kernels_numpy.unit_pair(angles, m)
            assert abs(u @ u - 1.0) < 1e-12
            assert abs(np.vdot(v, v) - 1.0) < 1e-12
            assert abs(np.vdot(v, u)) < 1e-12


def test_descend_finds_known_minimum():
    # GHZ state reduced at r = pi/6: minimum average tangle is cos^2(pi/6)
    from rindlertangle.states import named_state
    from rindlertangle.unruh import reduced_state
    from rindlertangle.qmat import eig_hermitian

    rho = reduced_state(named_state("ghz"), "A", np.pi / 6)
    w, v = eig_hermitian(rho.matrix)
    b0 = np.sqrt(w[0]) * v[:, 0]
    b1 = np.sqrt(w[1]) * v[:, 1]
    starts = np.random.default_rng(0).uniform(0, 2 * np.pi, (8, 2))
    val, _ = _kernels_numpy.roof_descend(b0, b1, 2, starts, 24, 200, 1e-10)
    assert abs(val - 0.75) < 1e-6


def test_env_flag_selects_numpy_backend():
    env = dict(os.environ)
    env["RINDLERTANGLE_NO_NUMBA"] = "1"
    out = subprocess.run(
        [sys.executable, "-c", "import rindlertangle; print(rindlertangle.backend_name())"],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    assert out.stdout.strip() == "numpy"
