import numpy as np
import pytest

from rindlertangle import qmat
from rindlertangle.convexroof import alice_decomposition
from rindlertangle.states import AcinParams, from_acin, named_state
from rindlertangle.unruh import apply_single_mode_channel, reduced_state

I2 = np.eye(2)
SY = np.array([[0, -1j], [1j, 0]])


def test_tensor_identity():
    assert np.array_equal(qmat.tensor(I2, I2), np.eye(4))


def test_tensor_projector_placement():
    p0 = np.array([[1, 0], [0, 0]])
    p1 = np.array([[0, 0], [0, 1]])
    assert np.array_equal(qmat.tensor(p0, p1), np.diag([0.0, 1.0, 0.0, 0.0]))


def test_tensor_sigma_y_pair():
    # hand-expanded Kronecker product: antidiagonal (-1, 1, 1, -1)
    expected = np.zeros((4, 4), dtype=complex)
    expected[0, 3] = -1.0
    expected[1, 2] = 1.0
    expected[2, 1] = 1.0
    expected[3, 0] = -1.0
    assert np.abs(qmat.tensor(SY, SY) - expected).max() == 0.0


def test_tensor_associative():
    rng = np.random.default_rng(5)
    a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    c = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    left = qmat.tensor(qmat.tensor(a, b), c)
    right = qmat.tensor(a, qmat.tensor(b, c))
    assert np.abs(left - right).max() < 1e-13


def test_partial_trace_bell():
    bell = named_state("bell00")
    rho = np.outer(bell.amplitudes, bell.amplitudes.conj())
    reduced = qmat.partial_trace(rho, ["A"], ["A", "B"])
    assert np.abs(reduced - I2 / 2).max() < 1e-12


def test_partial_trace_zero_acceleration_is_rank_one():
    psi = from_acin(AcinParams((0.6, 0.3, 0.4, 0.5, np.sqrt(0.14)), np.pi / 3))
    big = apply_single_mode_channel(psi, "A", 0.0)
    rho_big = np.outer(big.amplitudes, big.amplitudes.conj())
    reduced = qmat.partial_trace(rho_big, ["I", "B", "C"], big.register)
    projector = np.outer(psi.amplitudes, psi.amplitudes.conj())
    assert np.abs(reduced - projector).max() < 1e-12


def test_partial_trace_matches_analytic_eigenpair():
    # generic parameters: reduction agrees entrywise with the assembled
    # plus/minus spectral pair
    params = AcinParams((0.6, 0.3, 0.4, 0.5, np.sqrt(0.14)), np.pi / 3)
    r = 0.4
    big = apply_single_mode_channel(from_acin(params), "A", r)
    rho_big = np.outer(big.amplitudes, big.amplitudes.conj())
    reduced = qmat.partial_trace(rho_big, ["I", "B", "C"], big.register)
    d = alice_decomposition(params, r)
    assembled = d.p * np.outer(d.state_plus.amplitudes, d.state_plus.amplitudes.conj())
    assembled += (1 - d.p) * np.outer(d.state_minus.amplitudes, d.state_minus.amplitudes.conj())
    assert np.abs(reduced - assembled).max() < 1e-12


def test_partial_trace_preserves_trace_and_hermiticity(rng):
    for n, keep in ((3, ["A", "C"]), (4, ["B"]), (2, ["A", "B"])):
        register = ["A", "B", "C", "I"][:n]
        z = rng.standard_normal((2**n, 2**n)) + 1j * rng.standard_normal((2**n, 2**n))
        rho = z @ z.conj().T
        rho /= rho.trace()
        reduced = qmat.partial_trace(rho, keep, register)
        assert abs(reduced.trace() - 1.0) < 1e-12
        assert np.abs(reduced - reduced.conj().T).max() == 0.0


def test_partial_trace_degenerate_keeps():
    rho = np.diag([0.1, 0.2, 0.3, 0.4]).astype(complex)
    assert np.abs(qmat.partial_trace(rho, ["A", "B"], ["A", "B"]) - rho).max() == 0.0
    total = qmat.partial_trace(rho, [], ["A", "B"])
    assert total.shape == (1, 1) and abs(total[0, 0] - 1.0) < 1e-12


def test_partial_trace_errors():
    rho = np.eye(4) / 4
    with pytest.raises(ValueError):
        qmat.partial_trace(rho, ["C"], ["A", "B"])
    with pytest.raises(ValueError):
        qmat.partial_trace(np.eye(3), ["A"], ["A", "B"])


def test_eig_hermitian_diagonal():
    w, v = qmat.eig_hermitian(np.diag([0.25, 0.75]))
    assert np.allclose(w, [0.75, 0.25])
    assert abs(abs(v[1, 0]) - 1.0) < 1e-12


def test_eig_hermitian_reduced_ghz():
    # discriminant at lambda0^2 = 1/2, lambda1 = 0, sin^2 r = 1/4 gives
    # sqrt = 3/4, so the spectrum is {7/8, 1/8}
    rho = reduced_state(named_state("ghz"), "A", np.pi / 6)
    w, _ = qmat.eig_hermitian(rho.matrix)
    assert abs(w[0] - 0.875) < 1e-12
    assert abs(w[1] - 0.125) < 1e-12
    assert np.abs(w[2:]).max() < 1e-10


def test_eig_hermitian_maximally_mixed():
    w, _ = qmat.eig_hermitian(np.eye(4) / 4)
    assert np.allclose(w, 0.25, atol=1e-14)


def test_eig_hermitian_contract(rng):
    for _ in range(20):
        z = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        m = z + z.conj().T
        w, v = qmat.eig_hermitian(m)
        assert np.all(np.diff(w) <= 1e-12)
        assert np.abs(m @ v - v * w).max() < 1e-10
        assert np.abs(v.conj().T @ v - np.eye(8)).max() < 1e-10
        rebuilt = (v * w) @ v.conj().T
        assert np.linalg.norm(rebuilt - m) < 1e-9


def test_eig_hermitian_rejects_non_hermitian():
    with pytest.raises(qmat.InvariantViolation):
        qmat.eig_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_register_validation():
    with pytest.raises(ValueError):
        qmat.check_register(["A", "A"])
    with pytest.raises(ValueError):
        qmat.check_register(["Q"])
    with pytest.raises(ValueError):
        qmat.check_register([])
