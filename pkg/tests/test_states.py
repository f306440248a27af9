import json

import numpy as np
import pytest

from rindlertangle import states
from rindlertangle.measures import three_tangle_pure
from rindlertangle.qmat import InvariantViolation

INV_SQRT2 = 1.0 / np.sqrt(2.0)


def test_acin_params_validation():
    with pytest.raises(InvariantViolation):
        states.AcinParams((1.0, 1.0, 0.0, 0.0, 0.0))
    with pytest.raises(InvariantViolation):
        states.AcinParams((-0.6, 0.0, 0.0, 0.0, 0.8))
    with pytest.raises(ValueError):
        states.AcinParams((1.0, 0.0, 0.0))
    p = states.AcinParams((0.6, 0.0, 0.0, 0.0, 0.8), phi=-np.pi / 2)
    assert 0.0 <= p.phi < 2.0 * np.pi


def test_from_acin_ghz():
    psi = states.from_acin(states.AcinParams((INV_SQRT2, 0, 0, 0, INV_SQRT2)))
    assert np.abs(psi.amplitudes - states.named_state("ghz").amplitudes).max() < 1e-12


def test_from_acin_product():
    psi = states.from_acin(states.AcinParams((1.0, 0, 0, 0, 0)))
    expected = np.zeros(8)
    expected[0] = 1.0
    assert np.abs(psi.amplitudes - expected).max() == 0.0


def test_from_acin_generic_five_term():
    params = states.AcinParams((0.6, 0.3, 0.4, 0.5, np.sqrt(0.14)), np.pi / 3)
    psi = states.from_acin(params)
    assert abs(np.linalg.norm(psi.amplitudes) - 1.0) < 1e-12
    # closed form 4*l0^2*l4^2 against the hyperdeterminant route
    assert abs(three_tangle_pure(psi).value - 0.2016) < 1e-12


def test_from_acin_readback():
    params = states.AcinParams((0.6, 0.3, 0.4, 0.5, np.sqrt(0.14)), 1.2345)
    a = states.from_acin(params).amplitudes
    read = (abs(a[0]), abs(a[4]), abs(a[5]), abs(a[6]), abs(a[7]))
    assert np.abs(np.array(read) - np.array(params.lambdas)).max() < 1e-12
    assert abs(np.angle(a[4]) - params.phi) < 1e-12


def test_from_amplitudes_ghz():
    psi = states.from_amplitudes(("A", "B", "C"), [1, 0, 0, 0, 0, 0, 0, 1])
    assert abs(psi.normalization - np.sqrt(2.0)) < 1e-12
    assert np.abs(psi.amplitudes - states.named_state("ghz").amplitudes).max() < 1e-12


def test_from_amplitudes_w_state():
    psi = states.from_amplitudes(("A", "B", "C"), [0, 1, 1, 0, 1, 0, 0, 0])
    assert abs(psi.normalization - np.sqrt(3.0)) < 1e-12
    assert np.abs(psi.amplitudes - states.named_state("w").amplitudes).max() < 1e-12


def test_from_amplitudes_random_is_normalized(rng):
    amps = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    psi = states.from_amplitudes(("A", "B", "C"), amps)
    assert abs(np.linalg.norm(psi.amplitudes) - 1.0) < 1e-12


def test_from_amplitudes_rejects_zero():
    with pytest.raises(ValueError):
        states.from_amplitudes(("A", "B"), [0, 0, 0, 0])


def test_random_pure_deterministic():
    a = states.random_pure(("A", "B", "C"), 42)
    b = states.random_pure(("A", "B", "C"), 42)
    assert np.array_equal(a.amplitudes, b.amplitudes)


def test_random_pure_norm():
    psi = states.random_pure(("A", "B"), 7)
    assert abs(np.linalg.norm(psi.amplitudes) - 1.0) < 1e-12


def test_random_pure_haar_moment():
    # E|a_000|^2 = 1/8 for the invariant measure; Var = 7/576 so three
    # standard errors over 10^4 samples is 3.31e-3
    total = 0.0
    n = 10_000
    for seed in range(n):
        total += abs(states.random_pure(("A", "B", "C"), seed).amplitudes[0]) ** 2
    assert abs(total / n - 0.125) < 3.31e-3


def test_random_pure_seed_battery_no_duplicates():
    battery = [states.random_pure(("A", "B", "C"), seed) for seed in range(1, 101)]
    worst = 0.0
    for i in range(len(battery)):
        for j in range(i + 1, len(battery)):
            worst = max(worst, abs(battery[i].overlap(battery[j])))
    assert worst < 1.0 - 1e-6


def test_purity_of_generated_states():
    for seed in range(5):
        rho = states.random_pure(("A", "B", "C"), seed).density_matrix().matrix
        assert abs(np.trace(rho @ rho).real - 1.0) < 1e-12


def test_density_matrix_validation():
    with pytest.raises(InvariantViolation):
        states.DensityMatrix(("A",), np.array([[0.5, 0.5], [0.0, 0.5]]))
    with pytest.raises(InvariantViolation):
        states.DensityMatrix(("A",), np.array([[0.7, 0.0], [0.0, 0.7]]))
    with pytest.raises(InvariantViolation):
        states.DensityMatrix(("A",), np.array([[1.2, 0.0], [0.0, -0.2]]))


def test_state_file_round_trip(tmp_path):
    psi = states.random_pure(("A", "B", "C"), 11)
    path = tmp_path / "state.json"
    states.save_state(psi, path)
    again = states.load_state(path)
    assert again.register == psi.register
    assert np.abs(again.amplitudes - psi.amplitudes).max() < 1e-15


def test_state_file_acin_form(tmp_path):
    doc = {"acin": {"lambda": [0.6, 0.0, 0.0, 0.0, 0.8], "phi": 0.25}}
    path = tmp_path / "acin.json"
    path.write_text(json.dumps(doc))
    psi = states.load_state(path)
    assert abs(psi.amplitudes[0] - 0.6) < 1e-12
    assert abs(psi.amplitudes[7] - 0.8) < 1e-12


def test_state_file_rejects_unknown(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"weird": 1}))
    with pytest.raises(ValueError):
        states.load_state(path)


def test_named_state_unknown():
    with pytest.raises(ValueError):
        states.named_state("epr")
