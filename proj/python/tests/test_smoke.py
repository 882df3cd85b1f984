import numpy as np
import pytest

import qtsvm


def test_classical_train_and_predict():
    data = qtsvm.generate_crossplanes(16, 16, 0.05, 3)
    model = qtsvm.train_classical(data, 1.0, 1.0)
    assert model.w1.shape == (2,)
    label, d1, d2 = qtsvm.predict_classical(model, np.array([0.2, 0.2]))
    assert label == 1
    assert d1 < d2


def test_state_helpers():
    s = qtsvm.normalize_to_state(np.array([3.0, 4.0], dtype=complex))
    assert np.allclose(s.amplitudes, [0.6, 0.8])
    assert qtsvm.fidelity(s, s) == pytest.approx(1.0)
    f = np.array([[1.0, 0.0, 1.0], [0.0, 1.0, 1.0]])
    state, p, attempts = qtsvm.postselect_input_state(f, 1)
    assert p == pytest.approx(0.75)
    assert attempts >= 1
    assert np.allclose(state.amplitudes, np.array([1, 1, 2, 0]) / np.sqrt(6))
    rho = qtsvm.prepare_density_k(f)
    assert np.allclose(rho[:3, :3], f.T @ f / 4.0)


def test_swap_and_solver():
    a = qtsvm.normalize_to_state(np.array([1.0, 0.0], dtype=complex))
    b = qtsvm.normalize_to_state(np.array([1.0, 1.0], dtype=complex))
    r = qtsvm.swap_test(a, b, 1000, 2)
    assert r.exact_p0 == pytest.approx(0.75)

    h = np.diag([0.1, 0.2, 0.3, 0.4]).astype(complex)
    rhs = qtsvm.normalize_to_state(np.ones(4, dtype=complex))
    sol, p, gates = qtsvm.solve_qls(h, rhs, 8, 1)
    direct = np.linalg.solve(h, np.ones(4))
    overlap = abs(np.vdot(direct / np.linalg.norm(direct), sol.amplitudes))
    assert overlap > 0.99
    assert 0.0 < p <= 1.0
    assert gates["measurement"] == 9


def test_quantum_pipeline_matches_classical():
    data = qtsvm.generate_crossplanes(8, 8, 0.05, 4)
    model = qtsvm.train_classical(data)
    q = qtsvm.train_quantum(data, clock_qubits=6)
    for x in ([0.1, 0.1], [0.2, 0.9], [0.9, 0.1]):
        x = np.array(x)
        label, est = qtsvm.classify(x, q.state1, q.state2, exact=True)
        assert label == qtsvm.predict_classical(model, x)[0]
        assert est["ratio1"] >= 0.0


def test_errors_are_typed():
    data = qtsvm.generate_crossplanes(8, 8, 0.05, 4)
    with pytest.raises(qtsvm.QubitCapExceeded):
        qtsvm.train_quantum(data, max_qubits=6)
    with pytest.raises(qtsvm.QtsvmError):
        qtsvm.normalize_to_state(np.zeros(2, dtype=complex))
