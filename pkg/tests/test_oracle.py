import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qwdist import oracle
from qwdist.graphs import LabeledGraph, complete_graph, enumerate_labeled_connected, laplacian

K2 = complete_graph(2)


def k2_vertex0_probability(t):
    # L_K2 has eigenvalues 0, 2 with eigenvectors (1, 1)/sqrt2, (1, -1)/sqrt2
    amp0 = (1 + np.exp(-2j * t)) / 2
    return abs(amp0) ** 2


def test_expm_unitary_trivial():
    assert np.allclose(oracle.expm_unitary(laplacian(complete_graph(4)), 0.0), np.eye(4), atol=1e-12)
    for t in (0.3, 2.0, 17.5):
        assert np.allclose(oracle.expm_unitary([[0]], t), [[1]], atol=1e-15)


def test_expm_k2_closed_form():
    t = np.pi / 2
    u = oracle.expm_unitary(K2, t)
    c, s = (1 + np.exp(-2j * t)) / 2, (1 - np.exp(-2j * t)) / 2
    assert np.allclose(u, [[c, s], [s, c]], atol=1e-12)
    assert np.allclose(u @ u.conj().T, np.eye(2), atol=1e-12)
    assert np.allclose(oracle.expm_unitary(K2, 0.4) @ oracle.expm_unitary(K2, 0.7), oracle.expm_unitary(K2, 1.1), atol=1e-12)


def test_evolve_examples():
    psi = np.array([0.6, 0.8j, 0.0])
    g = LabeledGraph.from_mask(3, 0b011)
    assert np.allclose(oracle.evolve(g, psi, 0.0).amplitudes, psi)
    for n in (2, 3, 4, 5):
        uni = np.full(n, 1 / np.sqrt(n))
        out = oracle.evolve(complete_graph(n), uni, 1.234)
        assert np.allclose(out.amplitudes, uni, atol=1e-12)
    for t in np.linspace(0.1, 3.0, 7):
        p = oracle.probabilities(oracle.evolve(K2, [1, 0], t))
        assert p[0] == pytest.approx(k2_vertex0_probability(t), abs=1e-12)
        # period pi from the eigenvalue gap 2
        assert oracle.probabilities(oracle.evolve(K2, [1, 0], t + np.pi))[0] == pytest.approx(p[0], abs=1e-12)


def test_evolve_rejects_unnormalized():
    with pytest.raises(ValueError, match="not normalized"):
        oracle.evolve(K2, [1, 1], 0.5)


def test_evolve_accumulates_time():
    s = oracle.evolve(K2, oracle.WalkState(np.array([1, 0], dtype=complex), 1.0), 0.5)
    assert s.time == 1.5 and s.norm == pytest.approx(1, abs=1e-12)


def test_bipartite_evolve():
    gi, gj = LabeledGraph.from_mask(3, 0b011), LabeledGraph.from_mask(3, 0b101)
    rng = np.random.default_rng(1)
    a = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    b = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    a /= np.linalg.norm(a)
    b /= np.linalg.norm(b)
    psi = np.kron(a, b)
    assert np.allclose(oracle.bipartite_evolve(gi, gj, psi, 0, 0).amplitudes, psi)
    out = oracle.bipartite_evolve(gi, gj, psi, 0.7, 1.9).amplitudes
    expected = np.kron(oracle.evolve(gi, a, 0.7).amplitudes, oracle.evolve(gj, b, 1.9).amplitudes)
    assert np.allclose(out, expected, atol=1e-12)
    uni = np.full(9, 1 / 3)
    assert np.allclose(oracle.bipartite_evolve(gi, gj, uni, 0.3, 2.2).amplitudes, uni, atol=1e-12)
    with pytest.raises(ValueError):
        oracle.bipartite_evolve(gi, complete_graph(4), np.full(9, 1 / 3), 1, 1)


def test_bipartite_row_major_convention():
    # amplitude (i, j) sits at i*n + j: evolving only subsystem A mixes indices with the same j
    g = complete_graph(3)
    psi = np.zeros(9)
    psi[0 * 3 + 1] = 1
    out = oracle.bipartite_evolve(g, g, psi, 0.9, 0.0).amplitudes
    assert np.allclose(out.reshape(3, 3)[:, [0, 2]], 0, atol=1e-12)


def test_w_residual_examples(order3):
    g = order3["graphs"]
    uni = np.full(9, 1 / 3)
    rng = np.random.default_rng(11)
    for a in g.values():
        for b in g.values():
            for t, tp in oracle.sample_times(rng, 5):
                assert oracle.w_residual(a, b, uni, t, tp) < 1e-12
    times = oracle.sample_times(rng, 20)
    res = oracle.max_residuals(g["G1"], g["G1"], order3["diagonal"]["G1"], times)
    assert res.max() < 1e-9
    gap_vector = np.array(order3["path_intersection"][0], dtype=float)
    gap_vector /= np.linalg.norm(gap_vector)
    assert max(oracle.w_residual(g["G2"], g["G3"], gap_vector, t, tp) for t, tp in times) > 1e-3
    with pytest.raises(ValueError):
        oracle.w_residual(g["G1"], complete_graph(4), uni, 1, 1)


def test_probabilities():
    assert np.allclose(oracle.probabilities([1, 0, 0]), [1, 0, 0])
    assert np.allclose(oracle.probabilities(np.full(4, 0.5)), [0.25] * 4)
    rng = np.random.default_rng(2)
    psi = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    psi /= np.linalg.norm(psi)
    joint = oracle.probabilities(psi).reshape(4, 4)
    assert joint.sum() == pytest.approx(1, abs=1e-12)
    assert joint[1, 2] == pytest.approx(abs(psi[1 * 4 + 2]) ** 2)


def test_sample_times_range():
    t = oracle.sample_times(np.random.default_rng(0), 1000)
    assert t.shape == (1000, 2) and (t > 0).all() and (t <= 2 * np.pi).all()


def test_complement_samples():
    rng = np.random.default_rng(3)
    outer = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]
    inner = [[1, 1, 0, 0]]
    v = oracle.complement_samples(outer, inner, 10, rng)
    assert v.shape == (10, 4)
    assert np.allclose(np.linalg.norm(v, axis=1), 1)
    assert np.allclose(v @ np.array(inner, dtype=float).T, 0, atol=1e-12)
    assert np.allclose(v[:, 3], 0, atol=1e-12)
    assert oracle.complement_samples(outer, outer, 5, rng).shape == (0, 4)


ALL_GRAPHS = [g for n in range(1, 6) for g in enumerate_labeled_connected(n)]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ALL_GRAPHS), st.integers(0, 2 ** 32 - 1))
def test_simulator_invariants(g, seed):
    checks = oracle.simulator_checks(laplacian(g), np.random.default_rng(seed), count=5)
    assert checks["reconstruction"] < 1e-10
    assert checks["orthogonality"] < 1e-10
    assert checks["unitarity"] < 1e-10
    assert checks["group"] < 1e-9
    assert checks["norm"] < 1e-12
