"""Diagonal blocks, V matrices, singular-value ratios, epsilon and Bloch radius."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sepscope import blocks
from sepscope.errors import DimensionMismatch, NotPositiveDefinite
from sepscope.statesampler import RngStream, hs_random_batch


def test_diag_blocks_diagonal_example():
    rho = np.diag(np.arange(1, 7)) / 21
    d1, d2 = blocks.diag_blocks(rho, 3)
    assert np.allclose(d1, np.diag([1, 2, 3]) / 21)
    assert np.allclose(d2, np.diag([4, 5, 6]) / 21)
    with pytest.raises(DimensionMismatch):
        blocks.diag_blocks(rho, 4)


def test_blocks_trace_and_psd():
    rho = hs_random_batch(9, "complex", RngStream(0), 100)
    parts = blocks.diag_blocks(rho, 3)
    assert len(parts) == 3
    total = sum(np.trace(p, axis1=-2, axis2=-1) for p in parts)
    assert np.allclose(total, 1.0, atol=1e-12)
    for p in parts:
        assert np.linalg.eigvalsh(p).min() > -1e-14


def test_v_matrix_examples():
    d = np.diag([0.2, 0.3, 0.5])
    assert np.allclose(np.linalg.svd(blocks.v_matrix(d, d), compute_uv=False), 1.0)
    v = blocks.v_matrix(np.eye(2) / 6, np.diag([4.0, 1.0]) / 6)
    assert np.allclose(np.linalg.svd(v, compute_uv=False), [2.0, 1.0])
    with pytest.raises(NotPositiveDefinite):
        blocks.v_matrix(np.diag([1.0, 0.0]), np.eye(2))


def test_v_matrix_determinant_identity():
    rho = hs_random_batch(6, "complex", RngStream(4), 50)
    for r in rho:
        d1, d2 = blocks.diag_blocks(r, 3)
        v = blocks.v_matrix(d1, d2)
        lhs = abs(np.linalg.det(v)) ** 2
        rhs = np.linalg.det(d2).real / np.linalg.det(d1).real
        assert lhs == pytest.approx(rhs, rel=1e-8)


def test_v_singular_values_unitary_invariant():
    rng = np.random.default_rng(8)
    rho = hs_random_batch(6, "complex", RngStream(2), 1)[0]
    q, _ = np.linalg.qr(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
    u = np.kron(np.eye(2), q)
    sv0, _ = blocks.block_singular_values(rho[None], 3)
    sv1, _ = blocks.block_singular_values((u @ rho @ u.conj().T)[None], 3)
    assert np.allclose(sv0, sv1, atol=1e-12)


def test_ratio_triple_examples():
    assert np.allclose(blocks.ratio_triple(np.eye(3)), (1, 1, 1))
    assert np.allclose(blocks.ratio_triple(np.diag([3.0, 2.0, 1.0])), (2 / 3, 1 / 3, 1 / 2))
    with pytest.raises(DimensionMismatch):
        blocks.ratio_triple(np.eye(2))


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=50, deadline=None)
def test_ratio_invariants(seed):
    v = np.random.default_rng(seed).standard_normal((3, 3))
    t = blocks.ratio_triple(v)
    assert 0 <= t.v2 <= t.v1 <= 1
    assert 0 <= t.v3 <= 1
    assert t.v2 == pytest.approx(t.v1 * t.v3, abs=1e-10)


def test_block_singular_values_rejects_singular_d1():
    rho = np.zeros((1, 6, 6))
    rho[0, 3:, 3:] = np.eye(3) / 3
    sv, ok = blocks.block_singular_values(rho, 3)
    assert not ok[0]
    assert np.all(np.isnan(sv[0]))


def test_epsilon_matches_singular_ratio():
    rho = hs_random_batch(4, "complex", RngStream(6), 10_000)
    d1, d2 = blocks.diag_blocks(rho, 2)
    eps = blocks.epsilon_la(d1, d2)
    sv, ok = blocks.block_singular_values(rho, 2)
    assert ok.all()
    assert np.allclose(eps, sv[:, 1] / sv[:, 0], atol=1e-8)
    assert np.all((eps > 0) & (eps <= 1))


def test_epsilon_diagonal_case():
    assert blocks.epsilon_la(np.eye(2), np.diag([4.0, 1.0])) == pytest.approx(0.5)


def test_w_triple_is_diagonal_ratio():
    d = np.array([0.05, 0.1, 0.15, 0.2, 0.22, 0.28])
    rho = np.diag(d)
    w = blocks.w_triple(rho)
    sv = np.sort(np.sqrt(d[3:] / d[:3]))[::-1]
    assert 0 < min(w) and max(w) <= 1
    r1, r2, r3, r4, r5, r6 = d
    assert w.w1 == pytest.approx(min(np.sqrt(r2 * r4 / (r1 * r5)), np.sqrt(r1 * r5 / (r2 * r4))))
    assert sv[-1] / sv[0] <= 1


def test_bloch_radius():
    assert blocks.bloch_radius(np.eye(2) / 2) == pytest.approx(0.0)
    assert blocks.bloch_radius(np.diag([1.0, 0.0])) == pytest.approx(0.5)
    assert blocks.bloch_radius(np.array([[0.5, 0.5], [0.5, 0.5]])) == pytest.approx(0.5)


@pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 2)])
def test_bloch_matrix_is_qubit_marginal(dims):
    dA, dB = dims
    rho = hs_random_batch(dA * dB, "complex", RngStream(1), 5)
    m = blocks.bloch_matrix(rho, dA, dB)
    assert m.shape == (5, 2, 2)
    assert np.allclose(np.trace(m, axis1=1, axis2=2), 1.0)
    t = rho.reshape(5, dA, dB, dA, dB)
    expected = np.einsum("nijik->njk", t) if dB == 2 else np.einsum("nijkj->nik", t)
    assert np.allclose(m, expected)
