"""Jacobi eigen/SVD kernels and partial transpose."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from sepscope.errors import DimensionMismatch
from sepscope.matcore import (
    Field,
    dagger,
    eigvalsh,
    herm_eig,
    inv_sqrtm_pd,
    operator_norm,
    partial_transpose,
    sqrtm_pd,
    svd,
)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def _random_hermitian(rng, n, complex_=True):
    a = rng.standard_normal((n, n))
    if complex_:
        a = a + 1j * rng.standard_normal((n, n))
    return a + dagger(a)


def test_field_parse():
    assert Field.parse("real") is Field.REAL
    assert Field.parse(Field.COMPLEX) is Field.COMPLEX
    with pytest.raises(ValueError):
        Field.parse("quaternion")


@pytest.mark.parametrize("n", [2, 3, 4, 6])
@pytest.mark.parametrize("complex_", [False, True])
def test_herm_eig_reconstructs(n, complex_):
    rng = np.random.default_rng(n)
    h = _random_hermitian(rng, n, complex_)
    w, u = herm_eig(h)
    assert np.all(np.diff(w) >= 0)
    assert np.allclose(u @ np.diag(w) @ dagger(u), h, atol=1e-12)
    assert np.allclose(dagger(u) @ u, np.eye(n), atol=1e-12)
    assert np.allclose(w, np.linalg.eigvalsh(h), atol=1e-12)


def test_eig_methods_agree_on_stack():
    rng = np.random.default_rng(1)
    h = np.stack([_random_hermitian(rng, 4) for _ in range(50)])
    assert np.allclose(eigvalsh(h), eigvalsh(h, method="lapack"), atol=1e-12)


def test_unknown_method():
    with pytest.raises(ValueError):
        eigvalsh(np.eye(2), method="magic")


def test_svd_vs_gram_eigen_oracle():
    # singular values squared are the eigenvalues of A^H A
    rng = np.random.default_rng(11)
    a = rng.standard_normal((10_000, 3, 3))
    s = svd(a).singular_values
    gram = np.linalg.eigvalsh(np.swapaxes(a, -1, -2) @ a)[..., ::-1]
    assert np.allclose(s**2, gram, rtol=1e-10, atol=1e-12)
    assert np.all(np.diff(s, axis=-1) <= 0)


def test_svd_complex_matches_lapack():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    assert np.allclose(svd(a).singular_values, np.linalg.svd(a, compute_uv=False), atol=1e-12)


@given(arrays(float, (3, 3), elements=finite))
@settings(max_examples=80, deadline=None)
def test_operator_norm_property(a):
    assert operator_norm(a) == pytest.approx(np.linalg.norm(a, 2), rel=1e-10, abs=1e-12)


def test_sqrtm_pd():
    rng = np.random.default_rng(5)
    g = rng.standard_normal((3, 3))
    d = g @ g.T + 0.1 * np.eye(3)
    r = sqrtm_pd(d)
    assert np.allclose(r @ r, d, atol=1e-12)
    assert np.allclose(inv_sqrtm_pd(d) @ r, np.eye(3), atol=1e-10)


def test_partial_transpose_product_state():
    rng = np.random.default_rng(2)
    a = _random_hermitian(rng, 2)
    b = _random_hermitian(rng, 3)
    pt = partial_transpose(np.kron(a, b), 2, 3)
    assert np.allclose(pt, np.kron(a, b.T))


@given(st.integers(0, 2**32 - 1), st.sampled_from([(2, 2), (2, 3), (3, 2), (2, 4)]))
@settings(max_examples=40, deadline=None)
def test_partial_transpose_involution_and_trace(seed, dims):
    dA, dB = dims
    rng = np.random.default_rng(seed)
    h = _random_hermitian(rng, dA * dB)
    pt = partial_transpose(h, dA, dB)
    assert np.allclose(partial_transpose(pt, dA, dB), h)
    assert np.trace(pt) == pytest.approx(np.trace(h))
    assert np.allclose(pt, dagger(pt))


def test_partial_transpose_dimension_check():
    with pytest.raises(DimensionMismatch):
        partial_transpose(np.eye(6), 2, 2)
