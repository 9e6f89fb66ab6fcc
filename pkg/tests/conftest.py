import numpy as np
import pytest
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays


def fro(A, B):
    return float(np.linalg.norm(np.asarray(A) - np.asarray(B)))


def assert_matrix_close(actual, expected, atol=1e-12):
    actual = np.asarray(actual, dtype=complex)
    expected = np.asarray(expected, dtype=complex)
    assert actual.shape == expected.shape
    assert np.max(np.abs(actual - expected)) <= atol, f"\n{actual}\n!=\n{expected}"


def random_complex(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def random_herm(rng, n):
    G = random_complex(rng, n)
    return G + G.conj().T


@pytest.fixture
def rng():
    return np.random.default_rng(20071)


_reals = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)


@st.composite
def complex_matrices(draw, min_dim=1, max_dim=5, dim=None):
    n = dim if dim is not None else draw(st.integers(min_dim, max_dim))
    re = draw(arrays(np.float64, (n, n), elements=_reals))
    im = draw(arrays(np.float64, (n, n), elements=_reals))
    return re + 1j * im


@st.composite
def hermitian_matrices(draw, min_dim=1, max_dim=5, dim=None):
    G = draw(complex_matrices(min_dim, max_dim, dim))
    return G + G.conj().T
