import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from ep_atlas.basis import (
    BasisFamily,
    CoefficientVector,
    basis_matrices,
    component_labels,
    decompose,
    gamma,
    reconstruct,
)

COMPLETE = [BasisFamily.PAULI, BasisFamily.GELLMANN3, BasisFamily.GELLMANN4]


@pytest.mark.parametrize("fam", COMPLETE)
def test_generators_hermitian_traceless_orthonormal(fam):
    mats = basis_matrices(fam)
    assert len(mats) == fam.size
    for a, A in enumerate(mats):
        assert np.abs(A - A.conj().T).max() == 0
        assert abs(np.trace(A)) < 1e-15
        for b, B in enumerate(mats):
            expect = 2.0 if a == b else 0.0
            assert abs(np.trace(A @ B) - expect) < 1e-14


def test_pauli_exact():
    sx, sy, sz = basis_matrices("Pauli")
    assert np.array_equal(sx, [[0, 1], [1, 0]])
    assert np.array_equal(sy, [[0, -1j], [1j, 0]])
    assert np.array_equal(sz, [[1, 0], [0, -1]])


def test_named_gell_mann_entries():
    M = basis_matrices("GellMann3")
    s3 = 1 / np.sqrt(3)
    assert np.allclose(M[7], np.diag([s3, s3, -2 * s3]), atol=1e-15)
    assert np.array_equal(M[6], np.diag([1, -1, 0]))
    L = basis_matrices("GellMann4")
    assert np.array_equal(L[12], np.diag([1, -1, 0, 0]))


def test_gamma_clifford():
    G = gamma()
    eye = np.eye(4)
    for m, A in enumerate(G):
        for n, B in enumerate(G):
            assert np.abs(A @ B + B @ A - 2 * (m == n) * eye).max() < 1e-14
    # Γ5 carries ±i entries only
    vals = set(np.round(G[4][G[4] != 0], 12))
    assert vals <= {1j, -1j}


def test_decompose_diag_gell_mann():
    c = decompose(np.diag([1, -1, 0]), "GellMann3")
    assert c.d0 == 0
    assert c.d[6] == 1
    assert np.abs(np.delete(c.as_array(), 6)).max() == 0


def test_zero_and_identity():
    assert np.abs(decompose(np.zeros((4, 4))).as_array()).max() == 0
    eye = reconstruct(CoefficientVector("GellMann3", 1.0, (0,) * 8))
    assert np.array_equal(eye, np.eye(3))


def test_raising_matrix():
    H = reconstruct(CoefficientVector("Pauli", 0, (1, 1j, 0)))
    assert np.array_equal(H, [[0, 2], [0, 0]])


def test_lambda13():
    d = [0] * 15
    d[12] = 1
    assert np.array_equal(reconstruct(CoefficientVector("GellMann4", 0, d)), np.diag([1, -1, 0, 0]))


def test_errors():
    with pytest.raises(ValueError):
        decompose(np.eye(4), "Gamma")
    with pytest.raises(ValueError):
        decompose(np.eye(3), "Pauli")
    with pytest.raises(ValueError):
        CoefficientVector("Pauli", 0, (1, 2))
    assert component_labels("Pauli") == ["x", "y", "z"]


finite = st.floats(-10, 10, allow_nan=False)


@pytest.mark.parametrize("fam", COMPLETE)
@given(data=st.data())
def test_round_trips(fam, data):
    n = fam.dimension
    re = data.draw(arrays(float, (n, n), elements=finite))
    im = data.draw(arrays(float, (n, n), elements=finite))
    H = re + 1j * im
    c = decompose(H, fam)
    assert np.abs(reconstruct(c) - H).max() < 1e-14 * max(1.0, np.abs(H).max())
    c2 = decompose(reconstruct(c), fam)
    assert np.abs(c2.as_array() - c.as_array()).max() < 1e-14 * max(1.0, np.abs(H).max())
