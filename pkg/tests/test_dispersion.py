import numpy as np
import pytest

from ep_atlas.charpoly import jordan_block, matching_distance
from ep_atlas.dispersion import EPClass, classify, decay_exponent, precise_eigenvalues, predicted_dispersion, scaling_exponents
from ep_atlas.fields import HamiltonianField
from ep_atlas.models import threefold_alpha


def _single_entry(n, j, c):
    # J_n + ω c E_{n,j}: exponent 1/(n+1-j), j-1 flat bands
    def builder(k):
        H = jordan_block(n).astype(complex)
        H[n - 1, j - 1] += k[0] * c
        return H

    return HamiltonianField(n, ("w",), builder)


@pytest.mark.parametrize("n,j", [(3, 1), (3, 2), (4, 1), (4, 3), (5, 2)])
def test_jordan_perturbation_exponents(n, j):
    fit = scaling_exponents(_single_entry(n, j, 0.7 - 0.4j), [0.0], [1.0])
    assert fit.n_flat == j - 1
    assert fit.leading == pytest.approx(1 / (n + 1 - j), abs=0.05)


def test_precise_eigenvalues_resolve_jordan_rounding():
    e = precise_eigenvalues(jordan_block(4))
    assert np.abs(e).max() < 1e-30


def test_decay_exponent():
    w = np.logspace(-6, -2, 10)
    assert decay_exponent(w, 3 * w**2) == pytest.approx(2)
    assert decay_exponent(w, np.zeros(10)) == np.inf


def test_threefold_alpha_is_class_one():
    Hf = threefold_alpha(0.3)
    cls = classify(Hf, [0.0, 0.0])
    assert cls.label == "EP3-I" and cls.evidence["det"]
    fit = scaling_exponents(Hf, [0.0, 0.0], [1.0, 1.0])
    assert fit.n_flat == 1
    assert fit.leading == pytest.approx(0.5, abs=0.05)


def test_classify_rejects_non_ep():
    Hf = HamiltonianField(3, ("w",), lambda k: np.diag([0, 1, 2]) + k[0] * np.eye(3))
    with pytest.raises(ValueError):
        classify(Hf, [0.0])


def _linear(H0, H1):
    return HamiltonianField(H0.shape[0], ("w",), lambda k: H0 + k[0] * H1)


def test_class_labels_on_constructed_paths():
    J3 = jordan_block(3)
    E = np.zeros((3, 3))
    E[2, 0] = 1.0
    # det ∝ ω and tr H² ≡ 0: class II
    assert classify(_linear(J3, E), [0.0], [1.0]).label == "EP3-II"
    E2 = np.zeros((3, 3))
    E2[2, 1] = 1.0
    # det ≡ 0: class I
    assert classify(_linear(J3, E2), [0.0], [1.0]).label == "EP3-I"
    J4 = jordan_block(4)
    F = np.zeros((4, 4))
    F[3, 0] = 1.0
    assert classify(_linear(J4, F), [0.0], [1.0]).label == "EP4-I"
    F = np.zeros((4, 4))
    F[3, 1] = 1.0
    assert classify(_linear(J4, F), [0.0], [1.0]).label == "EP4-II"
    F = np.zeros((4, 4))
    F[3, 2] = 1.0
    assert classify(_linear(J4, F), [0.0], [1.0]).label == "EP4-III"


@pytest.mark.parametrize("label", ["EP2", "EP3-I", "EP3-II", "EP4-I", "EP4-II", "EP4-III"])
def test_predicted_dispersion_solves_reduced_polynomial(label):
    rng = np.random.default_rng(5)
    det, tr2, tr3 = rng.normal(size=3) + 1j * rng.normal(size=3)
    lam = predicted_dispersion(label, det=det, tr2=tr2, tr3=tr3)
    if label == "EP2":
        want = np.roots([1, 0, -tr2 / 2])
    elif label == "EP3-I":
        want = np.roots([1, 0, -tr2 / 2, 0])
    elif label == "EP3-II":
        want = np.roots([1, 0, 0, -det])
    elif label == "EP4-I":
        want = np.roots([1, 0, 0, 0, det])
    elif label == "EP4-II":
        want = np.roots([1, 0, 0, -tr3 / 3, 0])
    else:
        want = np.roots([1, 0, -tr2 / 2, 0, 0])
    assert matching_distance(lam, want) < 1e-12


def test_ep4_table_convention():
    lam = predicted_dispersion("EP4-I", det=2.0, convention="table")
    assert np.allclose(lam**4, 2.0)
    with pytest.raises(ValueError):
        predicted_dispersion("EP3-0")
    with pytest.raises(ValueError):
        predicted_dispersion("EP5")


def test_epclass_validation():
    with pytest.raises(ValueError):
        EPClass(3, "EP4-I")
    assert EPClass(4, "EP4-0").to_dict()["label"] == "EP4-0"
