import json
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from conftest import random_complex
from ep_atlas.basis import SIGMA_X, SIGMA_Y, SIGMA_Z
from ep_atlas.charpoly import (
    PerturbedJordan,
    char_poly,
    char_poly_from_sigma,
    companion,
    constraint_vector,
    constraints,
    constraints2,
    constraints3,
    discriminant,
    discriminant_from_roots,
    jordan_block,
    matching_distance,
    newton_residuals,
    roots_closed,
    roots_numeric,
)
from ep_atlas.models import fourfold_alpha, fourfold_invariants, kitaev, kitaev_det
from oracles import charpoly_mp

FROZEN = json.loads((Path(__file__).parent / "data" / "frozen.json").read_text())


def _rel(a, b):
    a, b = np.asarray(a, complex), np.asarray(b, complex)
    return np.abs(a - b).max() / max(1.0, np.abs(b).max())


def test_zero_and_nilpotent():
    cp = char_poly(np.zeros((3, 3)))
    assert cp.sigma == (0, 0, 0)
    cp = char_poly([[0, 1], [0, 0]])
    assert cp.sigma == (0, 0)


@pytest.mark.parametrize("case", FROZEN["charpoly"], ids=lambda c: f"n{len(c['matrix'])}")
def test_frozen_exact_coefficients(case):
    exact = np.array([float(Fraction(c)) for c in case["coefficients"]])
    got = char_poly(np.array(case["matrix"], dtype=float)).coefficients()
    assert _rel(got, exact) < 1e-12


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_matches_interpolation_oracle(rng, n):
    for _ in range(10):
        H = random_complex(rng, n)
        cp = char_poly(H)
        assert _rel(cp.coefficients(), charpoly_mp(H)) < 1e-10
        assert newton_residuals(cp).max() < 1e-10


def test_polynomial_vanishes_at_eigenvalues(rng):
    for n in (2, 3, 4, 5):
        H = random_complex(rng, n)
        cp = char_poly(H)
        scale = np.linalg.norm(H, 2) ** n
        assert np.abs(cp(np.linalg.eigvals(H))).max() < 1e-8 * scale


def test_from_sigma_round_trip(rng):
    H = random_complex(rng, 4)
    cp = char_poly(H)
    cp2 = char_poly_from_sigma(cp.sigma)
    assert _rel(cp2.s, cp.s) < 1e-12


def test_constraint_vector_examples():
    assert np.abs(constraint_vector(jordan_block(4))).max() == 0
    assert constraint_vector(np.diag([1.0, -1.0])) == (-1,)
    for k in (0.0, 0.4, -1.3):
        got = constraint_vector(kitaev(1.0, 0.5, 1.1, 0.7)(k))[0]
        assert abs(got - kitaev_det(k, 1.0, 0.5, 1.1, 0.7)) < 1e-12


def test_constraint_vector_is_shift_invariant(rng):
    H = random_complex(rng, 4)
    a = np.array(constraint_vector(H))
    b = np.array(constraint_vector(H + (2 - 3j) * np.eye(4)))
    assert _rel(a, b) < 1e-12


def test_eta_nu_from_coefficients(rng):
    for _ in range(20):
        d = rng.normal(size=3) + 1j * rng.normal(size=3)
        H = d[0] * SIGMA_X + d[1] * SIGMA_Y + d[2] * SIGMA_Z
        c = constraints2(H)
        assert abs(c.eta - (d.real @ d.real - d.imag @ d.imag)) < 1e-12
        assert abs(c.nu - d.real @ d.imag) < 1e-12


def test_eta_nu_vanish_at_ep2():
    # d_R ⟂ d_I with equal length
    H = 1.0 * SIGMA_X + 1j * SIGMA_Y
    c = constraints2(H)
    assert c.eta == 0 and c.nu == 0
    c3 = constraints3(jordan_block(3))
    assert c3.eta == 0 and c3.nu == 0


def test_fourfold_kappa():
    rng = np.random.default_rng(1)
    Hf = fourfold_alpha(0.15)
    for k in rng.uniform(-0.7, 0.7, size=(50, 2)):
        c = constraints(Hf(k))
        want = fourfold_invariants(k, 0.15, 0.15, 0.15j, 0.0)["kappa"]
        assert abs(c.kappa - want) < 1e-12


def test_discriminant_examples():
    assert discriminant(np.diag([1.0, 2.0])) == pytest.approx(1)
    assert abs(discriminant(jordan_block(3))) == 0


@pytest.mark.parametrize("case", FROZEN["discriminant"], ids=lambda c: f"n{len(c['re'])}")
def test_frozen_discriminants(case):
    H = np.array(case["re"]) + 1j * np.array(case["im"])
    want = complex(*case["value"])
    assert abs(discriminant(H) - want) < 1e-8 * max(1.0, abs(want))


def test_depressed_cubic_identity(rng):
    for _ in range(20):
        H = random_complex(rng, 3)
        H -= np.trace(H) / 3 * np.eye(3)
        p = -np.trace(H @ H) / 2
        q = -np.linalg.det(H)
        assert _rel(discriminant(H), -4 * p**3 - 27 * q**2) < 1e-10


def test_discriminant_matches_roots(rng):
    for n in (2, 3, 4, 5):
        for _ in range(10):
            H = random_complex(rng, n)
            D = discriminant_from_roots(np.linalg.eigvals(H))
            assert abs(discriminant(H) - D) < 1e-8 * abs(D)


def test_companion_examples(rng):
    H = random_complex(rng, 2)
    H -= np.trace(H) / 2 * np.eye(2)
    C = companion(char_poly(H))
    assert np.allclose(C, [[0, 1], [-np.linalg.det(H), 0]], atol=1e-14)
    H = random_complex(rng, 3)
    H -= np.trace(H) / 3 * np.eye(3)
    C = companion(char_poly(H))
    assert np.allclose(C[-1], [np.linalg.det(H), np.trace(H @ H) / 2, 0], atol=1e-12)
    H = random_complex(rng, 4)
    H -= np.trace(H) / 4 * np.eye(4)
    C = companion(char_poly(H))
    assert np.allclose(C[-1], [-np.linalg.det(H), np.trace(H @ H @ H) / 3, np.trace(H @ H) / 2, 0], atol=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_companion_reproduces_polynomial(rng, n):
    for _ in range(10):
        H = random_complex(rng, n)
        cp = char_poly(H)
        C = companion(cp)
        assert _rel(char_poly(C).coefficients(), cp.coefficients()) < 1e-12
        pj = PerturbedJordan.from_charpoly(cp)
        for j in range(1, n):
            assert pj.deltas[j - 1] == (-1) ** (n + j) * cp.sigma[n - j]
        scale = max(1.0, np.abs(np.linalg.eigvals(H)).max())
        assert matching_distance(np.linalg.eigvals(C), np.linalg.eigvals(H)) < 1e-8 * scale


def test_roots_closed_examples():
    cp = char_poly(np.array([[0, 1], [1, 0]], dtype=complex))
    assert sorted(roots_closed(cp).eigenvalues.real) == [-1, 1]
    with pytest.raises(ValueError):
        roots_closed(char_poly(np.eye(5)))


@pytest.mark.parametrize("n", [3, 4])
def test_roots_closed_match_numeric(rng, n):
    for _ in range(50):
        H = random_complex(rng, n)
        a = roots_closed(char_poly(H)).eigenvalues
        b = np.linalg.eigvals(H)
        assert matching_distance(a, b) < 1e-8 * np.abs(b).max()


def test_roots_closed_at_defective_point():
    eigs = roots_closed(char_poly(jordan_block(4))).eigenvalues
    assert np.abs(eigs).max() < 1e-3


def test_roots_numeric_examples():
    s = roots_numeric(np.diag([3, 1 + 2j]))
    assert list(s.eigenvalues) == [1 + 2j, 3]
    s = roots_numeric(jordan_block(5))
    assert np.abs(s.eigenvalues).max() < 1e-3
    assert s.residuals.max() < 1e-12
    C = companion(char_poly_from_sigma([0, 0, 1]))
    w = roots_numeric(C).eigenvalues
    assert matching_distance(w, np.exp(2j * np.pi * np.arange(3) / 3)) < 1e-12


finite = st.floats(-3, 3, allow_nan=False)


@given(st.integers(2, 5).flatmap(lambda n: st.tuples(arrays(float, (n, n), elements=finite), arrays(float, (n, n), elements=finite))))
def test_trace_and_determinant_of_spectrum(pair):
    H = pair[0] + 1j * pair[1]
    n = H.shape[0]
    w = roots_numeric(H).eigenvalues
    scale = max(1.0, np.abs(H).sum(axis=1).max())
    assert abs(w.sum() - np.trace(H)) < 1e-10 * scale
    assert abs(np.prod(w) - np.linalg.det(H)) < 1e-8 * scale**n
