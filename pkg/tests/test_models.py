from importlib import resources

import numpy as np
import pytest

from ep_atlas.charpoly import char_poly, constraints, jordan_block
from ep_atlas.config import load_config
from ep_atlas.epfinder import analyse_point
from ep_atlas.models import (
    BLOCK_ENTRIES,
    MODELS,
    block_model,
    fourfold_alpha,
    fourfold_invariants,
    fourfold_psh,
    fourfold_psh_charpoly,
    get_model,
    kitaev,
    kitaev_det,
    sls3_block,
    threefold,
    threefold_alpha,
    threefold_half_trace_sq,
    threefold_pt,
    threefold_pt_omega,
    threefold_small_k_pair,
)
from ep_atlas.symmetry import check_symmetry

rng = np.random.default_rng(99)
K2 = [rng.uniform(-np.pi, np.pi, 2) for _ in range(25)]


def _ks(spec):
    return [rng.uniform(-np.pi, np.pi, len(spec.momenta)) for _ in range(20)] or [np.zeros(0)]


@pytest.mark.parametrize("name", sorted(MODELS))
def test_registered_symmetries_hold(name):
    spec = get_model(name)
    Hf = spec.build()
    for op in spec.operators():
        assert check_symmetry(Hf, op, _ks(spec)) < 1e-13, (name, op.kind)


@pytest.mark.parametrize("name", sorted(MODELS))
def test_shipped_config_matches_builder(name):
    path = resources.files("ep_atlas") / "configs" / f"{name}.json"
    job = load_config(str(path))
    Hf = get_model(name).build()
    for k in _ks(get_model(name)):
        assert np.abs(job.field(k) - Hf(k)).max() < 1e-14


def test_get_model_errors():
    with pytest.raises(ValueError):
        get_model("graphene")
    with pytest.raises(ValueError):
        get_model("kitaev").build(t=1.0)


def test_kitaev_determinant():
    for J, mu, gl, gg in [(1.0, 0.5, 1.25, 1.25), (0.7, -0.2, 0.3, 1.9)]:
        Hf = kitaev(J, mu, gl, gg)
        for k in np.linspace(-3, 3, 13):
            assert abs(np.linalg.det(Hf(k)) - kitaev_det(k, J, mu, gl, gg)) < 1e-12
    # 2√(γlγg) = 2J + μ puts an EP2 at k = 0
    assert abs(kitaev_det(0.0, 1.0, 0.5, 1.25, 1.25)) < 1e-15


def test_threefold_closed_forms():
    for k in K2:
        H = threefold()(k)
        assert abs(np.trace(H)) < 1e-15
        assert abs(np.linalg.det(H)) < 1e-12
        want = threefold_half_trace_sq(k, 0.3, 0.3, 1j * np.sqrt(0.18))
        assert abs(-np.trace(H @ H) / 2 - want) < 1e-12
    for k in [np.array([1e-3, -2e-3]), np.array([4e-4, 4e-4])]:
        eigs = np.sort_complex(np.linalg.eigvals(threefold_alpha(0.3)(k)))
        pair = threefold_small_k_pair(k, 0.3)
        nz = eigs[np.argsort(np.abs(eigs))][1:]
        d = min(np.abs(nz - pair).max(), np.abs(nz - pair[::-1]).max())
        assert d < 10 * np.abs(k).max() ** 1.5


def test_threefold_pt_factorisation():
    for k in K2:
        cp = char_poly(threefold_pt(0.3)(k))
        s = cp.coefficients()  # λ³ + s1 λ² + s2 λ + s3
        assert abs(s[1]) < 1e-12 and abs(s[3]) < 1e-12
        assert abs(s[2] - threefold_pt_omega(k, 0.3)) < 1e-12


def test_fourfold_invariants():
    Hf = fourfold_alpha(0.15)
    for k in rng.uniform(-0.7, 0.7, size=(20, 2)):
        H = Hf(k)
        inv = fourfold_invariants(k, 0.15, 0.15, 0.15j, 0.0)
        assert abs(np.trace(H @ H) - inv["tr2"]) < 1e-12
        assert abs(np.trace(H @ H @ H) - inv["tr3"]) < 1e-12
        assert abs(np.linalg.det(H) - inv["det"]) < 1e-12
        assert abs(constraints(H).kappa - inv["kappa"]) < 1e-12


def test_fourfold_psh_charpoly():
    for kx in np.linspace(-0.5, 0.5, 11):
        cp = char_poly(fourfold_psh(0.2)((kx, 0.0)))
        assert np.abs(cp.coefficients() - fourfold_psh_charpoly(kx, 0.2)).max() < 1e-12


def test_sls3_block_spectrum():
    H = sls3_block(0.5, 2.0, 0.3)(())
    want = [0, np.sqrt(0.25 + 0.6), -np.sqrt(0.25 + 0.6)]
    assert np.allclose(np.sort_complex(np.linalg.eigvals(H)), np.sort_complex(np.array(want, complex)))
    (r,) = analyse_point(sls3_block()(()))
    assert r.jordan_blocks == (2, 1)


def test_block_models():
    J2 = jordan_block(2)
    Hf = block_model("four_H3", [0, 1, 0, 0, 0, 1, 0, 0])
    assert np.allclose(Hf(())[:2, :2], J2) and np.allclose(Hf(())[2:, 2:], J2)
    (r,) = analyse_point(Hf(()))
    assert r.jordan_blocks == (2, 2)
    Hf = block_model("three_H1", dict(b=0, c=1, d=0, e=0))
    assert analyse_point(Hf(()))[0].jordan_blocks == (2, 1)
    Hf = block_model("four_H1", [0, 0, 1, 0, 0, 0, 1, 0, 0, 0])
    assert analyse_point(Hf(()))[0].jordan_blocks == (3, 1)
    for kind, names in BLOCK_ENTRIES.items():
        assert block_model(kind, np.arange(len(names))).n in (3, 4)
    with pytest.raises(ValueError):
        block_model("four_H2", [1, 2])
    with pytest.raises(ValueError):
        block_model("five", [])
