"""Built-in Hamiltonian fields with their known closed forms.

Every model is a direct matrix builder. A parallel DSL description ships in
``ep_atlas/configs`` so the two paths can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

import numpy as np

from .basis import gamma
from .fields import HamiltonianField
from .symmetry import SymmetryKind, SymmetryOperator

__all__ = [
    "ModelSpec",
    "MODELS",
    "get_model",
    "kitaev",
    "kitaev_det",
    "threefold",
    "threefold_alpha",
    "threefold_half_trace_sq",
    "threefold_small_k_pair",
    "threefold_pt",
    "threefold_pt_omega",
    "fourfold",
    "fourfold_alpha",
    "fourfold_invariants",
    "fourfold_psh",
    "fourfold_psh_charpoly",
    "sls3_block",
    "block_model",
    "BLOCK_ENTRIES",
]

SQRT2 = np.sqrt(2.0)


# ------------------------------------------------------------------- Kitaev


def kitaev(J: complex = 1.0, mu: complex = 0.5, gamma_l: float = 1.0, gamma_g: float = 1.0) -> HamiltonianField:
    """Driven-dissipative Kitaev chain in one momentum ``k_x``."""
    if np.real(gamma_l) < 0 or np.real(gamma_g) < 0:
        raise ValueError("loss and gain rates must be non-negative")
    g = 2j * np.sqrt(complex(gamma_l) * complex(gamma_g))

    def builder(k):
        (q,) = k
        return np.array(
            [
                [-g, -1j * (2 * J * np.exp(1j * q) + mu)],
                [1j * (2 * J * np.exp(-1j * q) + mu), g],
            ]
        )

    return HamiltonianField(2, ("k_x",), builder, "kitaev", dict(J=J, mu=mu, gamma_l=gamma_l, gamma_g=gamma_g))


def kitaev_det(k, J, mu, gamma_l, gamma_g) -> complex:
    """Closed-form determinant; η = -det for this traceless 2x2 field."""
    return 4 * gamma_g * gamma_l - 4 * J**2 - 4 * J * mu * np.cos(k) - mu**2


# ---------------------------------------------------------------- threefold


def threefold(alpha_x: complex = 0.3, alpha_y: complex = 0.3, alpha_z: complex = 1j * np.sqrt(0.18)) -> HamiltonianField:
    """Non-Hermitian threefold-fermion slice in (k_x, k_y)."""

    def builder(k):
        kx, ky = k
        hx = alpha_x + 1j * np.sin(kx)
        hy = alpha_y + 1j * np.sin(ky)
        hz = alpha_z + 1j * (-2 + np.cos(kx) + np.cos(ky))
        return np.array([[0, hx, -hy], [-hx, 0, hz], [hy, -hz, 0]])

    return HamiltonianField(3, ("k_x", "k_y"), builder, "threefold", dict(alpha_x=alpha_x, alpha_y=alpha_y, alpha_z=alpha_z))


def threefold_alpha(alpha: float = 0.3) -> HamiltonianField:
    """The one-parameter family αx = αy = α, αz = i√(2α²)."""
    f = threefold(alpha, alpha, 1j * np.sqrt(2 * alpha**2))
    return HamiltonianField(f.n, f.momenta, f.builder, "threefold_alpha", dict(alpha=alpha))


def threefold_half_trace_sq(k, alpha_x, alpha_y, alpha_z) -> complex:
    """Closed form of -tr[H²]/2 for :func:`threefold`."""
    kx, ky = k
    az = alpha_z
    return (
        alpha_x**2
        + alpha_y**2
        + az * (az - 4j)
        + 2j * alpha_x * np.sin(kx)
        + np.cos(kx) * (2j * az - 2 * np.cos(ky) + 4)
        + 2j * alpha_y * np.sin(ky)
        + (4 + 2j * az) * np.cos(ky)
        - 6
    )


def threefold_small_k_pair(k, alpha) -> np.ndarray:
    """Leading small-k dispersive pair ±i√(-kx² + 2iα(kx+ky) - ky²) of the α family."""
    kx, ky = k
    r = np.sqrt(complex(-(kx**2) + 2j * alpha * (kx + ky) - ky**2))
    return np.array([-1j * r, 1j * r])


def threefold_pt(alpha: float = 0.3) -> HamiltonianField:
    """PT-symmetric reduction of the threefold model."""

    def builder(k):
        kx, ky = k
        ha = SQRT2 * alpha + np.cos(kx) + np.cos(ky) - 2
        s = 1j * np.sin(kx)
        return np.array([[0, s, -alpha], [-s, 0, 1j * ha], [alpha, -1j * ha, 0]])

    return HamiltonianField(3, ("k_x", "k_y"), builder, "threefold_pt", dict(alpha=alpha))


def threefold_pt_omega(k, alpha) -> float:
    """Ω_α with det(λ - H) = λ(λ² + Ω_α); EP2s sit on Ω_α = 0."""
    kx, ky = k
    c, s = np.cos, np.sin
    return (
        -(alpha**2)
        + 4 * SQRT2 * alpha
        - 2 * SQRT2 * alpha * c(kx)
        - 2 * c(kx) * c(ky)
        - s(kx) ** 2
        - c(kx) ** 2
        + 4 * c(kx)
        - 2 * SQRT2 * alpha * c(ky)
        - c(ky) ** 2
        + 4 * c(ky)
        - 4
    )


# ----------------------------------------------------------------- fourfold


def fourfold(
    alpha_p: complex = 0.15,
    alpha_m: complex = 0.15,
    alpha_z: complex = 0.15j,
    alpha_b: complex = 0.0,
    theta1: float = np.pi / 2,
    theta2: float = np.pi / 2,
) -> HamiltonianField:
    """Non-Hermitian fourfold-fermion slice in (k_x, k_z)."""
    e1, e2 = np.exp(1j * theta1), np.exp(1j * theta2)

    def builder(k):
        kx, kz = k
        hzz2 = alpha_z - e1 * kz
        thzz2 = -alpha_z - np.conj(e1) * kz
        hbx = alpha_b + np.conj(e2) * kx
        thbx = -alpha_b + e2 * kx
        thbx2 = -alpha_b + np.conj(e2) * kx
        hbx2 = alpha_b + e2 * kx
        hzz1 = alpha_z + e1 * kz
        thzz1 = -alpha_z + np.conj(e1) * kz
        return np.array(
            [
                [0, alpha_p + kx, hzz2, hbx],
                [kx - alpha_p, 0, thbx2, hzz1],
                [thzz2, hbx2, 0, kx - alpha_m],
                [thbx, thzz1, alpha_m + kx, 0],
            ]
        )

    params = dict(alpha_p=alpha_p, alpha_m=alpha_m, alpha_z=alpha_z, alpha_b=alpha_b, theta1=theta1, theta2=theta2)
    return HamiltonianField(4, ("k_x", "k_z"), builder, "fourfold", params)


def fourfold_alpha(alpha: float = 0.15) -> HamiltonianField:
    """αp = αm = α, αz = iα, αb = 0, θ1 = θ2 = π/2."""
    f = fourfold(alpha, alpha, 1j * alpha, 0.0)
    return HamiltonianField(f.n, f.momenta, f.builder, "fourfold_alpha", dict(alpha=alpha))


def fourfold_invariants(k, alpha_p, alpha_m, alpha_z, alpha_b) -> dict:
    """Closed-form tr H², tr H³, det H at θ1 = θ2 = π/2, and κ of the α family."""
    kx, kz = k
    t2 = -2 * (2 * alpha_b**2 + alpha_m**2 + alpha_p**2 + 2 * alpha_z**2) + 8 * kx**2 + 4 * kz**2
    t3 = 24j * alpha_z * kx**2
    det = kx**2 * (-((alpha_m - alpha_p) ** 2) + 4 * alpha_z**2 + 4 * kz**2) + (
        alpha_b**2 + alpha_m * alpha_p + alpha_z**2 + kz**2
    ) ** 2
    out = {"tr2": t2, "tr3": t3, "det": det}
    if alpha_p == alpha_m and alpha_b == 0 and np.isclose(alpha_z, 1j * alpha_p):
        out["kappa"] = -64 * np.real(alpha_p) * kx**2
    return out


def fourfold_psh(
    alpha: float = 0.2,
    alpha_z: complex = 0.0,
    theta1: float = np.pi / 2,
    theta2: float = np.pi / 2,
) -> HamiltonianField:
    """Γ1-pseudo-Hermitian reduction of the fourfold model with αm = αp = α.

    The relation H = Γ1 H† Γ1 holds for real α and ``alpha_z``; a complex
    ``alpha_z`` is accepted but breaks the symmetry.
    """
    c1, c2 = np.cos(theta1), np.cos(theta2)

    def builder(k):
        kx, kz = k
        h1 = alpha + kx
        hmpx = -alpha + kx
        hzz = alpha_z - kz * c1
        thzz = alpha_z + kz * c1
        hx2 = kx * c2
        return np.array(
            [
                [0, h1, hzz, hx2],
                [hmpx, 0, hx2, thzz],
                [-thzz, hx2, 0, hmpx],
                [hx2, -hzz, h1, 0],
            ]
        )

    params = dict(alpha=alpha, alpha_z=alpha_z, theta1=theta1, theta2=theta2)
    return HamiltonianField(4, ("k_x", "k_z"), builder, "fourfold_psh", params)


def fourfold_psh_charpoly(kx, alpha) -> np.ndarray:
    """Coefficients (highest first) of (λ² + α² - kx²)² at θ1 = θ2 = π/2, αz = 0."""
    q = alpha**2 - kx**2
    return np.array([1.0, 0.0, 2 * q, 0.0, q * q])


# ------------------------------------------------------------------- blocks


def sls3_block(b: complex = 1.0, c: complex = 1.0, d: complex = -1.0, d1: complex = 0.0, d4: complex = 0.0) -> HamiltonianField:
    """Three-band block diag(0, h) with h = [[b, c], [d, -b]].

    Eigenvalues are 0 and ±√(b² + cd). ``d1``/``d4`` add the couplings
    d1·M¹ + d4·M⁴ between the first band and the block.
    """
    H = np.array([[0, 0, 0], [0, b, c], [0, d, -b]], dtype=complex)
    H[0, 1] += -1j * d1 + d4
    H[1, 0] += 1j * d1 + d4
    H.setflags(write=False)
    return HamiltonianField(3, (), lambda k: H.copy(), "sls3_block", dict(b=b, c=c, d=d, d1=d1, d4=d4))


BLOCK_ENTRIES = {
    "three_H1": ("b", "c", "d", "e"),
    "four_H1": ("a", "b", "c", "d", "e", "f", "g", "h", "i", "j"),
    "four_H2": ("a", "b", "c", "d", "e", "f"),
    "four_H3": ("a", "b", "c", "d", "e", "f", "g", "h"),
}


def block_model(kind: str, entries: Mapping[str, complex] | list) -> HamiltonianField:
    """Block-diagonal matrices used to study lower-order EPs inside n bands.

    ``three_H1``: diag(-(b+e), [[b, c], [d, e]]).
    ``four_H1``: diag(a, 3x3 block [[b,c,d],[e,f,g],[h,i,j]]).
    ``four_H2``: diag(a, b, [[c, d], [e, f]]).
    ``four_H3``: diag([[a, b], [c, d]], [[e, f], [g, h]]).
    """
    if kind not in BLOCK_ENTRIES:
        raise ValueError(f"unknown block model {kind!r}; choose from {sorted(BLOCK_ENTRIES)}")
    names = BLOCK_ENTRIES[kind]
    if not isinstance(entries, Mapping):
        entries = list(entries)
        if len(entries) != len(names):
            raise ValueError(f"{kind} needs {len(names)} entries, got {len(entries)}")
        entries = dict(zip(names, entries))
    missing = [n for n in names if n not in entries]
    extra = sorted(set(entries) - set(names))
    if missing or extra:
        raise ValueError(f"{kind} entries: missing {missing}, unexpected {extra}")
    v = {n: complex(entries[n]) for n in names}
    if kind == "three_H1":
        H = np.zeros((3, 3), complex)
        H[0, 0] = -(v["b"] + v["e"])
        H[1:, 1:] = [[v["b"], v["c"]], [v["d"], v["e"]]]
    elif kind == "four_H1":
        H = np.zeros((4, 4), complex)
        H[0, 0] = v["a"]
        H[1:, 1:] = [[v["b"], v["c"], v["d"]], [v["e"], v["f"], v["g"]], [v["h"], v["i"], v["j"]]]
    elif kind == "four_H2":
        H = np.diag([v["a"], v["b"], 0, 0]).astype(complex)
        H[2:, 2:] = [[v["c"], v["d"]], [v["e"], v["f"]]]
    else:
        H = np.zeros((4, 4), complex)
        H[:2, :2] = [[v["a"], v["b"]], [v["c"], v["d"]]]
        H[2:, 2:] = [[v["e"], v["f"]], [v["g"], v["h"]]]
    H.setflags(write=False)
    return HamiltonianField(H.shape[0], (), lambda k: H.copy(), kind, v)


# ----------------------------------------------------------------- registry


@dataclass(frozen=True)
class ModelSpec:
    """A named model with defaults, expected symmetries and a default scan grid.

    ``symmetries`` holds ``(kind, generator, zeta)`` triples that every
    instance built from the defaults satisfies. ``grid`` maps momentum names
    to ``(min, max, count)``; momenta listed in ``fixed`` are pinned instead.
    """

    name: str
    factory: Callable[..., HamiltonianField] = field(repr=False)
    defaults: Mapping[str, complex]
    momenta: tuple
    symmetries: tuple = ()
    grid: Mapping[str, tuple] = field(default_factory=dict)
    fixed: Mapping[str, float] = field(default_factory=dict)
    known: Mapping[str, object] = field(default_factory=dict)

    def build(self, **overrides) -> HamiltonianField:
        unknown = set(overrides) - set(self.defaults)
        if unknown:
            raise ValueError(f"model {self.name!r} has no parameter(s) {sorted(unknown)}; known: {sorted(self.defaults)}")
        return self.factory(**dict(self.defaults, **overrides))

    def operators(self) -> list[SymmetryOperator]:
        return [SymmetryOperator(kind, A, z) for kind, A, z in self.symmetries]


_SZ = np.diag([1.0, -1.0]).astype(complex)
_P3 = np.diag([1.0, -1.0, 1.0]).astype(complex)

MODELS: dict[str, ModelSpec] = {
    "kitaev": ModelSpec(
        "kitaev",
        kitaev,
        dict(J=1.0, mu=0.5, gamma_l=1.25, gamma_g=1.25),
        ("k_x",),
        (
            (SymmetryKind.TRSdag, _SZ, 1),
            (SymmetryKind.PHSdag, np.eye(2, dtype=complex), 1),
            (SymmetryKind.CS, _SZ, None),
        ),
        {"k_x": (-1.0, 1.0, 201)},
        {},
        {"ep": "EP2 at k = 0 iff 2√(γl γg) = 2J + μ"},
    ),
    "threefold": ModelSpec(
        "threefold",
        threefold,
        dict(alpha_x=0.3, alpha_y=0.3, alpha_z=1j * np.sqrt(0.18)),
        ("k_x", "k_y"),
        ((SymmetryKind.psCS, -np.eye(3, dtype=complex), None),),
        {"k_x": (-0.1, 0.1, 41), "k_y": (-0.1, 0.1, 41)},
    ),
    "threefold_alpha": ModelSpec(
        "threefold_alpha",
        threefold_alpha,
        dict(alpha=0.3),
        ("k_x", "k_y"),
        ((SymmetryKind.psCS, -np.eye(3, dtype=complex), None),),
        {"k_x": (-0.1, 0.1, 41), "k_y": (-0.1, 0.1, 41)},
        {},
        {"ep": "EP3 at the origin, class EP3-I"},
    ),
    "threefold_pt": ModelSpec(
        "threefold_pt",
        threefold_pt,
        dict(alpha=0.3),
        ("k_x", "k_y"),
        (
            (SymmetryKind.psCS, -np.eye(3, dtype=complex), None),
            (SymmetryKind.PT, _P3, None),
        ),
        {"k_x": (-0.5, 0.5, 81), "k_y": (-1.5, 1.5, 121)},
        {},
        {"ep": "EP2 ring on Ω_α = 0"},
    ),
    "fourfold": ModelSpec(
        "fourfold",
        fourfold,
        dict(alpha_p=0.15, alpha_m=0.15, alpha_z=0.15j, alpha_b=0.0, theta1=np.pi / 2, theta2=np.pi / 2),
        ("k_x", "k_z"),
        (),
        {"k_x": (-0.7, 0.7, 71), "k_z": (-0.7, 0.7, 71)},
    ),
    "fourfold_alpha": ModelSpec(
        "fourfold_alpha",
        fourfold_alpha,
        dict(alpha=0.15),
        ("k_x", "k_z"),
        (),
        {"k_x": (-0.7, 0.7, 71), "k_z": (-0.7, 0.7, 71)},
        {},
        {"ep": "EP4 at the origin (class EP4-0), EP2s near kx = kz = 0.47"},
    ),
    "fourfold_psh": ModelSpec(
        "fourfold_psh",
        fourfold_psh,
        dict(alpha=0.2, alpha_z=0.0, theta1=np.pi / 2, theta2=np.pi / 2),
        ("k_x", "k_z"),
        ((SymmetryKind.psH, gamma()[0], None),),
        {"k_x": (-0.5, 0.5, 101)},
        {"k_z": 0.0},
        {"ep": "EP2s at kx = ±α"},
    ),
    "sls3_block": ModelSpec(
        "sls3_block",
        sls3_block,
        dict(b=1.0, c=1.0, d=-1.0, d1=0.0, d4=0.0),
        (),
        (),
        {},
        {},
        {"ep": "EP2 with triple eigenvalue 0 when b² + cd = 0"},
    ),
}


def get_model(name: str) -> ModelSpec:
    try:
        return MODELS[name]
    except KeyError:
        raise ValueError(f"unknown model {name!r}; choose from {sorted(MODELS)}") from None
