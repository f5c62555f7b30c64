"""Matrix bases and coefficient decomposition.

The Gell-Mann families follow one fixed ordering: first the antisymmetric
(imaginary) generators over index pairs in lexicographic order, then the
symmetric ones over the same pairs, then the diagonal ones. For n = 3 this
gives M^1..M^8 with M^7 = diag(1, -1, 0); for n = 4 it gives Λ^1..Λ^15 with
Λ^13 = diag(1, -1, 0, 0).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .validation import as_matrix

__all__ = [
    "BasisFamily",
    "CoefficientVector",
    "basis_matrices",
    "family_for_dimension",
    "decompose",
    "reconstruct",
    "component_labels",
    "gell_mann",
    "gamma",
    "pauli",
    "SIGMA_0",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
]

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
for _m in (SIGMA_0, SIGMA_X, SIGMA_Y, SIGMA_Z):
    _m.setflags(write=False)


class BasisFamily(str, enum.Enum):
    PAULI = "Pauli"
    GELLMANN3 = "GellMann3"
    GELLMANN4 = "GellMann4"
    GAMMA = "Gamma"

    @property
    def dimension(self) -> int:
        return 2 if self is BasisFamily.PAULI else 3 if self is BasisFamily.GELLMANN3 else 4

    @property
    def size(self) -> int:
        return {"Pauli": 3, "GellMann3": 8, "GellMann4": 15, "Gamma": 5}[self.value]


@lru_cache(maxsize=None)
def _gell_mann_cached(n: int) -> tuple[np.ndarray, ...]:
    pairs = list(itertools.combinations(range(n), 2))
    out = []
    for i, j in pairs:
        m = np.zeros((n, n), complex)
        m[i, j], m[j, i] = -1j, 1j
        out.append(m)
    for i, j in pairs:
        m = np.zeros((n, n), complex)
        m[i, j] = m[j, i] = 1.0
        out.append(m)
    for l in range(1, n):
        d = np.zeros(n)
        d[:l] = 1.0
        d[l] = -l
        out.append(np.diag(d * np.sqrt(2.0 / (l * (l + 1)))).astype(complex))
    for m in out:
        m.setflags(write=False)
    return tuple(out)


def gell_mann(n: int) -> list[np.ndarray]:
    """Generalised Gell-Mann matrices for n = 3 or 4 (n = 2 gives σy, σx, σz)."""
    if n not in (2, 3, 4):
        raise ValueError("Gell-Mann matrices are provided for n = 2, 3, 4 only")
    return [m.copy() for m in _gell_mann_cached(n)]


def pauli() -> list[np.ndarray]:
    return [SIGMA_X.copy(), SIGMA_Y.copy(), SIGMA_Z.copy()]


@lru_cache(maxsize=None)
def _gamma_cached() -> tuple[np.ndarray, ...]:
    L = _gell_mann_cached(4)
    g = (
        L[7] + L[10],  # σx ⊗ τ0
        L[9] - L[8],  # σy ⊗ τy
        np.diag([1.0, 1.0, -1.0, -1.0]).astype(complex),  # σz ⊗ τ0
        L[2] + L[3],  # σy ⊗ τx
        L[1] - L[4],  # σy ⊗ τz
    )
    for m in g:
        m.setflags(write=False)
    return g


def gamma() -> list[np.ndarray]:
    """The five 4x4 Γ matrices Γ1..Γ5."""
    return [m.copy() for m in _gamma_cached()]


def basis_matrices(family: BasisFamily | str) -> list[np.ndarray]:
    """Ordered non-identity generators of a family (fresh copies)."""
    family = BasisFamily(family)
    if family is BasisFamily.PAULI:
        return pauli()
    if family is BasisFamily.GELLMANN3:
        return gell_mann(3)
    if family is BasisFamily.GELLMANN4:
        return gell_mann(4)
    return gamma()


def family_for_dimension(n: int) -> BasisFamily:
    try:
        return {2: BasisFamily.PAULI, 3: BasisFamily.GELLMANN3, 4: BasisFamily.GELLMANN4}[n]
    except KeyError:
        raise ValueError(f"no complete basis family for n = {n}") from None


def component_labels(family: BasisFamily | str) -> list[str]:
    """Short names of the coefficient slots: x, y, z for Pauli, else 1..N."""
    family = BasisFamily(family)
    if family is BasisFamily.PAULI:
        return ["x", "y", "z"]
    return [str(a + 1) for a in range(family.size)]


@dataclass(frozen=True)
class CoefficientVector:
    """Expansion ``H = d0·1 + Σ d_a B^a`` in a complete family."""

    family: BasisFamily
    d0: complex
    d: tuple[complex, ...]

    def __post_init__(self):
        fam = BasisFamily(self.family)
        object.__setattr__(self, "family", fam)
        if fam is BasisFamily.GAMMA:
            raise ValueError("the Gamma family does not span the traceless 4x4 space")
        if len(self.d) != fam.size:
            raise ValueError(f"{fam.value} needs {fam.size} coefficients, got {len(self.d)}")
        object.__setattr__(self, "d", tuple(complex(x) for x in self.d))
        object.__setattr__(self, "d0", complex(self.d0))

    @property
    def real(self) -> np.ndarray:
        return np.array(self.d).real

    @property
    def imag(self) -> np.ndarray:
        return np.array(self.d).imag

    def as_array(self) -> np.ndarray:
        return np.array(self.d, dtype=complex)


def decompose(H, family: BasisFamily | str | None = None) -> CoefficientVector:
    """Coefficients via d0 = tr H / n and d_a = tr(H B^a) / 2.

    Raises
    ------
    ValueError
        On a dimension mismatch or for the Gamma family.
    """
    H = as_matrix(H)
    n = H.shape[0]
    family = family_for_dimension(n) if family is None else BasisFamily(family)
    if family is BasisFamily.GAMMA:
        raise ValueError("decomposition into the Gamma family is not supported: 5 matrices do not span")
    if family.dimension != n:
        raise ValueError(f"{family.value} expects {family.dimension}x{family.dimension}, got {n}x{n}")
    mats = _mats(family)
    # tr(H B) = sum_ij H_ij B_ji
    d = np.einsum("ij,aji->a", H, mats) / 2.0
    return CoefficientVector(family, np.trace(H) / n, tuple(d))


def reconstruct(c: CoefficientVector, family: BasisFamily | str | None = None) -> np.ndarray:
    """Inverse of :func:`decompose`."""
    fam = c.family if family is None else BasisFamily(family)
    if fam is not c.family:
        raise ValueError(f"coefficient family {c.family.value} does not match {fam.value}")
    mats = _mats(fam)
    n = fam.dimension
    return c.d0 * np.eye(n, dtype=complex) + np.einsum("a,aij->ij", c.as_array(), mats)


@lru_cache(maxsize=None)
def _mats_cached(family: BasisFamily) -> np.ndarray:
    arr = np.array(basis_matrices(family))
    arr.setflags(write=False)
    return arr


def _mats(family: BasisFamily) -> np.ndarray:
    return _mats_cached(BasisFamily(family))


def coefficient_array(H: np.ndarray) -> np.ndarray:
    """Vectorised d_a for a stack of matrices of shape (..., n, n)."""
    H = np.asarray(H, dtype=complex)
    mats = _mats(family_for_dimension(H.shape[-1]))
    return np.einsum("...ij,aji->...a", H, mats) / 2.0
