"""Hamiltonian fields: functions from momentum to a square complex matrix."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from . import expr as dsl
from .basis import BasisFamily, basis_matrices

__all__ = ["HamiltonianField", "from_entries", "from_coefficients", "polynomial_field"]

Builder = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class HamiltonianField:
    """A matrix-valued function of momentum.

    Parameters
    ----------
    n : int
        Matrix size.
    momenta : tuple of str
        Names of the momentum components, in call order (may be empty).
    builder : callable
        ``builder(k)`` with ``k`` a float array of length ``len(momenta)``.
    name : str
    params : mapping
        Parameter values used to build the field, kept for reporting.
    """

    n: int
    momenta: tuple
    builder: Builder = field(repr=False, compare=False)
    name: str = "field"
    params: Mapping = field(default_factory=dict, compare=False)

    @property
    def arity(self) -> int:
        return len(self.momenta)

    def _k(self, k) -> np.ndarray:
        k = np.asarray(k, dtype=float).reshape(-1)
        if k.size != self.arity:
            raise ValueError(f"{self.name} takes {self.arity} momenta, got {k.size}")
        return k

    def __call__(self, k=()) -> np.ndarray:
        H = np.asarray(self.builder(self._k(k)), dtype=complex)
        if H.shape != (self.n, self.n):
            raise ValueError(f"{self.name}: builder returned shape {H.shape}, expected {(self.n, self.n)}")
        if not np.all(np.isfinite(H)):
            raise ValueError(f"{self.name}: non-finite entries at k = {k}")
        return H

    def on_grid(self, points: np.ndarray) -> np.ndarray:
        """Stack of matrices for an array of k-points with shape (m, arity)."""
        points = np.asarray(points, dtype=float).reshape(-1, self.arity)
        return np.array([self(p) for p in points])

    def with_builder(self, builder: Builder, name: str | None = None) -> "HamiltonianField":
        return HamiltonianField(self.n, self.momenta, builder, name or self.name, self.params)

    def restrict(self, fixed: Mapping[str, float]) -> "HamiltonianField":
        """Pin some momenta to constants; the rest keep their order."""
        unknown = set(fixed) - set(self.momenta)
        if unknown:
            raise ValueError(f"unknown momenta {sorted(unknown)} for {self.name}")
        free = tuple(m for m in self.momenta if m not in fixed)
        idx = {m: i for i, m in enumerate(free)}
        full = self.builder
        momenta = self.momenta

        def builder(k):
            kk = np.array([fixed[m] if m in fixed else k[idx[m]] for m in momenta], dtype=float)
            return full(kk)

        return HamiltonianField(self.n, free, builder, self.name, dict(self.params, **{f"fixed:{m}": v for m, v in fixed.items()}))

    def embed(self, extra: Sequence[complex] | np.ndarray) -> "HamiltonianField":
        """Block-diagonal extension by decoupled constant bands."""
        extra = np.atleast_1d(np.asarray(extra, dtype=complex))
        n, m = self.n, extra.size
        inner = self.builder

        def builder(k):
            out = np.zeros((n + m, n + m), dtype=complex)
            out[:n, :n] = inner(k)
            out[n:, n:] = np.diag(extra)
            return out

        return HamiltonianField(n + m, self.momenta, builder, f"{self.name}+{m}", self.params)

    def conjugated(self, U: np.ndarray) -> "HamiltonianField":
        """Field ``U H(k) U^{-1}``."""
        U = np.asarray(U, dtype=complex)
        Ui = np.linalg.inv(U)
        inner = self.builder
        return self.with_builder(lambda k: U @ inner(k) @ Ui, f"{self.name}^U")


def _bindings(params: Mapping[str, complex], momenta: Sequence[str], k: np.ndarray) -> dict:
    b = {name: complex(v) for name, v in params.items()}
    b.update({m: complex(float(x), 0.0) for m, x in zip(momenta, k)})
    return b


def _check_names(exprs, params, momenta, where: str) -> None:
    known = set(params) | set(momenta)
    missing = set()
    for e in exprs:
        missing |= dsl.free_names(e) - known
    if missing:
        raise dsl.UnboundIdentifierError(missing)


def from_entries(
    entries: Sequence[Sequence[str]],
    params: Mapping[str, complex] | None = None,
    momenta: Sequence[str] = ("k_x",),
    name: str = "entries",
) -> HamiltonianField:
    """Field from a matrix of DSL strings."""
    params = dict(params or {})
    n = len(entries)
    if n < 2 or any(len(row) != n for row in entries):
        raise ValueError("entries must form a square matrix of size >= 2")
    parsed = [[dsl.parse(str(s)) for s in row] for row in entries]
    _check_names([e for row in parsed for e in row], params, momenta, "entries")
    compiled = [[dsl.compile_expr(e) for e in row] for row in parsed]
    momenta = tuple(momenta)

    def builder(k):
        b = _bindings(params, momenta, k)
        return np.array([[f(b) for f in row] for row in compiled], dtype=complex)

    return HamiltonianField(n, momenta, builder, name, params)


def from_coefficients(
    family: BasisFamily | str,
    d: Sequence[str],
    d0: str = "0",
    params: Mapping[str, complex] | None = None,
    momenta: Sequence[str] = ("k_x",),
    name: str = "coefficients",
) -> HamiltonianField:
    """Field ``d0·1 + Σ d_a B^a`` with DSL coefficient strings."""
    family = BasisFamily(family)
    if family is BasisFamily.GAMMA:
        raise ValueError("coefficient fields need a complete family (Pauli/GellMann3/GellMann4)")
    params = dict(params or {})
    if len(d) != family.size:
        raise ValueError(f"{family.value} needs {family.size} coefficients, got {len(d)}")
    parsed = [dsl.parse(str(s)) for s in d]
    p0 = dsl.parse(str(d0))
    _check_names(parsed + [p0], params, momenta, "coefficients")
    fs = [dsl.compile_expr(e) for e in parsed]
    f0 = dsl.compile_expr(p0)
    mats = np.array(basis_matrices(family))
    n = family.dimension
    momenta = tuple(momenta)

    def builder(k):
        b = _bindings(params, momenta, k)
        c = np.array([f(b) for f in fs], dtype=complex)
        return f0(b) * np.eye(n) + np.einsum("a,aij->ij", c, mats)

    return HamiltonianField(n, momenta, builder, name, params)


def polynomial_field(coeffs: Sequence[np.ndarray], momenta: Sequence[str] = ("k_x",), name: str = "poly") -> HamiltonianField:
    """Field ``C_0 + Σ_j C_j(k)``, where ``coeffs[0]`` is the constant matrix and
    each later entry has shape (arity, n, n) holding the coefficients of k_i^j."""
    C0 = np.asarray(coeffs[0], dtype=complex)
    higher = [np.asarray(c, dtype=complex) for c in coeffs[1:]]
    n = C0.shape[0]

    def builder(k):
        H = C0.copy()
        for power, C in enumerate(higher, start=1):
            H = H + np.einsum("a,aij->ij", k**power, C)
        return H

    return HamiltonianField(n, tuple(momenta), builder, name, {})
