"""scikit-learn style wrappers around the scan, symmetrizer and dispersion classifier."""

from __future__ import annotations

from typing import Optional

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .dispersion import DEFAULT_RANGE, classify, scaling_exponents
from .epfinder import ScanConfig, analyse_point, scan
from .fields import HamiltonianField
from .symmetry import SymmetryKind, SymmetryOperator, default_generator, symmetrize

__all__ = ["ExceptionalPointFinder", "SymmetryProjector", "DispersionClassifier"]


def _check_field(X) -> HamiltonianField:
    if not isinstance(X, HamiltonianField):
        raise TypeError(f"expected a HamiltonianField, got {type(X).__name__}")
    return X


def _points(K, arity: int) -> np.ndarray:
    K = np.asarray(K, dtype=float)
    if arity == 0:
        return np.zeros((max(len(K), 1), 0))
    return K.reshape(-1, arity)


class ExceptionalPointFinder(BaseEstimator):
    """Grid scan for exceptional points.

    Parameters
    ----------
    grid : sequence of (min, max, count)
        One axis per momentum of the field passed to :meth:`fit`.
    cluster_radius, rank_tol, refine_tol, max_refine_iters, curve_min_cells
        Forwarded to :class:`~ep_atlas.epfinder.ScanConfig`.
    symmetry_hint : str, optional
        Symmetry kind used to drop constraints that vanish identically.

    Attributes
    ----------
    result_ : ScanResult
    eps_ : list of DegeneracyReport
        Defective candidates plus every point on a reported curve.
    """

    def __init__(
        self,
        grid=(),
        cluster_radius: float = 1e-6,
        rank_tol: float = 1e-8,
        refine_tol: float = 1e-12,
        max_refine_iters: int = 200,
        curve_min_cells: int = 8,
        symmetry_hint: Optional[str] = None,
    ):
        self.grid = grid
        self.cluster_radius = cluster_radius
        self.rank_tol = rank_tol
        self.refine_tol = refine_tol
        self.max_refine_iters = max_refine_iters
        self.curve_min_cells = curve_min_cells
        self.symmetry_hint = symmetry_hint

    def _config(self) -> ScanConfig:
        return ScanConfig(
            tuple(self.grid),
            self.cluster_radius,
            self.rank_tol,
            self.refine_tol,
            self.max_refine_iters,
            self.curve_min_cells,
        )

    def fit(self, X, y=None):
        Hf = _check_field(X)
        self.field_ = Hf
        self.result_ = scan(Hf, self._config(), self.symmetry_hint)
        self.eps_ = [r for r in self.result_.all_reports() if r.is_ep]
        return self

    def predict(self, K) -> np.ndarray:
        """EP order (largest Jordan block, 0 if none) at each momentum row of ``K``."""
        if not hasattr(self, "field_"):
            raise NotFittedError("call fit first")
        out = []
        for k in _points(K, self.field_.arity):
            reps = analyse_point(self.field_(k), k, self.cluster_radius, self.rank_tol)
            out.append(max((r.ep_order for r in reps if r.is_ep), default=0))
        return np.array(out, dtype=int)


class SymmetryProjector(BaseEstimator, TransformerMixin):
    """Project Hamiltonians onto the subspace obeying one symmetry.

    ``transform`` accepts a :class:`HamiltonianField` (any kind) or a stack
    of matrices with shape ``(m, n, n)``. Matrix stacks carry no momentum,
    so they are only accepted for kinds that keep k fixed.

    Parameters
    ----------
    kind : str
    generator : array, optional
        Defaults to the standard generator for the dimension seen in ``fit``.
    zeta : int, optional
        Sign of ``A A*`` for antiunitary kinds.
    """

    def __init__(self, kind: str = "psH", generator=None, zeta: Optional[int] = None):
        self.kind = kind
        self.generator = generator
        self.zeta = zeta

    def fit(self, X, y=None):
        n = X.n if isinstance(X, HamiltonianField) else np.asarray(X).shape[-1]
        kind = SymmetryKind(self.kind)
        A = default_generator(kind, n, self.zeta or 1) if self.generator is None else np.asarray(self.generator)
        self.operator_ = SymmetryOperator(kind, A, self.zeta if kind.antiunitary else None)
        self.n_ = n
        return self

    def transform(self, X):
        if not hasattr(self, "operator_"):
            raise NotFittedError("call fit first")
        op = self.operator_
        if isinstance(X, HamiltonianField):
            return symmetrize(X, op)
        if op.kind.nonlocal_:
            raise ValueError(f"{op.kind.value} relates k and -k; pass a HamiltonianField")
        mats = np.asarray(X, dtype=complex)
        single = mats.ndim == 2
        mats = mats.reshape(-1, self.n_, self.n_)
        out = np.empty_like(mats)
        for i, H in enumerate(mats):
            const = HamiltonianField(self.n_, (), lambda k, H=H: H)
            out[i] = symmetrize(const, op)(())
        return out[0] if single else out


class DispersionClassifier(BaseEstimator):
    """Dispersion class and band scaling exponents at given EP momenta.

    Parameters
    ----------
    direction : array, optional
        Approach direction; defaults to the normalised all-ones vector.
    omega_range : (float, float)
    samples : int
    tol : float
        Relative threshold for "vanishes identically".

    Attributes
    ----------
    classes_ : list of EPClass
        Filled by :meth:`predict`.
    scaling_ : list of ScalingFit
    """

    def __init__(self, direction=None, omega_range=DEFAULT_RANGE, samples: int = 25, tol: float = 1e-12):
        self.direction = direction
        self.omega_range = omega_range
        self.samples = samples
        self.tol = tol

    def fit(self, X, y=None):
        self.field_ = _check_field(X)
        return self

    def predict(self, K) -> np.ndarray:
        """Class label (e.g. ``"EP3-I"``) for each momentum row of ``K``."""
        if not hasattr(self, "field_"):
            raise NotFittedError("call fit first")
        Hf = self.field_
        self.classes_, self.scaling_ = [], []
        for k in _points(K, Hf.arity):
            cls = classify(Hf, k, self.direction, tuple(self.omega_range), self.samples, self.tol)
            self.classes_.append(cls)
            self.scaling_.append(scaling_exponents(Hf, k, self.direction, tuple(self.omega_range), self.samples))
        return np.array([c.label for c in self.classes_], dtype=object)
