"""Locate exceptional points on momentum grids and measure their Jordan structure.

Constraints locate, multiplicities classify: the grid is searched for zeros of
the trace/determinant constraints (EPn candidates) and of the discriminant
(lower-order degeneracies), candidates are refined by damped Gauss-Newton,
and each refined point is analysed by eigenvalue clustering and rank powers.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy import ndimage

from .charpoly import ConstraintSet, constraint_vector, constraints, discriminant
from .fields import HamiltonianField
from .symmetry import SymmetryKind, predicted_vanishing

__all__ = [
    "ScanConfig",
    "DegeneracyReport",
    "Curve",
    "ScanResult",
    "IllConditionedError",
    "cluster_eigenvalues",
    "multiplicities",
    "jordan_structure",
    "analyse_point",
    "refine",
    "scan",
    "thread_count",
]


class IllConditionedError(ValueError):
    """Rank sequence of (H - λ)^j is not consistent with any Jordan partition."""


def thread_count(default: Optional[int] = None) -> int:
    """Worker count from ``EP_ATLAS_THREADS``, else ``default`` or the core count."""
    env = os.environ.get("EP_ATLAS_THREADS")
    if env:
        try:
            val = int(env)
        except ValueError:
            raise ValueError(f"EP_ATLAS_THREADS must be an integer, got {env!r}") from None
        return max(1, val)
    return max(1, default or os.cpu_count() or 1)


@dataclass(frozen=True)
class ScanConfig:
    """Grid and tolerances for :func:`scan`.

    Parameters
    ----------
    grid : sequence of (min, max, count)
        One entry per momentum component, in the field's momentum order.
    cluster_radius : float
        Relative eigenvalue-clustering tolerance.
    rank_tol : float
        Relative singular-value threshold for numerical rank.
    refine_tol : float
        Target for the norm of the scaled constraint vector.
    max_refine_iters : int
    curve_min_cells : int
        Connected seed regions at least this large are reported as curves.
    threads : int, optional
        Worker threads for grid evaluation; ``None`` defers to
        :func:`thread_count`.
    """

    grid: tuple
    cluster_radius: float = 1e-6
    rank_tol: float = 1e-8
    refine_tol: float = 1e-12
    max_refine_iters: int = 200
    curve_min_cells: int = 8
    threads: Optional[int] = None

    def __post_init__(self):
        grid = tuple((float(a), float(b), int(c)) for a, b, c in self.grid)
        for lo, hi, count in grid:
            if count < 2:
                raise ValueError(f"grid counts must be >= 2, got {count}")
            if not hi > lo:
                raise ValueError(f"grid axis needs max > min, got ({lo}, {hi})")
        object.__setattr__(self, "grid", grid)
        for name in ("cluster_radius", "rank_tol", "refine_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")
        if self.max_refine_iters < 1 or self.curve_min_cells < 2:
            raise ValueError("max_refine_iters must be >= 1 and curve_min_cells >= 2")

    @property
    def axes(self) -> list[np.ndarray]:
        return [np.linspace(lo, hi, c) for lo, hi, c in self.grid]

    @property
    def steps(self) -> np.ndarray:
        return np.array([(hi - lo) / (c - 1) for lo, hi, c in self.grid])

    def contains(self, k: np.ndarray, slack: float = 1e-9) -> bool:
        return all(lo - slack <= x <= hi + slack for x, (lo, hi, _) in zip(k, self.grid))


# ------------------------------------------------------------ multiplicities


def _scale(H: np.ndarray) -> float:
    return max(float(np.linalg.norm(H, 2)), np.finfo(float).tiny)


def cluster_eigenvalues(eigs, scale: float, cluster_radius: float = 1e-6) -> list[np.ndarray]:
    """Group eigenvalues that a defective degeneracy could have split apart.

    An order-m EP perturbed by ε splits like ε^{1/m}, so a cluster of size m is
    accepted within radius ``cluster_radius**(1/m) * scale``. Sizes are tried
    from ``len(eigs)`` down to 2; leftovers become singletons. Returns index
    arrays in a deterministic order.
    """
    eigs = np.asarray(eigs, dtype=complex)
    n = eigs.size
    free = np.ones(n, dtype=bool)
    order = np.lexsort((eigs.imag, eigs.real))
    groups = []
    for m in range(n, 1, -1):
        r = cluster_radius ** (1.0 / m) * scale
        for i in order:
            if not free[i]:
                continue
            idx = np.flatnonzero(free & (np.abs(eigs - eigs[i]) <= r))
            if idx.size < m:
                continue
            # recentre once on the mean so the group does not depend on the anchor
            c = eigs[idx].mean()
            idx2 = np.flatnonzero(free & (np.abs(eigs - c) <= r))
            if idx2.size >= idx.size:
                idx = idx2
            free[idx] = False
            groups.append(idx)
    groups += [np.array([i]) for i in order if free[i]]
    return sorted(groups, key=lambda g: (-g.size, float(eigs[g].mean().real), float(eigs[g].mean().imag)))


def _cluster_at(H: np.ndarray, lam: complex, cluster_radius: float) -> tuple[np.ndarray, np.ndarray]:
    eigs = np.linalg.eigvals(H)
    scale = _scale(H)
    groups = cluster_eigenvalues(eigs, scale, cluster_radius)
    dist = [np.abs(eigs[g] - lam).min() for g in groups]
    best = int(np.argmin(dist))
    g = groups[best]
    radius = cluster_radius ** (1.0 / max(g.size, 1)) * scale
    if dist[best] > radius:
        raise ValueError(f"λ* = {lam} is not within the clustering radius of the spectrum")
    return eigs, g


def _rank_threshold(H: np.ndarray, cluster: np.ndarray, lam: complex, rank_tol: float) -> tuple[float, float]:
    # A perturbed Jordan block keeps singular values of order one while its
    # eigenvalues spread like ε^{1/m}; a diagonalizable near-degeneracy with
    # spread s has singular values of order s in (H - λ)^j, i.e. s^j. The
    # threshold √s^j separates the two regimes; rank_tol is the floor for
    # exact input.
    scale = _scale(H)
    spread = float(np.abs(cluster - lam).max()) if cluster.size else 0.0
    return np.sqrt(spread / scale), rank_tol


def _nullities(H: np.ndarray, lam: complex, m_a: int, tol: tuple, jmax: Optional[int] = None) -> list[int]:
    n = H.shape[0]
    rate, floor = tol
    A = H - lam * np.eye(n)
    base = _scale(A) if np.any(A) else 1.0
    P = np.eye(n, dtype=complex)
    out = [0]
    for j in range(1, (jmax or m_a) + 1):
        P = P @ A
        sv = np.linalg.svd(P, compute_uv=False)
        rank = int(np.sum(sv > max(floor, rate**j) * base**j))
        out.append(min(n - rank, m_a))
    return out


def multiplicities(H, lam: complex, cluster_radius: float = 1e-6, rank_tol: float = 1e-8) -> tuple[int, int]:
    """Algebraic and geometric multiplicity of the eigenvalue near ``lam``.

    Returns
    -------
    (m_a, m_g) : tuple of int
        ``m_a`` is the size of the eigenvalue cluster around ``lam``;
        ``m_g = n - rank(H - λ̄)`` with λ̄ the cluster mean.

    Raises
    ------
    ValueError
        If ``lam`` is not near the spectrum.
    """
    H = np.asarray(H, dtype=complex)
    eigs, g = _cluster_at(H, lam, cluster_radius)
    centre = eigs[g].mean()
    tol = _rank_threshold(H, eigs[g], centre, rank_tol)
    nul = _nullities(H, centre, g.size, tol, jmax=1)
    return int(g.size), int(max(1, nul[1]))


def _partition(nullities: list[int]) -> tuple:
    # blocks of size >= j: ν_j - ν_{j-1}
    ge = [nullities[j] - nullities[j - 1] for j in range(1, len(nullities))]
    for a, b in zip(ge, ge[1:]):
        if b > a:
            raise IllConditionedError(f"rank sequence {nullities} is not monotone")
    ge.append(0)
    blocks = []
    for j in range(1, len(ge)):
        blocks += [j] * (ge[j - 1] - ge[j])
    return tuple(sorted(blocks, reverse=True))


def jordan_structure(H, lam: complex, cluster_radius: float = 1e-6, rank_tol: float = 1e-8) -> tuple:
    """Jordan block sizes for the eigenvalue near ``lam``, largest first.

    Block counts follow from the nullities of ``(H - λ̄)^j`` for
    ``j = 1..m_a``.

    Raises
    ------
    IllConditionedError
        If the nullity increments are not non-increasing.
    """
    H = np.asarray(H, dtype=complex)
    eigs, g = _cluster_at(H, lam, cluster_radius)
    centre = eigs[g].mean()
    tol = _rank_threshold(H, eigs[g], centre, rank_tol)
    nul = _nullities(H, centre, g.size, tol)
    nul[-1] = g.size  # (H - λ)^{m_a} annihilates the whole generalized eigenspace
    blocks = _partition(nul)
    if sum(blocks) != g.size:
        raise IllConditionedError(f"blocks {blocks} do not sum to m_a = {g.size}")
    return blocks


# ------------------------------------------------------------------ reports


@dataclass
class DegeneracyReport:
    """Degeneracy analysis at one momentum.

    ``jordan_blocks`` is the partition of ``algebraic_mult``; the point is an
    EP when some block is larger than one.
    """

    k_point: tuple
    eigenvalue: complex
    algebraic_mult: int
    geometric_mult: int
    jordan_blocks: tuple
    constraints: ConstraintSet
    residual: float = 0.0
    converged: bool = True
    discriminant: complex = 0j
    source: str = "constraint"
    dispersion_class: Optional[str] = None
    exponents: Optional[tuple] = None

    @property
    def is_ep(self) -> bool:
        return self.geometric_mult < self.algebraic_mult

    @property
    def ep_order(self) -> int:
        return max(self.jordan_blocks) if self.jordan_blocks else 1

    def to_dict(self) -> dict:
        cs = self.constraints
        cons = {"generic": list(cs.generic), "d0": cs.d0}
        for name in ("eta", "nu", "kappa"):
            if getattr(cs, name) is not None:
                cons[name] = getattr(cs, name)
        return {
            "k_point": list(self.k_point),
            "eigenvalue": self.eigenvalue,
            "algebraic_mult": self.algebraic_mult,
            "geometric_mult": self.geometric_mult,
            "jordan_blocks": list(self.jordan_blocks),
            "is_ep": self.is_ep,
            "ep_order": self.ep_order,
            "constraints": cons,
            "residual": self.residual,
            "converged": self.converged,
            "discriminant": self.discriminant,
            "source": self.source,
            "dispersion_class": self.dispersion_class,
            "exponents": None if self.exponents is None else list(self.exponents),
        }


@dataclass
class Curve:
    """Chain of refined points along a connected exceptional line or ring."""

    cells: int
    source: str
    reports: list = field(default_factory=list)

    @property
    def points(self) -> np.ndarray:
        return np.array([r.k_point for r in self.reports])

    def to_dict(self) -> dict:
        return {"cells": self.cells, "source": self.source, "points": [r.to_dict() for r in self.reports]}


@dataclass
class ScanResult:
    """Output of :func:`scan`: isolated candidates, curves and unconverged seeds."""

    candidates: list
    curves: list
    unconverged: list
    notes: list = field(default_factory=list)

    @property
    def eps(self) -> list:
        return [r for r in self.candidates if r.is_ep]

    def all_reports(self) -> list:
        return list(self.candidates) + [r for c in self.curves for r in c.reports]


def analyse_point(
    H,
    k_point=(),
    cluster_radius: float = 1e-6,
    rank_tol: float = 1e-8,
    min_mult: int = 2,
    residual: float = 0.0,
    converged: bool = True,
    source: str = "constraint",
) -> list[DegeneracyReport]:
    """Reports for every eigenvalue cluster of size >= ``min_mult`` at one k."""
    H = np.asarray(H, dtype=complex)
    n = H.shape[0]
    eigs = np.linalg.eigvals(H)
    scale = _scale(H)
    cs = constraints(H)
    D = discriminant(H) / scale ** (n * (n - 1))
    out = []
    for g in cluster_eigenvalues(eigs, scale, cluster_radius):
        if g.size < min_mult:
            continue
        centre = complex(eigs[g].mean())
        tol = _rank_threshold(H, eigs[g], centre, rank_tol)
        nul = _nullities(H, centre, g.size, tol)
        nul[-1] = g.size
        try:
            blocks = _partition(nul)
        except IllConditionedError:
            blocks = (1,) * g.size
            converged = False
        out.append(
            DegeneracyReport(
                tuple(float(x) for x in np.atleast_1d(k_point)),
                centre,
                int(g.size),
                len(blocks),
                blocks,
                cs,
                float(residual),
                bool(converged),
                complex(D),
                source,
            )
        )
    return out


# -------------------------------------------------------------- objectives


def _real_parts(labels: Sequence[str], drop: frozenset) -> np.ndarray:
    keep = []
    for lab in labels:
        keep += [f"Re {lab}" not in drop, f"Im {lab}" not in drop]
    return np.array(keep, dtype=bool)


def _invariants(H: np.ndarray) -> tuple[np.ndarray, complex]:
    """Traceless constraint vector and discriminant from one set of traces."""
    n = H.shape[0]
    Ht = H - (np.trace(H) / n) * np.eye(n)
    P = Ht
    s = []
    for _ in range(2, n):
        P = P @ Ht
        s.append(np.trace(P))
    det = np.linalg.det(Ht)
    cv = np.array(s + [det], dtype=complex)
    if n == 2:
        D = -4 * det
    elif n == 3:
        eta, nu = -1.5 * s[0], 27 * det
        D = -(4 * eta**3 + nu**2) / 27
    elif n == 4:
        b, c = -s[0] / 2, s[1] / 3
        eta = b * b + 12 * det
        nu = 2 * b**3 - 72 * b * det + 27 * c * c
        D = (4 * eta**3 - nu**2) / 27
    else:
        D = discriminant(H)
    return cv, complex(D)


class _Objective:
    """Scaled real residual vector at k for one search system."""

    def __init__(self, Hf: HamiltonianField, system: str, kind: Optional[SymmetryKind], scale: float):
        self.Hf = Hf
        self.system = system
        n = Hf.n
        self.scale = scale
        if system == "constraint":
            self.orders = np.array(list(range(2, n)) + [n], dtype=float)
            labels = [f"tr H^{k}" for k in range(2, n)] + ["det"]
            self.keep = _real_parts(labels, predicted_vanishing(kind, n))
        else:
            self.orders = np.array([n * (n - 1)], dtype=float)
            self.keep = np.ones(2, dtype=bool)
        if not self.keep.any():
            self.keep[:] = True

    def complex_values(self, H: np.ndarray) -> np.ndarray:
        cv, D = _invariants(H)
        return cv if self.system == "constraint" else np.array([D])

    def residual(self, k) -> np.ndarray:
        c = self.complex_values(self.Hf(k)) / self.scale**self.orders
        r = np.empty(2 * c.size)
        r[0::2], r[1::2] = c.real, c.imag
        return r[self.keep]

    def homogenized(self, H: np.ndarray) -> float:
        # energy-like size: |c_j|^{1/order_j}, summed in quadrature
        c = self.complex_values(H)
        mags = np.abs(c) ** (1.0 / self.orders)
        return float(np.sqrt(np.sum(mags**2)))


def _jacobian(obj: _Objective, k: np.ndarray, h: float = 1e-6) -> np.ndarray:
    cols = []
    for a in range(k.size):
        e = np.zeros_like(k)
        e[a] = h
        cols.append((obj.residual(k + e) - obj.residual(k - e)) / (2 * h))
    return np.array(cols).T


def _coordinate_descent(obj: _Objective, k: np.ndarray, f: float, step: float, sweeps: int = 20):
    for _ in range(sweeps):
        improved = False
        for a in range(k.size):
            for sgn in (1.0, -1.0):
                trial = k.copy()
                trial[a] += sgn * step
                ft = float(np.linalg.norm(obj.residual(trial)))
                if ft < f:
                    k, f, improved = trial, ft, True
                    break
        if not improved:
            step *= 0.5
            if step < 1e-15:
                break
    return k, f


def refine(obj: _Objective, k0, tol: float = 1e-12, max_iters: int = 200, step_hint: float = 1e-2):
    """Damped Gauss-Newton (Levenberg style) on the scaled residual vector.

    Iterates past ``tol`` while progress continues, so singular (higher
    order) roots are polished further. Falls back to coordinate descent when
    a damped step fails to decrease the residual.

    Returns
    -------
    (k, residual_norm, converged)
    """
    k = np.array(k0, dtype=float)
    f = float(np.linalg.norm(obj.residual(k)))
    mu = 1e-3
    stalls = 0
    for _ in range(max_iters):
        if f == 0.0:
            break
        r = obj.residual(k)
        J = _jacobian(obj, k)
        JTJ = J.T @ J
        g = J.T @ r
        lam = mu * (np.trace(JTJ) / max(k.size, 1) + np.finfo(float).tiny)
        try:
            dk = -np.linalg.solve(JTJ + lam * np.eye(k.size), g)
        except np.linalg.LinAlgError:
            dk = np.zeros_like(k)
        trial = k + dk
        ft = float(np.linalg.norm(obj.residual(trial)))
        if ft < f:
            shrink = (f - ft) / f
            k, f = trial, ft
            mu = max(mu / 3, 1e-12)
            if f < tol and shrink < 1e-3:
                break
            stalls = 0
        else:
            mu *= 10
            if mu > 1e6:
                stalls += 1
                k2, f2 = _coordinate_descent(obj, k, f, step_hint)
                if f2 >= f or stalls > 3:
                    break
                k, f, mu = k2, f2, 1e-3
        if np.linalg.norm(dk) < 1e-16 * max(1.0, np.linalg.norm(k)) and f < tol:
            break
    return k, f, f < tol


# -------------------------------------------------------------------- scan


def _evaluate_grid(Hf: HamiltonianField, points: np.ndarray, threads: int) -> list:
    def chunk(rows):
        return [Hf(p) for p in rows]

    if threads <= 1 or len(points) < 256:
        return chunk(points)
    parts = np.array_split(points, threads * 4)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        out = []
        for res in pool.map(chunk, parts):
            out += res
    return out


def _seed_mask(R: np.ndarray, steps: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cells whose linearised residual has a zero within one cell.

    ``R`` has shape grid + (m,). Gradients come from central differences on
    the grid (one-sided at the edges). Returns the mask and the predicted
    offsets.
    """
    shape = R.shape[:-1]
    d = len(shape)
    grads = np.gradient(R, *steps, axis=tuple(range(d))) if d > 1 else [np.gradient(R, steps[0], axis=0)]
    J = np.stack(grads, axis=-1)  # grid + (m, d)
    flatJ = J.reshape(-1, J.shape[-2], d)
    flatR = R.reshape(-1, R.shape[-1])
    dk = np.zeros((flatR.shape[0], d))
    ok = np.zeros(flatR.shape[0], dtype=bool)
    for i in range(flatR.shape[0]):
        r = flatR[i]
        nr = np.linalg.norm(r)
        if nr == 0.0:
            ok[i] = True
            continue
        sol, *_ = np.linalg.lstsq(flatJ[i], -r, rcond=None)
        lin = np.linalg.norm(r + flatJ[i] @ sol)
        if lin <= 0.5 * nr and np.all(np.abs(sol) <= steps):
            ok[i] = True
            dk[i] = sol
    return ok.reshape(shape), dk.reshape(shape + (d,))


def _thin(cells: np.ndarray, starts: list) -> list:
    # keep one start per 3^d block of neighbouring cells, in lexicographic order
    kept, out = [], []
    for c, st in sorted(zip(map(tuple, cells), starts), key=lambda t: t[0]):
        if all(max(abs(a - b) for a, b in zip(c, o)) > 1 for o in kept):
            kept.append(c)
            out.append(st)
    return out


def _full_cluster(H: np.ndarray, cluster_radius: float) -> bool:
    groups = cluster_eigenvalues(np.linalg.eigvals(H), _scale(H), cluster_radius)
    return groups[0].size == H.shape[0]


def _dedup(items: list, radius: np.ndarray) -> list:
    # items: (priority, residual, k, payload); keep the best within radius
    items = sorted(items, key=lambda t: (t[0], t[1], tuple(t[2])))
    kept = []
    for it in items:
        if all(np.any(np.abs(np.asarray(it[2]) - np.asarray(o[2])) > radius) for o in kept):
            kept.append(it)
    return kept


def scan(Hf: HamiltonianField, cfg: ScanConfig, symmetry_hint: SymmetryKind | str | None = None) -> ScanResult:
    """Find degeneracies of ``Hf`` on the configured grid.

    Two searches run: zeros of the trace/determinant constraints (EPn of the
    full matrix; reduced per the symmetry hint) and zeros of the
    discriminant (any coalescence). Seeds are refined, deduplicated within
    one grid cell and analysed with :func:`analyse_point`. Connected seed
    regions of at least ``cfg.curve_min_cells`` cells are returned as curves.
    A discriminant that vanishes on most of the grid (bands degenerate
    everywhere) is skipped and noted.

    Raises
    ------
    ValueError
        If the grid dimension differs from the field's momentum arity.
    """
    kind = SymmetryKind(symmetry_hint) if symmetry_hint is not None else None
    d = Hf.arity
    if len(cfg.grid) != d:
        raise ValueError(f"grid has {len(cfg.grid)} axes but {Hf.name} takes {d} momenta")
    if d == 0:
        H = Hf(())
        return ScanResult(analyse_point(H, (), cfg.cluster_radius, cfg.rank_tol), [], [])

    axes = cfg.axes
    steps = cfg.steps
    mesh = np.meshgrid(*axes, indexing="ij")
    shape = mesh[0].shape
    points = np.stack([m.ravel() for m in mesh], axis=-1)
    mats = _evaluate_grid(Hf, points, cfg.threads or thread_count())
    scale = float(np.median([_scale(H) for H in mats]))

    candidates, curves, unconverged, notes = [], [], [], []
    taken = np.zeros(shape, dtype=bool)
    hmin = float(steps.min())
    for priority, system in enumerate(("constraint", "discriminant")):
        if system == "discriminant" and Hf.n == 2:
            continue  # same zero set as the constraint system
        obj = _Objective(Hf, system, kind, scale)
        R = np.array([obj.residual(p) for p in points]).reshape(shape + (-1,))
        mask, dk = _seed_mask(R, steps)
        if system == "discriminant":
            if mask.mean() > 0.5:
                notes.append("discriminant vanishes on most of the grid; degenerate-band search skipped")
                continue
            mask &= ~taken
        labels, count = ndimage.label(mask, structure=np.ones((3,) * d))
        taken |= ndimage.binary_dilation(mask, structure=np.ones((3,) * d))
        for comp in range(1, count + 1):
            cells = np.argwhere(labels == comp)
            starts = [points[np.ravel_multi_index(tuple(c), shape)] + dk[tuple(c)] for c in cells]
            norms = [np.linalg.norm(R[tuple(c)]) for c in cells]
            best = int(np.argmin(norms))
            k, res, conv = refine(obj, starts[best], cfg.refine_tol, cfg.max_refine_iters, hmin)
            if system == "discriminant" and conv and _full_cluster(Hf(k), cfg.cluster_radius):
                continue  # all bands meet: a constraint-system zero seen through 𝒟
            if len(cells) >= cfg.curve_min_cells:
                found = []
                for s in _thin(cells, starts):
                    kk, rr, cc = refine(obj, s, cfg.refine_tol, min(cfg.max_refine_iters, 60), hmin)
                    if cc and cfg.contains(kk):
                        found.append((priority, rr, [float(x) for x in kk], system))
                distinct = _dedup(found, steps / 2)
                if len(distinct) >= max(2, cfg.curve_min_cells // 2):
                    curve = Curve(len(cells), system)
                    for _, rr, kk, _ in sorted(distinct, key=lambda t: tuple(t[2])):
                        reps = analyse_point(Hf(kk), kk, cfg.cluster_radius, cfg.rank_tol, residual=rr, source=system)
                        curve.reports += [r for r in reps if r.is_ep]
                    if curve.reports:
                        curves.append(curve)
                else:
                    candidates += distinct
                continue
            if not cfg.contains(k):
                continue
            if not conv:
                unconverged.append({"k_point": [float(x) for x in k], "residual": res, "source": system})
                continue
            candidates.append((priority, res, [float(x) for x in k], system))

    reports = []
    for _, res, k, system in _dedup(candidates, steps):
        reports += analyse_point(Hf(k), k, cfg.cluster_radius, cfg.rank_tol, residual=res, source=system)
    reports.sort(key=lambda r: (tuple(r.k_point), r.eigenvalue.real, r.eigenvalue.imag))
    return ScanResult(reports, curves, unconverged, notes)
