"""Dispersion typology of EP3s and EP4s and Puiseux exponent fits.

Eigenvalues near an EP split like fractional powers of the distance, so the
fits use extended-precision eigenvalues (mpmath) to keep double-precision
rounding, which itself splits a Jordan block like eps^{1/m}, out of the fit
window.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import mpmath
import numpy as np
from scipy.optimize import linear_sum_assignment

from .charpoly import constraints
from .epfinder import cluster_eigenvalues, jordan_structure
from .fields import HamiltonianField

__all__ = [
    "LABELS",
    "EPClass",
    "ScalingFit",
    "classify",
    "scaling_exponents",
    "predicted_dispersion",
    "precise_eigenvalues",
    "decay_exponent",
]

LABELS = ("EP2", "EP3-0", "EP3-I", "EP3-II", "EP3-III", "EP4-0", "EP4-I", "EP4-II", "EP4-III", "EP4-IV")

DEFAULT_RANGE = (1e-8, 1e-2)
RATE_MARGIN = 0.25


@dataclass(frozen=True)
class EPClass:
    """Dispersion class of an EP.

    ``evidence`` maps each classifying quantity to whether it vanished
    identically along the approach path; ``rates`` holds fitted decay
    exponents used for the rate comparisons.
    """

    order: int
    label: str
    evidence: dict = field(default_factory=dict)
    rates: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValueError(f"unknown EP class {self.label!r}")
        if not self.label.startswith(f"EP{self.order}"):
            raise ValueError(f"label {self.label} does not match order {self.order}")

    def to_dict(self) -> dict:
        return {"order": self.order, "label": self.label, "evidence": dict(self.evidence), "rates": dict(self.rates)}


@dataclass(frozen=True)
class ScalingFit:
    """Per-band log-log fit of |λ_i(ω) - λ*| against ω.

    ``exponents[i]`` is ``None`` for flat bands and for fits with
    r² below the reliability threshold.
    """

    exponents: tuple
    r2: tuple
    flat: tuple
    omega_range: tuple
    reliable: bool = True
    eigenvalue: complex = 0j

    @property
    def leading(self) -> Optional[float]:
        """Smallest exponent among dispersive bands (dominates as ω → 0)."""
        vals = [e for e, f in zip(self.exponents, self.flat) if not f and e is not None]
        return min(vals) if vals else None

    @property
    def n_flat(self) -> int:
        return int(sum(self.flat))

    def to_dict(self) -> dict:
        return {
            "exponents": list(self.exponents),
            "r2": list(self.r2),
            "flat": list(self.flat),
            "omega_range": list(self.omega_range),
            "reliable": self.reliable,
            "eigenvalue": self.eigenvalue,
            "leading": self.leading,
        }


# ---------------------------------------------------------------- helpers


def precise_eigenvalues(H, dps: int = 50) -> np.ndarray:
    """Eigenvalues of the double matrix ``H`` computed with ``dps`` digits."""
    H = np.asarray(H, dtype=complex)
    with mpmath.workdps(dps):
        M = mpmath.matrix([[mpmath.mpc(z.real, z.imag) for z in row] for row in H])
        E = mpmath.eig(M, left=False, right=False)
        return np.array([complex(e) for e in E])


def _eigs(H: np.ndarray, lam: complex, scale: float, dps: Optional[int]) -> np.ndarray:
    # double precision unless some eigenvalue sits in the rounding-noise band
    # around λ*, where only extended precision tells flat from split
    e = np.linalg.eigvals(H)
    if dps:
        dist = np.abs(e - lam)
        if np.any((dist > 0) & (dist < 1e-7 * scale)):
            e = precise_eigenvalues(H, dps)
    return e


def _omegas(omega_range, samples: int) -> np.ndarray:
    lo, hi = omega_range
    if not 0 < lo < hi:
        raise ValueError("omega range must satisfy 0 < min < max")
    if samples < 3:
        raise ValueError("need at least 3 ω samples")
    return np.logspace(np.log10(lo), np.log10(hi), samples)


def _direction(Hf: HamiltonianField, direction) -> np.ndarray:
    d = np.asarray(direction, dtype=float).reshape(-1)
    if d.size != Hf.arity:
        raise ValueError(f"direction needs {Hf.arity} components, got {d.size}")
    nrm = np.linalg.norm(d)
    if nrm == 0:
        raise ValueError("direction must be non-zero")
    return d / nrm


def _fit(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    slope, icpt = np.polyfit(x, y, 1)
    pred = slope * x + icpt
    ss_res = float(np.sum((y - pred) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(slope), float(min(max(r2, 0.0), 1.0))


def decay_exponent(omegas, values, floor: float = 0.0) -> float:
    """Slope of log|value| against log ω; ``inf`` when every value is <= floor."""
    v = np.abs(np.asarray(values, dtype=complex))
    keep = v > floor
    if keep.sum() < 2:
        return float("inf")
    return _fit(np.log(np.asarray(omegas)[keep]), np.log(v[keep]))[0]


def _confirmed_order(H: np.ndarray, cluster_radius: float, rank_tol: float) -> tuple[int, complex]:
    n = H.shape[0]
    eigs = np.linalg.eigvals(H)
    scale = max(float(np.linalg.norm(H, 2)), np.finfo(float).tiny)
    g = cluster_eigenvalues(eigs, scale, cluster_radius)[0]
    lam = complex(eigs[g].mean())
    if g.size != n or n not in (3, 4):
        raise ValueError(f"classify needs an EP3/EP4 with all {n} bands coalescing; cluster size is {g.size}")
    blocks = jordan_structure(H, lam, cluster_radius, rank_tol)
    if len(blocks) >= g.size:
        raise ValueError("degeneracy at k* is not defective (not an EP)")
    return n, lam


# ---------------------------------------------------------------- classify


def classify(
    Hf: HamiltonianField,
    k_star,
    direction=None,
    omega_range=DEFAULT_RANGE,
    samples: int = 25,
    tol: float = 1e-12,
    cluster_radius: float = 1e-6,
    rank_tol: float = 1e-8,
) -> EPClass:
    """Dispersion class of the EP at ``k_star`` approached along ``direction``.

    The traceless quantities det H, tr H², tr H³, Im η, Im ν (and κ for four
    bands) are sampled at ``k* + ω·direction``. A quantity vanishes
    identically when it stays below ``tol·‖H‖^p`` (p its energy power) at
    every sample. "Faster decay" means a fitted decay exponent larger by more
    than 0.25.

    Raises
    ------
    ValueError
        If ``k_star`` is not an EP3 or EP4 where all bands coalesce.
    """
    k_star = np.asarray(k_star, dtype=float).reshape(-1)
    d = _direction(Hf, direction if direction is not None else np.ones(Hf.arity))
    n, _ = _confirmed_order(Hf(k_star), cluster_radius, rank_tol)
    om = _omegas(omega_range, samples)
    rows = []
    for w in om:
        H = Hf(k_star + w * d)
        H = H - np.trace(H) / n * np.eye(n)
        cs = constraints(H)
        s = max(float(np.linalg.norm(H, 2)), np.finfo(float).tiny)
        g = cs.generic
        row = {"tr H^2": (g[0], s**2), "det": (g[-1], s**n), "eta": (cs.eta, s**2)}
        if n == 3:
            row["nu"] = (cs.nu, s**3)
        else:
            row["tr H^3"] = (g[1], s**3)
            row["eta"] = (cs.eta, s**4)
            row["nu"] = (cs.nu, s**6)
            row["kappa"] = (cs.kappa, s**3)
        rows.append(row)

    def vanishes(key, part=None):
        vals = [(getattr(r[key][0], part) if part else r[key][0], r[key][1]) for r in rows]
        return all(abs(v) < tol * sc for v, sc in vals)

    def rate(key, part=None):
        vals = [getattr(r[key][0], part) if part else r[key][0] for r in rows]
        floor = tol * min(r[key][1] for r in rows)
        return decay_exponent(om, vals, floor)

    evidence: dict = {"det": vanishes("det"), "tr H^2": vanishes("tr H^2")}
    rates: dict = {}
    if n == 3:
        evidence["Im eta"] = vanishes("eta", "imag")
        evidence["Im nu"] = vanishes("nu", "imag")
        rates["Re eta"] = rate("eta", "real")
        rates["Re nu"] = rate("nu", "real")
        faster = rates["Re eta"] > rates["Re nu"] + RATE_MARGIN
        evidence["rate"] = bool(faster)
        if evidence["det"]:
            label = "EP3-I"
        elif evidence["tr H^2"]:
            label = "EP3-II"
        elif evidence["Im eta"] and evidence["Im nu"] and faster:
            label = "EP3-III"
        else:
            label = "EP3-0"
    else:
        evidence["tr H^3"] = vanishes("tr H^3")
        rates = {key: rate(key) for key in ("eta", "nu", "kappa")}
        faster = rates["eta"] > rates["nu"] + RATE_MARGIN and rates["kappa"] > rates["nu"] + RATE_MARGIN
        evidence["rate"] = bool(faster)
        if evidence["tr H^2"] and evidence["tr H^3"]:
            label = "EP4-I"
        elif evidence["det"] and evidence["tr H^2"]:
            label = "EP4-II"
        elif evidence["det"] and evidence["tr H^3"]:
            label = "EP4-III"
        elif faster:
            label = "EP4-IV"
        else:
            label = "EP4-0"
    rates = {k: (None if not np.isfinite(v) else float(v)) for k, v in rates.items()}
    return EPClass(n, label, evidence, rates)


# ---------------------------------------------------------------- exponents


def scaling_exponents(
    Hf: HamiltonianField,
    k_star,
    direction=None,
    omega_range=DEFAULT_RANGE,
    samples: int = 25,
    flat_tol: float = 1e-8,
    min_r2: float = 0.98,
    cluster_radius: float = 1e-6,
    dps: Optional[int] = 50,
) -> ScalingFit:
    """Fit |λ_i(ω) - λ*| ~ ω^{p_i} for the bands that meet at ``k_star``.

    Bands are the eigenvalue cluster at k*; they are followed from the
    smallest ω upward by min-cost matching between consecutive samples.
    Bands whose splitting stays below ``flat_tol`` are flagged flat. A fit
    with r² below ``min_r2`` makes the result unreliable and its exponent
    ``None``. Samples whose double-precision eigenvalues fall inside the
    rounding-noise band around λ* are recomputed with ``dps`` digits
    (``dps=None`` disables this).
    """
    k_star = np.asarray(k_star, dtype=float).reshape(-1)
    d = _direction(Hf, direction if direction is not None else np.ones(Hf.arity))
    om = _omegas(omega_range, samples)
    H0 = Hf(k_star)
    scale = max(float(np.linalg.norm(H0, 2)), np.finfo(float).tiny)
    e0 = precise_eigenvalues(H0, dps) if dps else np.linalg.eigvals(H0)
    g = cluster_eigenvalues(e0, scale, cluster_radius)[0]
    lam = complex(np.mean(e0[g]))
    m = g.size

    tracks = np.empty((samples, m), dtype=complex)
    prev = np.full(m, lam)
    for i, w in enumerate(om):
        e = _eigs(Hf(k_star + w * d), lam, scale, dps)
        cost = np.abs(prev[:, None] - e[None, :])
        r, c = linear_sum_assignment(cost)
        cur = np.empty(m, dtype=complex)
        cur[r] = e[c]
        tracks[i] = cur
        prev = cur

    dist = np.abs(tracks - lam)
    exps, r2s, flats = [], [], []
    reliable = True
    x = np.log(om)
    for b in range(m):
        y = dist[:, b]
        if y.max() < flat_tol:
            exps.append(None)
            r2s.append(1.0)
            flats.append(True)
            continue
        slope, r2 = _fit(x, np.log(np.maximum(y, np.finfo(float).tiny)))
        flats.append(False)
        r2s.append(r2)
        if r2 < min_r2:
            reliable = False
            exps.append(None)
        else:
            exps.append(slope)
    return ScalingFit(tuple(exps), tuple(r2s), tuple(flats), (float(om[0]), float(om[-1])), reliable, lam)


# ------------------------------------------------------------- predictions


_CUBE_UNITY = np.exp(2j * np.pi * np.arange(3) / 3)


def _sqrt(z) -> complex:
    return complex(np.sqrt(complex(z)))


def _cbrt(z) -> complex:
    return complex(z) ** (1.0 / 3.0) if z != 0 else 0j


def predicted_dispersion(label: str, det=0.0, tr2=0.0, tr3=0.0, nu=None, b=None, convention: str = "exact") -> np.ndarray:
    """Leading-order bands for a dispersion class, as an unordered multiset.

    Parameters are the traceless invariants at the sampled k: ``det``,
    ``tr2`` = tr H², ``tr3`` = tr H³, the cubic ``nu`` (EP3-III) and the
    quartic coefficient ``b`` (EP4-IV).

    For EP4-I the characteristic polynomial reduces to λ⁴ + det = 0.
    ``convention="exact"`` returns those roots; ``"table"`` returns the
    tabulated form i^k·det^{1/4}, which solves λ⁴ = det instead.

    Raises
    ------
    ValueError
        For class 0 labels, which have no reduced closed form.
    """
    if label not in LABELS:
        raise ValueError(f"unknown EP class {label!r}")
    if convention not in ("exact", "table"):
        raise ValueError("convention must be 'exact' or 'table'")
    if label.endswith("-0"):
        raise ValueError(f"{label} has no reduced form; use the full closed-form roots")
    if label == "EP2":
        r = _sqrt(tr2 / 2)
        return np.array([r, -r])
    if label == "EP3-I":
        r = _sqrt(tr2 / 2)
        return np.array([0, r, -r], dtype=complex)
    if label == "EP3-II":
        return _cbrt(det) * _CUBE_UNITY
    if label == "EP3-III":
        if nu is None:
            nu = 27 * det
        # η → 0 limit of the cubic formula: λ³ = ν/27
        return _cbrt(np.real(nu)) / 3 * _CUBE_UNITY
    if label == "EP4-I":
        if convention == "table":
            return complex(det) ** 0.25 * 1j ** np.arange(1, 5)
        return complex(-det) ** 0.25 * 1j ** np.arange(1, 5)
    if label == "EP4-II":
        return np.concatenate([[0], _cbrt(tr3 / 3) * _CUBE_UNITY])
    if label == "EP4-III":
        r = _sqrt(tr2 / 2)
        return np.array([0, 0, r, -r], dtype=complex)
    # EP4-IV: η = κ = 0 leaves λ⁴ + bλ² - b²/12 (a = c = 0)
    if b is None:
        b = -tr2 / 2
    b = complex(b)
    sq = _sqrt(b * b + b * b / 3)
    roots = []
    for mu in ((-b + sq) / 2, (-b - sq) / 2):
        r = _sqrt(mu)
        roots += [r, -r]
    return np.array(roots)
