"""Characteristic polynomials, trace/determinant constraints and eigenvalues."""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import linear_sum_assignment

from .validation import as_matrix, norm

__all__ = [
    "CharPoly",
    "ConstraintSet",
    "PerturbedJordan",
    "Spectrum",
    "ConvergenceError",
    "char_poly",
    "char_poly_from_sigma",
    "power_traces",
    "newton_residuals",
    "constraint_vector",
    "discriminant",
    "discriminant_from_roots",
    "constraints",
    "constraints2",
    "constraints3",
    "constraints4",
    "companion",
    "jordan_block",
    "roots_closed",
    "roots_numeric",
    "matching_distance",
    "sort_spectrum",
]

_CBRT2 = 2.0 ** (1.0 / 3.0)
_CBRT4 = 2.0 ** (2.0 / 3.0)
_SQRT3 = np.sqrt(3.0)
_SQRT6 = np.sqrt(6.0)
_CLOSED_FALLBACK = 1e-30
# LAPACK's QR iteration gives up after 30 sweeps per eigenvalue
_LAPACK_ITER_CAP = "30*n QR sweeps"


class ConvergenceError(RuntimeError):
    """The dense eigensolver did not converge."""

    def __init__(self, matrix: np.ndarray, cap: str = _LAPACK_ITER_CAP):
        self.matrix = np.array(matrix)
        self.cap = cap
        super().__init__(
            f"eigenvalue iteration did not converge (cap: {cap}) for matrix\n{np.array2string(self.matrix)}"
        )


# ------------------------------------------------------------------ traces


def power_traces(H: np.ndarray, kmax: int) -> np.ndarray:
    """``[tr H, tr H^2, ..., tr H^kmax]`` by repeated multiplication."""
    out = np.empty(kmax, dtype=complex)
    P = H
    for k in range(kmax):
        if k:
            P = P @ H
        out[k] = np.trace(P)
    return out


@dataclass(frozen=True)
class CharPoly:
    """``det(λ1 - H) = λ^n + p_1 λ^{n-1} + ... + p_n`` with ``p_k = (-1)^k σ_k``.

    Attributes
    ----------
    n : int
    sigma : tuple of complex
        σ_1..σ_n (σ_1 = tr H, σ_n = det H).
    p : tuple of complex
    s : tuple of complex
        Power traces tr H^k, k = 1..n.
    det : complex
    """

    n: int
    sigma: tuple
    p: tuple
    s: tuple
    det: complex

    def coefficients(self) -> np.ndarray:
        """Monic coefficients, highest degree first."""
        return np.array((1.0,) + tuple(self.p), dtype=complex)

    def __call__(self, lam):
        return np.polyval(self.coefficients(), lam)

    @property
    def scale(self) -> float:
        """Root-size estimate max_k |σ_k|^(1/k), never below tiny."""
        vals = [abs(s) ** (1.0 / (k + 1)) for k, s in enumerate(self.sigma)]
        return max(max(vals), np.finfo(float).tiny)


def char_poly(H) -> CharPoly:
    """Coefficients from the Newton trace recursion, σ_n from the determinant."""
    H = as_matrix(H)
    n = H.shape[0]
    s = power_traces(H, n)
    p = np.zeros(n, dtype=complex)
    for k in range(1, n):
        acc = s[k - 1]
        for j in range(1, k):
            acc += p[j - 1] * s[k - j - 1]
        p[k - 1] = -acc / k
    det = complex(np.linalg.det(H))
    p[n - 1] = (-1) ** n * det
    sigma = tuple(complex((-1) ** (k + 1) * p[k]) for k in range(n))
    return CharPoly(n, sigma, tuple(complex(x) for x in p), tuple(complex(x) for x in s), det)


def char_poly_from_sigma(sigma) -> CharPoly:
    """Build a CharPoly from σ_1..σ_n alone; power traces follow from Newton's identities."""
    sigma = [complex(x) for x in sigma]
    n = len(sigma)
    p = [(-1) ** (k + 1) * sigma[k] for k in range(n)]
    s = []
    for k in range(1, n + 1):
        acc = k * p[k - 1]
        for j in range(1, k):
            acc += p[j - 1] * s[k - j - 1]
        s.append(-acc)
    return CharPoly(n, tuple(sigma), tuple(p), tuple(s), sigma[-1])


def newton_residuals(cp: CharPoly) -> np.ndarray:
    """|k p_k + s_k + Σ_j p_j s_{k-j}| / max(1, |s_k|) for k = 1..n."""
    out = np.empty(cp.n)
    for k in range(1, cp.n + 1):
        acc = k * cp.p[k - 1] + cp.s[k - 1]
        for j in range(1, k):
            acc += cp.p[j - 1] * cp.s[k - j - 1]
        out[k - 1] = abs(acc) / max(1.0, abs(cp.s[k - 1]))
    return out


# ------------------------------------------------------------- constraints


@dataclass(frozen=True)
class ConstraintSet:
    """Constraint values for an n-band matrix.

    ``eta``/``nu``/``kappa`` are set for n = 2, 3, 4 (``kappa`` only for 4).
    ``generic`` is ``[tr H̃^2, ..., tr H̃^{n-1}, det H̃]`` of the traceless part
    H̃ = H - (tr H / n) 1, and ``d0`` is the removed offset tr H / n.
    """

    n: int
    generic: tuple
    d0: complex
    eta: Optional[complex] = None
    nu: Optional[complex] = None
    kappa: Optional[complex] = None
    extras: dict = field(default_factory=dict)

    def real_vector(self) -> np.ndarray:
        g = np.asarray(self.generic, dtype=complex)
        return np.concatenate([g.real, g.imag])


def _traceless(H: np.ndarray) -> tuple[np.ndarray, complex]:
    n = H.shape[0]
    d0 = np.trace(H) / n
    return H - d0 * np.eye(n), complex(d0)


def constraint_vector(H) -> tuple:
    """``[tr H̃^2, ..., tr H̃^{n-1}, det H̃]`` for the traceless shift H̃."""
    H = as_matrix(H)
    Ht, _ = _traceless(H)
    n = H.shape[0]
    s = power_traces(Ht, n - 1)
    return tuple(complex(x) for x in s[1:]) + (complex(np.linalg.det(Ht)),)


def constraints2(H) -> ConstraintSet:
    """η = d_R² - d_I², ν = d_R·d_I, from D = tr² - 4 det = 4 d·d."""
    H = as_matrix(H)
    if H.shape[0] != 2:
        raise ValueError("constraints2 needs a 2x2 matrix")
    tr, det = np.trace(H), np.linalg.det(H)
    D = tr * tr - 4 * det
    return ConstraintSet(
        2,
        constraint_vector(H),
        complex(tr / 2),
        eta=complex(D.real / 4),
        nu=complex(D.imag / 8),
        extras={"D": complex(D)},
    )


def constraints3(H) -> ConstraintSet:
    """η = tr²/2 - 3 tr H²/2 and ν = 27 det - 5 tr³/2 + 9 tr tr H²/2."""
    H = as_matrix(H)
    if H.shape[0] != 3:
        raise ValueError("constraints3 needs a 3x3 matrix")
    t1, t2 = power_traces(H, 2)
    det = np.linalg.det(H)
    eta = t1**2 / 2 - 3 * t2 / 2
    nu = 27 * det - 5 * t1**3 / 2 + 9 * t1 * t2 / 2
    return ConstraintSet(3, constraint_vector(H), complex(t1 / 3), eta=complex(eta), nu=complex(nu))


def _quartic_abcd(t1, t2, t3, det):
    a = t1
    b = (t1**2 - t2) / 2
    c = (t1**3 - 3 * t1 * t2 + 2 * t3) / 6
    return a, b, c, det


def _quartic_invariants(a, b, c, d):
    eta = -3 * a * c + b * b + 12 * d
    nu = 27 * a * a * d - 9 * a * b * c + 2 * b**3 - 72 * b * d + 27 * c * c
    kappa = a**3 - 4 * a * b + 8 * c
    return eta, nu, kappa


def constraints4(H) -> ConstraintSet:
    """η, ν, κ of the quartic from a, b, c, d (traces and determinant)."""
    H = as_matrix(H)
    if H.shape[0] != 4:
        raise ValueError("constraints4 needs a 4x4 matrix")
    t1, t2, t3 = power_traces(H, 3)
    a, b, c, d = _quartic_abcd(t1, t2, t3, np.linalg.det(H))
    eta, nu, kappa = _quartic_invariants(a, b, c, d)
    return ConstraintSet(
        4,
        constraint_vector(H),
        complex(t1 / 4),
        eta=complex(eta),
        nu=complex(nu),
        kappa=complex(kappa),
        extras={"a": complex(a), "b": complex(b), "c": complex(c), "d": complex(d)},
    )


def constraints(H) -> ConstraintSet:
    """Dispatch on size; n > 4 only fills ``generic``."""
    H = as_matrix(H)
    n = H.shape[0]
    if n == 2:
        return constraints2(H)
    if n == 3:
        return constraints3(H)
    if n == 4:
        return constraints4(H)
    _, d0 = _traceless(H)
    return ConstraintSet(n, constraint_vector(H), d0)


def discriminant_from_roots(eigs) -> complex:
    eigs = np.asarray(eigs, dtype=complex)
    out = complex(1.0)
    for i in range(len(eigs)):
        for j in range(i + 1, len(eigs)):
            out *= (eigs[i] - eigs[j]) ** 2
    return out


def discriminant(H) -> complex:
    """Π_{i<j} (λ_i - λ_j)², via closed forms for n ≤ 4."""
    H = as_matrix(H)
    n = H.shape[0]
    if n == 2:
        return complex(np.trace(H) ** 2 - 4 * np.linalg.det(H))
    if n == 3:
        c = constraints3(H)
        return -(4 * c.eta**3 + c.nu**2) / 27
    if n == 4:
        c = constraints4(H)
        return (4 * c.eta**3 - c.nu**2) / 27
    return discriminant_from_roots(roots_numeric(H).eigenvalues)


# ---------------------------------------------------------------- companion


@dataclass(frozen=True)
class PerturbedJordan:
    """Nilpotent Jordan block plus the bottom-row perturbation δJ_{n,j}.

    ``trace`` fills the (n, n) slot; it is zero for traceless input.
    """

    n: int
    deltas: tuple
    trace: complex = 0.0

    def __post_init__(self):
        if len(self.deltas) != self.n - 1:
            raise ValueError(f"need {self.n - 1} deltas, got {len(self.deltas)}")

    @classmethod
    def from_charpoly(cp: "type[PerturbedJordan]", poly: CharPoly) -> "PerturbedJordan":
        n = poly.n
        deltas = tuple((-1) ** (n + j) * poly.sigma[n - j] for j in range(1, n))
        return cp(n, deltas, poly.sigma[0])

    def matrix(self) -> np.ndarray:
        M = jordan_block(self.n)
        M[-1, :-1] = self.deltas
        M[-1, -1] = self.trace
        return M


def jordan_block(n: int, eigenvalue: complex = 0.0) -> np.ndarray:
    M = np.diag(np.ones(n - 1, dtype=complex), 1)
    M += eigenvalue * np.eye(n)
    return M


def companion(cp: CharPoly) -> np.ndarray:
    """Companion matrix whose bottom row is (δJ_{n,1}, ..., δJ_{n,n-1}, tr H)."""
    return PerturbedJordan.from_charpoly(cp).matrix()


# ---------------------------------------------------------------- spectra


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted by (Re, Im) with a backward error per value."""

    eigenvalues: np.ndarray
    residuals: np.ndarray
    method: str = "numeric"

    def __len__(self):
        return len(self.eigenvalues)


def sort_spectrum(eigs) -> np.ndarray:
    eigs = np.asarray(eigs, dtype=complex)
    return eigs[np.lexsort((eigs.imag, eigs.real))]


def matching_distance(a, b) -> float:
    """Largest pair distance under the min-cost bipartite matching of two multisets."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError("multisets of different size")
    if a.size == 0:
        return 0.0
    cost = np.abs(a[:, None] - b[None, :])
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max())


def _poly_backward_error(cp: CharPoly, lam: np.ndarray) -> np.ndarray:
    coef = cp.coefficients()
    num = np.abs(np.polyval(coef, lam))
    den = np.polyval(np.abs(coef), np.abs(lam))
    return num / np.maximum(den, np.finfo(float).tiny)


def roots_numeric(H) -> Spectrum:
    """Dense eigenvalues with residual ||Hv - λv|| / (||H|| ||v||)."""
    H = as_matrix(H, min_dim=1)
    try:
        w, V = np.linalg.eig(H)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(H) from exc
    scale = max(norm(H), np.finfo(float).tiny)
    res = np.linalg.norm(H @ V - V * w, axis=0) / (scale * np.maximum(np.linalg.norm(V, axis=0), 1e-300))
    order = np.lexsort((w.imag, w.real))
    return Spectrum(w[order], res[order], "numeric")


def _cbrt(z: complex) -> complex:
    return complex(z) ** (1.0 / 3.0) if z != 0 else 0j


def _best_branch(S: complex, nu: complex) -> complex:
    # ±S give the same root multiset; take the one that avoids cancellation
    return S + nu if abs(S + nu) >= abs(-S + nu) else -S + nu


def _closed_cubic(cp: CharPoly):
    tr = cp.sigma[0]
    t2 = cp.s[1]
    eta = tr**2 / 2 - 3 * t2 / 2
    nu = 27 * cp.det - 5 * tr**3 / 2 + 9 * tr * t2 / 2
    rad = 4 * eta**3 + nu**2
    scale = cp.scale
    if abs(eta) <= 1e-300 and abs(nu) <= 1e-300:
        return np.full(3, tr / 3, dtype=complex)
    if abs(rad) < _CLOSED_FALLBACK * scale**6:
        return None
    X = _cbrt(_best_branch(cmath.sqrt(rad), nu))
    if X == 0:
        return None
    q = eta / X
    l1 = (_CBRT4 * X - 2 * _CBRT2 * q + 2 * tr) / 6
    l2 = (_CBRT4 * 1j * (1j + _SQRT3) * X + _CBRT2 * (2 + 2j * _SQRT3) * q + 4 * tr) / 12
    l3 = (_CBRT4 * 1j * (1j - _SQRT3) * X + _CBRT2 * (2 - 2j * _SQRT3) * q + 4 * tr) / 12
    return np.array([l1, l2, l3])


def _closed_quartic(cp: CharPoly):
    a, b, c, d = _quartic_abcd(cp.s[0], cp.s[1], cp.s[2], cp.det)
    eta, nu, kappa = _quartic_invariants(a, b, c, d)
    scale = cp.scale
    rad = nu * nu - 4 * eta**3
    if abs(rad) < _CLOSED_FALLBACK * scale**12:
        return None
    Y = _cbrt(_best_branch(cmath.sqrt(rad), nu))
    if Y == 0:
        return None
    q = eta / Y
    R1 = _CBRT4 * Y + 2 * _CBRT2 * q
    Q = cmath.sqrt(3 * a * a - 8 * b + 2 * R1)
    if abs(Q) < 1e-7 * scale:
        return None
    roots = []
    for s1 in (-1, 1):
        inner = cmath.sqrt(s1 * 3 * _SQRT3 * kappa / Q + 3 * a * a - 8 * b - R1)
        for s2 in (-1, 1):
            roots.append(a / 4 + s1 * _SQRT3 * Q / 12 + s2 * _SQRT6 * inner / 12)
    return np.array(roots)


def roots_closed(cp: CharPoly) -> Spectrum:
    """Radical formulas for n = 2, 3, 4.

    Falls back to the companion-matrix eigensolver when the radicand of the
    resolvent is below 1e-30 of its natural scale, where the formulas lose
    all accuracy.

    Raises
    ------
    ValueError
        For n outside 2..4.
    """
    n = cp.n
    if n == 2:
        tr = cp.sigma[0]
        r = cmath.sqrt(tr * tr - 4 * cp.det)
        eigs = np.array([(tr + r) / 2, (tr - r) / 2])
    elif n == 3:
        eigs = _closed_cubic(cp)
    elif n == 4:
        eigs = _closed_quartic(cp)
    else:
        raise ValueError(f"closed-form roots exist for n = 2, 3, 4 only, got {n}")
    if eigs is None:
        num = roots_numeric(companion(cp))
        return Spectrum(num.eigenvalues, _poly_backward_error(cp, num.eigenvalues), "numeric-fallback")
    eigs = sort_spectrum(eigs)
    return Spectrum(eigs, _poly_backward_error(cp, eigs), "closed")
