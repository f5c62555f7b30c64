"""The twelve non-Hermitian symmetries: checks, projections, spectral relations.

Every kind is described by an involution ``T`` on matrix fields such that a
field is symmetric exactly when ``T(H) = H``. The projector
``H -> (H + T(H)) / 2`` is then idempotent and fixes symmetric fields.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .basis import SIGMA_X, SIGMA_Y, SIGMA_Z, coefficient_array, component_labels, family_for_dimension, gamma, gell_mann
from .charpoly import Spectrum, matching_distance, power_traces, roots_numeric
from .fields import HamiltonianField

__all__ = [
    "SymmetryKind",
    "SymmetryOperator",
    "ConstraintPrediction",
    "VanishingPattern",
    "SymmetryReport",
    "BLCAlias",
    "check_symmetry",
    "symmetrize",
    "symmetrize_all",
    "spectral_relation",
    "predicted_constraints",
    "predicted_vanishing",
    "vanishing_pattern",
    "quantity_labels",
    "blc_alias",
    "default_generator",
    "random_field",
    "surviving_parameters",
    "parameter_count",
    "symmetry_report",
    "PatternCheck",
    "pattern_check",
]

_GEN_TOL = 1e-12


class SymmetryKind(str, enum.Enum):
    PHS = "PHS"
    PHSdag = "PHSdag"
    TRS = "TRS"
    TRSdag = "TRSdag"
    CS = "CS"
    psCS = "psCS"
    SLS = "SLS"
    psH = "psH"
    Inversion = "I"
    P = "P"
    PT = "PT"
    CP = "CP"

    @classmethod
    def _missing_(cls, value):
        aliases = {
            "inversion": "I",
            "phs†": "PHSdag",
            "trs†": "TRSdag",
            "phs_dag": "PHSdag",
            "trs_dag": "TRSdag",
            "pscs": "psCS",
            "psh": "psH",
            "sls": "SLS",
            "cs": "CS",
            "pt": "PT",
            "cp": "CP",
            "p": "P",
            "i": "I",
            "phs": "PHS",
            "trs": "TRS",
            "phsdag": "PHSdag",
            "trsdag": "TRSdag",
        }
        if isinstance(value, str) and value.lower() in aliases:
            return cls(aliases[value.lower()])
        return None

    @property
    def nonlocal_(self) -> bool:
        """True when the relation ties k to -k."""
        return self in _NONLOCAL

    @property
    def antiunitary(self) -> bool:
        """True when the generator is checked through A A* = ζ 1."""
        return self in _ANTIUNITARY


_NONLOCAL = frozenset({SymmetryKind.PHS, SymmetryKind.PHSdag, SymmetryKind.TRS, SymmetryKind.TRSdag, SymmetryKind.Inversion, SymmetryKind.P})
_ANTIUNITARY = frozenset({SymmetryKind.PHS, SymmetryKind.PHSdag, SymmetryKind.TRS, SymmetryKind.TRSdag, SymmetryKind.PT, SymmetryKind.CP})


@dataclass(frozen=True)
class SymmetryOperator:
    """A symmetry kind with its generator matrix.

    For antiunitary kinds the sign ζ with ``A A* = ζ 1`` is computed from the
    generator; if ``zeta`` is passed it must agree. For unitary kinds the
    generator must satisfy ``A² = c 1`` with ``|c| = 1``; every relation is
    insensitive to a global phase of A, so ``c = -1`` (e.g. iΓ5) is accepted
    and reported through ``square_phase``.
    """

    kind: SymmetryKind
    generator: np.ndarray = field(repr=False)
    zeta: Optional[int] = None
    square_phase: complex = field(default=1.0, init=False)

    def __post_init__(self):
        kind = SymmetryKind(self.kind)
        object.__setattr__(self, "kind", kind)
        A = np.array(self.generator, dtype=complex)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError("generator must be a square matrix")
        if not np.all(np.isfinite(A)):
            raise ValueError("generator has non-finite entries")
        n = A.shape[0]
        eye = np.eye(n)
        if np.abs(A @ A.conj().T - eye).max() > _GEN_TOL:
            raise ValueError(f"{kind.value} generator must be unitary")
        if kind.antiunitary:
            AA = A @ A.conj()
            z = None
            for cand in (1, -1):
                if np.abs(AA - cand * eye).max() < _GEN_TOL:
                    z = cand
            if z is None:
                raise ValueError(f"{kind.value} generator must satisfy A A* = ±1")
            if self.zeta is not None and int(self.zeta) != z:
                raise ValueError(f"generator has A A* = {z:+d}·1, but zeta = {self.zeta} was requested")
            object.__setattr__(self, "zeta", z)
        else:
            A2 = A @ A
            c = A2[0, 0]
            if abs(abs(c) - 1) > _GEN_TOL or np.abs(A2 - c * eye).max() > _GEN_TOL:
                raise ValueError(f"{kind.value} generator must square to the identity (up to a phase)")
            if kind is SymmetryKind.CS and n % 2:
                raise ValueError("chiral symmetry is only defined for even n")
            object.__setattr__(self, "square_phase", complex(c))
            object.__setattr__(self, "zeta", None)
        A.setflags(write=False)
        object.__setattr__(self, "generator", A)

    @property
    def n(self) -> int:
        return self.generator.shape[0]

    @property
    def momentum_flips(self) -> bool:
        return self.kind.nonlocal_

    # -- the involution T --------------------------------------------------

    def transform(self, Hf: HamiltonianField) -> HamiltonianField:
        """The field T(H) whose fixed points are the symmetric fields."""
        _check_dim(Hf, self)
        A = self.generator
        Ai = np.linalg.inv(A)
        f = Hf.builder
        k = self.kind
        K = SymmetryKind
        if k is K.PHS:
            g = lambda q: -A @ f(-q).T @ Ai
        elif k is K.PHSdag:
            g = lambda q: -A @ f(-q).conj() @ Ai
        elif k is K.TRS:
            g = lambda q: A @ f(-q).conj() @ Ai
        elif k is K.TRSdag:
            g = lambda q: A @ f(-q).T @ Ai
        elif k is K.CS:
            g = lambda q: -A @ f(q).conj().T @ Ai
        elif k is K.psCS:
            g = lambda q: -Ai.T @ f(q).T @ A.T
        elif k is K.SLS:
            g = lambda q: -A @ f(q) @ Ai
        elif k is K.psH:
            g = lambda q: A @ f(q).conj().T @ Ai
        elif k is K.Inversion:
            g = lambda q: Ai @ f(-q).conj().T @ A
        elif k is K.P:
            g = lambda q: A @ f(-q) @ Ai
        elif k is K.PT:
            g = lambda q: A @ f(q).conj() @ Ai
        else:  # CP
            g = lambda q: -A @ f(q).conj() @ Ai
        return Hf.with_builder(g, f"T[{self.kind.value}]({Hf.name})")

    def relation_sides(self, Hf: HamiltonianField, k) -> tuple[np.ndarray, np.ndarray]:
        """Left and right sides of the defining relation, taken literally."""
        _check_dim(Hf, self)
        k = np.asarray(k, dtype=float).reshape(-1)
        A = self.generator
        Ad = A.conj().T
        Ai = np.linalg.inv(A)
        H = Hf(k)
        K = SymmetryKind
        kind = self.kind
        if kind is K.PHS:
            return Hf(-k), -A @ H.T @ Ad
        if kind is K.PHSdag:
            return Hf(-k), -A @ H.conj() @ Ad
        if kind is K.TRS:
            return Hf(-k), A @ H.conj() @ Ad
        if kind is K.TRSdag:
            return Hf(-k), A @ H.T @ Ad
        if kind is K.CS:
            return H, -A @ H.conj().T @ Ai
        if kind is K.psCS:
            return H.T, -A @ H @ Ai
        if kind is K.SLS:
            return H, -A @ H @ Ai
        if kind is K.psH:
            return H, A @ H.conj().T @ Ai
        if kind is K.Inversion:
            return Hf(-k).conj().T, A @ H @ Ai
        if kind is K.P:
            return Hf(-k), A @ H @ Ai
        if kind is K.PT:
            return H, A @ H.conj() @ Ai
        return H, -A @ H.conj() @ Ai


def _check_dim(Hf: HamiltonianField, op: SymmetryOperator) -> None:
    if Hf.n != op.n:
        raise ValueError(f"generator is {op.n}x{op.n} but the field is {Hf.n}x{Hf.n}")


def _samples(Hf: HamiltonianField, k_samples) -> list:
    if k_samples is None:
        rng = np.random.default_rng(0)
        return [rng.uniform(-np.pi, np.pi, Hf.arity) for _ in range(8)] if Hf.arity else [()]
    return list(k_samples)


def check_symmetry(Hf: HamiltonianField, op: SymmetryOperator, k_samples=None) -> float:
    """Max over samples of the max-abs entry of LHS - RHS."""
    worst = 0.0
    for k in _samples(Hf, k_samples):
        lhs, rhs = op.relation_sides(Hf, k)
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst


def symmetrize(Hf: HamiltonianField, op: SymmetryOperator) -> HamiltonianField:
    """Project onto the symmetric subspace: (H + T(H)) / 2."""
    T = op.transform(Hf).builder
    f = Hf.builder
    return HamiltonianField(
        Hf.n,
        Hf.momenta,
        lambda k: 0.5 * (f(k) + T(k)),
        f"{op.kind.value}({Hf.name})",
        Hf.params,
    )


def symmetrize_all(Hf: HamiltonianField, ops: Sequence[SymmetryOperator]) -> HamiltonianField:
    """Apply projections in the given order (no commutativity assumed)."""
    for op in ops:
        Hf = symmetrize(Hf, op)
    return Hf


_SPECTRAL = {
    SymmetryKind.PHS: lambda e: -e,
    SymmetryKind.PHSdag: lambda e: -e.conj(),
    SymmetryKind.TRS: lambda e: e.conj(),
    SymmetryKind.TRSdag: lambda e: e,
    SymmetryKind.CS: lambda e: -e.conj(),
    SymmetryKind.psCS: lambda e: -e,
    SymmetryKind.SLS: lambda e: -e,
    SymmetryKind.psH: lambda e: e.conj(),
    SymmetryKind.Inversion: lambda e: e.conj(),
    SymmetryKind.P: lambda e: e,
    SymmetryKind.PT: lambda e: e.conj(),
    SymmetryKind.CP: lambda e: -e.conj(),
}


def spectral_relation(spectrum_k, spectrum_other, kind: SymmetryKind | str | None) -> float:
    """Matching distance between {ε(k)} and the transformed second multiset.

    For nonlocal kinds pass the spectrum at -k as the second argument, for
    local kinds the spectrum at the same k. ``kind=None`` applies no
    transformation.
    """
    a = spectrum_k.eigenvalues if isinstance(spectrum_k, Spectrum) else np.asarray(spectrum_k, complex)
    b = spectrum_other.eigenvalues if isinstance(spectrum_other, Spectrum) else np.asarray(spectrum_other, complex)
    if len(a) != len(b):
        raise ValueError("spectra of different size")
    if kind is not None:
        b = _SPECTRAL[SymmetryKind(kind)](np.asarray(b, complex))
    return matching_distance(a, b)


# ------------------------------------------------------------ constraint counts


@dataclass(frozen=True)
class ConstraintPrediction:
    kind: SymmetryKind
    n: int
    count: int
    descriptors: tuple
    vanishing: frozenset


def quantity_labels(n: int) -> list[str]:
    """Real quantities tracked by the vanishing-pattern check."""
    out = []
    for k in range(1, n + 1):
        out += [f"Re tr H^{k}", f"Im tr H^{k}"]
    return out + ["Re det", "Im det"]


def predicted_vanishing(kind: SymmetryKind | str | None, n: int) -> frozenset:
    """Parts of tr H^k (k = 1..n) and det H forced to zero by the spectral relation."""
    if kind is None:
        return frozenset()
    kind = SymmetryKind(kind)
    out: set[str] = set()
    if kind.nonlocal_:
        return frozenset()
    if kind in (SymmetryKind.SLS, SymmetryKind.psCS):
        for k in range(1, n + 1, 2):
            out |= {f"Re tr H^{k}", f"Im tr H^{k}"}
        if n % 2:
            out |= {"Re det", "Im det"}
    elif kind in (SymmetryKind.psH, SymmetryKind.PT):
        out |= {f"Im tr H^{k}" for k in range(1, n + 1)} | {"Im det"}
    else:  # CS, CP: {ε} = {-ε*}
        for k in range(1, n + 1):
            out.add(f"Im tr H^{k}" if k % 2 == 0 else f"Re tr H^{k}")
        out.add("Im det" if n % 2 == 0 else "Re det")
    return frozenset(out)


def predicted_constraints(kind: SymmetryKind | str | None, n: int) -> ConstraintPrediction:
    """Real constraints left for an EPn after the traceless shift.

    Raises
    ------
    ValueError
        For chiral symmetry with odd n, or n < 2.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    kind_e = SymmetryKind(kind) if kind is not None else None
    if kind_e is SymmetryKind.CS and n % 2:
        raise ValueError("chiral symmetry has no constraint count for odd n")
    forced = predicted_vanishing(kind_e, n)
    quantities = [f"tr H^{k}" for k in range(2, n)] + ["det"]
    desc = []
    for q in quantities:
        for part in ("Re", "Im"):
            label = f"{part} {q}"
            if label not in forced:
                desc.append(label)
    return ConstraintPrediction(kind_e, n, len(desc), tuple(desc), forced)


@dataclass(frozen=True)
class VanishingPattern:
    """Which real quantities vanished in every trial, with relative magnitudes."""

    n: int
    forbidden: frozenset
    medians: dict
    maxima: dict
    predicted: Optional[frozenset] = None

    @property
    def matches(self) -> Optional[bool]:
        if self.predicted is None:
            return None
        return self.forbidden == self.predicted


def _quantities(H: np.ndarray) -> dict:
    n = H.shape[0]
    s = power_traces(H, n)
    spec = np.linalg.norm(H, 2) or 1.0
    vals = {}
    for k in range(1, n + 1):
        sc = spec**k
        vals[f"Re tr H^{k}"] = abs(s[k - 1].real) / sc
        vals[f"Im tr H^{k}"] = abs(s[k - 1].imag) / sc
    d = np.linalg.det(H)
    vals["Re det"] = abs(d.real) / spec**n
    vals["Im det"] = abs(d.imag) / spec**n
    return vals


def vanishing_pattern(
    matrices: Iterable[np.ndarray],
    kind: SymmetryKind | str | None = None,
    n: Optional[int] = None,
    tol: float = 1e-12,
) -> VanishingPattern:
    """Scan symmetrized samples for parts of tr H^k and det H that vanish.

    Each quantity is divided by ``||H||_2^k`` (``k = n`` for det). A
    quantity is reported as forbidden when it stays below ``tol`` in every
    sample.
    """
    mats = [np.asarray(H, complex) for H in matrices]
    if not mats:
        raise ValueError("no samples")
    rows = [_quantities(H) for H in mats]
    labels = list(rows[0])
    data = {lab: np.array([r[lab] for r in rows]) for lab in labels}
    nn = n if n is not None else mats[0].shape[0]
    forbidden = frozenset(lab for lab in labels if data[lab].max() < tol)
    pred = predicted_vanishing(kind, nn) if kind is not None else None
    return VanishingPattern(
        nn,
        forbidden,
        {lab: float(np.median(v)) for lab, v in data.items()},
        {lab: float(v.max()) for lab, v in data.items()},
        pred,
    )


# ------------------------------------------------------------- BLC aliases


@dataclass(frozen=True)
class BLCAlias:
    label: str  # Q, C, K or P
    sign: int  # ε_q, ε_c, ε_k; +1 for P

    def __str__(self):
        return self.label if self.label == "P" else f"{self.label}(ε={self.sign:+d})"


_BLC = {
    SymmetryKind.PHS: BLCAlias("C", -1),
    SymmetryKind.TRSdag: BLCAlias("C", +1),
    SymmetryKind.TRS: BLCAlias("K", +1),
    SymmetryKind.PHSdag: BLCAlias("K", -1),
    SymmetryKind.psH: BLCAlias("Q", +1),
    SymmetryKind.CS: BLCAlias("Q", -1),
    SymmetryKind.SLS: BLCAlias("P", +1),
}


def blc_alias(kind: SymmetryKind | str) -> Optional[BLCAlias]:
    """Bernard-LeClair image of a kind, or None when there is none."""
    return _BLC.get(SymmetryKind(kind))


# --------------------------------------------------------- default generators


def _alternating(n: int) -> np.ndarray:
    return np.diag([(-1.0) ** i for i in range(n)]).astype(complex)


def _swap12(n: int) -> np.ndarray:
    A = np.eye(n, dtype=complex)
    A[[0, 1]] = A[[1, 0]]
    return A


def default_generator(kind: SymmetryKind | str, n: int, zeta: int = 1) -> np.ndarray:
    """Generator used when none is given.

    For n = 2, 3, 4 these are the choices listed in the parameter tables
    (with diag(1, -1, 1) for three-band parity, see the decisions ledger).
    Larger n fall back to alternating-sign diagonals, a (1,2) swap for psH,
    and 1 or iσy ⊗ 1 for the antiunitary kinds.
    """
    kind = SymmetryKind(kind)
    K = SymmetryKind
    if zeta not in (1, -1):
        raise ValueError("zeta must be +1 or -1")
    if kind.antiunitary and kind not in (K.PT, K.CP):
        if zeta == 1:
            if n == 4:
                return gamma()[0]
            return np.eye(n, dtype=complex)
        if n % 2:
            raise ValueError("A A* = -1 needs even n")
        if n == 2:
            return 1j * SIGMA_Y
        if n == 4:
            L = gell_mann(4)
            return -1j * (L[0] + L[5])
        return np.kron(1j * SIGMA_Y, np.eye(n // 2))
    if n == 2:
        return {
            K.CS: SIGMA_Z,
            K.psCS: SIGMA_Z,
            K.SLS: SIGMA_Z,
            K.Inversion: SIGMA_Z,
            K.psH: SIGMA_X,
            K.P: SIGMA_X,
            K.PT: SIGMA_X,
            K.CP: SIGMA_X,
        }[kind].copy()
    if n == 3:
        if kind is K.CS:
            raise ValueError("chiral symmetry is only defined for even n")
        if kind in (K.psCS, K.SLS, K.P):
            return np.diag([1, -1, 1]).astype(complex)
        if kind is K.Inversion:
            return np.array([[1, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=complex)
        if kind is K.psH:
            return _swap12(3)
        return np.diag([1, -1, 1j])  # PT, CP
    if n == 4:
        G = gamma()
        L = gell_mann(4)
        parity = np.diag([1, -1, 1, -1]).astype(complex)
        return {
            K.CS: G[4],
            K.psCS: G[4],
            K.SLS: 1j * G[4],
            K.Inversion: parity,
            K.psH: G[0],
            K.P: parity,
            K.PT: parity @ G[0],
            K.CP: L[7] - L[10],
        }[kind]
    if kind is K.CS and n % 2:
        raise ValueError("chiral symmetry is only defined for even n")
    if kind is K.psH:
        return _swap12(n)
    return _alternating(n)


# ------------------------------------------------------ parameter counting


def random_field(n: int, arity: int = 1, rng=None, degree: int = 2) -> HamiltonianField:
    """Random complex polynomial field of the given degree in each momentum."""
    rng = np.random.default_rng(rng)
    C0 = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    Cs = [rng.normal(size=(arity, n, n)) + 1j * rng.normal(size=(arity, n, n)) for _ in range(degree)]
    momenta = tuple(("k_x", "k_y", "k_z")[:arity]) if arity <= 3 else tuple(f"k_{i}" for i in range(arity))

    def builder(k):
        H = C0.copy()
        for p, C in enumerate(Cs, start=1):
            H = H + np.einsum("a,aij->ij", k**p, C)
        return H

    return HamiltonianField(n, momenta, builder, "random", {})


def surviving_parameters(
    ops: Sequence[SymmetryOperator],
    n: int,
    draws: int = 50,
    k_samples: int = 20,
    parity: Optional[bool] = None,
    rng=0,
    tol: float = 1e-12,
) -> list[str]:
    """Basis coefficients that survive a sequence of symmetrizations.

    Labels look like ``xR`` / ``3I``; with ``parity`` they carry a suffix
    ``s`` or ``a`` for the part even or odd under k -> -k. ``parity``
    defaults to True when any operator is nonlocal.
    """
    rng = np.random.default_rng(rng)
    if parity is None:
        parity = any(op.kind.nonlocal_ for op in ops)
    names = component_labels(family_for_dimension(n))
    m = len(names)
    acc = np.zeros((m, 2, 2))  # component, R/I, s/a
    scale = 0.0
    for _ in range(draws):
        Hf = symmetrize_all(random_field(n, 1, rng), ops)
        ks = rng.uniform(0.2, 2.0, size=k_samples)
        Hp = np.array([Hf(np.array([k])) for k in ks])
        Hm = np.array([Hf(np.array([-k])) for k in ks])
        dp = coefficient_array(Hp)
        dm = coefficient_array(Hm)
        sym = (dp + dm) / 2
        anti = (dp - dm) / 2
        scale = max(scale, np.abs(dp).max())
        acc[:, 0, 0] = np.maximum(acc[:, 0, 0], np.abs(sym.real).max(axis=0))
        acc[:, 0, 1] = np.maximum(acc[:, 0, 1], np.abs(anti.real).max(axis=0))
        acc[:, 1, 0] = np.maximum(acc[:, 1, 0], np.abs(sym.imag).max(axis=0))
        acc[:, 1, 1] = np.maximum(acc[:, 1, 1], np.abs(anti.imag).max(axis=0))
    alive = acc > tol * max(scale, 1.0)
    out = []
    for a, name in enumerate(names):
        for p, part in enumerate("RI"):
            if parity:
                out += [f"{name}{part}{q}" for qi, q in enumerate("sa") if alive[a, p, qi]]
            elif alive[a, p].any():
                out.append(f"{name}{part}")
    return out


def parameter_count(labels: Iterable[str]) -> int:
    """Number of distinct (component, R/I) pairs among labels."""
    return len({lab.rstrip("sa") if lab[-1] in "sa" and lab[-2] in "RI" else lab for lab in labels})


# ------------------------------------------------------------------ reports


@dataclass(frozen=True)
class SymmetryReport:
    kind: SymmetryKind
    relation_residual: float
    spectral_residual: float
    prediction: Optional[ConstraintPrediction]
    pattern: Optional[VanishingPattern]


def symmetry_report(
    Hf: HamiltonianField,
    op: SymmetryOperator,
    k_samples=None,
    pattern_samples: Optional[Sequence[np.ndarray]] = None,
) -> SymmetryReport:
    """Relation and spectral residuals of one field, plus the Table-II style prediction."""
    ks = _samples(Hf, k_samples)
    rel = check_symmetry(Hf, op, ks)
    spec = 0.0
    for k in ks:
        k = np.asarray(k, float).reshape(-1)
        e_k = roots_numeric(Hf(k))
        other = roots_numeric(Hf(-k)) if op.kind.nonlocal_ else e_k
        spec = max(spec, spectral_relation(e_k, other, op.kind))
    try:
        pred = predicted_constraints(op.kind, Hf.n)
    except ValueError:
        pred = None
    mats = list(pattern_samples) if pattern_samples is not None else [Hf(np.asarray(k, float)) for k in ks]
    pattern = vanishing_pattern(mats, op.kind, Hf.n)
    return SymmetryReport(op.kind, rel, spec, pred, pattern)


@dataclass(frozen=True)
class PatternCheck:
    """Random-draw test of the predicted vanishing pattern for one (kind, n)."""

    kind: SymmetryKind
    n: int
    pattern: VanishingPattern
    spurious: frozenset
    median_floor: float

    @property
    def passed(self) -> bool:
        return bool(self.pattern.matches) and not self.spurious


def pattern_check(
    kind: SymmetryKind | str,
    n: int,
    draws: int = 100,
    rng=0,
    tol: float = 1e-12,
    median_floor: float = 1e-3,
    generator: Optional[np.ndarray] = None,
    zeta: int = 1,
) -> PatternCheck:
    """Symmetrize random fields and compare vanishing parts with the prediction.

    Each draw is a fresh random field projected with the (default) generator
    and sampled at one random momentum. Permitted quantities whose median
    relative size falls below ``median_floor`` are reported as spurious.

    Raises
    ------
    ValueError
        If no generator exists for the combination (chiral symmetry, odd n).
    """
    kind = SymmetryKind(kind)
    A = default_generator(kind, n, zeta) if generator is None else generator
    op = SymmetryOperator(kind, A, zeta if kind.antiunitary else None)
    rng = np.random.default_rng(rng)
    mats = []
    for _ in range(draws):
        Hf = symmetrize(random_field(n, 1, rng), op)
        mats.append(Hf(rng.uniform(0.2, 2.0, size=1)))
    pattern = vanishing_pattern(mats, kind, n, tol)
    permitted = [lab for lab in pattern.medians if lab not in pattern.predicted]
    spurious = frozenset(lab for lab in permitted if pattern.medians[lab] <= median_floor)
    return PatternCheck(kind, n, pattern, spurious, median_floor)
