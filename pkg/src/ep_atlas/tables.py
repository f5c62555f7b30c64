"""Reference parameter tables for 2-, 3- and 4-band symmetric Hamiltonians.

Each row names a symmetry (or an ordered pair of symmetries), the generator
used, the printed number of real constraints, the printed number of real
parameters and the printed list of surviving coefficient parts. Labels use
the component name (``x``, ``y``, ``z`` or ``1``..``15``), then ``R``/``I``,
then ``s``/``a`` for the even/odd part under k -> -k. Shorthand such as
``x`` (all parts) or ``xs`` (both real and imaginary even parts) is kept as
printed and expanded by :meth:`TableRow.expected`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .basis import SIGMA_X, SIGMA_Y, SIGMA_Z, gamma, gell_mann
from .symmetry import SymmetryKind, SymmetryOperator, surviving_parameters

__all__ = ["TableRow", "rows", "table_names", "check_row", "RowCheck", "named_generator", "GENERATOR_NAMES"]

K = SymmetryKind
_LABEL = re.compile(r"^([xyz]|\d+)([RI]?)([sa]?)$")


@dataclass(frozen=True)
class TableRow:
    table: str
    n: int
    kinds: tuple
    generator_names: tuple
    zetas: tuple
    constraints: int
    count: int
    printed: str

    @property
    def name(self) -> str:
        parts = []
        for kind, g, z in zip(self.kinds, self.generator_names, self.zetas):
            s = kind.value
            if z is not None:
                s += f"(ζ={z:+d})"
            parts.append(f"{s}[{g}]")
        return " + ".join(parts)

    @property
    def nonlocal_(self) -> bool:
        return any(k.nonlocal_ for k in self.kinds)

    def operators(self) -> list[SymmetryOperator]:
        return [
            SymmetryOperator(kind, named_generator(self.n, g), z)
            for kind, g, z in zip(self.kinds, self.generator_names, self.zetas)
        ]

    def expected(self) -> frozenset:
        """Printed labels, expanded to full (component, part[, parity]) form."""
        out = set()
        for tok in self.printed.split():
            m = _LABEL.match(tok)
            if not m:
                raise ValueError(f"bad label {tok!r}")
            comp, part, par = m.groups()
            for p in [part] if part else ["R", "I"]:
                if self.nonlocal_:
                    for q in [par] if par else ["s", "a"]:
                        out.add(f"{comp}{p}{q}")
                else:
                    out.add(f"{comp}{p}")
        return frozenset(out)


GENERATOR_NAMES = (
    "1", "iσy", "σx", "σz", "diag(1,-1,1)", "diag(1,-1,i)", "swap12", "swap23",
    "Γ1", "Γ5", "iΓ5", "-i(Λ1+Λ6)", "Λ8-Λ11", "P4", "P4·Γ1",
)


def named_generator(n: int, name: str) -> np.ndarray:
    """Generator matrix by its table name (see ``GENERATOR_NAMES``).

    Raises
    ------
    KeyError
        If the name is unknown or has no n x n version.
    """
    named = {"1": np.eye(n, dtype=complex)}
    if n == 2:
        named.update({"iσy": 1j * SIGMA_Y, "σx": SIGMA_X, "σz": SIGMA_Z})
    elif n == 3:
        named.update(
            {
                "diag(1,-1,1)": np.diag([1, -1, 1]).astype(complex),
                "diag(1,-1,i)": np.diag([1, -1, 1j]),
                "swap12": np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]], dtype=complex),
                "swap23": np.array([[1, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=complex),
            }
        )
    elif n == 4:
        G = gamma()
        L = gell_mann(4)
        named.update(
            {
                "Γ1": G[0],
                "Γ5": G[4],
                "iΓ5": 1j * G[4],
                "-i(Λ1+Λ6)": -1j * (L[0] + L[5]),
                "Λ8-Λ11": L[7] - L[10],
                "P4": np.diag([1, -1, 1, -1]).astype(complex),
                "P4·Γ1": np.diag([1, -1, 1, -1]) @ G[0],
            }
        )
    if name not in named:
        raise KeyError(f"no {n}x{n} generator named {name!r}")
    return named[name].copy()


def _row(table, n, kind, gen, c, count, printed, zeta=None):
    return TableRow(table, n, (K(kind),), (gen,), (zeta,), c, count, printed)


def _pair(kind, gen, printed, count=3, zeta=None):
    return TableRow("psH+X", 2, (K.psH, K(kind)), ("σx", gen), (None, zeta), 1, count, printed)


_TWO = [
    _row("2-band", 2, "PHS", "1", 2, 6, "xIa xRa yIs yRs zIa zRa", 1),
    _row("2-band", 2, "PHS", "iσy", 2, 6, "xRs xIs yRs yIs zRs zIs", -1),
    _row("2-band", 2, "PHSdag", "1", 2, 6, "xRa xIs yRs yIa zRa zIs", 1),
    _row("2-band", 2, "PHSdag", "iσy", 2, 6, "xRs xIa yRs yIa zRs zIa", -1),
    _row("2-band", 2, "TRS", "1", 2, 6, "xRs xIa yRa yIs zRs zIa", 1),
    _row("2-band", 2, "TRS", "iσy", 2, 6, "xRa xIs yRa yIs zRa zIs", -1),
    _row("2-band", 2, "TRSdag", "1", 2, 6, "xRs xIs yRa yIa zRs zIs", 1),
    _row("2-band", 2, "TRSdag", "iσy", 2, 6, "xRa xIa yRa yIa zRa zIa", -1),
    _row("2-band", 2, "CS", "σz", 1, 3, "xR yR zI"),
    _row("2-band", 2, "psCS", "σz", 2, 2, "x"),
    _row("2-band", 2, "SLS", "σz", 2, 4, "x y"),
    _row("2-band", 2, "I", "σz", 2, 6, "xRs xIa yRs yIa zRa zIs"),
    _row("2-band", 2, "psH", "σx", 1, 3, "xR yI zI"),
    _row("2-band", 2, "P", "σx", 2, 6, "xs ya za"),
    _row("2-band", 2, "P", "σz", 2, 6, "xa ya zs"),
    _row("2-band", 2, "PT", "σx", 1, 3, "xR yR zI"),
    _row("2-band", 2, "CP", "σx", 1, 3, "xI yI zR"),
]

_PSH_PAIRS = [
    _pair("CS", "σz", "xR zI", 2),
    _pair("SLS", "σz", "xR yI", 2),
    _pair("I", "σz", "xRs yIa zIs"),
    _pair("PHS", "1", "xRa yIs zIa", zeta=1),
    _pair("PHSdag", "1", "xRa yIa zIs", zeta=1),
    _pair("TRS", "1", "xRs yIs zIa", zeta=1),
    _pair("TRSdag", "1", "xRs yIa zIs", zeta=1),
    _pair("PHS", "iσy", "xRs yIs zIs", zeta=-1),
    _pair("PHSdag", "iσy", "xRa yIs zIa", zeta=-1),
    _pair("TRS", "iσy", "xRa yIs zIs", zeta=-1),
    _pair("TRSdag", "iσy", "xRa yIa zIa", zeta=-1),
]

_THREE = [
    _row("3-band", 3, "PHS", "1", 4, 16, "1Rs 2Rs 3Rs 4Ra 5Ra 6Ra 7Ra 8Ra 1Is 2Is 3Is 4Ia 5Ia 6Ia 7Ia 8Ia", 1),
    _row("3-band", 3, "PHSdag", "1", 4, 16, "1Rs 2Rs 3Rs 4Ra 5Ra 6Ra 7Ra 8Ra 1Ia 2Ia 3Ia 4Is 5Is 6Is 7Is 8Is", 1),
    _row("3-band", 3, "TRS", "1", 4, 16, "1Ra 2Ra 3Ra 4Rs 5Rs 6Rs 7Rs 8Rs 1Is 2Is 3Is 4Ia 5Ia 6Ia 7Ia 8Ia", 1),
    _row("3-band", 3, "TRSdag", "1", 4, 16, "1Ra 2Ra 3Ra 4Rs 5Rs 6Rs 7Rs 8Rs 1Ia 2Ia 3Ia 4Is 5Is 6Is 7Is 8Is", 1),
    _row("3-band", 3, "psCS", "diag(1,-1,1)", 2, 6, "2R 2I 4R 4I 6R 6I"),
    _row("3-band", 3, "SLS", "diag(1,-1,1)", 2, 8, "1R 1I 3R 3I 4R 4I 6R 6I"),
    _row("3-band", 3, "I", "swap23", 4, 16, "1 2 3Ra 3Is 4 5 6Rs 6Ia 7 8"),
    _row("3-band", 3, "psH", "swap12", 2, 12, "1I 2R 2I 3R 3I 4R 5R 5I 6R 6I 7I 8R"),
    # printed generator diag(1,-1,i) does not square to a multiple of 1; see ledger
    _row("3-band", 3, "P", "diag(1,-1,1)", 4, 16, "1Ra 2Rs 3Ra 4Ra 5Rs 6Ra 7Rs 8Rs 1Ia 2Is 3Ia 4Ia 5Is 6Ia 7Is 8Is"),
    _row("3-band", 3, "PT", "diag(1,-1,i)", 2, 12, "1R 2R 2I 3R 3I 4I 5R 5I 6R 6I 7R 8R"),
    # printed as "d7, d8"; the printed total of 8 fixes them to real parts
    _row("3-band", 3, "PT", "diag(1,-1,1)", 2, 8, "1R 2I 3R 4I 5R 6I 7R 8R"),
    _row("3-band", 3, "CP", "diag(1,-1,i)", 2, 8, "1I 2R 3I 4R 5I 6R 7I 8I"),
]

_FOUR = [
    _row("4-band", 4, "PHS", "Γ1", 6, 30, "1Ra 1Rs 2Ra 3Ra 3Rs 4Ra 4Rs 5Ra 6Ra 6Rs 7Ra 7Rs 8Ra 9Ra 9Rs 10Ra 10Rs 11Ra 12Ra 12Rs 13Ra 13Rs 14Ra 14Rs 15Rs 15Ra 1Ia 1Is 2Ia 3Ia 3Is 4Ia 4Is 5Ia 6Ia 6Is 7Ia 7Is 8Ia 9Ia 9Is 10Ia 10Is 11Ia 12Ia 12Is 13Ia 13Is 14Ia 14Is 15Ia 15Is", 1),
    _row("4-band", 4, "PHS", "-i(Λ1+Λ6)", 6, 30, "1Rs 2Rs 2Ra 3Ra 3Rs 4Ra 4Rs 5Ra 5Rs 6Rs 7Rs 8Ra 8Rs 9Ra 9Rs 10Ra 10Rs 11Ra 11Rs 12Rs 13Rs 14Ra 14Rs 15Rs 15Ra 1Is 2Ia 2Is 3Ia 3Is 4Ia 4Is 5Ia 5Is 6Is 7Is 8Ia 8Is 9Ia 9Is 10Ia 10Is 11Ia 11Is 12Is 13Is 14Is 14Ia 15Ia 15Is", -1),
    _row("4-band", 4, "PHSdag", "Γ1", 6, 30, "1Ra 1Rs 2Ra 3Ra 3Rs 4Ra 4Rs 5Ra 6Ra 6Rs 7Ra 7Rs 8Ra 9Ra 9Rs 10Ra 10Rs 11Ra 12Ra 12Rs 13Ra 13Rs 14Ra 14Rs 15Ra 15Rs 1Ia 1Is 2Is 3Ia 3Is 4Ia 4Is 5Is 6Ia 6Is 7Ia 7Is 8Is 9Ia 9Is 10Ia 10Is 11Is 12Ia 12Is 13Ia 13Is 14Ia 14Is 15Is 15Ia", 1),
    _row("4-band", 4, "PHSdag", "-i(Λ1+Λ6)", 6, 30, "1Rs 2Ra 2Rs 3Ra 3Rs 4Ra 4Rs 5Ra 5Rs 6Rs 7Rs 8Ra 8Rs 9Ra 9Rs 10Ra 10Rs 11Ra 11Rs 12Rs 13Rs 14Rs 14Ra 15Ra 15Rs 1Ia 2Ia 2Is 3Ia 3Is 4Ia 4Is 5Ia 5Is 6Ia 7Ia 8Ia 8Is 9Ia 9Is 10Ia 10Is 11Ia 11Is 12Ia 13Ia 14Ia 14Is 15Is 15Ia", -1),
    _row("4-band", 4, "TRS", "Γ1", 6, 30, "1Ra 1Rs 2Rs 3Ra 3Rs 4Ra 4Rs 5Rs 6Ra 6Rs 7Ra 7Rs 8Rs 9Ra 9Rs 10Ra 10Rs 11Rs 12Rs 12Ra 13Ra 13Rs 14Ra 14Rs 15Rs 15Ra 1Is 1Ia 2Ia 3Ia 3Is 4Ia 4Is 5Ia 6Ia 6Is 7Ia 7Is 8Ia 9Ia 9Is 10Ia 10Is 11Ia 12Ia 12Is 13Ia 13Is 14Ia 14Is 15Ia 15Is", 1),
    _row("4-band", 4, "TRS", "-i(Λ1+Λ6)", 6, 30, "1Ra 2Ra 2Rs 3Ra 3Rs 4Ra 4Rs 5Ra 5Rs 6Ra 7Ra 8Ra 8Rs 9Ra 9Rs 10Ra 10Rs 11Ra 11Rs 12Ra 13Ra 14Rs 14Ra 15Ra 15Rs 1Is 2Ia 2Is 3Ia 3Is 4Ia 4Is 5Ia 5Is 6Is 7Is 8Ia 8Is 9Ia 9Is 10Ia 10Is 11Ia 11Is 12Is 13Is 14Ia 14Is 15Is 15Ia", -1),
    _row("4-band", 4, "TRSdag", "Γ1", 6, 30, "1Ra 1Rs 2Rs 3Ra 3Rs 4Ra 4Rs 5Rs 6Ra 6Rs 7Ra 7Rs 8Rs 9Ra 9Rs 10Ra 10Rs 11Rs 12Ra 12Rs 13Ra 13Rs 14Ra 14Rs 15Rs 15Ra 1Ia 1Is 2Is 3Ia 3Is 4Ia 4Is 6Ia 6Is 5Is 7Ia 7Is 8Is 9Ia 9Is 10Is 10Ia 11Is 12Ia 12Is 13Ia 13Is 14Ia 14Is 15Is 15Ia", 1),
    _row("4-band", 4, "TRSdag", "-i(Λ1+Λ6)", 6, 30, "1Ra 2Ra 2Rs 3Ra 3Rs 4Ra 4Rs 5Ra 5Rs 6Ra 7Ra 8Ra 8Rs 9Ra 9Rs 10Ra 10Rs 11Ra 11Rs 12Ra 13Ra 14Rs 14Ra 15Ra 15Rs 1Ia 2Ia 2Is 3Ia 3Is 4Ia 4Is 5Ia 5Is 6Ia 7Ia 8Ia 8Is 9Ia 9Is 10Ia 10Is 11Ia 11Is 12Ia 13Ia 14Is 14Ia 15Ia 15Is", -1),
    _row("4-band", 4, "CS", "Γ5", 3, 26, "1R 3R 4R 6R 7R 8R 9R 10R 11R 12R 13R 14R 15R 1I 2I 3I 4I 5I 6I 7I 9I 10I 12I 13I 14I 15I"),
    _row("4-band", 4, "psCS", "Γ5", 4, 30, "1 2 3 4 5 6 7 8 9 10 11 12 13 14 15"),
    _row("4-band", 4, "SLS", "iΓ5", 4, 26, "1R 3R 4R 6R 7R 8R 9R 10R 11R 12R 13R 14R 15R 1I 3I 4I 6I 7I 8I 9I 10I 11I 12I 13I 14I 15I"),
    _row("4-band", 4, "I", "P4", 6, 30, "1Ra 2Rs 3Ra 4Ra 5Rs 6Ra 7Ra 8Rs 9Ra 10Ra 11Rs 12Ra 13Rs 14Rs 15Rs 1Is 2Ia 3Is 4Is 5Ia 6Is 7Is 8Ia 9Is 10Is 11Ia 12Is 13Ia 14Ia 15Ia"),
    _row("4-band", 4, "psH", "Γ1", 3, 26, "1R 3R 4R 6R 7R 8R 9R 10R 11R 12R 13R 14R 15R 1I 2I 3I 4I 5I 6I 7I 9I 10I 12I 13I 14I 15I"),
    _row("4-band", 4, "P", "P4", 6, 30, "1Ra 2Rs 3Ra 4Ra 5Rs 6Ra 8Rs 9Ra 7Ra 10Ra 11Rs 12Ra 13Rs 14Rs 15Rs 1Ia 2Is 3Ia 4Ia 5Is 6Ia 7Ia 8Is 9Ia 10Ia 11Is 12Ia 13Is 14Is 15Is"),
    _row("4-band", 4, "PT", "P4·Γ1", 3, 26, "1R 2R 3R 4R 5R 6R 7R 8R 9R 10R 11R 12R 13R 14R 15R 3I 4I 1I 6I 7I 9I 10I 12I 13I 14I 15I"),
    _row("4-band", 4, "CP", "Λ8-Λ11", 3, 26, "1R 3R 4R 6R 7R 9R 10R 12R 13R 14R 15R 1I 2I 3I 4I 5I 6I 7I 8I 9I 10I 11I 12I 13I 14I 15I"),
]

_TABLES = {"2-band": _TWO, "psH+X": _PSH_PAIRS, "3-band": _THREE, "4-band": _FOUR}


def table_names() -> list[str]:
    return list(_TABLES)


def rows(table: str | None = None, n: int | None = None) -> list[TableRow]:
    """Rows of one table (or all), optionally filtered by dimension."""
    if table is not None and table not in _TABLES:
        raise KeyError(f"unknown table {table!r}; choose from {table_names()}")
    sel = [_TABLES[table]] if table else list(_TABLES.values())
    return [r for t in sel for r in t if n is None or r.n == n]


@dataclass(frozen=True)
class RowCheck:
    row: TableRow
    observed: frozenset
    count_observed: int

    @property
    def count_ok(self) -> bool:
        return self.count_observed == self.row.count

    @property
    def set_ok(self) -> bool:
        return self.observed == self.row.expected()

    @property
    def missing(self) -> list[str]:
        return sorted(self.row.expected() - self.observed, key=_label_key)

    @property
    def extra(self) -> list[str]:
        return sorted(self.observed - self.row.expected(), key=_label_key)


def _label_key(lab: str):
    m = _LABEL.match(lab)
    comp = m.group(1)
    return (int(comp) if comp.isdigit() else "xyz".index(comp), m.group(2), m.group(3))


def check_row(row: TableRow, draws: int = 50, k_samples: int = 20, rng=0) -> RowCheck:
    """Measure the surviving parameters for a row and compare with the printed entry."""
    labels = surviving_parameters(row.operators(), row.n, draws, k_samples, parity=row.nonlocal_, rng=rng)
    count = len({lab[:-1] if row.nonlocal_ else lab for lab in labels})
    return RowCheck(row, frozenset(labels), count)
