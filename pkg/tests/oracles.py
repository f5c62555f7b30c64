"""Independent reference computations used by the tests.

Nothing here imports ep_atlas: the oracles rely on exact rational arithmetic
or on mpmath at high precision.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

import mpmath
import numpy as np


def _perm_sign(p) -> int:
    sign, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_leibniz(M):
    """Exact determinant of a small matrix of Fractions (or ints)."""
    n = len(M)
    total = Fraction(0)
    for p in permutations(range(n)):
        term = Fraction(_perm_sign(p))
        for i in range(n):
            term *= M[i][p[i]]
        total += term
    return total


def charpoly_exact(M) -> list[Fraction]:
    """Monic coefficients of det(λ1 - M), highest first, by exact interpolation.

    det(λ1 - M) is sampled at λ = 0..n and the Vandermonde system is solved
    with Fractions.
    """
    n = len(M)
    xs = list(range(n + 1))
    ys = []
    for x in xs:
        A = [[Fraction(x if i == j else 0) - Fraction(M[i][j]) for j in range(n)] for i in range(n)]
        ys.append(det_leibniz(A))
    # Gauss-Jordan on the Vandermonde matrix (columns: λ^n .. λ^0)
    V = [[Fraction(x) ** (n - c) for c in range(n + 1)] + [y] for x, y in zip(xs, ys)]
    m = n + 1
    for col in range(m):
        piv = next(r for r in range(col, m) if V[r][col] != 0)
        V[col], V[piv] = V[piv], V[col]
        pv = V[col][col]
        V[col] = [v / pv for v in V[col]]
        for r in range(m):
            if r != col and V[r][col] != 0:
                f = V[r][col]
                V[r] = [a - f * b for a, b in zip(V[r], V[col])]
    return [V[r][m] for r in range(m)]


def charpoly_mp(H, dps: int = 40) -> np.ndarray:
    """Monic coefficients of det(λ1 - H) for complex H via mpmath interpolation."""
    H = np.asarray(H, dtype=complex)
    n = H.shape[0]
    with mpmath.workdps(dps):
        Hm = mpmath.matrix([[mpmath.mpc(complex(v)) for v in row] for row in H])
        xs = [mpmath.mpf(j) for j in range(n + 1)]
        ys = [mpmath.det(x * mpmath.eye(n) - Hm) for x in xs]
        V = mpmath.matrix([[x ** (n - c) for c in range(n + 1)] for x in xs])
        coef = mpmath.lu_solve(V, mpmath.matrix(ys))
        return np.array([complex(coef[i]) for i in range(n + 1)])


def eigenvalues_mp(H, dps: int = 40) -> list:
    with mpmath.workdps(dps):
        Hm = mpmath.matrix([[mpmath.mpc(complex(v)) for v in row] for row in np.asarray(H, dtype=complex)])
        return mpmath.eig(Hm, left=False, right=False)


def discriminant_mp(H, dps: int = 40) -> complex:
    """Π_{i<j} (λ_i - λ_j)² from high-precision eigenvalues."""
    with mpmath.workdps(dps):
        ev = eigenvalues_mp(H, dps)
        out = mpmath.mpc(1)
        for i in range(len(ev)):
            for j in range(i + 1, len(ev)):
                out *= (ev[i] - ev[j]) ** 2
        return complex(out)
