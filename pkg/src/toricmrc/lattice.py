"""Exact integer / rational linear algebra.

Everything here works on plain tuples of ``int`` (lattice vectors) or
``fractions.Fraction`` (rational vectors); nothing ever rounds.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .errors import DependentGenerators, ZeroVector

LatticeVector = tuple  # tuple[int, ...]
RationalVector = tuple  # tuple[Fraction, ...]


def normalize_primitive(v: Sequence[int]) -> tuple[LatticeVector, int]:
    """Split ``v`` into its primitive direction and the positive gcd factor.

    >>> normalize_primitive((2, 4, -6))
    ((1, 2, -3), 2)
    """
    g = 0
    for c in v:
        g = gcd(g, c)
    if g == 0:
        raise ZeroVector(f"cannot primitivize the zero vector {tuple(v)}")
    return tuple(c // g for c in v), g


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for c in v:
        g = gcd(g, c)
    return g == 1


def add(*vectors: Sequence) -> tuple:
    return tuple(sum(cs) for cs in zip(*vectors))


def scale(c, v: Sequence) -> tuple:
    return tuple(c * x for x in v)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    if any(len(r) != n for r in a):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def invariant_factors(m: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero Smith invariant factors d1 | d2 | ... of an integer matrix.

    A set of k row vectors extends to a basis of Z^n exactly when this
    returns k ones.
    """
    a = [list(r) for r in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    factors = []
    t = 0
    while t < min(rows, cols):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] and (best is None or abs(a[i][j]) < best[0]):
                        best = (abs(a[i][j]), i, j)
            if best is None:
                return factors
            _, pi, pj = best
            a[t], a[pi] = a[pi], a[t]
            for r in a:
                r[t], r[pj] = r[pj], r[t]
            p = a[t][t]

            dirty = False
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    ri, rt = a[i], a[t]
                    for j in range(t, cols):
                        ri[j] -= q * rt[j]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for r in a:
                        r[j] -= q * r[t]
                if a[t][j]:
                    dirty = True
            if dirty:
                continue

            offender = next(
                (i for i in range(t + 1, rows)
                 for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if offender is not None:
                a[t] = [x + y for x, y in zip(a[t], a[offender])]
                continue
            factors.append(abs(p))
            t += 1
            break
    return factors


def solve_in_basis(generators: Sequence[Sequence[int]],
                   target: Sequence) -> Optional[RationalVector]:
    """Coefficients ``c`` with ``sum(c[i] * generators[i]) == target``.

    Returns ``None`` when ``target`` is outside the span.  Raises
    ``DependentGenerators`` if the generators are not linearly independent.
    """
    k = len(generators)
    n = len(target)
    if any(len(g) != n for g in generators):
        raise ValueError("generator and target dimensions differ")
    # n x (k+1) augmented system, generators as columns
    a = [[Fraction(generators[j][i]) for j in range(k)] + [Fraction(target[i])]
         for i in range(n)]
    r = 0
    for c in range(k):
        pr = next((i for i in range(r, n) if a[i][c] != 0), None)
        if pr is None:
            raise DependentGenerators(f"generators {list(map(tuple, generators))} are dependent")
        a[r], a[pr] = a[pr], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    if any(a[i][k] != 0 for i in range(r, n)):
        return None
    return tuple(a[i][k] for i in range(k))


def inverse(rows: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Exact inverse of a nonsingular square matrix."""
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(rows)]
    for c in range(n):
        pr = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pr is None:
            raise DependentGenerators("matrix is singular")
        a[c], a[pr] = a[pr], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [r[n:] for r in a]


# -- linear feasibility -------------------------------------------------------

@dataclass(frozen=True)
class StrictLPSystem:
    """Homogeneous system ``row . x > 0`` for every row."""

    num_vars: int
    rows: tuple = field(default=())

    def __post_init__(self):
        rows = tuple(tuple(Fraction(c) for c in r) for r in self.rows)
        if any(len(r) != self.num_vars for r in rows):
            raise ValueError("every row must have num_vars coefficients")
        object.__setattr__(self, "rows", rows)

    def satisfied_by(self, x: Sequence) -> bool:
        return all(dot(r, x) > 0 for r in self.rows)


def nonnegative_solution(a: Sequence[Sequence], b: Sequence) -> Optional[RationalVector]:
    """Find ``x >= 0`` with ``a x == b`` exactly, or return ``None``.

    Phase one of the simplex method over the rationals with Bland's rule,
    so it always terminates.
    """
    m = len(a)
    nv = len(a[0]) if m else 0
    if m == 0:
        return ()
    tab = []
    for i in range(m):
        row = [Fraction(x) for x in a[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(row + art + [rhs])
    width = nv + m + 1
    basis = [nv + i for i in range(m)]
    # reduced costs for minimising the sum of artificials (as a maximisation)
    obj = [sum(tab[i][j] for i in range(m)) for j in range(nv)] + [Fraction(0)] * m
    obj.append(sum(tab[i][-1] for i in range(m)))

    while True:
        enter = next((j for j in range(nv) if obj[j] > 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            coef = tab[i][enter]
            if coef > 0:
                ratio = tab[i][-1] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # cannot happen: the phase-one objective is bounded below by zero
            raise ArithmeticError("unbounded phase-one simplex")
        prow = tab[leave]
        piv = prow[enter]
        if piv != 1:
            prow = [x / piv for x in prow]
            tab[leave] = prow
        nz = [j for j in range(width) if prow[j]]
        for i in range(m):
            if i != leave:
                r = tab[i]
                f = r[enter]
                if f:
                    for j in nz:
                        r[j] -= f * prow[j]
        f = obj[enter]
        for j in nz:
            obj[j] -= f * prow[j]
        basis[leave] = enter

    if obj[-1] != 0:
        return None
    x = [Fraction(0)] * nv
    for i, var in enumerate(basis):
        if var < nv:
            x[var] = tab[i][-1]
    x = tuple(x)
    for i in range(m):
        if dot(a[i], x) != b[i]:
            raise ArithmeticError("simplex produced a point that fails verification")
    return x


def lp_strict_feasible(system: StrictLPSystem) -> Optional[RationalVector]:
    """Witness ``x`` with every ``row . x > 0``, or ``None`` if none exists.

    Strict inequalities are replaced by ``row . x >= 1``, which is
    equivalent because the system is homogeneous.  Free variables are split
    as ``x = p - q`` and each row gets a surplus variable.
    """
    n = system.num_vars
    rows = system.rows
    if not rows:
        return tuple(Fraction(0) for _ in range(n))
    m = len(rows)
    a = []
    for i, r in enumerate(rows):
        surplus = [0] * m
        surplus[i] = -1
        a.append(list(r) + [-c for c in r] + surplus)
    sol = nonnegative_solution(a, [1] * m)
    if sol is None:
        return None
    x = tuple(sol[j] - sol[n + j] for j in range(n))
    if not system.satisfied_by(x):
        raise ArithmeticError("LP witness failed re-verification")
    return x
