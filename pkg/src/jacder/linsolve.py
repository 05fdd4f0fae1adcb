"""Deterministic exact linear algebra over Q.

Elimination clears denominators row by row and works on integers with
content stripping, so intermediate growth stays controlled while results
remain exact.  Pivots are always the first nonzero entry in column order,
which makes every output reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Sequence, Tuple

from jacder.errors import InconsistentSystem
from jacder.poly import BivarPoly, UnivarPoly, gcd_univar, grlex_key


@dataclass(frozen=True)
class LinearSystem:
    """Affine system matrix * v = rhs with rational entries."""

    matrix: Tuple[Tuple[Fraction, ...], ...]
    rhs: Tuple[Fraction, ...]
    ncols: int = field(default=-1)

    def __post_init__(self):
        matrix = tuple(tuple(Fraction(c) for c in row) for row in self.matrix)
        rhs = tuple(Fraction(c) for c in self.rhs)
        if len(matrix) != len(rhs):
            raise ValueError("matrix and rhs row counts differ")
        ncols = self.ncols
        if ncols < 0:
            if not matrix:
                raise ValueError("ncols is required for an empty matrix")
            ncols = len(matrix[0])
        if any(len(row) != ncols for row in matrix):
            raise ValueError("rows must all have the same length")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "rhs", rhs)
        object.__setattr__(self, "ncols", ncols)


@dataclass(frozen=True)
class LinearSolution:
    """A particular solution plus a basis of the homogeneous nullspace."""

    particular: Tuple[Fraction, ...]
    nullspace: Tuple[Tuple[Fraction, ...], ...]
    pivot_cols: Tuple[int, ...]


def _int_rows(system: LinearSystem) -> list[list[int]]:
    """Augmented integer rows [coeffs | rhs], denominators cleared, content 1."""
    rows = []
    for coeffs, rhs_val in zip(system.matrix, system.rhs):
        entries = list(coeffs) + [rhs_val]
        if not any(entries):
            continue
        den = reduce(math.lcm, (e.denominator for e in entries), 1)
        ints = [int(e * den) for e in entries]
        g = reduce(math.gcd, ints)
        rows.append([v // g for v in ints])
    return rows


def solve_linear(system: LinearSystem) -> LinearSolution:
    """Solve matrix * v = rhs exactly.

    Raises InconsistentSystem when no solution exists.  Nullspace vectors
    are scaled so their first nonzero coordinate is 1.
    """
    n = system.ncols
    work = _int_rows(system)
    pivot_cols: list[int] = []
    pr = 0
    for col in range(n):
        pivot_row = next((r for r in range(pr, len(work)) if work[r][col]), None)
        if pivot_row is None:
            continue
        work[pr], work[pivot_row] = work[pivot_row], work[pr]
        prow = work[pr]
        piv = prow[col]
        for r in range(pr + 1, len(work)):
            v = work[r][col]
            if not v:
                continue
            row = [piv * a - v * b for a, b in zip(work[r], prow)]
            g = reduce(math.gcd, row)
            work[r] = [e // g for e in row] if g > 1 else row
        pivot_cols.append(col)
        pr += 1
        if pr == len(work):
            break
    for r in range(pr, len(work)):
        if work[r][n]:
            raise InconsistentSystem("no solution")

    def back_substitute(rhs_of, free_assign) -> list[Fraction]:
        vec = [Fraction(0)] * n
        for col, val in free_assign:
            vec[col] = val
        for i in reversed(range(pr)):
            row = work[i]
            col = pivot_cols[i]
            s = rhs_of(row)
            for j in range(col + 1, n):
                if row[j] and vec[j]:
                    s -= row[j] * vec[j]
            vec[col] = Fraction(s, row[col])
        return vec

    particular = back_substitute(lambda row: row[n], ())
    pivot_set = set(pivot_cols)
    nullspace = []
    for free_col in range(n):
        if free_col in pivot_set:
            continue
        vec = back_substitute(lambda row: Fraction(0), ((free_col, Fraction(1)),))
        lead = next(v for v in vec if v)
        nullspace.append(tuple(v / lead for v in vec))
    return LinearSolution(tuple(particular), tuple(nullspace), tuple(pivot_cols))


def system_from_poly_columns(
    columns: Sequence[BivarPoly], rhs: BivarPoly
) -> LinearSystem:
    """Linear system for sum_j v_j * columns[j] = rhs, one row per monomial."""
    monos = set(rhs.monomials())
    for col in columns:
        monos.update(col.monomials())
    ordered = sorted(monos, key=grlex_key, reverse=True)
    matrix = tuple(tuple(col.coeff(m) for col in columns) for m in ordered)
    rhs_vec = tuple(rhs.coeff(m) for m in ordered)
    return LinearSystem(matrix, rhs_vec, ncols=len(columns))


def rref(rows: Sequence[Sequence[Fraction]]) -> Tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns nonzero rows and their pivot columns."""
    mat = [list(map(Fraction, row)) for row in rows if any(row)]
    if not mat:
        return [], []
    width = len(mat[0])
    out: list[list[Fraction]] = []
    pivots: list[int] = []
    pr = 0
    for col in range(width):
        pivot_row = next((r for r in range(pr, len(mat)) if mat[r][col]), None)
        if pivot_row is None:
            continue
        mat[pr], mat[pivot_row] = mat[pivot_row], mat[pr]
        piv = mat[pr][col]
        mat[pr] = [e / piv for e in mat[pr]]
        for r in range(len(mat)):
            if r != pr and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[pr])]
        pivots.append(col)
        pr += 1
        if pr == len(mat):
            break
    out = mat[:pr]
    return out, pivots


def charpoly(matrix: Sequence[Sequence[Fraction]]) -> UnivarPoly:
    """Characteristic polynomial det(tI - A) via the Faddeev-LeVerrier recurrence."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    if n == 0:
        return UnivarPoly.one()
    a = [[Fraction(v) for v in row] for row in matrix]
    m = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    coeffs_desc = [Fraction(1)]
    for k in range(1, n + 1):
        am = [
            [sum(a[i][l] * m[l][j] for l in range(n)) for j in range(n)]
            for i in range(n)
        ]
        ck = -sum(am[i][i] for i in range(n)) / k
        coeffs_desc.append(ck)
        for i in range(n):
            am[i][i] += ck
        m = am
    return UnivarPoly(reversed(coeffs_desc))


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def rational_roots(poly: UnivarPoly) -> list[Fraction]:
    """All rational roots of a nonzero polynomial, ascending, without multiplicity."""
    if poly.is_zero:
        raise ValueError("the zero polynomial has every rational root")
    roots = set()
    coeffs = list(poly.coeffs)
    while not coeffs[0]:
        roots.add(Fraction(0))
        coeffs.pop(0)
    reduced = UnivarPoly(coeffs)
    if reduced.degree >= 1:
        # square-free part keeps the divisor enumeration small
        reduced = reduced // gcd_univar(reduced, reduced.derivative())
        den = reduce(math.lcm, (c.denominator for c in reduced.coeffs), 1)
        ints = [int(c * den) for c in reduced.coeffs]
        g = reduce(math.gcd, ints)
        ints = [v // g for v in ints]
        for num in _divisors(ints[0]):
            for d in _divisors(ints[-1]):
                for cand in (Fraction(num, d), Fraction(-num, d)):
                    if cand not in roots and reduced(cand) == 0:
                        roots.add(cand)
    return sorted(roots)
