"""Exact integer and rational linear algebra on small dense matrices.

Everything here runs on plain Python ints / Fractions; matrices are lists of
row lists.  Sizes in this package are tiny (N <= 10 or so), so clarity wins
over asymptotics.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Mat = list[list[int]]
Vec = tuple[int, ...]


def copy_mat(m: Sequence[Sequence[int]]) -> Mat:
    return [list(row) for row in m]


def transpose(m: Sequence[Sequence[int]]) -> Mat:
    return [list(col) for col in zip(*m)] if m else []


def mat_vec(m: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, v)) for row in m]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Mat:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def primitive(v: Sequence[int]) -> Vec:
    """Divide out the gcd; zero vector stays zero."""
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def rank(m: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals by fraction Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def hermite_form(m: Sequence[Sequence[int]]) -> Mat:
    """Row Hermite normal form (pivots positive, entries above reduced).

    Zero rows are dropped.  The result is the canonical triangular basis of
    the integer row span of ``m``.
    """
    a = copy_mat(m)
    if not a:
        return []
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        # euclidean elimination below row r in column c
        while True:
            nz = [i for i in range(r, rows) if a[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[i0] = a[i0], a[r]
            done = True
            for i in range(r + 1, rows):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if r < rows and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
            if r == rows:
                break
    return [row for row in a[:r] if any(row)]


def kernel_basis(m: Sequence[Sequence[int]]) -> list[Vec]:
    """Saturated primitive basis of the integer kernel ``{v : m v = 0}``.

    Row-reduces the transpose while mirroring the operations on an identity
    matrix; the transform rows sitting over zero rows of the reduction form a
    basis of the kernel lattice.  Unimodularity of the transform makes the
    result automatically saturated.  Rows are returned in Hermite form.
    """
    if not m:
        return []
    n = len(m[0])
    b = transpose(m)  # n x rows(m): row i = action of e_i
    t = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    rows, cols = n, len(b[0]) if b else 0
    r = 0
    for c in range(cols):
        while True:
            nz = [i for i in range(r, rows) if b[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(b[i][c]))
            b[r], b[i0] = b[i0], b[r]
            t[r], t[i0] = t[i0], t[r]
            done = True
            for i in range(r + 1, rows):
                if b[i][c]:
                    q = b[i][c] // b[r][c]
                    b[i] = [x - q * y for x, y in zip(b[i], b[r])]
                    t[i] = [x - q * y for x, y in zip(t[i], t[r])]
                    if b[i][c]:
                        done = False
            if done:
                break
        if r < rows and b[r][c] != 0:
            r += 1
            if r == rows:
                break
    ker_rows = [t[i] for i in range(r, rows)]
    for i, row in enumerate(ker_rows):
        assert all(x == 0 for x in mat_vec(m, row)), "kernel transform failed"
    return [tuple(row) for row in hermite_form(ker_rows)]


def image_lattice_basis(m: Sequence[Sequence[int]]) -> list[Vec]:
    """Triangular primitive basis of (row space of m) intersected with Z^n.

    The saturation is reached through the kernel: a lattice vector lies in the
    rational row space iff it is orthogonal to every kernel vector of ``m``
    (for the skew-symmetric matrices used here row space and column space
    agree).  Rows come back in Hermite form, so on a saturated lattice each
    row is automatically primitive.
    """
    if not m:
        return []
    n = len(m[0])
    ker = kernel_basis(m)
    if not ker:
        return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    return kernel_basis([list(v) for v in ker])


def solve_int(columns: Sequence[Sequence[int]], target: Sequence[int]) -> Vec | None:
    """Solve ``sum(c_i * columns[i]) == target`` for integers ``c_i``.

    Returns None when no rational solution exists or the rational solution is
    not integral.  Columns must be linearly independent.
    """
    cols = len(columns)
    if cols == 0:
        return () if all(x == 0 for x in target) else None
    a = [[Fraction(columns[j][i]) for j in range(cols)] + [Fraction(target[i])]
         for i in range(len(target))]
    sol = _solve_overdetermined(a, cols)
    if sol is None:
        return None
    if any(x.denominator != 1 for x in sol):
        return None
    return tuple(int(x) for x in sol)


def _solve_overdetermined(aug: list[list[Fraction]], cols: int) -> list[Fraction] | None:
    """Gaussian elimination on an augmented system; None if inconsistent
    or underdetermined."""
    rows = len(aug)
    piv_rows: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_rows.append(c)
        r += 1
    if len(piv_rows) < cols:
        return None  # underdetermined
    for i in range(r, rows):
        if aug[i][cols] != 0:
            return None  # inconsistent
    sol = [Fraction(0)] * cols
    for i, c in enumerate(piv_rows):
        sol[c] = aug[i][cols]
    return sol


def solve_fraction(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction] | None:
    """Solve a square or overdetermined consistent system exactly; None on
    failure (inconsistent or rank-deficient)."""
    cols = len(a[0]) if a else 0
    aug = [[Fraction(x) for x in row] + [Fraction(bv)] for row, bv in zip(a, b)]
    return _solve_overdetermined(aug, cols)


def invert_fraction(a: Sequence[Sequence[Fraction]]) -> list[list[Fraction]] | None:
    """Exact inverse of a square rational matrix, or None if singular."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(a)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def in_lattice(basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Is ``v`` an integer combination of the basis rows?

    Works for dependent or zero rows too: adjoining a lattice member must
    leave the Hermite form unchanged.
    """
    if not basis:
        return all(x == 0 for x in v)
    rows = [list(r) for r in basis]
    return hermite_form(rows + [list(v)]) == hermite_form(rows)


def lattice_equal(basis_a: Sequence[Sequence[int]], basis_b: Sequence[Sequence[int]]) -> bool:
    """Do two row bases generate the same integer lattice?"""
    a = hermite_form([list(r) for r in basis_a])
    b = hermite_form([list(r) for r in basis_b])
    return a == b
