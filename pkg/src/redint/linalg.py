"""Small exact linear algebra helpers over Q and over polynomial rings.

Fraction-based routines use plain Gaussian elimination.  The polynomial
routines use Bareiss fraction-free elimination, which needs only exact
divisions and therefore works over any integral domain whose elements
provide +, -, * and divexact (ParamPoly does).
"""

from __future__ import annotations

from fractions import Fraction


def solve_linear(rows, rhs):
    """Solve A x = b over Q.

    Returns (particular, nullspace_basis) or None if inconsistent;
    particular is a list of Fractions, nullspace_basis a list of vectors."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        pv = a[r][c]
        a[r] = [v / pv for v in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n] != 0:
            return None
    particular = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        particular[c] = a[i][n]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -a[i][fc]
        basis.append(vec)
    return particular, basis


def nullspace(rows, n):
    """Basis of the kernel of a matrix with n columns over Q."""
    if not rows:
        return [[Fraction(1) if j == i else Fraction(0) for j in range(n)]
                for i in range(n)]
    result = solve_linear(rows, [0] * len(rows))
    assert result is not None
    return result[1]


def bareiss_det(matrix):
    """Determinant by Bareiss fraction-free elimination.

    Entries must support +, -, *, divexact and truthiness; returns an element
    of the same ring."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    m = [list(row) for row in matrix]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not m[k][k]:
            pivot = next((i for i in range(k + 1, n) if m[i][k]), None)
            if pivot is None:
                return m[k][k] - m[k][k]  # zero of the ring
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = num.divexact(prev) if prev is not None else num
            m[i][k] = m[i][k] - m[i][k]
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def solve_fraction_free(matrix, rhs):
    """Solve A x = b over an integral domain when the solution is known to be
    polynomial (Cramer quotients are exact): Bareiss forward elimination on
    the augmented matrix, then back substitution with exact divisions."""
    n = len(matrix)
    a = [list(matrix[i]) + [rhs[i]] for i in range(n)]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not a[k][k]:
            pivot = next((i for i in range(k + 1, n) if a[i][k]), None)
            if pivot is None:
                raise ValueError("singular matrix in fraction-free solve")
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = num.divexact(prev) if prev is not None else num
            a[i][k] = a[i][k] - a[i][k]
        prev = a[k][k]
    if not a[n - 1][n - 1]:
        raise ValueError("singular matrix in fraction-free solve")
    det = a[n - 1][n - 1] if sign == 1 else -a[n - 1][n - 1]
    # Bareiss row operations preserve the solution set, so the triangular
    # system can be back-substituted directly; every division is exact
    # because the solution is polynomial by assumption.
    xs = [None] * n
    for k in range(n - 1, -1, -1):
        acc = a[k][n]
        for l in range(k + 1, n):
            acc = acc - a[k][l] * xs[l]
        xs[k] = acc.divexact(a[k][k])
    return xs, det
