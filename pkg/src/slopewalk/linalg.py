"""Exact dense linear algebra over the rationals.

Everything here is fraction-exact; there is no pivot-size heuristic because
there is no rounding. The solver is deliberately strict: systems that are
underdetermined raise InsufficientPrecision and inconsistent ones raise
ResidualNonzero, because downstream operator matrices must be certified, not
merely fitted.

Matrices are lists of row lists with int or Fraction entries (ints are kept
as ints so that characteristic polynomials of integer matrices stay on the
fast big-integer path).
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .errors import InsufficientPrecision, ResidualNonzero

Matrix = list[list]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x != 0:
                bt = b[t]
                for j in range(m):
                    if bt[j] != 0:
                        oi[j] += x * bt[j]
    return out


def rref(mat: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (matrix, pivot column indices)."""
    m = [[Fraction(x) for x in row] for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot_row = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(mat: Matrix) -> int:
    return len(rref(mat)[1])


def solve_exact(a: Matrix, b: Matrix) -> Matrix:
    """Solve A X = B with full certification.

    A has shape (rows x n) with rows >= n and full column rank; B is
    (rows x m). Every row is enforced, including the ones past the pivots:
    a nonzero residual there raises ResidualNonzero, while column-rank
    deficiency raises InsufficientPrecision (more rows are needed to pin the
    solution down).
    """
    rows, n = len(a), len(a[0])
    m = len(b[0])
    aug = [list(a[i]) + list(b[i]) for i in range(rows)]
    red, pivots = rref(aug)
    a_pivots = [p for p in pivots if p < n]
    if any(p >= n for p in pivots):
        raise ResidualNonzero("right-hand side not in the column span")
    if len(a_pivots) < n:
        raise InsufficientPrecision(
            f"system underdetermined: rank {len(a_pivots)} < {n} unknowns"
        )
    x = [[Fraction(0)] * m for _ in range(n)]
    for r, p in enumerate(a_pivots):
        for j in range(m):
            x[p][j] = red[r][n + j]
    return x


def kernel_basis(mat: Matrix) -> list[list[Fraction]]:
    """Basis of the right nullspace of mat."""
    red, pivots = rref(mat)
    cols = len(mat[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][fc]
        basis.append(v)
    return basis


def charpoly(mat: Matrix) -> list:
    """Characteristic polynomial det(X I - M), coefficients ascending c_0..c_n.

    Division-free (Berkowitz), so integer matrices produce integer
    coefficients with no Fraction overhead. c_n = 1.
    """
    n = len(mat)
    if n == 0:
        return [1]
    if any(len(row) != n for row in mat):
        raise ValueError("charpoly needs a square matrix")
    # v holds the charpoly of the leading principal minor, highest degree first
    v = [1, -mat[0][0]]
    for r in range(1, n):
        row = mat[r][:r]
        col = [mat[i][r] for i in range(r)]
        sub = [mat[i][:r] for i in range(r)]
        # s_k = row . sub^k . col for k = 0..r-1
        s = []
        w = col[:]
        for k in range(r):
            s.append(sum(row[i] * w[i] for i in range(r)))
            if k < r - 1:
                w = [sum(sub[i][t] * w[t] for t in range(r)) for i in range(r)]
        first_col = [1, -mat[r][r]] + [-x for x in s]
        nxt = [0] * (r + 2)
        for i in range(r + 2):
            acc = 0
            for t in range(min(i, len(v) - 1) + 1):
                if i - t < len(first_col):
                    acc += first_col[i - t] * v[t]
            nxt[i] = acc
        v = nxt
    return list(reversed(v))


def _fraction_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def rational_roots(coeffs) -> list[tuple[Fraction, int]]:
    """Rational roots (with multiplicity) of sum(c_i X^i), c_i rational.

    Degrees <= 2 are resolved by hand (discriminant square test) so the
    common paths need no sympy import; higher degrees defer to sympy's exact
    factorization over Q.
    """
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ValueError("zero polynomial has every root")
    low = next(i for i, c in enumerate(cs) if c != 0)
    zero_mult = low
    cs = cs[low:]
    deg = len(cs) - 1
    roots: list[tuple[Fraction, int]] = []
    if deg == 0:
        pass
    elif deg == 1:
        roots = [(-cs[0] / cs[1], 1)]
    elif deg == 2:
        c0, c1, c2 = cs
        disc = c1 * c1 - 4 * c2 * c0
        s = _fraction_sqrt(disc)
        if s is not None:
            if s == 0:
                roots = [(-c1 / (2 * c2), 2)]
            else:
                roots = [((-c1 + s) / (2 * c2), 1), ((-c1 - s) / (2 * c2), 1)]
    else:
        import sympy

        x = sympy.Symbol("x")
        poly = sympy.Poly(
            sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(cs)),
            x,
            domain="QQ",
        )
        for fac, mult in poly.factor_list()[1]:
            if fac.degree() == 1:
                lead, const = fac.all_coeffs()
                root = sympy.Rational(-const, lead)
                roots.append((Fraction(int(root.p), int(root.q)), int(mult)))
    if zero_mult:
        roots.append((Fraction(0), zero_mult))
    roots.sort(key=lambda rm: rm[0])
    return roots
