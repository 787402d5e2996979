"""Exact linear algebra over the rationals.

Matrices are lists of lists holding ints or fractions.Fraction; every routine
returns exact results.  Only the operations the rest of the package needs are
implemented: elimination, rank, kernels, solving, principal minors, and a
positive-semidefiniteness test for symmetric matrices.
"""

from fractions import Fraction
from math import gcd


def mat_copy(m):
    return [[Fraction(x) for x in row] for row in m]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k, p = len(a), len(b), len(b[0]) if b else 0
    assert all(len(row) == k for row in a)
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(p)] for i in range(n)]


def mat_vec(a, v):
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def transpose(m):
    return [list(col) for col in zip(*m)] if m else []


def row_echelon(m):
    """In-place fraction-free-ish forward elimination; returns pivot columns."""
    a = mat_copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if a[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = a[r][c]
        a[r] = [x / inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m):
    if not m or not m[0]:
        return 0
    _, pivots = row_echelon(m)
    return len(pivots)


def kernel_basis(m):
    """Basis of the right kernel, one vector per free column (RREF back-fill)."""
    if not m:
        return []
    cols = len(m[0])
    a, pivots = row_echelon(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -a[r][fc]
        basis.append(v)
    return basis


def solve(m, b):
    """Solve m x = b; returns None when inconsistent, a particular solution otherwise."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(m)]
    a, pivots = row_echelon(aug)
    for r in range(len(pivots)):
        if pivots[r] == cols:
            return None
    for r in range(len(pivots), rows):
        if a[r][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for r, pc in enumerate(pivots):
        x[pc] = a[r][cols]
    return x


def leading_principal_minors(m):
    """Exact determinants of the k x k top-left blocks, k = 1..n."""
    n = len(m)
    minors = []
    for k in range(1, n + 1):
        minors.append(det([row[:k] for row in m[:k]]))
    return minors


def det(m):
    n = len(m)
    a = mat_copy(m)
    sign = 1
    d = Fraction(1)
    for c in range(n):
        pr = None
        for i in range(c, n):
            if a[i][c] != 0:
                pr = i
                break
        if pr is None:
            return Fraction(0)
        if pr != c:
            a[c], a[pr] = a[pr], a[c]
            sign = -sign
        d *= a[c][c]
        inv = a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d * sign


def is_positive_definite(sym):
    return all(mk > 0 for mk in leading_principal_minors(sym))


def is_positive_semidefinite(sym):
    """LDL-style sweep: valid only for symmetric input.

    A zero pivot forces the whole remaining row to vanish, otherwise the
    matrix is indefinite; a negative pivot is indefinite outright.
    """
    n = len(sym)
    a = mat_copy(sym)
    for k in range(n):
        p = a[k][k]
        if p < 0:
            return False
        if p == 0:
            if any(a[k][j] != 0 for j in range(k, n)):
                return False
            continue
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / p
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return True


def primitive_integer_vector(v):
    """Scale a rational vector to coprime integers, first nonzero entry positive."""
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    w = [int(x * den) for x in v]
    g = 0
    for x in w:
        g = gcd(g, abs(x))
    if g:
        w = [x // g for x in w]
    for x in w:
        if x != 0:
            if x < 0:
                w = [-y for y in w]
            break
    return w
