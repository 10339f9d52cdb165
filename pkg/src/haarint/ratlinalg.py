"""Exact linear algebra over the rationals.

Matrices are lists of lists of Fraction; vectors are lists of Fraction.
Everything here is plain Gaussian elimination, sized for the small dense
systems the rest of the package produces (commutant Gram matrices,
trace-subspace projections).
"""

from fractions import Fraction


Matrix = list[list[Fraction]]
Vector = list[Fraction]


def _as_fraction_matrix(a) -> Matrix:
    return [[Fraction(x) for x in row] for row in a]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c:
                bt = b[t]
                for j in range(m):
                    if bt[j]:
                        oi[j] += c * bt[j]
    return out


def mat_vec(a: Matrix, v: Vector) -> Vector:
    return [sum((c * x for c, x in zip(row, v) if c and x), Fraction(0)) for row in a]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot column indices."""
    m = [row[:] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Matrix) -> int:
    if not a:
        return 0
    return len(rref(a)[1])


def solve(a: Matrix, b: Vector) -> Vector:
    """One solution of a x = b; raises ValueError if the system is inconsistent.

    For singular systems the free variables are set to zero, so the answer
    is a particular solution, not the unique one.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [a[i][:] + [b[i]] for i in range(rows)]
    red, pivots = rref(aug)
    if cols in pivots:
        raise ValueError("inconsistent linear system")
    x = [Fraction(0)] * cols
    for r, c in enumerate(pivots):
        x[c] = red[r][cols]
    return x


def invert(a: Matrix) -> Matrix:
    n = len(a)
    aug = [a[i][:] + identity(n)[i] for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def pseudo_inverse(a: Matrix) -> Matrix:
    """Moore-Penrose inverse of a rational matrix, exact.

    Built from a full-rank factorization a = B C (B: pivot columns, C: the
    nonzero rows of the rref), giving a+ = C^T (C C^T)^-1 (B^T B)^-1 B^T.
    Satisfies a a+ a = a even when a is singular.
    """
    rows = len(a)
    if rows == 0:
        return []
    red, pivots = rref(a)
    r = len(pivots)
    if r == 0:
        return [[Fraction(0)] * rows for _ in range(len(a[0]))]
    bmat = [[a[i][c] for c in pivots] for i in range(rows)]
    cmat = red[:r]
    bt = transpose(bmat)
    ct = transpose(cmat)
    left = mat_mul(ct, invert(mat_mul(cmat, ct)))
    right = mat_mul(invert(mat_mul(bt, bmat)), bt)
    return mat_mul(left, right)
