"""Young diagrams and the tableau families attached to the classical groups.

Entries are signed integers: a barred letter i-bar is stored as -i, and the
single middle letter of the odd orthogonal alphabet is stored as 0.  Each
group fixes a total order on its alphabet; enumeration is lexicographic on
the row-major entry list under that order.
"""

import math
from fractions import Fraction


Shape = tuple[int, ...]


def check_shape(shape) -> Shape:
    shape = tuple(int(p) for p in shape)
    if any(p <= 0 for p in shape):
        raise ValueError("shape parts must be positive")
    if any(a < b for a, b in zip(shape, shape[1:])):
        raise ValueError("shape parts must be weakly decreasing")
    return shape


def weight(shape) -> int:
    return sum(shape)


def conjugate(shape) -> Shape:
    shape = check_shape(shape)
    if not shape:
        return ()
    return tuple(sum(1 for p in shape if p > j) for j in range(shape[0]))


def gl_alphabet(n: int) -> list[int]:
    if n < 1:
        raise ValueError("need n >= 1")
    return list(range(1, n + 1))


def o_alphabet(n: int) -> list[int]:
    """Alphabet 1bar < 1 < 2bar < 2 < ... < rbar < r (< 0 when n is odd)."""
    if n < 1:
        raise ValueError("need n >= 1")
    letters = []
    for i in range(1, n // 2 + 1):
        letters += [-i, i]
    if n % 2 == 1:
        letters.append(0)
    return letters


def sp_alphabet(n: int) -> list[int]:
    """Alphabet 1bar < 1 < ... < Nbar < N for Sp(2N); dimension is 2n."""
    if n < 1:
        raise ValueError("need n >= 1")
    letters = []
    for i in range(1, n + 1):
        letters += [-i, i]
    return letters


class Tableau:
    """A filling of a Young diagram, rows as lists of signed entries."""

    def __init__(self, rows: list[list[int]]):
        self.rows = [list(r) for r in rows]
        self.shape = check_shape([len(r) for r in rows]) if rows else ()

    def entry(self, a: int, b: int) -> int:
        """1-indexed (row, column) access."""
        return self.rows[a - 1][b - 1]

    def row_major(self) -> list[int]:
        return [x for row in self.rows for x in row]

    def column(self, b: int) -> list[int]:
        return [row[b - 1] for row in self.rows if len(row) >= b]

    def __eq__(self, other):
        return isinstance(other, Tableau) and self.rows == other.rows

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.rows))

    def __repr__(self):
        body = " | ".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"Tableau[{body}]"


def _semistandard_fillings(shape: Shape, alphabet: list[int]):
    """Row-weak, column-strict fillings, lexicographic in alphabet position."""
    pos = {letter: k for k, letter in enumerate(alphabet)}
    if len(pos) != len(alphabet):
        raise ValueError("alphabet letters must be distinct")
    cells = [(r, c) for r, row_len in enumerate(shape) for c in range(row_len)]
    grid = [[None] * row_len for row_len in shape]

    def fill(k: int):
        if k == len(cells):
            yield Tableau([row[:] for row in grid])
            return
        r, c = cells[k]
        lo = 0
        if c > 0:
            lo = max(lo, pos[grid[r][c - 1]])
        if r > 0:
            lo = max(lo, pos[grid[r - 1][c]] + 1)
        for idx in range(lo, len(alphabet)):
            grid[r][c] = alphabet[idx]
            yield from fill(k + 1)
        grid[r][c] = None

    yield from fill(0)


def enumerate_gl_tableaux(shape, n: int) -> list[Tableau]:
    """Semistandard tableaux with entries 1..n; empty when the shape is too tall."""
    shape = check_shape(shape)
    return list(_semistandard_fillings(shape, gl_alphabet(n)))


def _o_standard(t: Tableau, n: int, pos: dict[int, int]) -> bool:
    r = n // 2
    col1 = t.column(1)
    col2 = t.column(2)
    for i in range(1, r + 1):
        cut = pos[i]
        alpha = sum(1 for x in col1 if pos[x] <= cut)
        beta = sum(1 for x in col2 if pos[x] <= cut)
        if alpha + beta > 2 * i:
            return False
        if alpha + beta == 2 * i:
            if alpha > beta and t.entry(alpha, 1) == -i:
                row = beta  # row where an unbarred i could sit
                for b in range(1, (t.shape[row - 1] if row >= 1 else 0) + 1):
                    if row >= 1 and t.entry(row, b) == i:
                        if row == 1 or t.entry(row - 1, b) != -i:
                            return False
            if alpha == beta == i and t.entry(i, 1) == -i:
                for b in range(1, t.shape[i - 1] + 1):
                    if t.entry(i, b) == i:
                        if i == 1 or t.entry(i - 1, b) != -i:
                            return False
    return True


def enumerate_o_tableaux(shape, n: int) -> list[Tableau]:
    """Orthogonal standard tableaux for O(n).

    Requires the first two column lengths to sum to at most n; other shapes
    do not label O(n) modules and are rejected.
    """
    shape = check_shape(shape)
    tl = conjugate(shape)
    if (tl[0] if tl else 0) + (tl[1] if len(tl) > 1 else 0) > n:
        raise ValueError("first two column lengths must sum to at most n")
    alphabet = o_alphabet(n)
    pos = {letter: k for k, letter in enumerate(alphabet)}
    return [t for t in _semistandard_fillings(shape, alphabet)
            if _o_standard(t, n, pos)]


def enumerate_sp_tableaux(shape, n: int) -> list[Tableau]:
    """Symplectic standard tableaux for Sp(2n): row i entries are >= ibar."""
    shape = check_shape(shape)
    if len(shape) > n:
        raise ValueError("shape must have at most n rows")
    alphabet = sp_alphabet(n)
    pos = {letter: k for k, letter in enumerate(alphabet)}
    out = []
    for t in _semistandard_fillings(shape, alphabet):
        ok = all(pos[x] >= pos[-(r + 1)]
                 for r, row in enumerate(t.rows) for x in row)
        if ok:
            out.append(t)
    return out


def count_standard_tableaux(shape) -> int:
    """Standard fillings of the diagram by 1..m, each exactly once.

    Evaluated by the ratio-of-factorials product over the shifted parts
    l_i = shape_i + n - i; the brute-force enumeration is the test oracle.
    """
    shape = check_shape(shape)
    if not shape:
        return 1
    m = weight(shape)
    n = len(shape)
    l = [shape[i] + n - (i + 1) for i in range(n)]
    num = math.factorial(m)
    for i in range(n):
        for j in range(i + 1, n):
            num *= l[i] - l[j]
    den = 1
    for li in l:
        den *= math.factorial(li)
    t, rem = divmod(num, den)
    assert rem == 0
    return t


def count_distinct_entry_fillings(shape, n: int) -> int:
    """Standard fillings using each of 1..n exactly once.

    Identical to count_standard_tableaux when n equals the weight; zero
    otherwise, since m cells cannot hold n distinct forced entries.
    """
    shape = check_shape(shape)
    return count_standard_tableaux(shape) if n == weight(shape) else 0


def young_constant_mu(shape) -> Fraction:
    """The scalar mu with c*c = mu*c for the row-column symmetrizer; m!/t."""
    shape = check_shape(shape)
    return Fraction(math.factorial(weight(shape)), count_standard_tableaux(shape))


def gelfand_counts(t: Tableau, n: int) -> dict[tuple[int, int], int]:
    """Triangular counts m[(mu, nu)] = entries <= nu in row mu, 1<=mu<=nu<=n.

    Defined for tableaux over the alphabet 1..n; rows beyond the shape
    count zero.
    """
    if any(x < 1 or x > n for x in t.row_major()):
        raise ValueError("entries must lie in 1..n")
    counts = {}
    for nu in range(1, n + 1):
        for mu in range(1, nu + 1):
            row = t.rows[mu - 1] if mu <= len(t.rows) else []
            counts[(mu, nu)] = sum(1 for x in row if x <= nu)
    return counts


def row_repetition_factor(t: Tableau, n: int) -> int:
    """Product of factorials of entry multiplicities per row.

    Computed from successive differences of the Gelfand counts; equals the
    number of row-preserving permutations fixing the filling.
    """
    counts = gelfand_counts(t, n)
    f = 1
    for (mu, nu), c in counts.items():
        prev = counts.get((mu, nu - 1), 0)
        f *= math.factorial(c - prev)
    return f


def gl_dimension(shape, n: int) -> int:
    """Dimension of the GL(n) module: prod over i<j of the shifted-part ratios."""
    shape = check_shape(shape)
    if len(shape) > n:
        return 0
    lam = list(shape) + [0] * (n - len(shape))
    num = 1
    den = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    d, rem = divmod(num, den)
    assert rem == 0
    return d
