"""Exact Haar integrals of matrix-entry monomials over the classical
compact groups, with their large-N leading terms.

The integral of a monomial in entries of u and u-bar equals a matrix
element of the orthogonal projection of |J><J'| onto the span of the
commutant operators: slot permutations for U(N), pair-partition operators
for O(N) and Sp(2N).  The projection is found by solving the normal
equations with the exact Gram matrix of operator traces, so a singular
Gram (small N) is handled by the rational pseudo-inverse — any solution
of the normal equations yields the same projection.
"""

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import perms, ratlinalg
from .tensors import BilinearForm, CostGateError, orthogonal_form, symplectic_form

DEGREE_CAP = 4  # operators per side; the commutant span grows as q! / (2q-1)!!


class UnsupportedIntegralError(NotImplementedError):
    """The requested integral needs invariants outside the implemented span
    (determinant-type contributions of SU/SO at low dimension)."""


@dataclass(frozen=True)
class Factor:
    row: int
    col: int
    conj: bool = False


@dataclass(frozen=True)
class MonomialSpec:
    group: str
    factors: tuple

    def __init__(self, group, factors):
        if group not in ("U", "SU", "O", "SO", "Sp"):
            raise ValueError(f"unknown group tag {group!r}")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "factors", tuple(
            f if isinstance(f, Factor) else Factor(*f) for f in factors))

    @property
    def degree(self) -> int:
        return len(self.factors)

    def validate(self, n: int):
        top = 2 * n if self.group == "Sp" else n
        for f in self.factors:
            if not (1 <= f.row <= top and 1 <= f.col <= top):
                raise ValueError(f"index out of range 1..{top}: {f}")

    def to_dict(self, n: int) -> dict:
        return {"group": self.group, "N": n,
                "factors": [{"i": f.row, "j": f.col, "conj": f.conj}
                            for f in self.factors]}

    @classmethod
    def from_dict(cls, d: dict) -> tuple:
        spec = cls(d["group"], [Factor(f["i"], f["j"], bool(f.get("conj")))
                                for f in d["factors"]])
        return spec, d["N"]


def evaluate_monomial(spec: MonomialSpec, matrix) -> complex:
    """Value of the monomial on one sampled matrix (1-based indices)."""
    out = 1.0 + 0.0j
    for f in spec.factors:
        v = matrix[f.row - 1][f.col - 1]
        out *= v.conjugate() if f.conj else v
    return out


# ---------------------------------------------------------------------------
# commutant bases

def all_pairings(m: int):
    """Pair partitions of {1..m} as sorted pair tuples, lexicographic."""
    if m % 2:
        raise ValueError("need an even number of points")

    def rec(points):
        if not points:
            yield ()
            return
        a = points[0]
        for k in range(1, len(points)):
            b = points[k]
            rest = points[1:k] + points[k + 1:]
            for tail in rec(rest):
                yield ((a, b),) + tail

    return list(rec(tuple(range(1, m + 1))))


@dataclass
class CommutantBasis:
    group: str
    q: int
    elements: list  # permutations (tuples) or pairings (tuples of pairs)

    @property
    def kind(self) -> str:
        return "permutations" if self.group in ("U", "SU") else "pairings"

    def __len__(self) -> int:
        return len(self.elements)


def build_commutant_basis(group: str, q: int) -> CommutantBasis:
    if q < 1:
        raise ValueError("need q >= 1")
    if q > DEGREE_CAP:
        raise CostGateError(
            f"commutant span at q={q} has {math.factorial(q)} permutations or "
            f"{_double_factorial(2 * q - 1)} pairings; capped at q={DEGREE_CAP}")
    if group in ("U", "SU"):
        return CommutantBasis(group, q, perms.all_permutations(q))
    if group in ("O", "SO", "Sp"):
        return CommutantBasis(group, q, all_pairings(2 * q))
    raise ValueError(f"unknown group tag {group!r}")


def _double_factorial(m: int) -> int:
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def _form_for(group: str, n: int) -> BilinearForm:
    if group == "Sp":
        return symplectic_form(n)
    return orthogonal_form(n, split=False)


# ---------------------------------------------------------------------------
# pair-partition operators on V^(x)q

def brauer_entry(pairing, row_letters, col_letters, form: BilinearForm) -> int:
    """Matrix entry of the pairing operator between letter tuples.

    Internal slot s (1-based, s <= 2q) is odd for the s-th output factor
    and even for inputs; the entry is the product of one factor per pair:
    two outputs pair through the dual expansion, two inputs through the
    form, and an output-input pair is a plain delta (with the skew sign
    when the input slot comes first).
    """
    def letter(s):
        return row_letters[(s - 1) // 2] if s % 2 else col_letters[s // 2 - 1]

    out = 1
    for a, b in pairing:
        x, y = letter(a), letter(b)
        if a % 2 and b % 2:
            if y != form.bar(x):
                return 0
            out *= form.dsign(x)
        elif not a % 2 and not b % 2:
            w = form.pairing(x, y)
            if not w:
                return 0
            out *= w
        elif a % 2:
            if x != y:
                return 0
        else:
            if x != y:
                return 0
            if form.kind == "symplectic":
                out = -out
    return out


def materialize_brauer(pairing, form: BilinearForm) -> dict:
    """Full sparse matrix {(rows, cols): entry} of the pairing operator;
    reference for the entry rule and the loop-count Gram."""
    q = len(pairing)
    slots = {}
    out = {}
    for choice in itertools.product(form.letters, repeat=q):
        ok = True
        coeff = 1
        for (a, b), x in zip(pairing, choice):
            if a % 2 and b % 2:
                slots[a], slots[b] = x, form.bar(x)
                coeff *= form.dsign(x)
            elif not a % 2 and not b % 2:
                y = form.bar(x)
                w = form.pairing(x, y)
                if not w:
                    ok = False
                    break
                slots[a], slots[b] = x, y
                coeff *= w
            else:
                slots[a], slots[b] = x, x
                if form.kind == "symplectic" and not a % 2:
                    coeff = -coeff
        if not ok:
            continue
        rows = tuple(slots[s] for s in range(1, 2 * q + 1, 2))
        cols = tuple(slots[s] for s in range(2, 2 * q + 1, 2))
        out[(rows, cols)] = out.get((rows, cols), 0) + coeff
    return {rc: v for rc, v in out.items() if v}


# ---------------------------------------------------------------------------
# Gram matrices

_loop_cache: dict = {}


def _loop_structure(pa, pb, kind: str):
    """(sign, loop count) of the trace pairing of two pairing operators.

    The union of the two pairings is a disjoint set of even cycles; each
    cycle forces all its letters from one free letter, contributing a
    dimension factor, and the walk accumulates the skew signs.  The
    dimension-independent structure is what gets cached.
    """
    partner = {"a": {}, "b": {}}
    for tag, pairing in (("a", pa), ("b", pb)):
        for a, b in pairing:
            partner[tag][a] = b
            partner[tag][b] = a

    def edge_is_bar(a, b):
        return a % 2 == b % 2

    def edge_sign(a, b, flip_at_min):
        # bar edges carry the dual-pair coefficient of the letter at the
        # lower slot; skew input-output deltas carry -1 (symplectic only)
        lo, hi = min(a, b), max(a, b)
        if kind != "symplectic":
            return 1
        if edge_is_bar(a, b):
            return -1 if flip_at_min else 1
        if lo % 2 == 0:
            return -1
        return 1

    seen = set()
    loops = 0
    sign = 1
    dsign_exponent = 0
    for start in partner["a"]:
        if start in seen:
            continue
        loops += 1
        cur, flips, tag = start, 0, "a"
        while True:
            nxt = partner[tag][cur]
            bar = edge_is_bar(cur, nxt)
            flip_next = flips ^ bar
            flip_at_min = flips if min(cur, nxt) == cur else flip_next
            if bar and kind == "symplectic":
                dsign_exponent += 1
            sign *= edge_sign(cur, nxt, flip_at_min)
            seen.add(cur)
            seen.add(nxt)
            cur, flips = nxt, flip_next
            tag = "b" if tag == "a" else "a"
            if cur == start and tag == "a":
                break
        # both delta and bar edges come in even numbers per loop, so the
        # forced letters always close up consistently
        assert flips == 0
    assert dsign_exponent % 2 == 0
    return sign, loops


def _pairing_gram_structure(q: int, kind: str):
    key = (kind, q)
    if key not in _loop_cache:
        ps = all_pairings(2 * q)
        _loop_cache[key] = [[_loop_structure(pa, pb, kind) for pb in ps]
                            for pa in ps]
    return _loop_cache[key]


def gram_matrix(basis: CommutantBasis, n: int, method: str = "loops"):
    """Exact trace pairings G[a][b] = Tr(B_a B_b^T) of the basis operators."""
    if n < 1:
        raise ValueError("need n >= 1")
    if basis.kind == "permutations":
        return [[Fraction(n ** perms.cycle_count(
            perms.compose(perms.inverse(pa), pb)))
            for pb in basis.elements] for pa in basis.elements]
    d = 2 * n if basis.group == "Sp" else n
    if method == "loops":
        struct = _pairing_gram_structure(basis.q, _form_for(basis.group, n).kind)
        return [[Fraction(s * d ** loops) for s, loops in row] for row in struct]
    if method == "direct":
        form = _form_for(basis.group, n)
        mats = [materialize_brauer(p, form) for p in basis.elements]
        out = []
        for ma in mats:
            row = []
            for mb in mats:
                small, big = (ma, mb) if len(ma) <= len(mb) else (mb, ma)
                row.append(Fraction(sum(v * big.get(rc, 0)
                                        for rc, v in small.items())))
            out.append(row)
        return out
    raise ValueError(f"unknown method {method!r}")


@dataclass
class WeingartenData:
    weights: list  # rational matrix W with G W G = G
    pseudo: bool = field(default=False)


def weingarten_data(gram) -> WeingartenData:
    g = [[Fraction(x) for x in row] for row in gram]
    k = len(g)
    if ratlinalg.rank(g) == k:
        return WeingartenData(ratlinalg.invert(g), pseudo=False)
    w = ratlinalg.pseudo_inverse(g)
    gwg = ratlinalg.mat_mul(ratlinalg.mat_mul(g, w), g)
    assert gwg == g
    return WeingartenData(w, pseudo=True)


# ---------------------------------------------------------------------------
# exact integrals

_engine_cache: dict = {}


def _engine(group: str, q: int, n: int):
    key = (group, q, n)
    if key not in _engine_cache:
        basis = build_commutant_basis(group, q)
        wdata = weingarten_data(gram_matrix(basis, n))
        _engine_cache[key] = (basis, wdata)
    return _engine_cache[key]


def _bilinear_value(weights, r_vec, c_vec) -> Fraction:
    total = Fraction(0)
    for a, ra in enumerate(r_vec):
        if not ra:
            continue
        row = weights[a]
        acc = Fraction(0)
        for b, cb in enumerate(c_vec):
            if cb:
                acc += cb * row[b]
        total += ra * acc
    return total


def _unitary_exact(spec: MonomialSpec, n: int) -> Fraction:
    plain = [f for f in spec.factors if not f.conj]
    conj = [f for f in spec.factors if f.conj]
    if len(plain) != len(conj):
        return Fraction(0)
    q = len(plain)
    if q == 0:
        return Fraction(1)
    basis, wdata = _engine("U", q, n)
    i_rows = [f.row for f in plain]
    j_cols = [f.col for f in plain]
    i2_rows = [f.row for f in conj]
    j2_cols = [f.col for f in conj]

    def match(p, left, right):
        return 1 if all(left[p[j]] == right[j] for j in range(q)) else 0

    r_vec = [match(p, i_rows, i2_rows) for p in basis.elements]
    c_vec = [match(p, j_cols, j2_cols) for p in basis.elements]
    return _bilinear_value(wdata.weights, r_vec, c_vec)


def _orthogonal_exact(spec: MonomialSpec, n: int) -> Fraction:
    m = spec.degree
    if m % 2:
        return Fraction(0)
    if m == 0:
        return Fraction(1)
    q = m // 2
    basis, wdata = _engine("O", q, n)
    form = _form_for("O", n)
    early, late = spec.factors[:q], spec.factors[q:]
    i_l = [f.row for f in early]
    j_l = [f.col for f in early]
    i2_l = [f.row for f in late]
    j2_l = [f.col for f in late]
    r_vec = [brauer_entry(p, i_l, i2_l, form) for p in basis.elements]
    c_vec = [brauer_entry(p, j_l, j2_l, form) for p in basis.elements]
    return _bilinear_value(wdata.weights, r_vec, c_vec)


def _sp_letter(a: int) -> int:
    return -((a + 1) // 2) if a % 2 else a // 2


def _sp_partner(a: int) -> int:
    return a + 1 if a % 2 else a - 1


def _sp_jsign(a: int) -> int:
    """J entry against the interleaved partner: +1 at odd rows, -1 at even."""
    return 1 if a % 2 else -1


def _symplectic_exact(spec: MonomialSpec, n: int) -> Fraction:
    sign = 1
    flat = []
    for f in spec.factors:
        if f.conj:
            # entrywise conjugate of a compact symplectic matrix is the
            # entry at the partner indices, up to the two J signs
            sign *= _sp_jsign(f.row) * _sp_jsign(f.col)
            flat.append((_sp_partner(f.row), _sp_partner(f.col)))
        else:
            flat.append((f.row, f.col))
    m = len(flat)
    if m % 2:
        return Fraction(0)
    if m == 0:
        return Fraction(1)
    q = m // 2
    basis, wdata = _engine("Sp", q, n)
    form = _form_for("Sp", n)
    early, late = flat[:q], flat[q:]
    i_l = [_sp_letter(i) for i, _ in early]
    j_l = [_sp_letter(j) for _, j in early]
    i2_l, j2_l = [], []
    for i, j in late:
        # u_ij = jsign(i) jsign(j) (u^-1)[partner(j), partner(i)]
        sign *= _sp_jsign(i) * _sp_jsign(j)
        i2_l.append(_sp_letter(_sp_partner(i)))
        j2_l.append(_sp_letter(_sp_partner(j)))
    r_vec = [brauer_entry(p, i_l, i2_l, form) for p in basis.elements]
    c_vec = [brauer_entry(p, j_l, j2_l, form) for p in basis.elements]
    return sign * _bilinear_value(wdata.weights, r_vec, c_vec)


def _su_window(spec: MonomialSpec, n: int) -> Fraction | None:
    """Exact SU value where the U machinery settles it; None means defer
    to the unitary path; raises where determinant invariants enter."""
    if n == 1:
        return Fraction(1)  # the one-dimensional group is trivial
    plain = sum(not f.conj for f in spec.factors)
    conj = len(spec.factors) - plain
    if plain == conj:
        return None
    if (plain - conj) % n:
        return Fraction(0)
    raise UnsupportedIntegralError(
        f"SU({n}) monomial with {plain} plain and {conj} conjugate factors "
        f"picks up determinant invariants; only the balanced and "
        f"center-killed cases are supported")


def _so_window_ok(spec: MonomialSpec, n: int) -> bool | None:
    """True: equals the O value.  False: exactly zero.  None: unsupported."""
    m = spec.degree
    if m % 2 == 0:
        if n % 2 or m < n:
            return True
        return None
    if m < n:
        return False
    return None


def exact_integral(spec: MonomialSpec, n: int) -> Fraction:
    """Exact Haar integral of the monomial; Fraction."""
    if n < 1:
        raise ValueError("need n >= 1")
    spec.validate(n)
    if spec.group == "U":
        return _unitary_exact(spec, n)
    if spec.group == "SU":
        short = _su_window(spec, n)
        return _unitary_exact(spec, n) if short is None else short
    if spec.group in ("O", "SO"):
        if spec.group == "SO":
            if n == 1:
                return Fraction(1)  # the one-dimensional group is trivial
            ok = _so_window_ok(spec, n)
            if ok is None:
                raise UnsupportedIntegralError(
                    f"SO({n}) degree-{spec.degree} monomials pick up "
                    f"determinant (epsilon-tensor) invariants; supported "
                    f"only when the degree is even and (N odd or degree < N), "
                    f"or odd with degree < N")
            if ok is False:
                return Fraction(0)
        return _orthogonal_exact(spec, n)
    return _symplectic_exact(spec, n)


# ---------------------------------------------------------------------------
# leading asymptotics

def delta_form(t1, t2) -> int:
    if len(t1) != len(t2):
        raise ValueError("length mismatch")
    return 1 if all(a == b for a, b in zip(t1, t2)) else 0


def j_entry(i: int, j: int) -> int:
    """Interleaved skew form: J[i, i+1] = 1 for odd i, J[i, i-1] = -1."""
    if i % 2 and j == i + 1:
        return 1
    if i % 2 == 0 and j == i - 1:
        return -1
    return 0


def m_entry(k: int, l: int, i: int, j: int) -> int:
    """Mixed bilinear form: the J entry when the conjugation tags agree,
    a plain delta when they differ."""
    if k == l:
        return j_entry(i, j)
    return 1 if i == j else 0


def m_form(t1, t2, k1, k2) -> int:
    if not len(t1) == len(t2) == len(k1) == len(k2):
        raise ValueError("length mismatch")
    out = 1
    for i, j, k, l in zip(t1, t2, k1, k2):
        w = m_entry(k, l, i, j)
        if not w:
            return 0
        out *= w
    return out


def asymptotic_leading(spec: MonomialSpec, n: int) -> Fraction:
    """The order-N^(-q) coefficient of the integral: permutation matchings
    for U/SU, pair-partition delta products for O/SO, pair-partition mixed
    form products for Sp."""
    if n < 1:
        raise ValueError("need n >= 1")
    spec.validate(n)
    if spec.group in ("U", "SU"):
        if spec.group == "SU":
            short = _su_window(spec, n)
            if short is not None:
                return short
        plain = [f for f in spec.factors if not f.conj]
        conj = [f for f in spec.factors if f.conj]
        if len(plain) != len(conj):
            return Fraction(0)
        q = len(plain)
        if q == 0:
            return Fraction(1)
        count = 0
        for p in perms.all_permutations(q):
            if all(plain[k].row == conj[p[k]].row
                   and plain[k].col == conj[p[k]].col for k in range(q)):
                count += 1
        return Fraction(count, n ** q)

    if spec.group in ("O", "SO"):
        if spec.group == "SO":
            ok = _so_window_ok(spec, n)
            if ok is None:
                raise UnsupportedIntegralError(
                    f"no leading formula for SO({n}) at degree {spec.degree} "
                    f"without epsilon-tensor terms")
            if ok is False:
                return Fraction(0)
        m = spec.degree
        if m % 2:
            return Fraction(0)
        if m == 0:
            return Fraction(1)
        q = m // 2
        total = 0
        rows = [f.row for f in spec.factors]
        cols = [f.col for f in spec.factors]
        for pairing in all_pairings(m):
            total += all(rows[a - 1] == rows[b - 1] and cols[a - 1] == cols[b - 1]
                         for a, b in pairing)
        return Fraction(total, n ** q)

    m = spec.degree
    if m % 2:
        return Fraction(0)
    if m == 0:
        return Fraction(1)
    q = m // 2
    rows = [f.row for f in spec.factors]
    cols = [f.col for f in spec.factors]
    tags = [2 if f.conj else 1 for f in spec.factors]
    total = 0
    for pairing in all_pairings(m):
        term = 1
        for a, b in pairing:
            term *= m_entry(tags[a - 1], tags[b - 1], rows[a - 1], rows[b - 1])
            if not term:
                break
            term *= m_entry(tags[a - 1], tags[b - 1], cols[a - 1], cols[b - 1])
            if not term:
                break
        total += term
    return Fraction(total, (2 * n) ** q)
