"""Exact tensor algebra on V^(x)k with rational coefficients.

Tensors are sparse maps from index tuples (alphabet letters, see tableaux)
to rational numbers.  The module provides slot permutations, row-column
symmetrizers, the invariant bilinear pairings of the orthogonal and
symplectic groups, index contraction and expansion, the split of a tensor
into traceless and trace parts, and the block projector attached to a
partition acting on V^(x)k.
"""

import itertools
import math
from fractions import Fraction

from . import perms, tableaux
from .tableaux import Tableau


class SparseTensor:
    """Sparse tensor of fixed order; zero coefficients are never stored."""

    def __init__(self, order: int, data=None):
        self.order = order
        self.data = {}
        if data:
            for idx, c in data.items():
                if c:
                    self.data[tuple(idx)] = self.data.get(tuple(idx), 0) + c

    @classmethod
    def elementary(cls, index) -> "SparseTensor":
        index = tuple(index)
        return cls(len(index), {index: 1})

    @classmethod
    def unit(cls) -> "SparseTensor":
        """The order-0 tensor equal to 1."""
        return cls(0, {(): 1})

    def copy(self) -> "SparseTensor":
        t = SparseTensor(self.order)
        t.data = dict(self.data)
        return t

    def is_zero(self) -> bool:
        return not self.data

    def add_term(self, index, coeff):
        if not coeff:
            return
        cur = self.data.get(index, 0) + coeff
        if cur:
            self.data[index] = cur
        else:
            self.data.pop(index, None)

    def __add__(self, other):
        if self.order != other.order:
            raise ValueError("order mismatch")
        out = self.copy()
        for idx, c in other.data.items():
            out.add_term(idx, c)
        return out

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, scalar):
        out = SparseTensor(self.order)
        if scalar:
            out.data = {idx: scalar * c for idx, c in self.data.items()}
        return out

    def inner(self, other: "SparseTensor"):
        """Dot product in the index basis; exact."""
        if self.order != other.order:
            raise ValueError("order mismatch")
        a, b = self.data, other.data
        if len(b) < len(a):
            a, b = b, a
        return sum((c * b[idx] for idx, c in a.items() if idx in b), 0)

    def norm_squared(self):
        return sum((c * c for c in self.data.values()), 0)

    def tensor(self, other: "SparseTensor") -> "SparseTensor":
        out = SparseTensor(self.order + other.order)
        for ia, ca in self.data.items():
            for ib, cb in other.data.items():
                out.add_term(ia + ib, ca * cb)
        return out

    def __eq__(self, other):
        return (isinstance(other, SparseTensor) and self.order == other.order
                and all(Fraction(c) == Fraction(other.data.get(i, 0))
                        for i, c in self.data.items())
                and all(i in self.data for i in other.data))

    def __repr__(self):
        body = " + ".join(f"{c}*e{list(i)}" for i, c in sorted(self.data.items()))
        return f"SparseTensor({self.order}: {body or '0'})"


def apply_permutation(p, t: SparseTensor) -> SparseTensor:
    """Move the factor in slot i to slot p[i]."""
    if len(p) != t.order:
        raise ValueError("permutation length must match tensor order")
    out = SparseTensor(t.order)
    for idx, c in t.data.items():
        new = [0] * t.order
        for i, x in enumerate(idx):
            new[p[i]] = x
        out.add_term(tuple(new), c)
    return out


class GroupAlgebraElement:
    """Formal rational combination of slot permutations."""

    def __init__(self, k: int, terms=None):
        self.k = k
        self.terms = {}
        if terms:
            for p, c in terms.items():
                if c:
                    self.terms[tuple(p)] = self.terms.get(tuple(p), 0) + c

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            out = GroupAlgebraElement(self.k)
            for p, cp in self.terms.items():
                for q, cq in other.terms.items():
                    r = perms.compose(p, q)
                    cur = out.terms.get(r, 0) + cp * cq
                    if cur:
                        out.terms[r] = cur
                    else:
                        out.terms.pop(r, None)
            return out
        return self.scale(other)

    def scale(self, scalar):
        return GroupAlgebraElement(
            self.k, {p: scalar * c for p, c in self.terms.items()})

    def __sub__(self, other):
        out = GroupAlgebraElement(self.k, dict(self.terms))
        for p, c in other.terms.items():
            cur = out.terms.get(p, 0) - c
            if cur:
                out.terms[p] = cur
            else:
                out.terms.pop(p, None)
        return out

    def apply(self, t: SparseTensor) -> SparseTensor:
        out = SparseTensor(t.order)
        for p, c in self.terms.items():
            for idx, tc in t.data.items():
                new = [0] * t.order
                for i, x in enumerate(idx):
                    new[p[i]] = x
                out.add_term(tuple(new), c * tc)
        return out


def _row_major_cells(shape):
    return [(r, c) for r, row_len in enumerate(shape) for c in range(row_len)]


def _subgroup_perms(k: int, blocks: list[list[int]]):
    """All permutations of {0..k-1} permuting each block within itself."""
    out = []
    for parts in itertools.product(*[itertools.permutations(b) for b in blocks]):
        p = list(range(k))
        for block, image in zip(blocks, parts):
            for src, dst in zip(block, image):
                p[src] = dst
        out.append(tuple(p))
    return out


def young_symmetrizer(shape) -> GroupAlgebraElement:
    """Column antisymmetrization after row symmetrization, cells row-major.

    Satisfies c*c = mu*c with mu from tableaux.young_constant_mu.
    """
    shape = tableaux.check_shape(shape)
    m = tableaux.weight(shape)
    cells = _row_major_cells(shape)
    label = {cell: s for s, cell in enumerate(cells)}
    rows = [[label[(r, c)] for c in range(row_len)]
            for r, row_len in enumerate(shape)]
    tl = tableaux.conjugate(shape)
    cols = [[label[(r, c)] for r in range(col_len)]
            for c, col_len in enumerate(tl)]
    row_group = _subgroup_perms(m, rows)
    col_group = _subgroup_perms(m, cols)
    elem = GroupAlgebraElement(m)
    for q in col_group:
        sq = _perm_sign(q)
        for p in row_group:
            r = perms.compose(q, p)
            elem.terms[r] = elem.terms.get(r, 0) + sq
    elem.terms = {p: c for p, c in elem.terms.items() if c}
    return elem


def _perm_sign(p) -> int:
    return 1 if sum(n - 1 for n in perms.cycle_type(p)) % 2 == 0 else -1


def tableau_tensor(t: Tableau) -> SparseTensor:
    """Elementary tensor whose slot s holds the row-major entry s of t."""
    return SparseTensor.elementary(t.row_major())


def apply_symmetrizer(shape, t: SparseTensor) -> SparseTensor:
    return young_symmetrizer(shape).apply(t)


def normalization_squared(shape, t: Tableau):
    """Squared length of the symmetrized tableau tensor."""
    v = apply_symmetrizer(shape, tableau_tensor(t))
    return v.inner(v)


class BilinearForm:
    """Invariant pairing on V, with the dual-basis data used for expansion.

    kind "orthogonal" covers both realizations of the symmetric form:
    split=True uses the barred alphabet with omega(i, ibar) = 1, split=False
    the standard basis with omega = delta.  kind "symplectic" is the skew
    form with omega(ibar, i) = 1 = -omega(i, ibar).
    """

    def __init__(self, kind: str, n: int, split: bool = True):
        self.kind = kind
        self.n = n
        if kind == "orthogonal":
            self.letters = tableaux.o_alphabet(n) if split else tableaux.gl_alphabet(n)
            self.split = split
        elif kind == "symplectic":
            self.letters = tableaux.sp_alphabet(n)
            self.split = True
        else:
            raise ValueError(f"unknown form kind {kind!r}")
        self.dim = len(self.letters)
        self._letter_pos = {x: i for i, x in enumerate(self.letters)}

    def bar(self, x: int) -> int:
        return -x if self.split else x

    def pairing(self, x: int, y: int) -> int:
        """omega(e_x, e_y)."""
        if y != self.bar(x):
            return 0
        if self.kind == "symplectic":
            return 1 if x < 0 else -1
        return 1

    def dsign(self, x: int) -> int:
        """Coefficient s_x in sum_p f_p (x) f^p = sum_x s_x e_x (x) e_bar(x)."""
        if self.kind == "symplectic":
            return 1 if x < 0 else -1
        return 1

    def dual_pairs(self):
        return [(x, self.bar(x), self.dsign(x)) for x in self.letters]

    def letter_index(self, x: int) -> int:
        return self._letter_pos[x]

    def cache_key(self):
        return (self.kind, self.n, self.split)

    def __repr__(self):
        tag = "split" if self.split else "standard"
        return f"BilinearForm({self.kind}, n={self.n}, {tag})"


def orthogonal_form(n: int, split: bool = True) -> BilinearForm:
    return BilinearForm("orthogonal", n, split)


def symplectic_form(n: int) -> BilinearForm:
    return BilinearForm("symplectic", n)


def contract(t: SparseTensor, i: int, j: int, form: BilinearForm) -> SparseTensor:
    """Pair slots i < j with the form; order drops by two."""
    if not 0 <= i < j < t.order:
        raise ValueError("need 0 <= i < j < order")
    out = SparseTensor(t.order - 2)
    for idx, c in t.data.items():
        w = form.pairing(idx[i], idx[j])
        if w:
            rest = tuple(x for s, x in enumerate(idx) if s != i and s != j)
            out.add_term(rest, w * c)
    return out


def expand(t: SparseTensor, i: int, j: int, form: BilinearForm) -> SparseTensor:
    """Insert the invariant dual pair at result slots i < j; order grows by two."""
    k = t.order + 2
    if not 0 <= i < j < k:
        raise ValueError("need 0 <= i < j < new order")
    out = SparseTensor(k)
    for idx, c in t.data.items():
        for x, y, s in form.dual_pairs():
            new = [0] * k
            it = iter(idx)
            for pos in range(k):
                if pos == i:
                    new[pos] = x
                elif pos == j:
                    new[pos] = y
                else:
                    new[pos] = next(it)
            out.add_term(tuple(new), s * c)
    return out


_trace_span_cache: dict = {}


def _trace_span_basis(order: int, form: BilinearForm):
    """Orthogonal rational basis of the span of all expanded lower tensors."""
    key = (order, form.cache_key())
    if key in _trace_span_cache:
        return _trace_span_cache[key]
    basis = []
    if order >= 2:
        for i, j in itertools.combinations(range(order), 2):
            for lower in itertools.product(form.letters, repeat=order - 2):
                v = expand(SparseTensor.elementary(lower), i, j, form)
                for u in basis:
                    coef = Fraction(u.inner(v), u.norm_squared())
                    if coef:
                        v = v - coef * u
                if not v.is_zero():
                    basis.append(v)
    _trace_span_cache[key] = basis
    return basis


def traceless_project(t: SparseTensor, form: BilinearForm):
    """Split t = t0 + t1 with every contraction of t0 zero and t1 in the
    span of expanded lower-order tensors; the parts are orthogonal."""
    t1 = SparseTensor(t.order)
    for u in _trace_span_basis(t.order, form):
        coef = Fraction(u.inner(t), u.norm_squared())
        if coef:
            t1 = t1 + coef * u
    return t - t1, t1


class TensorOperator:
    """Dense rational operator on V^(x)k, rows and columns indexed by
    letter tuples in lexicographic alphabet order."""

    def __init__(self, form: BilinearForm, k: int, mat=None):
        self.form = form
        self.k = k
        self.index = list(itertools.product(form.letters, repeat=k))
        self.pos = {idx: i for i, idx in enumerate(self.index)}
        n = len(self.index)
        self.mat = mat if mat is not None else [
            [Fraction(0)] * n for _ in range(n)]

    @property
    def dim(self) -> int:
        return len(self.index)

    def matmul(self, other: "TensorOperator") -> "TensorOperator":
        if self.k != other.k or self.form.cache_key() != other.form.cache_key():
            raise ValueError("operator shape mismatch")
        from .ratlinalg import mat_mul
        return TensorOperator(self.form, self.k, mat_mul(self.mat, other.mat))

    def rank(self) -> int:
        from .ratlinalg import rank
        return rank(self.mat)

    def apply(self, t: SparseTensor) -> SparseTensor:
        out = SparseTensor(self.k)
        for idx, c in t.data.items():
            col = self.pos[idx]
            for r, row in enumerate(self.mat):
                if row[col]:
                    out.add_term(self.index[r], row[col] * c)
        return out

    def scaled(self, s) -> "TensorOperator":
        return TensorOperator(self.form, self.k,
                              [[s * x for x in row] for row in self.mat])

    def sub(self, other: "TensorOperator") -> "TensorOperator":
        return TensorOperator(self.form, self.k,
                              [[a - b for a, b in zip(ra, rb)]
                               for ra, rb in zip(self.mat, other.mat)])

    def is_zero(self) -> bool:
        return all(not x for row in self.mat for x in row)


class CostGateError(RuntimeError):
    """Raised when a request exceeds the supported exact-computation size."""


def pair_tensor(form: BilinearForm, k: int) -> SparseTensor:
    """k-fold product of the invariant dual pair, slots (2i, 2i+1)."""
    t = SparseTensor.unit()
    one = SparseTensor(2)
    for x, y, s in form.dual_pairs():
        one.add_term((x, y), s)
    for _ in range(k):
        t = t.tensor(one)
    return t


def central_symmetrizer(shape) -> GroupAlgebraElement:
    """Conjugation average of the Young symmetrizer over all slot
    permutations, divided by mu^2.

    The average is central, so it acts as a scalar on every irreducible
    slot-permutation module; the scalar is mu^2 on the module attached to
    the shape and 0 elsewhere, which makes the result the central
    idempotent selecting that module.  Only class totals of the
    symmetrizer coefficients are needed.
    """
    shape = tableaux.check_shape(shape)
    m = tableaux.weight(shape)
    c = young_symmetrizer(shape)
    mu = tableaux.young_constant_mu(shape)

    coeff_by_type = {}
    for p, cp in c.terms.items():
        ct = perms.cycle_type(p)
        coeff_by_type[ct] = coeff_by_type.get(ct, 0) + cp

    fact = math.factorial(m)
    out = GroupAlgebraElement(m)
    for g in perms.all_permutations(m):
        ct = perms.cycle_type(g)
        total = coeff_by_type.get(ct)
        if total:
            out.terms[g] = Fraction(total * fact, perms.class_size(ct)) / (mu * mu)
    return out


def isotypic_projector(lam, k: int, form: BilinearForm) -> TensorOperator:
    """Projector onto the block of V^(x)k labeled by the weight-k partition lam.

    The block is the lam-isotypic part of the contraction-free subspace:
    project away every expanded lower-order tensor, then apply the central
    idempotent of the slot-permutation algebra.  The two projections
    commute (the expansion span is permutation-stable), so the composite
    is idempotent; exact rational entries.
    """
    lam = tableaux.check_shape(lam)
    if tableaux.weight(lam) != k:
        raise ValueError("partition weight must equal the tensor order")
    if k > 3:
        raise CostGateError(
            f"order-{k} projector needs an exact orthogonal basis of the "
            f"expansion span inside a {len(form.letters) ** k}-dimensional "
            f"space plus {math.factorial(k)} symmetrizer terms; supported "
            f"up to order 3")
    z = central_symmetrizer(lam)
    op = TensorOperator(form, k)
    for col, idx in enumerate(op.index):
        t0, _ = traceless_project(SparseTensor.elementary(idx), form)
        v = z.apply(t0)
        for out_idx, cval in v.data.items():
            op.mat[op.pos[out_idx]][col] += cval
    return op
