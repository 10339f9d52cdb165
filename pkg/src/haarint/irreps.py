"""Irreducible-representation matrix elements of the classical compact
groups: exact bases inside tensor powers, sampled representation
matrices, and exact / leading-order / Monte Carlo integrals of products
of their entries.

A basis vector is kept as an exact rational tensor plus its rational
norm-square; representation entries are <b_i, u^(x)m b_j>/sqrt(n_i n_j).
Integrating a product of entries expands every bracket into elementary
tensor monomials, so the integral reduces to the same commutant
projection the monomial engine solves, with the Weingarten weights
contracted against per-basis-element match vectors.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import moments, perms, tableaux
from .tensors import (
    BilinearForm,
    CostGateError,
    SparseTensor,
    apply_symmetrizer,
    orthogonal_form,
    symplectic_form,
    tableau_tensor,
    traceless_project,
)

# the traceless machinery and the pairing count are the cost drivers, so
# the plain GL path may go further in weight and dimension than the
# orthogonal/symplectic ones
EXACT_WEIGHT_CAP = {"U": 8, "O": 6, "Sp": 6}
EXACT_DIM_CAP = {"U": 10, "O": 4, "Sp": 4}


@dataclass
class IrrepBasis:
    group: str
    lam: tuple
    n: int
    vectors: list       # orthogonal rational tensors, tableau order
    norms2: list        # Fraction norm-squares, parallel to vectors
    tableaux: list      # the surviving fillings, for labeling
    dropped: int        # fillings whose projection fell into earlier spans
    form: BilinearForm | None

    @property
    def rank(self) -> int:
        return len(self.vectors)

    @property
    def weight(self) -> int:
        return tableaux.weight(self.lam)


def _primitive(t: SparseTensor) -> SparseTensor:
    denom = 1
    for v in t.data.values():
        denom = denom * v.denominator // math.gcd(denom, v.denominator)
    num = 0
    for v in t.data.values():
        num = math.gcd(num, abs(v.numerator * (denom // v.denominator)))
    return Fraction(denom, num) * t if num else t


def _gram_schmidt(candidates):
    vectors, norms2, kept, dropped = [], [], [], 0
    for label, v in candidates:
        u = v
        for w, n2 in zip(vectors, norms2):
            c = w.inner(u)
            if c:
                u = u - (c / n2) * w
        u = _primitive(u)
        n2 = u.norm_squared()
        if n2 == 0:
            dropped += 1
            continue
        vectors.append(u)
        norms2.append(n2)
        kept.append(label)
    return vectors, norms2, kept, dropped


_basis_cache: dict = {}


def build_irrep_basis(group: str, lam, n: int) -> IrrepBasis:
    lam = tableaux.check_shape(lam)
    key = (group, lam, n)
    if key in _basis_cache:
        return _basis_cache[key]
    if group == "U":
        if len(lam) > n:
            raise ValueError(f"shape {lam} has more rows than GL({n}) letters")
        fillings = tableaux.enumerate_gl_tableaux(lam, n)
        form = None
    elif group == "O":
        fillings = tableaux.enumerate_o_tableaux(lam, n)
        form = orthogonal_form(n)
    elif group == "Sp":
        fillings = tableaux.enumerate_sp_tableaux(lam, n)
        form = symplectic_form(n)
    else:
        raise ValueError(f"no irrep basis for group tag {group!r}")

    def project(t):
        return t if form is None else traceless_project(t, form)[0]

    candidates = ((t, project(apply_symmetrizer(lam, tableau_tensor(t))))
                  for t in fillings)
    vectors, norms2, kept, dropped = _gram_schmidt(candidates)
    basis = IrrepBasis(group, lam, n, vectors, norms2, kept, dropped, form)
    _basis_cache[key] = basis
    return basis


# ---------------------------------------------------------------------------
# sampled representation matrices

def _letter_positions(basis: IrrepBasis) -> dict:
    if basis.form is None:
        return {x: x - 1 for x in range(1, basis.n + 1)}
    return {x: k for k, x in enumerate(basis.form.letters)}

def _split_transition(n: int) -> np.ndarray:
    """Columns express the paired complex letters through the real basis:
    letter -i = (e_{2i-1} + i e_{2i})/sqrt2, +i = (e_{2i-1} - i e_{2i})/sqrt2,
    0 = e_n for odd n."""
    form = orthogonal_form(n)
    s = np.zeros((n, n), dtype=complex)
    for k, x in enumerate(form.letters):
        if x == 0:
            s[n - 1, k] = 1.0
        else:
            i = abs(x)
            sign = 1.0 if x < 0 else -1.0
            s[2 * i - 2, k] = 1.0 / np.sqrt(2.0)
            s[2 * i - 1, k] = sign * 1j / np.sqrt(2.0)
    return s


def _action_matrix(basis: IrrepBasis, u: np.ndarray) -> np.ndarray:
    if basis.group == "O":
        s = _split_transition(basis.n)
        return s.conj().T @ u.astype(complex) @ s
    return u.astype(complex)


def _float_vectors(basis: IrrepBasis):
    cache = getattr(basis, "_floats", None)
    if cache is None:
        pos = _letter_positions(basis)
        d = len(pos)
        m = basis.weight
        cache = []
        for vec, n2 in zip(basis.vectors, basis.norms2):
            arr = np.zeros((d,) * m if m else (), dtype=complex)
            for idx, c in vec.data.items():
                arr[tuple(pos[x] for x in idx)] = float(c)
            cache.append(arr / np.sqrt(float(n2)))
        basis._floats = cache
    return cache


def _apply_modes(u: np.ndarray, arr: np.ndarray, m: int) -> np.ndarray:
    for k in range(m):
        arr = np.moveaxis(np.tensordot(arr, u, axes=([k], [1])), -1, k)
    return arr


def rho_matrix(u, basis: IrrepBasis) -> np.ndarray:
    """Representation matrix in the orthonormalized tableau basis."""
    mat = np.asarray(u.matrix if hasattr(u, "matrix") else u)
    d = len(basis.form.letters) if basis.form is not None else basis.n
    if mat.shape != (d, d):
        raise ValueError(f"sample is {mat.shape}, module needs {(d, d)}")
    act = _action_matrix(basis, mat)
    vecs = _float_vectors(basis)
    m = basis.weight
    out = np.zeros((basis.rank, basis.rank), dtype=complex)
    for j, bj in enumerate(vecs):
        w = _apply_modes(act, bj, m)
        for i, bi in enumerate(vecs):
            out[i, j] = np.sum(np.conj(bi) * w)
    return out


# ---------------------------------------------------------------------------
# integral specs

@dataclass(frozen=True)
class RepFactor:
    lam: tuple
    row: int
    col: int
    conj: bool = False

    def __init__(self, lam, row, col, conj=False):
        object.__setattr__(self, "lam", tableaux.check_shape(lam))
        object.__setattr__(self, "row", row)
        object.__setattr__(self, "col", col)
        object.__setattr__(self, "conj", bool(conj))


@dataclass(frozen=True)
class RepMatrixElementSpec:
    group: str
    n: int
    factors: tuple

    def __init__(self, group, n, factors):
        if group not in ("U", "O", "Sp"):
            raise ValueError(f"unknown group tag {group!r}")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "factors", tuple(
            f if isinstance(f, RepFactor) else RepFactor(*f) for f in factors))

    @property
    def total_weight(self) -> int:
        return sum(tableaux.weight(f.lam) for f in self.factors)

    def to_dict(self) -> dict:
        return {"group": self.group, "N": self.n,
                "factors": [{"lambda": list(f.lam), "i": f.row, "j": f.col,
                             "conj": f.conj} for f in self.factors]}

    @classmethod
    def from_dict(cls, d: dict) -> "RepMatrixElementSpec":
        return cls(d["group"], d["N"],
                   [RepFactor(tuple(f["lambda"]), f["i"], f["j"],
                              bool(f.get("conj"))) for f in d["factors"]])


def _bases_for(spec: RepMatrixElementSpec):
    out = []
    for f in spec.factors:
        basis = build_irrep_basis(spec.group, f.lam, spec.n)
        if not (1 <= f.row <= basis.rank and 1 <= f.col <= basis.rank):
            raise ValueError(
                f"entry ({f.row},{f.col}) outside rank-{basis.rank} module {f.lam}")
        out.append(basis)
    return out


def integrate_irrep_mc(spec: RepMatrixElementSpec, samples: int, seed: int):
    from .sampling import mc_expectation, sample_group
    bases = _bases_for(spec)

    def draw(stream):
        u = sample_group(spec.group, spec.n, stream)
        val = 1.0 + 0.0j
        for f, basis in zip(spec.factors, bases):
            entry = rho_matrix(u, basis)[f.row - 1, f.col - 1]
            val *= entry.conjugate() if f.conj else entry
        return val

    return mc_expectation(draw, samples=samples, seed=seed)


# ---------------------------------------------------------------------------
# exact and leading-order integrals

def _tensor_product(parts) -> SparseTensor:
    out = SparseTensor.unit()
    for p in parts:
        out = out.tensor(p)
    return out


def _bar_relabel(t: SparseTensor, form: BilinearForm, signed: bool) -> SparseTensor:
    out = SparseTensor(t.order)
    for idx, c in t.data.items():
        new = tuple(form.bar(x) for x in idx)
        if signed:
            # entrywise conjugation of a compact symplectic matrix flips
            # each letter and charges a sign per originally-barred letter
            for x in new:
                if x < 0:
                    c = -c
        out.add_term(new, c)
    return out


def _twist_late(t: SparseTensor, q: int, form: BilinearForm,
                signed: bool) -> SparseTensor:
    """Rewrite the last q slots through the inverse matrix: letters flip
    and, in the symplectic case, each flipped positive letter costs a sign."""
    out = SparseTensor(t.order)
    for idx, c in t.data.items():
        head, tail = idx[:q], idx[q:]
        new_tail = tuple(form.bar(x) for x in tail)
        if signed:
            for x in new_tail:
                if x < 0:
                    c = -c
        out.add_term(head + new_tail, c)
    return out


@dataclass
class _Pipeline:
    group: str
    n: int
    q: int
    row_tensor: SparseTensor
    col_tensor: SparseTensor
    norm_product: Fraction  # product of all norm-squares under the root
    trivial: Fraction | None = None


def _build_pipeline(spec: RepMatrixElementSpec) -> _Pipeline:
    bases = _bases_for(spec)
    s = Fraction(1)
    for f, basis in zip(spec.factors, bases):
        s *= basis.norms2[f.row - 1] * basis.norms2[f.col - 1]

    if spec.group == "U":
        plain = [(f, b) for f, b in zip(spec.factors, bases) if not f.conj]
        conj = [(f, b) for f, b in zip(spec.factors, bases) if f.conj]
        qp = sum(b.weight for _, b in plain)
        qc = sum(b.weight for _, b in conj)
        if qp != qc:
            return _Pipeline("U", spec.n, 0, SparseTensor(0), SparseTensor(0),
                             s, trivial=Fraction(0))
        if qp == 0:
            return _Pipeline("U", spec.n, 0, SparseTensor(0), SparseTensor(0),
                             s, trivial=Fraction(1))
        row = _tensor_product(
            [b.vectors[f.row - 1] for f, b in plain]
            + [b.vectors[f.row - 1] for f, b in conj])
        col = _tensor_product(
            [b.vectors[f.col - 1] for f, b in plain]
            + [b.vectors[f.col - 1] for f, b in conj])
        return _Pipeline("U", spec.n, qp, row, col, s)

    form = orthogonal_form(spec.n) if spec.group == "O" else symplectic_form(spec.n)
    signed = spec.group == "Sp"
    rows, cols = [], []
    for f, basis in zip(spec.factors, bases):
        r = basis.vectors[f.row - 1]
        c = basis.vectors[f.col - 1]
        if f.conj:
            r = _bar_relabel(r, form, signed)
            c = _bar_relabel(c, form, signed)
        rows.append(r)
        cols.append(c)
    m = spec.total_weight
    if m % 2:
        return _Pipeline(spec.group, spec.n, 0, SparseTensor(0), SparseTensor(0),
                         s, trivial=Fraction(0))
    if m == 0:
        return _Pipeline(spec.group, spec.n, 0, SparseTensor(0), SparseTensor(0),
                         s, trivial=Fraction(1))
    q = m // 2
    row = _twist_late(_tensor_product(rows), q, form, signed)
    col = _twist_late(_tensor_product(cols), q, form, signed)
    return _Pipeline(spec.group, spec.n, q, row, col, s)


def _match_vector(pipe: _Pipeline, elements, form):
    q = pipe.q
    out_r, out_c = [], []
    for elem in elements:
        acc_r = Fraction(0)
        for idx, c in pipe.row_tensor.data.items():
            if form is None:
                if all(idx[elem[s]] == idx[q + s] for s in range(q)):
                    acc_r += c
            else:
                w = moments.brauer_entry(elem, idx[:q], idx[q:], form)
                if w:
                    acc_r += c * w
        out_r.append(acc_r)
        acc_c = Fraction(0)
        for idx, c in pipe.col_tensor.data.items():
            if form is None:
                if all(idx[elem[s]] == idx[q + s] for s in range(q)):
                    acc_c += c
            else:
                w = moments.brauer_entry(elem, idx[:q], idx[q:], form)
                if w:
                    acc_c += c * w
        out_c.append(acc_c)
    return out_r, out_c


def _finish(core: Fraction, norm_product: Fraction) -> Fraction:
    if core == 0:
        return Fraction(0)
    root = _exact_sqrt(norm_product)
    if root is None:
        raise ValueError(
            "norm-square product is not a perfect square; the value is "
            f"core/sqrt({norm_product}) with core={core}")
    return core / root


def _exact_sqrt(x: Fraction) -> Fraction | None:
    rn = math.isqrt(x.numerator)
    rd = math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def _gate_exact(spec: RepMatrixElementSpec):
    m = spec.total_weight
    wcap = EXACT_WEIGHT_CAP[spec.group]
    if m > wcap:
        raise CostGateError(
            f"total weight {m} exceeds the exact-path cap {wcap} for "
            f"{spec.group}; use the Monte Carlo or leading-order paths")
    cap = EXACT_DIM_CAP[spec.group]
    if spec.n > cap:
        raise CostGateError(
            f"N={spec.n} exceeds the exact-path cap {cap} for {spec.group}; "
            f"use the Monte Carlo or leading-order paths")


def integrate_irrep_exact(spec: RepMatrixElementSpec) -> Fraction:
    _gate_exact(spec)
    pipe = _build_pipeline(spec)
    if pipe.trivial is not None:
        return _finish(pipe.trivial, pipe.norm_product) if pipe.trivial else Fraction(0)
    group = "U" if pipe.group == "U" else pipe.group
    basis = moments.build_commutant_basis(group, pipe.q)
    wdata = moments.weingarten_data(moments.gram_matrix(basis, pipe.n))
    form = None
    if pipe.group == "O":
        form = orthogonal_form(pipe.n)
    elif pipe.group == "Sp":
        form = symplectic_form(pipe.n)
    r_vec, c_vec = _match_vector(pipe, basis.elements, form)
    core = Fraction(0)
    for a, ra in enumerate(r_vec):
        if not ra:
            continue
        row = wdata.weights[a]
        for b, cb in enumerate(c_vec):
            if cb:
                core += ra * cb * row[b]
    return _finish(core, pipe.norm_product)


def asymptotic_irrep(spec: RepMatrixElementSpec) -> Fraction:
    """Leading-order value: the Weingarten weights collapse to the
    diagonal 1/D^q, leaving the permutation or pairing delta sums."""
    pipe = _build_pipeline(spec)
    if pipe.trivial is not None:
        return _finish(pipe.trivial, pipe.norm_product) if pipe.trivial else Fraction(0)
    group = "U" if pipe.group == "U" else pipe.group
    basis = moments.build_commutant_basis(group, pipe.q)
    form = None
    d = pipe.n
    if pipe.group == "O":
        form = orthogonal_form(pipe.n)
    elif pipe.group == "Sp":
        form = symplectic_form(pipe.n)
        d = 2 * pipe.n
    r_vec, c_vec = _match_vector(pipe, basis.elements, form)
    core = sum((ra * ca for ra, ca in zip(r_vec, c_vec)), Fraction(0))
    return _finish(core / Fraction(d) ** pipe.q, pipe.norm_product)
