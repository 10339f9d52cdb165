"""Irreducible-representation matrix elements: orthonormal module bases,
representation matrices, and exact / leading-order / Monte Carlo integrals.

Frozen expected values come from Schur orthogonality (an integral of
rho_ij conj(rho_kl) over one irreducible block equals delta delta / dim,
with the dimension checked against the product formulas in helpers) and
from the vector representation, where the matrix elements are plain
matrix entries and the monomial engine is an independent route.
"""

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from haarint import moments, sampling
from haarint.irreps import (
    RepFactor,
    RepMatrixElementSpec,
    asymptotic_irrep,
    build_irrep_basis,
    integrate_irrep_exact,
    integrate_irrep_mc,
    rho_matrix,
    _split_transition,
)
from haarint.tensors import CostGateError, orthogonal_form, symplectic_form

from helpers import gl_module_dimension_oracle, module_dimension_oracle


def schur_spec(group, n, lam, i=1, j=1, k=None, l=None):
    """rho^lam_ij conj(rho^lam_kl); (k, l) default to (i, j)."""
    k = i if k is None else k
    l = j if l is None else l
    return RepMatrixElementSpec(group, n, (
        RepFactor(lam, i, j, False), RepFactor(lam, k, l, True)))


def rep_spec(group, n, *factors):
    return RepMatrixElementSpec(group, n, [RepFactor(*f) for f in factors])


# ---------------------------------------------------------------------------
# spec objects

def test_spec_validation():
    with pytest.raises(ValueError):
        RepMatrixElementSpec("SU", 2, (RepFactor((1,), 1, 1, False),))
    with pytest.raises(ValueError):
        RepFactor((1, 2), 1, 1, False)  # not weakly decreasing
    s = rep_spec("U", 2, ((2,), 1, 1, False), ((1,), 2, 1, True))
    assert s.total_weight == 3


def test_spec_json_roundtrip():
    s = rep_spec("Sp", 2, ((2, 1), 1, 3, False), ((1,), 2, 2, True))
    d = s.to_dict()
    assert d["N"] == 2 and d["factors"][0]["lambda"] == [2, 1]
    assert RepMatrixElementSpec.from_dict(d) == s


# ---------------------------------------------------------------------------
# module bases: ranks match the tableau count and the dimension oracles

RANK_TABLE = [
    ("U", (1,), 2, 2),
    ("U", (2,), 2, 3),
    ("U", (1, 1), 2, 1),
    ("U", (2,), 3, 6),
    ("U", (2, 1), 3, 8),
    ("O", (1,), 3, 3),
    ("O", (2,), 3, 5),
    ("O", (1, 1), 3, 3),
    ("Sp", (1,), 1, 2),
    ("Sp", (2,), 1, 3),
    ("Sp", (1,), 2, 4),
    ("Sp", (1, 1), 2, 5),
    ("Sp", (2,), 2, 10),
]


@pytest.mark.parametrize("group,lam,n,rank", RANK_TABLE)
def test_basis_rank_frozen(group, lam, n, rank):
    basis = build_irrep_basis(group, lam, n)
    assert basis.rank == rank
    assert basis.dropped == 0
    assert len(basis.tableaux) == rank
    if group == "U":
        assert rank == gl_module_dimension_oracle(lam, n)
    else:
        form = symplectic_form(n) if group == "Sp" else orthogonal_form(n)
        assert rank == module_dimension_oracle(lam, form)


@pytest.mark.parametrize("group,lam,n,rank", RANK_TABLE)
def test_basis_vectors_orthogonal(group, lam, n, rank):
    basis = build_irrep_basis(group, lam, n)
    for i in range(rank):
        assert basis.vectors[i].norm_squared() == basis.norms2[i] > 0
        for j in range(i + 1, rank):
            assert basis.vectors[i].inner(basis.vectors[j]) == 0


def test_inadmissible_shapes_raise():
    with pytest.raises(ValueError):
        build_irrep_basis("U", (1, 1, 1), 2)
    with pytest.raises(ValueError):
        build_irrep_basis("O", (2, 1), 2)
    with pytest.raises(ValueError):
        build_irrep_basis("Sp", (1, 1), 1)


# ---------------------------------------------------------------------------
# representation matrices

RHO_CASES = [("U", (2, 1), 3), ("O", (2,), 3), ("Sp", (2,), 2)]


@pytest.mark.parametrize("group,lam,n", RHO_CASES)
def test_rho_identity(group, lam, n):
    basis = build_irrep_basis(group, lam, n)
    d = 2 * n if group == "Sp" else n
    rho = rho_matrix(np.eye(d), basis)
    assert np.allclose(rho, np.eye(basis.rank), atol=1e-12)


@pytest.mark.parametrize("group,lam,n", RHO_CASES)
def test_rho_unitary_and_homomorphic(group, lam, n):
    basis = build_irrep_basis(group, lam, n)
    u = sampling.sample_group(group, n, sampling.RngStream(31)).matrix
    v = sampling.sample_group(group, n, sampling.RngStream(32)).matrix
    ru, rv = rho_matrix(u, basis), rho_matrix(v, basis)
    assert np.allclose(ru @ ru.conj().T, np.eye(basis.rank), atol=1e-10)
    assert np.allclose(rho_matrix(u @ v, basis), ru @ rv, atol=1e-10)


def test_rho_vector_rep_is_the_matrix_itself():
    # GL and Sp use the standard basis in standard order; O uses the
    # split basis, so the matrix appears conjugated by the transition
    u = sampling.sample_group("U", 3, sampling.RngStream(41)).matrix
    assert np.allclose(rho_matrix(u, build_irrep_basis("U", (1,), 3)), u)
    w = sampling.sample_group("Sp", 2, sampling.RngStream(42)).matrix
    assert np.allclose(rho_matrix(w, build_irrep_basis("Sp", (1,), 2)), w)
    o = sampling.sample_group("O", 3, sampling.RngStream(43)).matrix
    s = _split_transition(3)
    assert np.allclose(rho_matrix(o, build_irrep_basis("O", (1,), 3)),
                       s.conj().T @ o @ s)


# ---------------------------------------------------------------------------
# Schur orthogonality, exactly

SCHUR_DIMS = [
    ("U", 2, (1,), 2), ("U", 2, (2,), 3), ("U", 2, (1, 1), 1),
    ("U", 2, (3,), 4), ("U", 2, (2, 1), 2),
    ("U", 3, (1,), 3), ("U", 3, (2,), 6), ("U", 3, (1, 1), 3),
    ("U", 3, (2, 1), 8), ("U", 3, (1, 1, 1), 1),
    ("O", 2, (1,), 2), ("O", 2, (2,), 2), ("O", 2, (3,), 2),
    ("O", 3, (1,), 3), ("O", 3, (2,), 5), ("O", 3, (1, 1), 3),
    ("O", 3, (3,), 7), ("O", 3, (2, 1), 5), ("O", 3, (1, 1, 1), 1),
    ("Sp", 1, (1,), 2), ("Sp", 1, (2,), 3),
    ("Sp", 2, (1,), 4), ("Sp", 2, (2,), 10), ("Sp", 2, (1, 1), 5),
]


@pytest.mark.parametrize("group,n,lam,dim", SCHUR_DIMS)
def test_schur_diagonal(group, n, lam, dim):
    basis = build_irrep_basis(group, lam, n)
    assert basis.rank == dim
    assert integrate_irrep_exact(schur_spec(group, n, lam)) == Fraction(1, dim)
    if dim > 1:
        assert integrate_irrep_exact(
            schur_spec(group, n, lam, i=1, j=dim)) == Fraction(1, dim)


@pytest.mark.parametrize("group,n,lam,dim",
                         [c for c in SCHUR_DIMS if c[3] > 1])
def test_schur_off_diagonal_zero(group, n, lam, dim):
    # mismatched entry pairs integrate to zero within one block
    assert integrate_irrep_exact(
        schur_spec(group, n, lam, i=1, j=1, k=2, l=2)) == 0
    assert integrate_irrep_exact(
        schur_spec(group, n, lam, i=1, j=2, k=2, l=1)) == 0


CROSS_CASES = [
    ("U", 2, (2,), (1, 1)),
    ("U", 3, (2,), (1, 1)),
    ("U", 3, (3,), (2, 1)),
    ("U", 3, (2, 1), (1, 1, 1)),
    ("O", 3, (2,), (1, 1)),
    ("O", 3, (3,), (2, 1)),
    ("O", 3, (3,), (1, 1, 1)),
    ("Sp", 2, (2,), (1, 1)),
]


@pytest.mark.parametrize("group,n,lam,mu", CROSS_CASES)
def test_schur_cross_block_zero(group, n, lam, mu):
    s = RepMatrixElementSpec(group, n, (
        RepFactor(lam, 1, 1, False), RepFactor(mu, 1, 1, True)))
    assert integrate_irrep_exact(s) == 0


def test_unbalanced_conjugation_zero():
    # one factor conjugated, one not: a global phase kills the average
    s = rep_spec("U", 2, ((2,), 1, 1, False), ((2,), 1, 1, False))
    assert integrate_irrep_exact(s) == 0


# ---------------------------------------------------------------------------
# the vector representation reproduces the monomial engine bit for bit

VECTOR_MONOMIALS = [
    [(1, 1, False), (1, 1, True)],
    [(1, 2, False), (1, 2, True)],
    [(1, 1, False), (2, 2, False), (1, 1, True), (2, 2, True)],
    [(1, 1, False), (2, 2, False), (1, 2, True), (2, 1, True)],
    [(1, 1, False), (1, 1, False), (1, 1, True), (1, 1, True)],
]


@pytest.mark.parametrize("group,n", [("U", 2), ("U", 3), ("Sp", 1), ("Sp", 2)])
@pytest.mark.parametrize("factors", VECTOR_MONOMIALS)
def test_vector_rep_matches_monomial_engine(group, n, factors):
    rs = RepMatrixElementSpec(group, n, [
        RepFactor((1,), i, j, c) for i, j, c in factors])
    ms = moments.MonomialSpec(group, [moments.Factor(i, j, c)
                                      for i, j, c in factors])
    assert integrate_irrep_exact(rs) == moments.exact_integral(ms, n)
    assert asymptotic_irrep(rs) == moments.asymptotic_leading(ms, n)


def test_vector_rep_orthogonal_split_second_moment():
    # the split-basis entries are not standard entries, but every
    # |rho_xy|^2 still averages to 1/n by two-sided invariance
    for x, y in itertools.product(range(1, 4), repeat=2):
        assert integrate_irrep_exact(
            schur_spec("O", 3, (1,), i=x, j=y)) == Fraction(1, 3)


# ---------------------------------------------------------------------------
# leading order

def test_leading_unitary_symmetric_square():
    # exact 2/(N(N+1)), leading 2/N^2: the rescaled gap is exactly 2/(N+1)
    for n in range(3, 11):
        s = schur_spec("U", n, (2,))
        gap = asymptotic_irrep(s) - integrate_irrep_exact(s)
        assert gap * n * n == Fraction(2, n + 1)


def test_leading_orthogonal_frozen():
    # traceless correction shows up one order down
    for n, lam, gap in [(3, (2,), Fraction(1, 45)), (4, (2,), Fraction(1, 72)),
                        (3, (1, 1), Fraction(-1, 9)),
                        (4, (1, 1), Fraction(-1, 24))]:
        s = schur_spec("O", n, lam)
        assert asymptotic_irrep(s) - integrate_irrep_exact(s) == gap


def test_leading_symplectic_frozen():
    for n, lam, gap in [(1, (2,), Fraction(1, 6)), (2, (2,), Fraction(1, 40)),
                        (2, (1, 1), Fraction(-3, 40))]:
        s = schur_spec("Sp", n, lam)
        assert asymptotic_irrep(s) - integrate_irrep_exact(s) == gap


def test_leading_vector_rep_exact_at_weight_two():
    # the q=1 Weingarten weight is exactly 1/D, so leading == exact
    for group, n in [("U", 4), ("O", 4), ("Sp", 2)]:
        s = schur_spec(group, n, (1,))
        assert asymptotic_irrep(s) == integrate_irrep_exact(s)


# ---------------------------------------------------------------------------
# Monte Carlo agreement

MC_CASES = [
    ("U", 2, [((2,), 1, 1, False), ((2,), 3, 3, False),
              ((2,), 1, 1, True), ((2,), 3, 3, True)], 7),
    ("U", 3, [((2, 1), 1, 2, False), ((2, 1), 1, 2, True)], 19),
    ("O", 3, [((2,), 1, 2, False), ((2,), 1, 2, True)], 11),
    ("O", 3, [((1, 1), 2, 2, False), ((1, 1), 2, 2, True)], 17),
    ("Sp", 1, [((2,), 1, 2, False), ((2,), 1, 2, True)], 13),
    ("Sp", 2, [((1, 1), 1, 1, False), ((1, 1), 1, 1, True)], 23),
]


@pytest.mark.parametrize("group,n,factors,seed", MC_CASES)
def test_exact_matches_monte_carlo(group, n, factors, seed):
    s = RepMatrixElementSpec(group, n, [RepFactor(*f) for f in factors])
    exact = complex(float(integrate_irrep_exact(s)))
    est = integrate_irrep_mc(s, samples=8000, seed=seed)
    assert abs(est.mean - exact) < 4 * est.stderr + 1e-9


def test_mc_reproducible():
    s = schur_spec("U", 2, (2,))
    a = integrate_irrep_mc(s, samples=500, seed=5)
    b = integrate_irrep_mc(s, samples=500, seed=5)
    assert a.mean == b.mean and a.stderr == b.stderr


# ---------------------------------------------------------------------------
# trivial factors and gates

def test_empty_shape_factor_is_constant_one():
    s = rep_spec("U", 3, ((), 1, 1, False))
    assert integrate_irrep_exact(s) == 1
    est = integrate_irrep_mc(s, samples=100, seed=1)
    assert est.mean == 1 and est.stderr == 0


def test_empty_shape_factor_is_neutral():
    base = schur_spec("U", 2, (2,))
    padded = RepMatrixElementSpec("U", 2,
                                  base.factors + (RepFactor((), 1, 1, False),))
    assert integrate_irrep_exact(padded) == integrate_irrep_exact(base)


def test_cost_gates():
    heavy = RepMatrixElementSpec("U", 2, tuple(
        RepFactor((2,), 1, 1, c) for c in (False,) * 3 + (True,) * 3))
    assert heavy.total_weight == 12
    with pytest.raises(CostGateError):
        integrate_irrep_exact(heavy)
    with pytest.raises(CostGateError):
        integrate_irrep_exact(schur_spec("O", 5, (1,)))
    with pytest.raises(CostGateError):
        integrate_irrep_exact(schur_spec("U", 11, (1,)))
    with pytest.raises(CostGateError):  # O/Sp weight cap sits below U's
        integrate_irrep_exact(RepMatrixElementSpec("O", 3, tuple(
            RepFactor((2,), 1, 1, c) for c in (False, False, True, True))))


# ---------------------------------------------------------------------------
# properties

@given(st.sampled_from(SCHUR_DIMS), st.integers(0, 1))
@settings(max_examples=20, deadline=None)
def test_schur_value_independent_of_entry(case, offset):
    # the diagonal of Schur orthogonality cannot depend on which entry
    group, n, lam, dim = case
    j = 1 + offset % dim
    assert integrate_irrep_exact(
        schur_spec(group, n, lam, i=1, j=j)) == Fraction(1, dim)
