"""Wigner matrices for SU(2) and the closed-form monomial Haar integral.

Matrix elements of the spin-j representation factor through Euler angles
as a phase, a real rotation profile in the middle angle, and a second
phase.  Averaging a product of such elements over the group therefore
splits into two phase constraints (the signed magnetic indices must sum
to zero on each side) and a single middle-angle integral of a
trigonometric polynomial in the half angle, which reduces to exact Beta
values.  The Beta route is primary; an alternating binomial expansion of
the same integral runs alongside it and any disagreement is raised, not
patched over.

Half-integer spins are carried as doubled integers throughout, so all
bookkeeping stays in exact integer arithmetic; factorials are exact big
integers converted to floats only at the very end.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "Su2Factor",
    "Su2MonomialSpec",
    "wigner_small_d",
    "wigner_D",
    "su2_integral_closed",
    "su2_integral_quadrature",
]


def _check_triple(twice_j: int, twice_mp: int, twice_m: int):
    if twice_j < 0:
        raise ValueError("twice_j must be non-negative")
    for tm in (twice_mp, twice_m):
        if abs(tm) > twice_j or (twice_j - tm) % 2:
            raise ValueError(
                f"magnetic index {tm}/2 invalid for spin {twice_j}/2")


@dataclass(frozen=True)
class Su2Factor:
    twice_j: int
    twice_mp: int  # row index m', doubled
    twice_m: int   # column index m, doubled
    conj: bool = False

    def __post_init__(self):
        _check_triple(self.twice_j, self.twice_mp, self.twice_m)


@dataclass(frozen=True)
class Su2MonomialSpec:
    factors: tuple

    def __init__(self, factors):
        object.__setattr__(self, "factors", tuple(factors))
        for f in self.factors:
            if not isinstance(f, Su2Factor):
                raise TypeError("factors must be Su2Factor instances")

    def to_dict(self) -> dict:
        return {"factors": [{"twice_j": f.twice_j, "twice_mp": f.twice_mp,
                             "twice_m": f.twice_m, "conj": f.conj}
                            for f in self.factors]}

    @classmethod
    def from_dict(cls, d: dict) -> "Su2MonomialSpec":
        return cls([Su2Factor(f["twice_j"], f["twice_mp"], f["twice_m"],
                              bool(f.get("conj"))) for f in d["factors"]])


def _small_d_terms(twice_j: int, twice_mp: int, twice_m: int):
    """Expansion of the middle-angle profile as Sum coeff * C^ec * S^es
    with C = cos(beta/2), S = sin(beta/2).

    Returns (root, terms): the shared positive integer under the square
    root and a list of (Fraction coefficient, ec, es).  All four
    factorial arguments are integers by the parity constraint.
    """
    jm = (twice_j + twice_m) // 2
    jmm = (twice_j - twice_m) // 2
    jp = (twice_j + twice_mp) // 2
    jpm = (twice_j - twice_mp) // 2
    root = (math.factorial(jm) * math.factorial(jmm)
            * math.factorial(jp) * math.factorial(jpm))
    shift = (twice_m - twice_mp) // 2  # m - m'
    terms = []
    for k in range(max(0, shift), min(jm, jpm) + 1):
        denom = (math.factorial(jm - k) * math.factorial(k)
                 * math.factorial(jpm - k) * math.factorial(k - shift))
        sign = -1 if (k - shift) % 2 else 1
        terms.append((Fraction(sign, denom),
                      twice_j - 2 * k + shift, 2 * k - shift))
    return root, terms


def wigner_small_d(twice_j: int, twice_mp: int, twice_m: int,
                   beta: float) -> float:
    """Rotation profile d^j_{m'm}(beta) of the spin-j representation."""
    _check_triple(twice_j, twice_mp, twice_m)
    root, terms = _small_d_terms(twice_j, twice_mp, twice_m)
    c, s = math.cos(beta / 2), math.sin(beta / 2)
    return math.sqrt(root) * sum(
        float(coeff) * c ** ec * s ** es for coeff, ec, es in terms)


def wigner_D(twice_j: int, twice_mp: int, twice_m: int, angles) -> complex:
    """Full matrix element: phase in the outer angles times the profile."""
    alpha, beta, gamma = angles
    phase = cmath.exp(-0.5j * (alpha * twice_mp + gamma * twice_m))
    return phase * wigner_small_d(twice_j, twice_mp, twice_m, beta)


def _half_angle_moment(ec: int, es: int) -> Fraction:
    """(1/2) Int_0^pi C^ec S^es sin(beta) d(beta), exact.

    Both exponents are even whenever the phase constraints already hold;
    the substitution x = S^2 turns the integral into Int_0^1 x^q (1-x)^p
    with p = ec/2, q = es/2.  Evaluated as the factorial ratio and as
    the alternating binomial sum; the two must agree identically.
    """
    assert ec % 2 == 0 and es % 2 == 0, \
        "phase constraints force even half-angle exponents"
    p, q = ec // 2, es // 2
    primary = Fraction(math.factorial(p) * math.factorial(q),
                       math.factorial(p + q + 1))
    binom = sum(Fraction((-1) ** i * math.comb(p, i), q + i + 1)
                for i in range(p + 1))
    if primary != binom:  # dual route, kept live on purpose
        raise AssertionError(
            f"half-angle moment mismatch at (p={p}, q={q}): "
            f"{primary} vs {binom}")
    return primary


def su2_integral_closed(spec: Su2MonomialSpec) -> float:
    """Haar average of a product of spin-j matrix elements.

    Zero unless the signed row indices and the signed column indices
    both sum to zero; otherwise the middle-angle integral of the
    expanded product, exact up to one final square root.
    """
    factors = spec.factors
    if not factors:
        return 1.0
    sign = lambda f: -1 if f.conj else 1
    if sum(sign(f) * f.twice_mp for f in factors):
        return 0.0
    if sum(sign(f) * f.twice_m for f in factors):
        return 0.0
    prefactor = 1.0
    expansions = []
    for f in factors:
        root, terms = _small_d_terms(f.twice_j, f.twice_mp, f.twice_m)
        prefactor *= math.sqrt(root)
        expansions.append(terms)
    total = Fraction(0)
    buckets: dict = {}
    for combo in itertools.product(*expansions):
        coeff = Fraction(1)
        ec = es = 0
        for c, e1, e2 in combo:
            coeff *= c
            ec += e1
            es += e2
        buckets[ec, es] = buckets.get((ec, es), Fraction(0)) + coeff
    for (ec, es), coeff in buckets.items():
        if coeff:
            total += coeff * _half_angle_moment(ec, es)
    return prefactor * float(total)


def _gauss_nodes(a: float, b: float, nodes: int):
    x, w = np.polynomial.legendre.leggauss(nodes)
    half = (b - a) / 2
    return a + half * (x + 1), half * w


def su2_integral_quadrature(spec: Su2MonomialSpec, nodes: int = 32) -> float:
    """Tensor-product Gauss-Legendre oracle for the same average.

    Integrates over the Euler box [0,4pi] x [0,pi] x [0,4pi] with weight
    sin(beta)/(32 pi^2).  The integrand is a product of a function of
    each angle separately, so the triple tensor sum factors into three
    one-dimensional sums; the value is identical to the full tensor
    product up to roundoff.
    """
    if nodes < 8:
        raise ValueError("need at least 8 nodes per dimension")
    factors = spec.factors
    if not factors:
        return 1.0
    sgn = [-1 if f.conj else 1 for f in factors]
    xa, wa = _gauss_nodes(0.0, 4 * math.pi, nodes)
    xb, wb = _gauss_nodes(0.0, math.pi, nodes)
    ka = sum(s * f.twice_mp for s, f in zip(sgn, factors))
    kg = sum(s * f.twice_m for s, f in zip(sgn, factors))
    alpha_sum = np.dot(wa, np.exp(-0.5j * ka * xa))
    gamma_sum = np.dot(wa, np.exp(-0.5j * kg * xa))
    profile = np.ones_like(xb)
    for f in factors:  # conjugation leaves the real profile alone
        root, terms = _small_d_terms(f.twice_j, f.twice_mp, f.twice_m)
        c, s = np.cos(xb / 2), np.sin(xb / 2)
        d = math.sqrt(root) * sum(
            float(coeff) * c ** ec * s ** es for coeff, ec, es in terms)
        profile = profile * d
    beta_sum = np.dot(wb, profile * np.sin(xb))
    value = alpha_sum * beta_sum * gamma_sum / (32 * math.pi ** 2)
    return float(value.real)
