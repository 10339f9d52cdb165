"""Permutations of {0..k-1} as tuples: p[i] is the image of slot i.

Composition is (p * q)(i) = p(q(i)), matching operator order when
permutations act on tensor slots.
"""

import itertools
import math

Perm = tuple[int, ...]


def identity(k: int) -> Perm:
    return tuple(range(k))


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[q[i]] for i in range(len(p)))


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, image in enumerate(p):
        inv[image] = i
    return tuple(inv)


def all_permutations(k: int) -> list[Perm]:
    return list(itertools.permutations(range(k)))


def cycle_type(p: Perm) -> tuple[int, ...]:
    """Cycle lengths, sorted descending."""
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if seen[i]:
            continue
        n = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            n += 1
        lengths.append(n)
    return tuple(sorted(lengths, reverse=True))


def cycle_count(p: Perm) -> int:
    return len(cycle_type(p))


def class_size(ctype: tuple[int, ...]) -> int:
    """Number of permutations with the given cycle type."""
    k = sum(ctype)
    z = 1
    mult = {}
    for length in ctype:
        mult[length] = mult.get(length, 0) + 1
    for length, m in mult.items():
        z *= (length ** m) * math.factorial(m)
    return math.factorial(k) // z


def conjugate_by(s: Perm, p: Perm) -> Perm:
    """s p s^-1."""
    out = [0] * len(p)
    for i, image in enumerate(p):
        out[s[i]] = s[image]
    return tuple(out)
