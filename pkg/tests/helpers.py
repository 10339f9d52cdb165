"""Shared brute-force oracles for the test suite.

Everything here recomputes quantities by definition-level enumeration so the
package code can be checked against an independent route.
"""

import itertools
from fractions import Fraction

from haarint import tableaux, tensors
from haarint.tableaux import Tableau


def brute_standard_count(shape) -> int:
    """Fillings by 1..m each once with weakly increasing rows and strictly
    increasing columns; distinct entries force rows strict too."""
    m = tableaux.weight(shape)
    count = 0
    for t in tableaux.enumerate_gl_tableaux(shape, m):
        entries = t.row_major()
        if sorted(entries) == list(range(1, m + 1)):
            count += 1
    return count


def brute_row_stabilizer(t: Tableau) -> int:
    """Number of permutations of each row leaving the filling unchanged."""
    total = 1
    for row in t.rows:
        fixed = sum(1 for p in itertools.permutations(row)
                    if list(p) == row)
        total *= fixed
    return total


def brute_gl_dimension(shape, n: int) -> int:
    return len(tableaux.enumerate_gl_tableaux(shape, n))


def module_dimension_oracle(lam, form: tensors.BilinearForm) -> int:
    """Dimension of the module labeled by lam for the group preserving form.

    Applies the row-column symmetrizer to the traceless part of every
    elementary tensor and takes the exact rank; picks out a single copy of
    the module, so the rank is its dimension.
    """
    m = tableaux.weight(lam)
    c = tensors.young_symmetrizer(lam)
    images = []
    for idx in itertools.product(form.letters, repeat=m):
        t0, _ = tensors.traceless_project(tensors.SparseTensor.elementary(idx), form)
        images.append(c.apply(t0))
    cols = sorted({i for v in images for i in v.data})
    colpos = {i: k for k, i in enumerate(cols)}
    mat = []
    for v in images:
        row = [Fraction(0)] * len(cols)
        for i, coeff in v.data.items():
            row[colpos[i]] = Fraction(coeff)
        mat.append(row)
    from haarint.ratlinalg import rank
    return rank(mat) if cols else 0


def gl_module_dimension_oracle(lam, n: int) -> int:
    """Same rank construction without any traceless projection."""
    m = tableaux.weight(lam)
    c = tensors.young_symmetrizer(lam)
    images = []
    for idx in itertools.product(range(1, n + 1), repeat=m):
        images.append(c.apply(tensors.SparseTensor.elementary(idx)))
    cols = sorted({i for v in images for i in v.data})
    colpos = {i: k for k, i in enumerate(cols)}
    mat = []
    for v in images:
        row = [Fraction(0)] * len(cols)
        for i, coeff in v.data.items():
            row[colpos[i]] = Fraction(coeff)
        mat.append(row)
    from haarint.ratlinalg import rank
    return rank(mat) if cols else 0
