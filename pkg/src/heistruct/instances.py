"""Concrete Heisenberg structures and test algebras.

The explicit matrices below (the k-family and the structure-matrix formula)
have a dense orbit when they act on row vectors.  To act on column vectors we
pass to the contragredient, which is again strictly upper triangular, keeps
t = -E_{1,d}, the boundary {x_d = 0} and the reference point e_d.
"""

from __future__ import annotations

import random
from typing import Sequence

from .closure import LocalAlgebra, generate_algebra, local_anatomy
from .correspondence import HeisenbergProjAction, last_coordinate_hyperplane
from .exact import QMat, inverse, unit_vec
from .heisenberg import HeisenbergMatRep, contragredient
from .tautological import (
    StructureMatrix, congruent, random_structure_matrix, random_symplectic, structure_rep,
)


def _E(d: int, i: int, j: int) -> QMat:
    # one-based matrix unit
    return QMat.unit(d, i - 1, j - 1)


def example_rep(n: int, k: int) -> HeisenbergMatRep:
    """X_i = E_{1,i+1} + E_{i+1,n+i+1} for i <= k, X_j = E_{1,j+1} for j > k,
    Y_i = E_{1,n+i+1} + E_{n-i+2,2n+2}, t = E_{1,2n+2}.

    Ordered so that the bracket table is standard: X_i pairs with Y_{n+1-i}.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in [0, {n}], got {k}")
    d = 2 * n + 2
    X = []
    for i in range(1, n + 1):
        x = _E(d, 1, i + 1)
        if i <= k:
            x = x + _E(d, i + 1, n + i + 1)
        X.append(x)
    Y = {i: _E(d, 1, n + i + 1) + _E(d, n - i + 2, d) for i in range(1, n + 1)}
    partners = [Y[n + 1 - i] for i in range(1, n + 1)]
    return HeisenbergMatRep.build(X + partners, _E(d, 1, d))


def action_of(rep: HeisenbergMatRep) -> HeisenbergProjAction:
    """Projective action of the contragredient of ``rep`` with the standard conventions."""
    dual = contragredient(rep)
    d = rep.d
    act = HeisenbergProjAction(dual, last_coordinate_hyperplane(d), unit_vec(d, d - 1))
    act.validate()
    return act


def build_example(n: int, k: int) -> HeisenbergProjAction:
    return action_of(example_rep(n, k))


def structure_action(sm: StructureMatrix) -> HeisenbergProjAction:
    return action_of(structure_rep(sm))


def conjugate_rep(rep: HeisenbergMatRep, p: QMat) -> HeisenbergMatRep:
    pinv = inverse(p)
    return HeisenbergMatRep.build([p @ x @ pinv for x in rep.X], p @ rep.t_mat @ pinv, rep.omega)


def random_unitriangular(d: int, rng: random.Random) -> QMat:
    rows = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            rows[i][j] = rng.randint(-2, 2)
    return QMat.from_rows(rows)


def random_tautological_action(n: int, rng: random.Random) -> tuple[StructureMatrix, HeisenbergProjAction]:
    """A random tautological structure moved by a random symplectic change of
    basis and a random unitriangular change of coordinates on V."""
    sm = random_structure_matrix(n, rng)
    sm = congruent(sm, random_symplectic(n, rng))
    base = structure_action(sm)
    p = random_unitriangular(base.d, rng)
    rep = conjugate_rep(base.rep, p)
    act = HeisenbergProjAction(rep, base.boundary, p.apply(base.reference_point))
    act.validate()
    return sm, act


def truncated_polynomial_algebra(m: int) -> LocalAlgebra:
    """Q[x]/(x^m) realized by the m x m nilpotent Jordan block."""
    gens = [QMat.from_rows([[1 if j == i + 1 else 0 for j in range(m)] for i in range(m)])] if m > 1 else []
    return local_anatomy(generate_algebra(gens, size=m))


def tensor_algebra(factors: Sequence[int]) -> LocalAlgebra:
    """Q[x_1..x_r]/(x_1^m_1, ..., x_r^m_r) as commuting Kronecker products."""
    sizes = list(factors)
    d = 1
    for s in sizes:
        d *= s
    gens = []
    for idx, s in enumerate(sizes):
        if s == 1:
            continue
        m = QMat.identity(1)
        for j, t in enumerate(sizes):
            f = (QMat.from_rows([[1 if c == r + 1 else 0 for c in range(t)] for r in range(t)])
                 if j == idx else QMat.identity(t))
            m = kron(m, f)
        gens.append(m)
    return local_anatomy(generate_algebra(gens, size=d))


def kron(a: QMat, b: QMat) -> QMat:
    rows = []
    for i in range(a.rows):
        for k in range(b.rows):
            rows.append([a[i, j] * b[k, l] for j in range(a.cols) for l in range(b.cols)])
    return QMat.from_rows(rows)
