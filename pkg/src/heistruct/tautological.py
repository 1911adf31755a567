"""Structure matrices of tautological algebras and their congruence invariant.

For a symplectic basis X_1..X_2n, t of the maximal ideal, X_i X_j = a_ij t and
the matrix M = (a_ij) satisfies M - M^T = Omega.  Changing the symplectic basis
by C replaces M with C M C^T.  With S the symmetric part of M,

    Omega^{-1} (C S C^T) = P (Omega^{-1} S) P^{-1},    P = Omega^{-1} C Omega,

whenever C Omega C^T = Omega.  So the characteristic polynomial of
Omega^{-1} S is unchanged.  If instead C Omega C^T = k Omega (a rescaled t),
the new M is C M C^T / k and the same identity holds with P = C^{-T}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .closure import LocalAlgebra, generate_algebra, local_anatomy
from .exact import (
    QMat, char_poly, congruence_search, frac, frac_str, inverse, matrix_from_json, multiple_of,
    matrix_to_json, poly_str, span_close, symmetric_part, vector_to_json,
)
from .heisenberg import HeisenbergMatRep, NotHeisenberg, standard_omega


class InvalidStructureMatrix(ValueError):
    pass


@dataclass(frozen=True)
class StructureMatrix:
    n: int
    M: QMat

    def __post_init__(self):
        if self.M.shape != (2 * self.n, 2 * self.n):
            raise InvalidStructureMatrix(f"structure matrix must be {2 * self.n}x{2 * self.n}")
        if self.M - self.M.T != standard_omega(self.n):
            raise InvalidStructureMatrix("M - M^T is not the standard skew form")

    @classmethod
    def from_matrix(cls, M: QMat) -> "StructureMatrix":
        if not M.is_square or M.rows % 2:
            raise InvalidStructureMatrix("structure matrix must be square of even size")
        return cls(M.rows // 2, M)

    @classmethod
    def from_symmetric(cls, S: QMat) -> "StructureMatrix":
        """The inverse of taking the symmetric part: S -> S + Omega/2."""
        if not S.is_symmetric():
            raise InvalidStructureMatrix("expected a symmetric matrix")
        n = S.rows // 2
        return cls(n, S + standard_omega(n).scale(Fraction(1, 2)))

    @property
    def symmetric(self) -> QMat:
        return symmetric_part(self.M)

    def to_json(self) -> dict:
        return matrix_to_json(self.M)

    @classmethod
    def from_json(cls, obj: dict) -> "StructureMatrix":
        return cls.from_matrix(matrix_from_json(obj))


def extract_structure_matrix(loc: LocalAlgebra, rep: HeisenbergMatRep) -> StructureMatrix:
    """Read off a_ij from X_i X_j = a_ij t."""
    n, d = rep.n, rep.d
    if loc.dim != 2 * n + 2:
        raise InvalidStructureMatrix(f"tautological algebras have dimension {2 * n + 2}, got {loc.dim}")
    if span_close(rep.basis) != loc.maximal_ideal:
        raise InvalidStructureMatrix("rep basis does not span the maximal ideal")
    if rep.omega.omega != standard_omega(n):
        raise InvalidStructureMatrix("basis is not in standard symplectic form")
    try:
        table = rep.bracket_table()
    except NotHeisenberg as exc:
        raise InvalidStructureMatrix(str(exc)) from None
    if table != standard_omega(n):
        raise InvalidStructureMatrix("basis is not symplectic")
    rows = []
    for a in rep.X:
        row = []
        for b in rep.X:
            c = multiple_of(a @ b, rep.t_mat)
            if c is None:
                raise InvalidStructureMatrix("a product X_i X_j is not a multiple of t")
            row.append(c)
        rows.append(row)
    return StructureMatrix(n, QMat.from_rows(rows))


def structure_rep(sm: StructureMatrix) -> HeisenbergMatRep:
    """X_i = E_{1,i+1} + sum_l a_{li} E_{l+1,2n+2} and t = E_{1,2n+2} (one-based)."""
    n = sm.n
    d = 2 * n + 2
    X = []
    for i in range(2 * n):
        x = QMat.unit(d, 0, i + 1)
        for l in range(2 * n):
            a = sm.M[l, i]
            if a:
                x = x + QMat.unit(d, l + 1, d - 1).scale(a)
        X.append(x)
    return HeisenbergMatRep.build(X, QMat.unit(d, 0, d - 1))


def algebra_from_structure_matrix(sm: StructureMatrix) -> tuple[HeisenbergMatRep, LocalAlgebra]:
    rep = structure_rep(sm)
    t = rep.t_mat
    for i, a in enumerate(rep.X):
        for j, b in enumerate(rep.X):
            if a @ b != t.scale(sm.M[i, j]):
                raise AssertionError("X_i X_j != a_ij t")
    loc = local_anatomy(generate_algebra(rep.basis))
    if loc.dim != 2 * sm.n + 2:
        raise AssertionError(f"closure has dimension {loc.dim}")
    return rep, loc


def symplectic_invariant(sm: StructureMatrix) -> tuple[Fraction, ...]:
    """char poly of Omega^{-1} S(M), leading coefficient first."""
    return char_poly(_hamiltonian(sm))


def _hamiltonian(sm: StructureMatrix) -> QMat:
    return inverse(standard_omega(sm.n)) @ sm.symmetric


@dataclass(frozen=True)
class InequivalenceCertificate:
    left: StructureMatrix
    right: StructureMatrix
    invariant_left: tuple
    invariant_right: tuple
    verdict: bool
    transcript: dict

    def to_json(self) -> dict:
        return {"left": self.left.to_json(), "right": self.right.to_json(),
                "invariants": [vector_to_json(self.invariant_left),
                               vector_to_json(self.invariant_right)],
                "verdict": "inequivalent" if self.verdict else "undistinguished",
                "transcript": self.transcript}


def certify_inequivalent(a: StructureMatrix, b: StructureMatrix) -> InequivalenceCertificate:
    """Compare the invariants; a gap proves the algebras (and actions) inequivalent."""
    if a.n != b.n:
        raise InvalidStructureMatrix("structure matrices of different sizes")
    ha, hb = _hamiltonian(a), _hamiltonian(b)
    pa, pb = char_poly(ha), char_poly(hb)
    transcript = {
        "omega": matrix_to_json(standard_omega(a.n)),
        "symmetric_left": matrix_to_json(a.symmetric),
        "symmetric_right": matrix_to_json(b.symmetric),
        "hamiltonian_left": matrix_to_json(ha),
        "hamiltonian_right": matrix_to_json(hb),
        "polynomial_left": poly_str(pa),
        "polynomial_right": poly_str(pb),
    }
    return InequivalenceCertificate(a, b, pa, pb, pa != pb, transcript)


def verify_certificate(obj: dict) -> bool:
    """Re-check a certificate JSON from scratch using only exact_kernel routines."""
    left = matrix_from_json(obj["left"])
    right = matrix_from_json(obj["right"])
    if left.shape != right.shape or left.rows % 2:
        return False
    omega = standard_omega(left.rows // 2)
    tr = obj["transcript"]
    if matrix_from_json(tr["omega"]) != omega:
        return False
    if left - left.T != omega or right - right.T != omega:
        return False
    computed = []
    for side, m in (("left", left), ("right", right)):
        s = symmetric_part(m)
        if matrix_from_json(tr[f"symmetric_{side}"]) != s:
            return False
        h = matrix_from_json(tr[f"hamiltonian_{side}"])
        if omega @ h != s:
            return False
        computed.append(char_poly(h))
    claimed = [tuple(frac(x) for x in p) for p in obj["invariants"]]
    if claimed != computed:
        return False
    expected = "inequivalent" if computed[0] != computed[1] else "undistinguished"
    return obj["verdict"] == expected


def generate_family(n: int, labels: Sequence) -> list[StructureMatrix]:
    """M_lambda = lambda I + Omega/2, with invariant (x^2 + lambda^2)^n."""
    labels = [frac(x) for x in labels]
    if len(set(labels)) != len(labels):
        raise ValueError("labels must be pairwise distinct")
    if any(x <= 0 for x in labels):
        raise ValueError("labels must be positive")
    half_omega = standard_omega(n).scale(Fraction(1, 2))
    return [StructureMatrix(n, QMat.identity(2 * n).scale(x) + half_omega) for x in labels]


# ---------------------------------------------------------------------------
# symplectic group elements

def transvection(v: Sequence, c, n: int) -> QMat:
    """x -> x + c omega(v, x) v, a symplectic matrix for any v and c."""
    omega = standard_omega(n)
    col = QMat.column(v)
    return QMat.identity(2 * n) + (col @ col.T @ omega).scale(c)


def transvection_generators(n: int) -> list[QMat]:
    """Transvections along e_i and e_i +/- e_j with parameters +/-1."""
    d = 2 * n
    dirs = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        dirs.append(e)
    for i, j in combinations(range(d), 2):
        for s in (1, -1):
            e = [0] * d
            e[i], e[j] = 1, s
            dirs.append(e)
    return [transvection(v, c, n) for v in dirs for c in (1, -1)]


def random_symplectic(n: int, rng: random.Random, steps: int = 6) -> QMat:
    """Product of transvections with small random rational data."""
    c = QMat.identity(2 * n)
    for _ in range(steps):
        v = [rng.randint(-2, 2) for _ in range(2 * n)]
        if not any(v):
            continue
        param = Fraction(rng.choice([-2, -1, 1, 2]), rng.choice([1, 2, 3]))
        c = transvection(v, param, n) @ c
    return c


def random_structure_matrix(n: int, rng: random.Random, spread: int = 3) -> StructureMatrix:
    d = 2 * n
    rows = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            x = Fraction(rng.randint(-spread, spread), rng.randint(1, spread))
            rows[i][j] = rows[j][i] = x
    return StructureMatrix.from_symmetric(QMat.from_rows(rows))


def congruent(sm: StructureMatrix, c: QMat) -> StructureMatrix:
    return StructureMatrix(sm.n, c @ sm.M @ c.T)


def equivalence_witness(a: StructureMatrix, b: StructureMatrix, budget: int = 5000) -> QMat | None:
    """Search words in symplectic transvections for C with a = C b C^T.

    Returns None at once when the invariants differ (no witness can exist).
    """
    if a.n != b.n:
        raise InvalidStructureMatrix("structure matrices of different sizes")
    if symplectic_invariant(a) != symplectic_invariant(b):
        return None
    return congruence_search(a.M, b.M, transvection_generators(a.n), budget)


def invariant_report(sm: StructureMatrix) -> dict:
    coeffs = symplectic_invariant(sm)
    return {"n": sm.n, "coefficients": [frac_str(x) for x in coeffs], "polynomial": poly_str(coeffs)}
