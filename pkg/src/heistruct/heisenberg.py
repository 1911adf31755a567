"""Heisenberg group law, Lie bracket and nilpotent matrix realizations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import (
    QMat, Vec, commutator, determinant, frac, multiple_of, span_close, vec,
    matrix_from_json, matrix_to_json, zero_vec,
)

HALF = Fraction(1, 2)


def standard_omega(n: int) -> QMat:
    """The block form [[0, I_n], [-I_n, 0]]."""
    d = 2 * n
    e = [Fraction(0)] * (d * d)
    for i in range(n):
        e[i * d + n + i] = Fraction(1)
        e[(n + i) * d + i] = Fraction(-1)
    return QMat._raw(d, d, tuple(e))


@dataclass(frozen=True)
class SymplecticSpace:
    n: int
    omega: QMat

    def __post_init__(self):
        if self.omega.shape != (2 * self.n, 2 * self.n):
            raise ValueError(f"omega must be {2 * self.n}x{2 * self.n}")
        if self.omega != -self.omega.T:
            raise ValueError("omega is not skew-symmetric")
        if determinant(self.omega) == 0:
            raise ValueError("omega is degenerate")

    @classmethod
    def standard(cls, n: int) -> "SymplecticSpace":
        return cls(n, standard_omega(n))

    def pair(self, u: Sequence, v: Sequence) -> Fraction:
        return sum((a * x for a, x in zip(u, self.omega.apply(v))), Fraction(0))


@dataclass(frozen=True)
class HeisenbergElement:
    w: Vec
    t: Fraction

    @classmethod
    def of(cls, w, t=0) -> "HeisenbergElement":
        return cls(vec(w), frac(t))

    @classmethod
    def identity(cls, n: int) -> "HeisenbergElement":
        return cls(zero_vec(2 * n), Fraction(0))

    def inverse(self) -> "HeisenbergElement":
        return HeisenbergElement(tuple(-x for x in self.w), -self.t)


def _check_dims(a: HeisenbergElement, b: HeisenbergElement, sp: SymplecticSpace) -> None:
    if len(a.w) != 2 * sp.n or len(b.w) != 2 * sp.n:
        raise ValueError(f"elements must have length-{2 * sp.n} vector parts")


def group_mul(a: HeisenbergElement, b: HeisenbergElement, sp: SymplecticSpace) -> HeisenbergElement:
    """(w1, t1)(w2, t2) = (w1 + w2, t1 + t2 + omega(w1, w2)/2)."""
    _check_dims(a, b, sp)
    return HeisenbergElement(tuple(x + y for x, y in zip(a.w, b.w)),
                             a.t + b.t + HALF * sp.pair(a.w, b.w))


def lie_bracket(a: HeisenbergElement, b: HeisenbergElement, sp: SymplecticSpace) -> HeisenbergElement:
    _check_dims(a, b, sp)
    return HeisenbergElement(zero_vec(2 * sp.n), sp.pair(a.w, b.w))


def exp_nilpotent(m: QMat) -> QMat:
    """Exponential of a nilpotent matrix as a finite sum."""
    if not m.is_square:
        raise ValueError("exponential of a non-square matrix")
    n = m.rows
    out = QMat.identity(n)
    term = QMat.identity(n)
    for k in range(1, n + 1):
        term = (term @ m).scale(Fraction(1, k))
        if term.is_zero():
            return out
        out = out + term
    raise ValueError("matrix is not nilpotent")


def exp_apply(m: QMat, v: Sequence) -> Vec:
    """exp(m) v without forming exp(m); m must be nilpotent."""
    n = m.rows
    out = list(v)
    term = tuple(v)
    for k in range(1, n + 1):
        term = tuple(x / k for x in m.apply(term))
        if not any(term):
            return tuple(out)
        out = [a + b for a, b in zip(out, term)]
    if any(m.apply(term)):
        raise ValueError("matrix is not nilpotent")
    return tuple(out)


class NotHeisenberg(ValueError):
    """Raised when matrices do not span a Heisenberg Lie algebra."""


@dataclass(frozen=True)
class HeisenbergMatRep:
    """Basis X_1..X_2n, t of a matrix Heisenberg algebra with [X_i, X_j] = omega_ij t."""

    n: int
    d: int
    X: tuple
    t_mat: QMat
    omega: SymplecticSpace

    def __post_init__(self):
        if len(self.X) != 2 * self.n:
            raise NotHeisenberg(f"expected {2 * self.n} generators, got {len(self.X)}")
        for m in (*self.X, self.t_mat):
            if m.shape != (self.d, self.d):
                raise NotHeisenberg("generator has the wrong size")

    @classmethod
    def build(cls, X: Sequence[QMat], t_mat: QMat, omega: SymplecticSpace | None = None,
              validate: bool = True) -> "HeisenbergMatRep":
        n = len(X) // 2
        rep = cls(n, t_mat.rows, tuple(X), t_mat, omega or SymplecticSpace.standard(n))
        if validate:
            rep.validate()
        return rep

    @property
    def basis(self) -> list[QMat]:
        return [*self.X, self.t_mat]

    def bracket_table(self) -> QMat:
        """Coefficient of t in [X_i, X_j]; raises if a bracket leaves the line of t."""
        if self.t_mat.is_zero():
            raise NotHeisenberg("t is zero")
        rows = []
        for a in self.X:
            row = []
            for b in self.X:
                c = multiple_of(commutator(a, b), self.t_mat)
                if c is None:
                    raise NotHeisenberg("a bracket is not a multiple of t")
                row.append(c)
            rows.append(row)
        return QMat.from_rows(rows) if rows else QMat.zeros(0)

    def validate(self, require_upper: bool = True) -> None:
        if self.t_mat.is_zero():
            raise NotHeisenberg("t is zero")
        for m in self.basis:
            if require_upper and not m.is_strictly_upper():
                raise NotHeisenberg("generators must be strictly upper triangular")
        if self.bracket_table() != self.omega.omega:
            raise NotHeisenberg("bracket table does not match omega")
        for a in self.X:
            if not commutator(a, self.t_mat).is_zero():
                raise NotHeisenberg("t is not central")
        if span_close(self.basis).dim != 2 * self.n + 1:
            raise NotHeisenberg("basis is linearly dependent")

    def element(self, w: Sequence, t=0) -> QMat:
        """Matrix of the Lie algebra element sum w_i X_i + t t_mat."""
        out = self.t_mat.scale(t)
        for c, x in zip(w, self.X):
            if c:
                out = out + x.scale(c)
        return out

    def to_json(self) -> dict:
        obj = {"n": self.n, "d": self.d, "X": [matrix_to_json(x) for x in self.X],
               "t": matrix_to_json(self.t_mat)}
        if self.omega.omega != standard_omega(self.n):
            obj["omega"] = matrix_to_json(self.omega.omega)
        return obj

    @classmethod
    def from_json(cls, obj: dict, validate: bool = True) -> "HeisenbergMatRep":
        X = [matrix_from_json(m) for m in obj["X"]]
        n = obj.get("n", len(X) // 2)
        if len(X) != 2 * n:
            raise ValueError("'n' does not match the number of X matrices")
        omega = SymplecticSpace(n, matrix_from_json(obj["omega"])) if "omega" in obj else None
        rep = cls.build(X, matrix_from_json(obj["t"]), omega, validate=validate)
        if "d" in obj and obj["d"] != rep.d:
            raise ValueError("'d' does not match the matrix size")
        return rep


def contragredient(rep: HeisenbergMatRep) -> HeisenbergMatRep:
    """Dual representation, reindexed to stay upper triangular.

    X -> -J X^T J with J the order-reversing permutation; this is a Lie algebra
    homomorphism with the same bracket table.
    """
    X = [-x.antitranspose() for x in rep.X]
    return HeisenbergMatRep.build(X, -rep.t_mat.antitranspose(), rep.omega)


def symplectic_basis_extract(generators: Sequence[QMat]) -> HeisenbergMatRep:
    """Find a standard symplectic basis of the Lie algebra spanned by ``generators``.

    The centre generator t is the canonical (RREF) basis vector of the derived
    algebra; the complement is orthogonalized by symplectic Gram-Schmidt.
    """
    span = span_close(generators)
    mats = span.matrices() if span.dim else []
    if span.dim == 0:
        raise NotHeisenberg("generators span the zero space")
    for a in mats:
        for b in mats:
            if not span.contains(commutator(a, b)):
                raise NotHeisenberg("span is not closed under the bracket")
    derived = span_close([commutator(a, b) for i, a in enumerate(mats) for b in mats[i + 1:]]
                         or [QMat.zeros(*span.shape)])
    if derived.dim != 1:
        raise NotHeisenberg(f"derived algebra has dimension {derived.dim}")
    t = derived.matrices()[0]
    if any(not commutator(t, a).is_zero() for a in mats):
        raise NotHeisenberg("derived algebra is not central")
    if span.dim % 2 == 0:
        raise NotHeisenberg(f"dimension {span.dim} is even")

    def form(a: QMat, b: QMat) -> Fraction:
        return derived.coordinates(commutator(a, b))[0]

    chosen = span_close([t])
    complement = []
    for m in mats:
        if not chosen.contains(m):
            complement.append(m)
            chosen = chosen + span_close([m])

    firsts, seconds = [], []
    pool = complement
    while pool:
        e = pool[0]
        partner = next((i for i in range(1, len(pool)) if form(e, pool[i])), None)
        if partner is None:
            raise NotHeisenberg("induced skew form is degenerate")
        f = pool[partner].scale(1 / form(e, pool[partner]))
        rest = []
        for i, u in enumerate(pool):
            if i in (0, partner):
                continue
            # u - w(u,f) e + w(u,e) f is orthogonal to both e and f
            rest.append(u - e.scale(form(u, f)) + f.scale(form(u, e)))
        firsts.append(e)
        seconds.append(f)
        pool = rest
    rep = HeisenbergMatRep.build(firsts + seconds, t, validate=False)
    rep.validate(require_upper=all(m.is_strictly_upper() for m in generators))
    return rep
