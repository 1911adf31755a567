"""Unital associative matrix algebras generated by a set of matrices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exact import (
    Echelon, QMat, Subspace, commutator, kernel_basis, matrix_from_columns,
    matrix_from_json, matrix_to_json, solve,
)


class NotLocal(ValueError):
    pass


@dataclass(frozen=True)
class MatAlgebra:
    """Subalgebra of d x d matrices.

    ``basis`` starts with the identity; the remaining elements are the canonical
    basis of the traceless part, which is always a complement of the scalars.
    """

    d: int
    basis: tuple
    space: Subspace

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, m: QMat) -> bool:
        return self.space.contains(m.entries)

    def coordinates(self, m: QMat) -> tuple:
        """Coordinates of ``m`` with respect to ``basis``."""
        return _coords_in(self.basis, m)

    def is_commutative(self) -> bool:
        return all(commutator(a, b).is_zero()
                   for i, a in enumerate(self.basis) for b in self.basis[i + 1:])

    def closure_residuals(self) -> list[tuple[int, int]]:
        """Index pairs whose product falls outside the span (empty when closed)."""
        return [(i, j) for i, a in enumerate(self.basis) for j, b in enumerate(self.basis)
                if not self.space.contains((a @ b).entries)]

    def to_json(self) -> dict:
        return {"d": self.d, "basis": [matrix_to_json(b) for b in self.basis]}

    @classmethod
    def from_json(cls, obj: dict) -> "MatAlgebra":
        basis = [matrix_from_json(b) for b in obj["basis"]]
        alg = generate_algebra(basis, size=obj["d"])
        if alg.dim != len(basis):
            raise ValueError("basis does not span a subalgebra")
        return alg


def _coords_in(basis: Sequence[QMat], m: QMat) -> tuple:
    a = matrix_from_columns([b.entries for b in basis], len(m.entries))
    x = solve(a, m.entries)
    if x is None:
        raise ValueError("matrix is not in the span")
    return x


def _canonical_algebra(d: int, space: Subspace) -> MatAlgebra:
    ident = QMat.identity(d)
    # v - tr(v)/d * I stays in the algebra and spans its traceless part
    traceless = []
    for v in space.basis:
        m = QMat.from_flat((d, d), v)
        traceless.append((m - ident.scale(m.trace() / d)).entries)
    part = Subspace(d * d, traceless, (d, d))
    return MatAlgebra(d, (ident, *part.matrices()), space)


def generate_algebra(generators: Sequence[QMat], include_unit: bool = True,
                     size: int | None = None) -> MatAlgebra:
    """Smallest unital subalgebra containing ``generators``.

    Words in the generators are grown breadth first: each new basis element is
    multiplied on the left by every generator until nothing new appears.
    """
    if not include_unit:
        raise ValueError("only unital algebras are representable")
    generators = list(generators)
    if generators:
        d = generators[0].rows
        for g in generators:
            if g.shape != (d, d):
                raise ValueError("generators must be square matrices of equal size")
        if size is not None and size != d:
            raise ValueError("size does not match the generators")
    elif size is None:
        raise ValueError("size is required when there are no generators")
    else:
        d = size
    ech = Echelon(d * d)
    found: list[QMat] = []
    frontier: list[QMat] = []
    for m in (QMat.identity(d), *generators):
        if ech.add(m.entries):
            found.append(m)
            frontier.append(m)
    while frontier:
        nxt = []
        for w in frontier:
            for g in generators:
                p = g @ w
                if ech.add(p.entries):
                    found.append(p)
                    nxt.append(p)
        frontier = nxt
    space = Subspace(d * d, [m.entries for m in found], (d, d))
    return _canonical_algebra(d, space)


def center(a: MatAlgebra) -> Subspace:
    """Elements of ``a`` commuting with every basis element."""
    d = a.d
    # column j of the system: the stacked commutators [b_j, b_l] over all l
    cols = []
    for bj in a.basis:
        col = []
        for bl in a.basis:
            col.extend(commutator(bj, bl).entries)
        cols.append(col)
    system = matrix_from_columns(cols, len(cols[0]) if cols else 0)
    out = []
    for z in kernel_basis(system).basis:
        m = QMat.zeros(d)
        for c, b in zip(z, a.basis):
            if c:
                m = m + b.scale(c)
        out.append(m.entries)
    return Subspace(d * d, out, (d, d))


def _products(left: Subspace, right: Subspace) -> Subspace:
    d = left.shape[0]
    vecs = [(x @ y).entries for x in left.matrices() for y in right.matrices()]
    return Subspace(d * d, vecs, (d, d))


@dataclass(frozen=True)
class LocalAlgebra:
    algebra: MatAlgebra
    maximal_ideal: Subspace
    center: Subspace
    filtration: tuple  # m, m^2, ..., ending with the zero subspace

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def profile(self) -> tuple[int, ...]:
        """Dimensions of m, m^2, ... up to and including the first zero power."""
        return tuple(s.dim for s in self.filtration)

    @property
    def nilpotency_index(self) -> int:
        """Smallest k with m^k = 0."""
        return len(self.filtration)

    def is_commutative(self) -> bool:
        return self.center.dim == self.algebra.dim

    def to_json(self) -> dict:
        obj = self.algebra.to_json()
        obj["maximal_ideal"] = [matrix_to_json(m) for m in self.maximal_ideal.matrices()]
        obj["center"] = [matrix_to_json(m) for m in self.center.matrices()]
        obj["filtration"] = [[matrix_to_json(m) for m in s.matrices()] for s in self.filtration]
        return obj


def local_anatomy(a: MatAlgebra) -> LocalAlgebra:
    """Split ``a`` as scalars plus a nilpotent ideal and compute its filtration.

    The candidate ideal is the traceless part; it is accepted only if it is an
    ideal whose powers reach zero, which forces every element to be nilpotent.
    """
    d = a.d
    m = Subspace(d * d, [b.entries for b in a.basis[1:]], (d, d))
    for x in m.matrices():
        for b in a.basis:
            if not m.contains((x @ b).entries) or not m.contains((b @ x).entries):
                raise NotLocal("not a unipotent local algebra: traceless part is not an ideal")
    filtration = [m]
    power = m
    while power.dim:
        nxt = _products(power, m)
        if nxt.dim >= power.dim:
            raise NotLocal("not a unipotent local algebra: ideal is not nilpotent")
        filtration.append(nxt)
        power = nxt
    return LocalAlgebra(a, m, center(a), tuple(filtration))


def ideal_power(loc: LocalAlgebra, k: int) -> Subspace:
    """m^k; the zero subspace beyond the nilpotency index."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if k <= len(loc.filtration):
        return loc.filtration[k - 1]
    return loc.filtration[-1]
