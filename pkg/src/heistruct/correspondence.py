"""Additive and Heisenberg actions on projective space, and descent between them.

Conventions: matrices act on column vectors.  A projective action is stored by
the Lie algebra matrices of its group; the group element with coordinates a
acts by exp(sum a_i X_i).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .closure import LocalAlgebra, MatAlgebra, generate_algebra, local_anatomy
from .exact import (
    QMat, Subspace, Vec, commutator, kernel_basis, matrix_from_columns, matrix_from_json,
    matrix_to_json, rank, span_close, unit_vec, vector_from_json,
    vector_to_json,
)
from .heisenberg import HeisenbergMatRep, exp_apply


class InvalidAction(ValueError):
    pass


def orbit_span(algebra: MatAlgebra, point: Sequence) -> Subspace:
    """The subspace A . point."""
    return span_close([b.apply(point) for b in algebra.basis])


@dataclass(frozen=True)
class AdditiveProjAction:
    """An action of G_a^n on P^n by exp of pairwise commuting nilpotents."""

    generators: tuple
    reference_point: Vec

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def d(self) -> int:
        return len(self.reference_point)

    def algebra(self) -> MatAlgebra:
        return generate_algebra(self.generators, size=self.d)

    def validate(self) -> None:
        d = self.d
        if d != self.n + 1:
            raise InvalidAction(f"{self.n} generators cannot act on P^{d - 1} with an open orbit")
        for g in self.generators:
            if g.shape != (d, d):
                raise InvalidAction("generator has the wrong size")
        for i, a in enumerate(self.generators):
            for b in self.generators[i + 1:]:
                if not commutator(a, b).is_zero():
                    raise InvalidAction("generators do not commute")
        if self.generators and span_close(self.generators).dim != self.n:
            raise InvalidAction("generators are linearly dependent (action not effective)")
        alg = self.algebra()
        try:
            local_anatomy(alg)
        except ValueError as exc:
            raise InvalidAction(f"generators are not nilpotent: {exc}") from None
        if orbit_span(alg, self.reference_point).dim != d:
            raise InvalidAction("orbit of the reference point is not dense")

    def act(self, a: Sequence, point: Sequence) -> Vec:
        x = QMat.zeros(self.d)
        for c, g in zip(a, self.generators):
            if c:
                x = x + g.scale(c)
        return exp_apply(x, point)

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "generators": [matrix_to_json(g) for g in self.generators],
                "reference_point": vector_to_json(self.reference_point)}

    @classmethod
    def from_json(cls, obj: dict) -> "AdditiveProjAction":
        return cls(tuple(matrix_from_json(g) for g in obj["generators"]),
                   vector_from_json(obj["reference_point"]))


def algebra_to_action(loc: LocalAlgebra) -> AdditiveProjAction:
    """Regular representation of a commutative local algebra on itself.

    Coordinates are taken in the algebra's own basis (unit first), so the
    reference point is e_0 and each maximal-ideal basis element contributes its
    left-multiplication operator.
    """
    if not loc.is_commutative():
        raise InvalidAction("algebra is not commutative")
    basis = loc.algebra.basis
    k = len(basis)
    gens = []
    for m in loc.maximal_ideal.matrices():
        cols = [loc.algebra.coordinates(m @ b) for b in basis]
        gens.append(matrix_from_columns(cols, k))
    act = AdditiveProjAction(tuple(gens), unit_vec(k, 0))
    act.validate()
    return act


def action_to_algebra(act: AdditiveProjAction) -> LocalAlgebra:
    act.validate()
    loc = local_anatomy(act.algebra())
    if not loc.is_commutative() or loc.dim != act.n + 1:
        raise InvalidAction("generated algebra is not commutative of dimension n+1")
    return loc


def is_tautological(act: AdditiveProjAction) -> bool:
    """True for the translation action: all products vanish and the orbit is dense."""
    gens = act.generators
    if any(not (a @ b).is_zero() for a in gens for b in gens):
        return False
    pts = [act.reference_point] + [g.apply(act.reference_point) for g in gens]
    return span_close(pts).dim == act.d


def translation_action(n: int) -> AdditiveProjAction:
    """[z0 : z1 + a1 z0 : ... : zn + an z0] on P^n."""
    d = n + 1
    return AdditiveProjAction(tuple(QMat.unit(d, j, 0) for j in range(1, d)), unit_vec(d, 0))


# ---------------------------------------------------------------------------
# Heisenberg actions

@dataclass(frozen=True)
class HeisenbergProjAction:
    rep: HeisenbergMatRep
    boundary: Subspace
    reference_point: Vec

    @property
    def n(self) -> int:
        return self.rep.n

    @property
    def d(self) -> int:
        return self.rep.d

    def algebra(self) -> MatAlgebra:
        return generate_algebra(self.rep.basis)

    def validate(self) -> None:
        d = self.d
        if d != 2 * self.n + 2:
            raise InvalidAction(f"expected {2 * self.n + 2}x{2 * self.n + 2} matrices")
        if self.boundary.ambient_dim != d or self.boundary.dim != d - 1:
            raise InvalidAction(f"boundary must be a hyperplane of dimension {d - 1}")
        if self.boundary.contains(self.reference_point):
            raise InvalidAction("reference point lies on the boundary")
        for x in self.rep.basis:
            for b in self.boundary.basis:
                if not self.boundary.contains(x.apply(b)):
                    raise InvalidAction("the group does not preserve the boundary")
        if orbit_span(self.algebra(), self.reference_point).dim != d:
            raise InvalidAction("orbit of the reference point is not dense")

    def act(self, w: Sequence, s, point: Sequence) -> Vec:
        return exp_apply(self.rep.element(w, s), point)

    def to_json(self) -> dict:
        return {"rep": self.rep.to_json(),
                "boundary": [vector_to_json(b) for b in self.boundary.basis],
                "reference_point": vector_to_json(self.reference_point)}

    @classmethod
    def from_json(cls, obj: dict) -> "HeisenbergProjAction":
        rep = HeisenbergMatRep.from_json(obj["rep"])
        boundary = Subspace(rep.d, [vector_from_json(b) for b in obj["boundary"]])
        act = cls(rep, boundary, vector_from_json(obj["reference_point"]))
        act.validate()
        return act


def last_coordinate_hyperplane(d: int) -> Subspace:
    return Subspace(d, [unit_vec(d, i) for i in range(d - 1)])


def boundary_fixed_check(h: HeisenbergProjAction) -> bool:
    """Does the centre fix the boundary pointwise?

    For nilpotent t, t x in Q x forces t x = 0, so the projective condition is
    the linear one t|V' = 0.
    """
    return all(not any(h.rep.t_mat.apply(b)) for b in h.boundary.basis)


def fixed_direction(h: HeisenbergProjAction, reference: Sequence | None = None) -> Vec:
    """v = t . o, the limit point of the orbit of o under the centre."""
    o = h.reference_point if reference is None else tuple(reference)
    v = h.rep.t_mat.apply(o)
    if not any(v):
        raise InvalidAction("t kills the reference point")
    return v


def evaluation_kernel(loc: LocalAlgebra, reference: Sequence) -> Subspace:
    """{S in A : S o = 0}."""
    basis = loc.algebra.basis
    d = loc.algebra.d
    ev = matrix_from_columns([b.apply(reference) for b in basis], d)
    if rank(ev) != d:
        raise InvalidAction("orbit of the reference point is not dense")
    out = []
    for z in kernel_basis(ev).basis:
        m = QMat.zeros(d)
        for c, b in zip(z, basis):
            if c:
                m = m + b.scale(c)
        out.append(m.entries)
    return Subspace(d * d, out, (d, d))


@dataclass(frozen=True)
class DescentResult:
    """The induced action on P(V / Q v).

    Quotient coordinates are the original ones with index ``pivot`` deleted;
    ``complement`` lists the basis vectors of V representing them.
    """

    fixed_direction: Vec
    pivot: int
    complement: tuple
    quotient_action: AdditiveProjAction
    tautological: bool
    effective: bool = field(default=True)

    def project(self, x: Sequence) -> Vec:
        v = self.fixed_direction
        c = x[self.pivot] / v[self.pivot]
        return tuple(a - c * b for i, (a, b) in enumerate(zip(x, v)) if i != self.pivot)

    def push(self, m: QMat) -> QMat:
        """Induced map on the quotient of a matrix preserving the line of v."""
        v = self.fixed_direction
        mv = m.apply(v)
        if any(self.project(mv)):
            raise InvalidAction("matrix does not preserve the fixed direction")
        return matrix_from_columns([self.project(m.apply(e)) for e in self.complement], len(v) - 1)

    def to_json(self) -> dict:
        return {"fixed_direction": vector_to_json(self.fixed_direction),
                "pivot": self.pivot,
                "complement": [vector_to_json(e) for e in self.complement],
                "quotient_action": self.quotient_action.to_json(),
                "tautological": self.tautological,
                "effective": self.effective}


def descend_action(h: HeisenbergProjAction) -> DescentResult:
    """Push the Heisenberg action down to P(V / Q v).

    The complement of v is spanned by the standard basis vectors other than the
    first nonzero coordinate of v.
    """
    if not boundary_fixed_check(h):
        raise InvalidAction("the centre does not fix the boundary pointwise")
    v = fixed_direction(h)
    d = h.d
    pivot = next(i for i, x in enumerate(v) if x)
    complement = tuple(unit_vec(d, i) for i in range(d) if i != pivot)
    o = h.reference_point
    c = o[pivot] / v[pivot]
    proj_o = tuple(a - c * b for i, (a, b) in enumerate(zip(o, v)) if i != pivot)
    partial = DescentResult(v, pivot, complement,
                            AdditiveProjAction((), proj_o), False)
    for x in h.rep.basis:
        if any(partial.project(x.apply(v))):
            raise InvalidAction("the fixed direction is not fixed by the whole group")
    if not partial.push(h.rep.t_mat).is_zero():
        raise InvalidAction("the centre acts nontrivially on the quotient")
    quotient = AdditiveProjAction(tuple(partial.push(x) for x in h.rep.X), proj_o)
    try:
        quotient.validate()
        effective = True
    except InvalidAction:
        effective = False
    return DescentResult(v, pivot, complement, quotient,
                         effective and is_tautological(quotient), effective)
