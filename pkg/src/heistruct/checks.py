"""Named verification checks and the suite runner.

Each check takes a half-dimension n and a seeded RNG and returns a status, a
short summary and, on failure, a JSON witness built from the offending data.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable

from .closure import generate_algebra, local_anatomy
from .correspondence import (
    action_to_algebra, algebra_to_action, boundary_fixed_check, descend_action,
    evaluation_kernel, fixed_direction, translation_action,
)
from .exact import (
    QMat, Subspace, frac_str, matrix_to_json, same_projective_point, symmetric_part,
    vector_to_json,
)
from .heisenberg import (
    HeisenbergElement, SymplecticSpace, exp_nilpotent, group_mul, standard_omega,
)
from .instances import (
    build_example, example_rep, random_tautological_action, structure_action,
    tensor_algebra, truncated_polynomial_algebra,
)
from .tautological import (
    StructureMatrix, algebra_from_structure_matrix, certify_inequivalent, congruent,
    equivalence_witness, extract_structure_matrix, generate_family, random_structure_matrix,
    random_symplectic, symplectic_invariant, transvection_generators, verify_certificate,
)

# sample sizes per n
RANDOM_ALGEBRAS = 50
REFERENCE_POINTS = 20
DIAGRAM_PAIRS = 20
RANDOM_MATRICES = 100
FAMILY_SIZE = 20


@dataclass
class CheckReport:
    check_name: str
    instance_description: str
    status: str  # "pass", "fail" or "inconclusive"
    summary: str = ""
    witness: dict | None = None
    wall_time: float = 0.0  # milliseconds

    def to_json(self, timings: bool = False) -> dict:
        obj = {"check": self.check_name, "instance": self.instance_description,
               "status": self.status, "summary": self.summary}
        if self.witness is not None:
            obj["witness"] = self.witness
        if timings:
            obj["wall_time_ms"] = round(self.wall_time, 3)
        return obj


class CheckFailed(Exception):
    def __init__(self, summary: str, witness: dict):
        super().__init__(summary)
        self.summary = summary
        self.witness = witness


class Inconclusive(Exception):
    pass


CHECKS: dict[str, Callable[[int, random.Random], str]] = {}
ALIASES = {"dimension-bounds": "dim-bounds"}


def check(name: str):
    def register(fn):
        CHECKS[name] = fn
        return fn
    return register


def _require(cond: bool, summary: str, **witness) -> None:
    if not cond:
        raise CheckFailed(summary, {k: _jsonable(v) for k, v in witness.items()})


def _jsonable(v):
    if isinstance(v, QMat):
        return matrix_to_json(v)
    if isinstance(v, Fraction):
        return frac_str(v)
    if isinstance(v, Subspace):
        return [vector_to_json(b) for b in v.basis]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    return v


def _rand_frac(rng: random.Random, spread: int = 3) -> Fraction:
    return Fraction(rng.randint(-spread, spread), rng.randint(1, spread))


# ---------------------------------------------------------------------------

@check("heisenberg-relations")
def _heisenberg_relations(n, rng):
    # construction validates brackets, centrality and faithfulness
    for k in range(n + 1):
        example_rep(n, k)
        build_example(n, k)
    for _ in range(10):
        structure_action(random_structure_matrix(n, rng))
    return f"example reps k=0..{n} and 10 random structure reps satisfy [X_i,X_j] = Omega_ij t"


@check("group-law-associativity")
def _group_law(n, rng):
    sp = SymplecticSpace.standard(n)

    def rand_el():
        return HeisenbergElement.of([_rand_frac(rng) for _ in range(2 * n)], _rand_frac(rng))

    rep = build_example(n, 0).rep
    for _ in range(30):
        a, b, c = rand_el(), rand_el(), rand_el()
        left = group_mul(group_mul(a, b, sp), c, sp)
        right = group_mul(a, group_mul(b, c, sp), sp)
        _require(left == right, "group law is not associative", a=[a.w, a.t], b=[b.w, b.t], c=[c.w, c.t])
        _require(group_mul(a, a.inverse(), sp) == HeisenbergElement.identity(n),
                 "inverse fails", a=[a.w, a.t])
        # exponential coordinates: exp(a) exp(b) = exp(a * b)
        ea = exp_nilpotent(rep.element(a.w, a.t))
        eb = exp_nilpotent(rep.element(b.w, b.t))
        ab = group_mul(a, b, sp)
        _require(ea @ eb == exp_nilpotent(rep.element(ab.w, ab.t)),
                 "matrix exponential does not realize the group law", a=[a.w, a.t], b=[b.w, b.t])
    return "30 random triples: associativity, inverses and exp-coordinates agree exactly"


@check("algebra-closure-soundness")
def _closure_soundness(n, rng):
    algebras = [generate_algebra(example_rep(n, k).basis) for k in range(n + 1)]
    algebras += [random_tautological_action(n, rng)[1].algebra() for _ in range(5)]
    for a in algebras:
        bad = a.closure_residuals()
        _require(not bad, "a product left the span", pairs=bad)
    return f"{len(algebras)} algebras closed under multiplication"


@check("example-dimension")
def _example_dimension(n, rng):
    dims = []
    for k in range(n + 1):
        dim = generate_algebra(example_rep(n, k).basis).dim
        _require(dim == 2 * n + 2 + k, "dimension differs from 2n+2+k", n=n, k=k, dim=dim)
        dims.append(dim)
    return f"dims {dims} = 2n+2+k"


@check("dim-bounds")
def _dim_bounds(n, rng):
    dims = []
    for k in range(n + 1):
        act = build_example(n, k)
        _require(boundary_fixed_check(act), "centre does not fix the boundary", n=n, k=k)
        dim = act.algebra().dim
        _require(2 * n + 2 <= dim <= 3 * n + 2, "dimension out of bounds", n=n, k=k, dim=dim)
        dims.append(dim)
    _require(min(dims) == 2 * n + 2 and max(dims) == 3 * n + 2,
             "bounds not attained", dims=dims)
    return f"dims {dims} within [{2 * n + 2}, {3 * n + 2}], both ends attained"


def _sample_actions(n, rng, count):
    out = [build_example(n, k) for k in range(n + 1)]
    out += [random_tautological_action(n, rng)[1] for _ in range(count)]
    return out


@check("lemma-center")
def _lemma_center(n, rng):
    checked = 0
    for act in _sample_actions(n, rng, RANDOM_ALGEBRAS):
        loc = local_anatomy(act.algebra())
        t = act.rep.t_mat
        kills = all((t @ m).is_zero() and (m @ t).is_zero() for m in loc.maximal_ideal.matrices())
        _require(kills, "t does not annihilate the maximal ideal", t=t)
        m2 = loc.filtration[1]
        _require(m2.is_subspace_of(loc.center), "m^2 is not central", m2=m2, center=loc.center)
        _require(loc.nilpotency_index <= n + 3, "m^(n+3) is not zero", profile=list(loc.profile))
        checked += 1
    return f"{checked} algebras: t m = m t = 0 and m^2 inside the centre"


@check("lemma-kernel-ev")
def _lemma_kernel_ev(n, rng):
    checked = 0
    for act in _sample_actions(n, rng, RANDOM_ALGEBRAS):
        loc = local_anatomy(act.algebra())
        ker = evaluation_kernel(loc, act.reference_point)
        meet = ker.intersection(loc.center)
        _require(meet.dim == 0, "ker(ev) meets the centre", intersection=meet)
        _require(ker.dim <= n, "ker(ev) too large", kernel=ker)
        _require(ker.dim == loc.dim - act.d, "ker(ev) dimension mismatch", kernel=ker)
        desc = descend_action(act)
        for s in ker.matrices():
            _require(desc.push(s).is_zero(), "theta(ker ev) is nonzero", element=s)
        checked += 1
    return f"{checked} algebras: ker(ev) ∩ C(A) = 0, dim ker(ev) <= n, theta(ker ev) = 0"


@check("fixed-direction-independence")
def _fixed_direction(n, rng):
    checked = 0
    for act in _sample_actions(n, rng, RANDOM_ALGEBRAS):
        v = fixed_direction(act)
        boundary = act.boundary.basis
        for i in range(REFERENCE_POINTS):
            if i % 2:
                # a translate of the reference point by the group
                w = [_rand_frac(rng) for _ in range(2 * n)]
                o2 = act.act(w, _rand_frac(rng), act.reference_point)
            else:
                o2 = list(act.reference_point)
                for b in boundary:
                    c = _rand_frac(rng)
                    o2 = [x + c * y for x, y in zip(o2, b)]
                o2 = [x * 7 for x in o2]
            v2 = fixed_direction(act, o2)
            _require(same_projective_point(v, v2), "fixed direction moved",
                     reference=list(o2), v=v, v2=v2)
        checked += 1
    return f"{checked} actions x {REFERENCE_POINTS} reference points: same direction"


@check("central-triviality-on-quotient")
def _central_triviality(n, rng):
    for act in _sample_actions(n, rng, 10):
        desc = descend_action(act)
        _require(desc.push(act.rep.t_mat).is_zero(), "t acts on the quotient", t=act.rep.t_mat)
        for x in act.rep.basis:
            _require(not any(desc.project(x.apply(desc.fixed_direction))),
                     "fixed direction not fixed", generator=x)
    return "centre acts trivially on P(V / Qv) and v is a global fixed point"


@check("descent-diagram")
def _descent_diagram(n, rng):
    checked = 0
    for act in _sample_actions(n, rng, RANDOM_ALGEBRAS):
        desc = descend_action(act)
        quot = desc.quotient_action
        for _ in range(DIAGRAM_PAIRS):
            w = [_rand_frac(rng) for _ in range(2 * n)]
            s = _rand_frac(rng)
            p = [_rand_frac(rng) for _ in range(act.d)]
            lhs = desc.project(act.act(w, s, p))
            rhs = quot.act(w, desc.project(p))
            _require(lhs == rhs, "pr(g p) != Theta(g) pr(p)", w=w, s=s, p=p, lhs=lhs, rhs=rhs)
        checked += 1
    return f"{checked} actions x {DIAGRAM_PAIRS} (g, p) pairs commute exactly"


@check("descent-taut")
def _descent_taut(n, rng):
    desc = descend_action(build_example(n, 0))
    _require(desc.tautological, "k=0 example does not descend to translations",
             quotient=list(desc.quotient_action.generators))
    return "k=0 example descends to the tautological action"


@check("taut-iff-dim")
def _taut_iff_dim(n, rng):
    acts = [build_example(n, k) for k in range(n + 1)]
    acts += [random_tautological_action(n, rng)[1] for _ in range(10)]
    for act in acts:
        dim = act.algebra().dim
        taut = descend_action(act).tautological
        _require((dim == 2 * n + 2) == taut, "tautological flag disagrees with dimension",
                 dim=dim, tautological=taut)
    return f"{len(acts)} actions: dim = 2n+2 exactly when the descent is tautological"


@check("structure-roundtrip")
def _structure_roundtrip(n, rng):
    for _ in range(RANDOM_MATRICES):
        sm = random_structure_matrix(n, rng)
        rep, loc = algebra_from_structure_matrix(sm)
        for i, a in enumerate(rep.X):
            for j, b in enumerate(rep.X):
                _require(a @ b == rep.t_mat.scale(sm.M[i, j]), "X_i X_j != a_ij t", M=sm.M, i=i, j=j)
        back = extract_structure_matrix(loc, rep)
        _require(back.M == sm.M, "structure matrix not recovered", M=sm.M, recovered=back.M)
        _require(loc.dim == 2 * n + 2, "wrong algebra dimension", M=sm.M, dim=loc.dim)
    return f"{RANDOM_MATRICES} random M recovered bit-exactly"


@check("F-bijection")
def _f_bijection(n, rng):
    half = standard_omega(n).scale(Fraction(1, 2))
    for _ in range(RANDOM_MATRICES):
        sm = random_structure_matrix(n, rng)
        N = symmetric_part(sm.M)
        _require(symmetric_part(N + half) == N, "S(N + Omega/2) != N", N=N)
        _require(symmetric_part(sm.M) + half == sm.M, "S(M) + Omega/2 != M", M=sm.M)
        c = random_symplectic(n, rng)
        # F is well defined: congruent M give congruent S(M)
        _require(symmetric_part(congruent(sm, c).M) == c @ N @ c.T, "F not equivariant", M=sm.M, C=c)
    return f"{RANDOM_MATRICES} instances: both compositions are identities"


@check("invariance-oracle")
def _invariance(n, rng):
    gens = transvection_generators(n)
    found = 0
    for _ in range(RANDOM_MATRICES):
        sm = random_structure_matrix(n, rng)
        c = random_symplectic(n, rng)
        _require(c @ standard_omega(n) @ c.T == standard_omega(n), "C is not symplectic", C=c)
        moved = congruent(sm, c)
        _require(symplectic_invariant(moved) == symplectic_invariant(sm),
                 "invariant changed under Sp congruence", M=sm.M, C=c)
        _require(not certify_inequivalent(sm, moved).verdict,
                 "planted equivalence certified inequivalent", M=sm.M, C=c)
        # conformal change C Omega C^T = k Omega, with t rescaled by k
        k = Fraction(rng.choice([2, 3, 5, 7]), rng.choice([1, 2, 3]))
        scale = QMat.diag([k] * n + [1] * n)
        conf = scale @ c
        rescaled = StructureMatrix(n, (conf @ sm.M @ conf.T).scale(1 / k))
        _require(symplectic_invariant(rescaled) == symplectic_invariant(sm),
                 "invariant changed under conformal congruence", M=sm.M, C=conf, k=k)
        t = gens[rng.randrange(len(gens))]
        planted = congruent(sm, t)
        w = equivalence_witness(sm, planted, budget=len(gens) + 1)
        _require(w is not None and w @ planted.M @ w.T == sm.M,
                 "planted transvection not recovered", M=sm.M, T=t)
        found += 1
    return f"{RANDOM_MATRICES} symplectic and conformal congruences; {found} planted witnesses recovered"


@check("family-certification")
def _family(n, rng):
    family = generate_family(n, range(1, FAMILY_SIZE + 1))
    count = 0
    for a, b in combinations(family, 2):
        cert = certify_inequivalent(a, b)
        _require(cert.verdict, "family members not separated", left=a.M, right=b.M)
        _require(verify_certificate(cert.to_json()), "certificate does not re-verify", left=a.M, right=b.M)
        count += 1
    for sm in family[:3]:
        act = structure_action(sm)
        _require(descend_action(act).tautological, "family member not tautological", M=sm.M)
    return f"{count} pairwise inequivalence certificates, all re-verified"


def _ht_algebras():
    out = [(f"Q[x]/(x^{m})", truncated_polynomial_algebra(m)) for m in range(1, 6)]
    for sizes in ([2, 2], [2, 3], [3, 2], [2, 2, 1]):
        out.append((" ⊗ ".join(f"Q[x]/(x^{m})" for m in sizes), tensor_algebra(sizes)))
    return out


@check("ht-roundtrip")
def _ht_roundtrip(n, rng):
    names = []
    for name, loc in _ht_algebras():
        act = algebra_to_action(loc)
        back = action_to_algebra(act)
        _require(back.dim == loc.dim and back.profile == loc.profile,
                 f"round trip changed {name}", before=list(loc.profile), after=list(back.profile))
        names.append(name)
    trans = action_to_algebra(translation_action(2 * n))
    _require(trans.profile == (2 * n, 0), "translation algebra has m^2 != 0", profile=list(trans.profile))
    return f"{len(names)} commutative algebras preserved (dimension and filtration profile)"


@check("ht-remark")
def _ht_remark(n, rng):
    loc = truncated_polynomial_algebra(2 * n + 1)
    power = loc.filtration[2 * n - 1]
    _require(power.dim > 0, "m_B^(2n) vanishes", n=n)
    for k in range(n + 1):
        idx = local_anatomy(build_example(n, k).algebra()).nilpotency_index
        _require(idx <= n + 3, "Heisenberg algebra with m^(n+3) != 0", n=n, k=k)
    if n >= 3:
        return (f"Q[x]/(x^{2 * n + 1}) has m_B^{2 * n} != 0 while every Heisenberg algebra has "
                f"m^{n + 3} = 0: no Heisenberg preimage possible")
    return f"m_B^{2 * n} != 0, but 2n < n+3 so the nilpotency bound does not exclude a preimage at n={n}"


# ---------------------------------------------------------------------------

def resolve(names) -> list[str]:
    out = []
    for name in names:
        name = ALIASES.get(name, name)
        if name == "all":
            out.extend(c for c in CHECKS if c not in out)
        elif name not in CHECKS:
            raise KeyError(f"unknown check {name!r}; available: {', '.join(CHECKS)}")
        elif name not in out:
            out.append(name)
    return out


def run_suite(scope, sizes, seed: int = 0) -> list[CheckReport]:
    reports = []
    for name in resolve(scope):
        for n in sizes:
            rng = random.Random(f"{seed}:{name}:{n}")
            start = time.perf_counter()
            try:
                summary = CHECKS[name](n, rng)
                report = CheckReport(name, f"n={n}, seed={seed}", "pass", summary)
            except CheckFailed as exc:
                report = CheckReport(name, f"n={n}, seed={seed}", "fail", exc.summary, exc.witness)
            except Inconclusive as exc:
                report = CheckReport(name, f"n={n}, seed={seed}", "inconclusive", str(exc))
            except (ValueError, ArithmeticError, AssertionError) as exc:
                report = CheckReport(name, f"n={n}, seed={seed}", "fail",
                                     f"{type(exc).__name__}: {exc}", {"error": str(exc)})
            report.wall_time = (time.perf_counter() - start) * 1000
            reports.append(report)
    return reports
