from fractions import Fraction
import random

import pytest

from conftest import E
from heistruct.closure import local_anatomy
from heistruct.heisenberg import HeisenbergElement, SymplecticSpace, group_mul
from heistruct.correspondence import (
    AdditiveProjAction, HeisenbergProjAction, InvalidAction, action_to_algebra, algebra_to_action,
    boundary_fixed_check, descend_action, evaluation_kernel, fixed_direction, is_tautological,
    translation_action,
)
from heistruct.exact import Subspace, inverse, same_projective_point, unit_vec
from heistruct.instances import (
    build_example, random_tautological_action, random_unitriangular, truncated_polynomial_algebra,
)


@pytest.mark.parametrize("n,k", [(1, 0), (2, 1), (3, 3)])
def test_boundary_fixed(n, k):
    act = build_example(n, k)
    assert boundary_fixed_check(act)
    d = 2 * n + 2
    first = Subspace(d, [unit_vec(d, i) for i in range(1, d)])
    other = HeisenbergProjAction(act.rep, first, unit_vec(d, 0))
    assert not boundary_fixed_check(other)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_fixed_direction_is_first_axis(n):
    act = build_example(n, 1)
    d = 2 * n + 2
    e1 = unit_vec(d, 0)
    assert same_projective_point(fixed_direction(act), e1)
    scaled = [7 * x for x in act.reference_point]
    assert same_projective_point(fixed_direction(act, scaled), e1)
    shifted = [a + b for a, b in zip(act.reference_point, unit_vec(d, 1))]
    assert same_projective_point(fixed_direction(act, shifted), e1)


def test_descent_k0_is_translation():
    res = descend_action(build_example(1, 0))
    assert res.tautological and res.effective
    assert is_tautological(res.quotient_action)
    assert len(res.complement) == 3


def test_descent_full_twist_not_tautological():
    res = descend_action(build_example(2, 2))
    assert not res.tautological
    quot = res.quotient_action
    assert any(not (a @ a).is_zero() for a in quot.generators)


def test_descent_json_lists_complement():
    obj = descend_action(build_example(2, 0)).to_json()
    assert len(obj["complement"]) == 5
    assert obj["tautological"] is True


def test_tautological_detection():
    assert is_tautological(translation_action(2))
    cube = algebra_to_action(truncated_polynomial_algebra(3))
    assert not is_tautological(cube)
    rng = random.Random(3)
    for _ in range(5):
        p = random_unitriangular(3, rng).T @ random_unitriangular(3, rng)
        pinv = inverse(p)
        base = translation_action(2)
        conj = AdditiveProjAction(tuple(p @ g @ pinv for g in base.generators), p.apply(base.reference_point))
        conj.validate()
        assert is_tautological(conj)


def test_algebra_to_action_examples():
    jordan = algebra_to_action(truncated_polynomial_algebra(2))
    assert jordan.generators == (E(2, 2, 1),)
    assert jordan.act([Fraction(5)], (1, 3)) == (1, 8)
    point = algebra_to_action(truncated_polynomial_algebra(1))
    assert point.generators == () and point.d == 1
    cube = algebra_to_action(truncated_polynomial_algebra(3))
    # one generator per basis element of m = span{x, x^2}; x alone generates
    g, g2 = cube.generators
    assert g @ g == g2 and (g @ g @ g).is_zero()
    assert {g.apply(cube.reference_point), g2.apply(cube.reference_point)} == {(0, 1, 0), (0, 0, 1)}


def test_action_to_algebra_examples():
    trans = action_to_algebra(translation_action(4))
    assert trans.dim == 5 and trans.profile == (4, 0)
    cube = action_to_algebra(algebra_to_action(truncated_polynomial_algebra(3)))
    assert cube.profile == (2, 1, 0)
    single = action_to_algebra(AdditiveProjAction((E(2, 1, 2),), (0, 1)))
    assert single.dim == 2


def test_action_validation_errors():
    with pytest.raises(InvalidAction):
        AdditiveProjAction((E(3, 1, 2),), (0, 0, 1)).validate()
    with pytest.raises(InvalidAction):
        AdditiveProjAction((E(3, 1, 2), E(3, 2, 3)), (0, 0, 1)).validate()
    with pytest.raises(InvalidAction):
        AdditiveProjAction((E(3, 2, 1), E(3, 3, 1)), (0, 1, 0)).validate()


def test_evaluation_kernel_dims():
    for n in (1, 2):
        act = build_example(n, 0)
        loc = local_anatomy(act.algebra())
        assert evaluation_kernel(loc, act.reference_point).dim == 0
    act = build_example(1, 1)
    loc = local_anatomy(act.algebra())
    assert loc.dim == 5
    assert evaluation_kernel(loc, act.reference_point).dim == 1


def test_descent_diagram_commutes():
    rng = random.Random(11)
    _, act = random_tautological_action(2, rng)
    res = descend_action(act)
    assert res.tautological
    for _ in range(5):
        w = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(4)]
        p = [Fraction(rng.randint(-3, 3)) for _ in range(6)]
        assert res.project(act.act(w, 2, p)) == res.quotient_action.act(w, res.project(p))


def test_heisenberg_action_json_round_trip():
    act = build_example(2, 1)
    assert HeisenbergProjAction.from_json(act.to_json()) == act


def test_dense_orbit_required():
    act = build_example(1, 0)
    bad = HeisenbergProjAction(act.rep, act.boundary, unit_vec(4, 0))
    with pytest.raises(InvalidAction):
        bad.validate()


def test_projective_action_is_a_group_action():
    act = build_example(2, 2)
    p = (1, 2, 3, 4, 5, 6)
    a, b = [1, 0, 2, 0], [0, 3, 0, 1]
    ab = group_mul(HeisenbergElement.of(a), HeisenbergElement.of(b), SymplecticSpace.standard(2))
    assert act.act(a, 0, act.act(b, 0, p)) == act.act(ab.w, ab.t, p)
