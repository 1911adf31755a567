from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import E
from heistruct.exact import QMat
from heistruct.heisenberg import (
    HeisenbergElement, HeisenbergMatRep, NotHeisenberg, SymplecticSpace, contragredient,
    exp_apply, exp_nilpotent, group_mul, lie_bracket, standard_omega, symplectic_basis_extract,
)
from heistruct.instances import example_rep

SP1 = SymplecticSpace.standard(1)
H = HeisenbergElement.of


def test_group_law_examples():
    assert group_mul(H((1, 0)), H((0, 1)), SP1) == H((1, 1), Fraction(1, 2))
    a = H((3, -2), 5)
    assert group_mul(a, H((-3, 2), -5), SP1) == HeisenbergElement.identity(1)
    assert group_mul(H((1, 0)), H((2, 0), 5), SP1) == H((3, 0), 5)


def test_bracket_examples():
    assert lie_bracket(H((1, 0)), H((0, 1)), SP1) == H((0, 0), 1)
    a = H((4, 1), 2)
    assert lie_bracket(a, a, SP1) == H((0, 0), 0)
    assert lie_bracket(H((2, 0), 3), H((0, 5), 7), SP1) == H((0, 0), 10)


def test_exp_examples():
    assert exp_nilpotent(E(2, 1, 2)) == QMat.identity(2) + E(2, 1, 2)
    assert exp_nilpotent(QMat.zeros(3)) == QMat.identity(3)
    n = E(3, 1, 2) + E(3, 2, 3)
    assert exp_nilpotent(n) == QMat.identity(3) + n + E(3, 1, 3).scale(Fraction(1, 2))
    assert exp_apply(n, (0, 0, 2)) == exp_nilpotent(n).apply((0, 0, 2))


def test_exp_rejects_non_nilpotent():
    with pytest.raises(ValueError):
        exp_nilpotent(QMat.identity(2))


def test_degenerate_omega_rejected():
    with pytest.raises(ValueError):
        SymplecticSpace(1, QMat.zeros(2))


def test_extract_example_unchanged():
    gens = [E(4, 1, 2), E(4, 1, 3) + E(4, 2, 4), E(4, 1, 4)]
    rep = symplectic_basis_extract(gens)
    assert rep.t_mat == E(4, 1, 4)
    assert rep.X == (E(4, 1, 2), E(4, 1, 3) + E(4, 2, 4))
    assert rep.bracket_table() == standard_omega(1)


def test_extract_with_central_shift():
    gens = [E(4, 1, 2) + E(4, 1, 4), E(4, 1, 3) + E(4, 2, 4), E(4, 1, 4)]
    rep = symplectic_basis_extract(gens)
    assert rep.bracket_table() == standard_omega(1)
    assert rep.t_mat == E(4, 1, 4)


def test_extract_abelian_fails():
    with pytest.raises(NotHeisenberg, match="derived algebra has dimension 0"):
        symplectic_basis_extract([E(4, 1, 2), E(4, 1, 3), E(4, 1, 4)])


@pytest.mark.parametrize("n,k", [(1, 0), (1, 1), (2, 1), (3, 3)])
def test_extract_recovers_example_structure(n, k):
    rep = example_rep(n, k)
    again = symplectic_basis_extract(list(reversed(rep.basis)))
    assert again.bracket_table() == standard_omega(n)
    assert again.t_mat.is_strictly_upper()


def test_rep_rejects_wrong_brackets():
    with pytest.raises(NotHeisenberg):
        HeisenbergMatRep.build([E(4, 1, 2), E(4, 1, 3)], E(4, 1, 4))


def test_contragredient_keeps_bracket_table():
    rep = example_rep(2, 1)
    dual = contragredient(rep)
    assert dual.bracket_table() == rep.bracket_table()
    assert dual.t_mat == -rep.t_mat


def test_rep_json_round_trip():
    rep = example_rep(2, 2)
    assert HeisenbergMatRep.from_json(rep.to_json()) == rep


elements = st.tuples(st.lists(st.fractions(-3, 3, max_denominator=3), min_size=4, max_size=4),
                     st.fractions(-3, 3, max_denominator=3))


@settings(max_examples=40, deadline=None)
@given(elements, elements, elements)
def test_group_law_properties(a, b, c):
    sp = SymplecticSpace.standard(2)
    a, b, c = H(*a), H(*b), H(*c)
    assert group_mul(group_mul(a, b, sp), c, sp) == group_mul(a, group_mul(b, c, sp), sp)
    assert lie_bracket(a, b, sp) == lie_bracket(b, a, sp).inverse()
    rep = example_rep(2, 1)
    ab = group_mul(a, b, sp)
    assert (exp_nilpotent(rep.element(a.w, a.t)) @ exp_nilpotent(rep.element(b.w, b.t))
            == exp_nilpotent(rep.element(ab.w, ab.t)))
