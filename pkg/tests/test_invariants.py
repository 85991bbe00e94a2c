import pytest
from hypothesis import given, settings, strategies as st

from satkit.abelian import AbelianGroup, cokernel, smith_normal_form
from satkit.catalog import (
    braid_closure,
    double_kink_unknot,
    figure_eight,
    positive_kink_unknot,
    torus_knot,
    trefoil,
)
from satkit.diagram import connected_sum, mirror, reverse, simplify, unknot
from satkit.invariants import (
    Laurent,
    alexander_poly,
    determinant,
    equal_up_to_units,
    fox_derivative,
    fox_row_abelian,
    laurent_det_up_to_units,
)
from satkit.wires import insert_kink, insert_poke


def lp(*coeffs):
    return Laurent.of(*coeffs)


# -- Laurent arithmetic -------------------------------------------------------


def test_laurent_basics():
    t = Laurent.t()
    assert (t * t + t).c == {1: 1, 2: 1}
    assert (t - t) == Laurent.zero()
    assert lp(1, -1, 1).evaluate(-1) == 3


def test_laurent_normalize():
    p = Laurent({-2: -1, 0: -3})
    n = p.normalized()
    assert n.c == {0: 1, 2: 3}
    assert equal_up_to_units(p, Laurent({5: 2 * 1, 7: 6}).exact_div(Laurent({0: 2})))


def test_laurent_exact_div():
    a = lp(1, 2, 1)
    b = lp(1, 1)
    assert a.exact_div(b) == b
    with pytest.raises(Exception):
        lp(1, 0, 1).exact_div(lp(1, 1))


def test_compose_power():
    p = lp(1, -1, 1)
    assert p.compose_power(2).c == {0: 1, 2: -1, 4: 1}
    assert p.compose_power(0).c == {0: 1}
    assert p.compose_power(-1).c == {0: 1, -1: -1, -2: 1}


coeff = st.integers(min_value=-6, max_value=6)


@settings(max_examples=60, deadline=None)
@given(st.lists(coeff, min_size=1, max_size=5), st.lists(coeff, min_size=1, max_size=5),
       st.integers(min_value=-3, max_value=3).filter(lambda x: x != 0))
def test_laurent_mul_matches_evaluation(a, b, x):
    pa, pb = Laurent.of(*a), Laurent.of(*b)
    assert (pa * pb).evaluate(x) == pa.evaluate(x) * pb.evaluate(x)
    assert (pa + pb).evaluate(x) == pa.evaluate(x) + pb.evaluate(x)


# -- Smith normal form ---------------------------------------------------------


def test_snf_examples():
    assert smith_normal_form([[2, 4], [6, 8]], 2) == [2, 4]
    assert smith_normal_form([[1]], 1) == [1]
    assert smith_normal_form([[0]], 1) == []


def test_cokernel():
    assert cokernel([[2]], 1) == AbelianGroup((2,))
    assert cokernel([], 2) == AbelianGroup((0, 0))
    assert cokernel([[1, 0]], 2) == AbelianGroup((0,))
    assert cokernel([[2, 0], [0, 3]], 2).order() == 6


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(st.integers(min_value=-9, max_value=9), min_size=3, max_size=3),
                min_size=1, max_size=4))
def test_snf_against_sympy(rows):
    import sympy
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf

    ours = smith_normal_form(rows, 3)
    m = sympy.Matrix(rows)
    theirs = sympy_snf(m, domain=sympy.ZZ)
    diag = [abs(int(theirs[i, i])) for i in range(min(theirs.shape))]
    diag = [d for d in diag if d != 0]
    assert ours == diag


def test_abelian_group_api():
    g = AbelianGroup((2, 4, 0))
    assert not g.is_trivial
    assert g.rank == 1
    assert g.order() == 0
    assert AbelianGroup.cyclic(1).is_trivial
    assert AbelianGroup.cyclic(5).order() == 5
    assert AbelianGroup((0,)).is_infinite_cyclic
    with pytest.raises(ValueError):
        AbelianGroup((4, 2))


# -- Fox calculus ---------------------------------------------------------------


def test_fox_base_cases():
    assert fox_derivative((1,), 1) == {(): 1}
    assert fox_derivative((-1,), 1) == {(-1,): -1}
    assert fox_derivative((2,), 1) == {}


def test_fox_product_rule():
    # d(gg)/dg = 1 + g
    assert fox_derivative((1, 1), 1) == {(): 1, (1,): 1}


def test_fox_commutator_abelianized():
    # d(h g h^-1 g^-1)/dg abelianizes to t - 1
    row = fox_row_abelian((2, 1, -2, -1), 2)
    assert row[1] == Laurent({1: 1, 0: -1})


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=0, max_size=6),
       st.lists(st.sampled_from([1, -1, 2, -2]), min_size=0, max_size=6))
def test_fox_product_rule_property(u, v):
    # d(uv) = du + u dv, abelianized
    left = fox_row_abelian(tuple(u) + tuple(v), 2)
    du = fox_row_abelian(tuple(u), 2)
    dv = fox_row_abelian(tuple(v), 2)
    tu = sum(1 if x > 0 else -1 for x in u)
    for g in (1, 2):
        expect = du.get(g, Laurent()) + Laurent.t(tu) * dv.get(g, Laurent())
        assert left.get(g, Laurent()) == expect


# -- Alexander polynomials -------------------------------------------------------


def test_alexander_unknot():
    assert alexander_poly(unknot()) == Laurent.one()
    assert alexander_poly(positive_kink_unknot()) == Laurent.one()
    assert alexander_poly(double_kink_unknot()) == Laurent.one()


def test_alexander_trefoil():
    assert alexander_poly(trefoil()) == lp(1, -1, 1)


def test_alexander_figure_eight():
    assert alexander_poly(figure_eight()) == lp(1, -3, 1)


def test_alexander_torus_25():
    # (2,5) torus knot: 1 - t + t^2 - t^3 + t^4
    assert alexander_poly(torus_knot(2, 5)) == lp(1, -1, 1, -1, 1)


def test_alexander_mirror_reverse_invariance():
    for d in (trefoil(), figure_eight(), torus_knot(2, 5)):
        assert alexander_poly(mirror(d)) == alexander_poly(d)
        assert alexander_poly(reverse(d, 0)) == alexander_poly(d)


def test_alexander_multiplicative_under_sum():
    t, f = trefoil(), figure_eight()
    s = connected_sum(t, f)
    assert alexander_poly(s) == (alexander_poly(t) * alexander_poly(f)).normalized()


def test_alexander_at_one_is_unit():
    for d in (trefoil(), figure_eight(), torus_knot(3, 4), connected_sum(trefoil(), trefoil())):
        assert abs(alexander_poly(d).evaluate(1)) == 1


def test_alexander_symmetry():
    for d in (trefoil(), figure_eight(), torus_knot(3, 4)):
        p = alexander_poly(d)
        assert equal_up_to_units(p, p.compose_power(-1))


def test_alexander_stable_under_moves():
    t = trefoil()
    assert alexander_poly(insert_kink(t, 1, -1)) == alexander_poly(t)
    assert alexander_poly(insert_poke(t, 2, 5)) == alexander_poly(t)


def test_determinants():
    assert determinant(unknot()) == 1
    assert determinant(trefoil()) == 3
    assert determinant(figure_eight()) == 5
    assert determinant(torus_knot(2, 5)) == 5


def test_determinant_multiplicative():
    t, f = trefoil(), figure_eight()
    assert determinant(connected_sum(t, f)) == determinant(t) * determinant(f)


def test_determinant_of_sum_with_inverse_is_square():
    t = trefoil()
    s = connected_sum(t, mirror(reverse(t, 0)))
    assert determinant(s) == determinant(t) ** 2


def test_laurent_det_small():
    one, t = Laurent.one(), Laurent.t()
    rows = [{0: one, 1: t}, {1: one}]
    assert equal_up_to_units(laurent_det_up_to_units(rows), one)
    rows = [{0: t + one}, ]
    assert equal_up_to_units(laurent_det_up_to_units(rows), t + one)
