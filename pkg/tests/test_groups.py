import pytest
from hypothesis import given, settings, strategies as st

from satkit.abelian import AbelianGroup
from satkit.catalog import (
    braid_closure,
    clasp_pattern,
    core_pattern,
    figure_eight,
    hopf_link,
    kink_base_pattern,
    trefoil,
    zigzag_pattern,
    cable_pattern,
)
from satkit.diagram import unknot
from satkit.errors import DomainError
from satkit.groups import (
    GroupPresentation,
    abelianization,
    cut_loop_word,
    quotient,
    simplify_presentation,
    strong_winding_check,
    todd_coxeter,
    wirtinger,
    word_to_text,
)
from satkit.patterns import winding_number


def test_wirtinger_unknot():
    g = wirtinger(unknot())
    assert g.generator_count == 1
    assert g.relators == ()
    assert abelianization(g).is_infinite_cyclic


def test_wirtinger_trefoil():
    g = wirtinger(trefoil())
    assert g.generator_count == 3
    assert len(g.relators) == 3
    assert abelianization(g).is_infinite_cyclic


def test_wirtinger_hopf():
    g = wirtinger(hopf_link())
    assert g.generator_count == 2
    assert abelianization(g) == AbelianGroup((0, 0))


def test_wirtinger_link_rank():
    d = braid_closure(3, [1, 1])  # hopf + split loop
    g = wirtinger(d)
    assert abelianization(g).rank == 3


def test_word_rendering():
    assert word_to_text((1, -2, 1)) == "a B a"


def test_quotient_free_by_generator():
    g = GroupPresentation(1, ())
    q = quotient(g, [(1,)])
    assert todd_coxeter(q, 100).outcome == "trivial"


def test_quotient_knot_group_by_meridian_is_trivial():
    for d in (trefoil(), figure_eight()):
        g = wirtinger(d)
        q = quotient(g, [g.marked("meridian_0")])
        res = todd_coxeter(q, 10**4)
        assert res.outcome == "trivial"
        assert res.cosets_used <= 10**4


def test_quotient_hopf_by_meridian():
    g = wirtinger(hopf_link())
    q = quotient(g, [g.marked("meridian_0")])
    assert abelianization(q).is_infinite_cyclic


def test_todd_coxeter_cyclic():
    g = GroupPresentation(1, ((1, 1, 1),))
    res = todd_coxeter(g, 100)
    assert res.outcome == "finite"
    assert res.order == 3


def test_todd_coxeter_trivial_word():
    g = GroupPresentation(1, ((1,),))
    res = todd_coxeter(g, 100)
    assert res.outcome == "trivial"
    assert res.order == 1


def test_todd_coxeter_symmetric_group():
    # <a,b | a^2, b^3, (ab)^3> has order 12 (alternating group)
    g = GroupPresentation(2, ((1, 1), (2, 2, 2), (1, 2, 1, 2, 1, 2)))
    assert todd_coxeter(g, 10**4).order == 12
    # <a,b | a^2, b^3, (ab)^4> is S4, order 24
    g = GroupPresentation(2, ((1, 1), (2, 2, 2), (1, 2) * 4))
    assert todd_coxeter(g, 10**4).order == 24


def test_todd_coxeter_quaternion():
    # <a,b | a^4, a^2 b^-2, b^-1 a b a>
    g = GroupPresentation(2, ((1, 1, 1, 1), (1, 1, -2, -2), (-2, 1, 2, 1)))
    assert todd_coxeter(g, 10**4).order == 8


def test_todd_coxeter_exceeded_is_not_a_conclusion():
    g = GroupPresentation(2, ())  # free of rank 2
    res = todd_coxeter(g, 50)
    assert res.outcome == "exceeded"
    assert res.cosets_used >= 50
    assert not res.closed


def test_todd_coxeter_needs_work_trivial_group():
    # bab^-1 = a^2, aba^-1 = b^2 presents the trivial group but the table
    # does not close instantly
    g = GroupPresentation(
        2, ((2, 1, -2, -1, -1), (1, 2, -1, -2, -2))
    )
    res = todd_coxeter(g, 10**4)
    assert res.outcome == "trivial"


def test_todd_coxeter_deterministic():
    g = GroupPresentation(2, ((1, 1), (2, 2, 2), (1, 2) * 3))
    r1 = todd_coxeter(g, 10**4)
    r2 = todd_coxeter(g, 10**4)
    assert r1 == r2


def test_simplify_presentation_keeps_abelianization():
    g = wirtinger(braid_closure(3, [1, -2, 1, -2]))
    s = simplify_presentation(g, target_generators=2)
    assert abelianization(s).invariant_factors == abelianization(g).invariant_factors
    assert s.generator_count <= max(2, g.generator_count)


def test_simplify_presentation_preserves_marked_quotient():
    d = trefoil()
    g = wirtinger(d)
    s = simplify_presentation(g, target_generators=2)
    q = quotient(s, [s.marked("meridian_0")])
    assert todd_coxeter(q, 10**4).outcome == "trivial"


def test_cut_loop_word_exponent_sum_is_winding():
    for p in (core_pattern(), zigzag_pattern(), clasp_pattern(), cable_pattern(2, 3)):
        w = cut_loop_word(p)
        assert sum(1 if x > 0 else -1 for x in w) == winding_number(p)


def test_strong_winding_core():
    res = strong_winding_check(core_pattern(), limit=100)
    assert res.verified
    assert res.enumeration.cosets_used <= 2


def test_strong_winding_trivial_base_patterns():
    for p in (kink_base_pattern(), zigzag_pattern()):
        res = strong_winding_check(p, limit=10**5)
        assert res.verified


def test_strong_winding_inconclusive_for_winding_zero():
    res = strong_winding_check(clasp_pattern(), limit=500)
    assert not res.verified
    assert res.enumeration.outcome == "exceeded"


def test_verified_implies_winding_one():
    for p in (core_pattern(), kink_base_pattern(), zigzag_pattern()):
        res = strong_winding_check(p, limit=10**5)
        if res.verified:
            q = quotient(wirtinger(p.base), [cut_loop_word(p)])
            assert abelianization(q).is_trivial
            assert abs(winding_number(p)) == 1


def test_difference_operator_inherits_strong_winding():
    # the inverse-sum operator built from a verified pattern verifies too
    from satkit.patterns import difference_pattern

    r = difference_pattern(kink_base_pattern(), trefoil())
    res = strong_winding_check(r, 10**5)
    assert res.verified


def test_monotone_in_limit():
    p = zigzag_pattern()
    res1 = strong_winding_check(p, limit=10**4)
    res2 = strong_winding_check(p, limit=10**6)
    assert res1.verified
    assert res2.verified


def test_abelianization_of_cut_quotient_is_cyclic_of_winding():
    for p in (core_pattern(), clasp_pattern(), cable_pattern(2, 3), cable_pattern(3, 2)):
        q = quotient(wirtinger(p.base), [cut_loop_word(p)])
        n = winding_number(p)
        assert abelianization(q) == AbelianGroup.cyclic(n) if n != 0 else abelianization(q).is_infinite_cyclic


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=1, max_value=6), st.integers(min_value=1, max_value=6))
def test_todd_coxeter_abelian_products(p, q):
    g = GroupPresentation(2, ((1,) * p, (2,) * q, (1, 2, -1, -2)))
    assert todd_coxeter(g, 10**4).order == p * q


@settings(max_examples=12, deadline=None)
@given(st.integers(min_value=1, max_value=9))
def test_todd_coxeter_dihedral(n):
    g = GroupPresentation(2, ((1,) * n, (2, 2), (1, 2) * 2))
    assert todd_coxeter(g, 10**4).order == 2 * n


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=2, max_value=5), st.integers(min_value=2, max_value=5))
def test_todd_coxeter_against_sympy(p, q):
    from sympy.combinatorics.fp_groups import FpGroup
    from sympy.combinatorics.free_groups import free_group

    F, a, b = free_group("a, b")
    G = FpGroup(F, [a**p, b**q, (a * b) ** 2])
    ours = todd_coxeter(
        GroupPresentation(2, ((1,) * p, (2,) * q, (1, 2, 1, 2))), 10**5
    )
    # the (p, q, 2) triangle-type presentation is finite for 1/p + 1/q > 1/2
    if 1 / p + 1 / q > 0.5:
        assert ours.outcome in ("finite", "trivial")
        assert ours.order == G.order()
