import pytest
from hypothesis import given, settings, strategies as st

from satkit.catalog import (
    braid_closure,
    double_kink_unknot,
    figure_eight,
    hopf_link,
    positive_kink_unknot,
    torus_link,
    trefoil,
)
from satkit.diagram import (
    Diagram,
    canonical,
    connected_sum,
    crossing_signs,
    diagrams_equal,
    linking_number,
    mirror,
    reverse,
    simplify,
    unknot,
    writhe,
)
from satkit.errors import DomainError, ValidationError
from satkit.wires import insert_kink, insert_poke


def test_unknot_shape():
    u = unknot()
    assert u.crossing_count == 0
    assert u.is_knot()


def test_validation_rejects_single_occurrence():
    with pytest.raises(ValidationError):
        Diagram(((1, 2, 2, 3),), ((1, 2, 3, 7),))


def test_validation_rejects_broken_cycle():
    # correct edge multiset, wrong cyclic order
    with pytest.raises(ValidationError):
        Diagram(((1, 4, 2, 5), (5, 2, 6, 3), (3, 6, 4, 1)), ((1, 3, 2, 4, 5, 6),))


def test_trefoil_signs_and_writhe():
    t = trefoil()
    assert crossing_signs(t) == (1, 1, 1)
    assert writhe(t, 0) == 3
    assert writhe(mirror(t), 0) == -3


def test_kink_signs():
    assert crossing_signs(positive_kink_unknot()) == (1,)
    assert crossing_signs(double_kink_unknot()) == (1, -1)


def test_hopf_linking():
    h = hopf_link()
    assert h.component_count == 2
    assert linking_number(h, 0, 1) == 1
    assert linking_number(h, 1, 0) == 1
    assert linking_number(mirror(h), 0, 1) == -1


def test_reverse_flips_linking():
    h = hopf_link()
    assert linking_number(reverse(h, 0), 0, 1) == -1
    assert linking_number(reverse(reverse(h, 0), 1), 0, 1) == 1


def test_linking_same_component_rejected():
    with pytest.raises(DomainError):
        linking_number(hopf_link(), 0, 0)


def test_torus_link_26():
    d = torus_link(2, 6)
    assert d.component_count == 2
    assert linking_number(d, 0, 1) == 3


def test_split_union_linking():
    # sigma1^2 on 3 strands: a Hopf pair plus a split free loop
    d = braid_closure(3, [1, 1])
    assert d.component_count == 3
    assert linking_number(d, 0, 1) == 1
    assert linking_number(d, 0, 2) == 0
    assert linking_number(d, 1, 2) == 0


def test_mirror_involution():
    for d in (trefoil(), figure_eight(), hopf_link()):
        assert diagrams_equal(mirror(mirror(d)), d)


def test_reverse_involution():
    for d in (trefoil(), figure_eight()):
        assert diagrams_equal(reverse(reverse(d, 0), 0), d)


def test_canonical_is_stable():
    t = trefoil()
    c = canonical(t)
    assert canonical(c).crossings == c.crossings
    assert diagrams_equal(t, c)


def test_equality_ignores_relabeling():
    t = trefoil()
    from satkit.diagram import relabeled

    shuffled = relabeled(t, {e: e + 10 for e in t.edges()})
    assert diagrams_equal(t, shuffled)
    assert not diagrams_equal(t, mirror(t))


def test_kink_insert_and_simplify():
    t = trefoil()
    k = insert_kink(t, 1, 1)
    assert k.crossing_count == 4
    assert writhe(k, 0) == 4
    back = simplify(k)
    assert diagrams_equal(back, t)


def test_negative_kink():
    t = trefoil()
    k = insert_kink(t, 3, -1)
    assert writhe(k, 0) == 2
    assert diagrams_equal(simplify(k), t)


def test_poke_and_simplify():
    t = trefoil()
    p = insert_poke(t, 1, 4)
    assert p.crossing_count == 5
    assert writhe(p, 0) == 3
    assert diagrams_equal(simplify(p), t)


def test_simplify_kinked_unknot():
    assert simplify(positive_kink_unknot()).crossing_count == 0
    assert simplify(double_kink_unknot()).crossing_count == 0


def test_simplify_leaves_trefoil_alone():
    t = trefoil()
    assert diagrams_equal(simplify(t), t)


def test_simplify_respects_budget():
    k = insert_kink(insert_kink(trefoil(), 1, 1), 2, 1)
    assert simplify(k, effort=0).crossing_count == 5
    assert simplify(k, effort=1).crossing_count == 4
    assert simplify(k, effort=10).crossing_count == 3


def test_connected_sum_counts():
    t = trefoil()
    g = connected_sum(t, t)
    assert g.is_knot()
    assert g.crossing_count == 6
    assert writhe(g, 0) == 6


def test_connected_sum_with_unknot_is_identity():
    t = trefoil()
    assert diagrams_equal(connected_sum(t, unknot()), t)
    assert diagrams_equal(connected_sum(unknot(), t), t)


def test_connected_sum_rejects_links():
    with pytest.raises(DomainError):
        connected_sum(hopf_link(), trefoil())


@st.composite
def braid_words(draw):
    strands = draw(st.integers(min_value=2, max_value=4))
    length = draw(st.integers(min_value=1, max_value=7))
    word = [
        draw(st.sampled_from([1, -1])) * draw(st.integers(min_value=1, max_value=strands - 1))
        for _ in range(length)
    ]
    return strands, word


@settings(max_examples=40, deadline=None)
@given(braid_words())
def test_braid_closures_validate_and_mirror(sw):
    strands, word = sw
    d = braid_closure(strands, word)
    assert sum(crossing_signs(d)) == sum(1 if x > 0 else -1 for x in word)
    m = mirror(d)
    assert sum(crossing_signs(m)) == -sum(crossing_signs(d))
    assert diagrams_equal(mirror(m), d)


def test_simplify_preserves_invariants_on_corpus():
    from satkit.catalog import corpus_knots
    from satkit.invariants import alexander_poly, determinant

    import random

    rng = random.Random(11)
    knots = [d for _, d in corpus_knots() if d.is_knot() and d.crossing_count <= 8][:8]
    for d in knots:
        inflated = insert_kink(d, rng.choice(d.edges()), rng.choice([1, -1]))
        edges = inflated.edges()
        if len(edges) >= 2:
            e1, e2 = rng.sample(list(edges), 2)
            try:
                inflated = insert_poke(inflated, e1, e2)
            except Exception:
                pass
        s = simplify(inflated)
        assert alexander_poly(s) == alexander_poly(d)
        assert determinant(s) == determinant(d)
    h = insert_kink(hopf_link(), 1, 1)
    assert linking_number(simplify(h), 0, 1) == linking_number(hopf_link(), 0, 1)


@settings(max_examples=25, deadline=None)
@given(braid_words(), st.integers(min_value=0, max_value=2**31))
def test_simplify_preserves_component_structure(sw, seed):
    import random

    strands, word = sw
    d = braid_closure(strands, word)
    rng = random.Random(seed)
    edges = d.edges()
    inflated = insert_kink(d, rng.choice(edges), rng.choice([1, -1]))
    s = simplify(inflated)
    assert s.component_count == d.component_count
    assert s.crossing_count <= inflated.crossing_count
