import pytest

from satkit.catalog import (
    both_strands_operator,
    braid_closure,
    core_pattern,
    figure_eight,
    strand_meridian_operator,
    trefoil,
    winding_two_three_operator,
)
from satkit.diagram import (
    component_subdiagram,
    diagrams_equal,
    embedding_genus,
    linking_number,
    simplify,
    unknot,
)
from satkit.errors import DomainError
from satkit.invariants import alexander_poly, determinant, equal_up_to_units
from satkit.patterns import patterns_equal, satellite, winding_number
from satkit.stringlinks import (
    InfectionOperator,
    StringLink,
    as_pattern,
    closure,
    default_band_plan,
    fuse,
    infect,
    mirror_reverse,
    parallel,
    reduce_to_pattern,
    self_writhe,
    stack,
    string_link_from_braid,
    tangle_crossing_signs,
    trivial_string_link,
    winding_gcd,
    winding_vector,
)
from satkit.formats import serialize_diagram


def w23():
    return winding_two_three_operator()


def test_trivial_link_closure_is_unlink():
    d = closure(trivial_string_link(2))
    assert d.component_count == 2
    assert d.crossing_count == 0


def test_full_twist_closure_is_hopf():
    s = string_link_from_braid(2, [1, 1])
    d = closure(s)
    assert d.component_count == 2
    assert d.crossing_count == 2
    assert linking_number(d, 0, 1) == 1


def test_one_strand_trefoil_closure():
    # trefoil drawn as a 1-string tangle: stack of the winding-2 gadget is
    # overkill; instead close a 2-braid remnant by hand via stacking
    s = w23().link
    assert s.strand_count == 2


def test_w23_windings():
    op = w23()
    assert embedding_genus(closure(op.link)) == 0
    assert winding_vector(op) == (2, 3)
    assert winding_gcd(op) == 1


def test_w23_closure_unlink():
    d = closure(w23().link)
    assert d.component_count == 2
    for c in (0, 1):
        assert diagrams_equal(simplify(component_subdiagram(d, [c])), unknot())


def test_stack_identity():
    s = w23().link
    t = trivial_string_link(2)
    assert stack(s, t).crossings == s.crossings or closure(stack(s, t)).crossing_count == closure(s).crossing_count


def test_stack_associative_counts():
    a = string_link_from_braid(2, [1, 1])
    b = string_link_from_braid(2, [-1, -1])
    ab = stack(a, b)
    d = closure(ab)
    assert d.component_count == 2
    assert simplify(d).crossing_count == 0


def test_stack_associative_diagrams():
    from satkit.formats import serialize_string_link

    a = string_link_from_braid(2, [1, 1])
    b = string_link_from_braid(2, [-1, 1])
    c = string_link_from_braid(2, [1, -1])
    lhs = stack(stack(a, b), c)
    rhs = stack(a, stack(b, c))
    assert serialize_string_link(lhs) == serialize_string_link(rhs)


def test_stack_with_inverse_gives_slice_form():
    s = string_link_from_braid(2, [1, 1])
    inv = mirror_reverse(s)
    assert tangle_crossing_signs(inv) == (-1, -1)
    d = closure(stack(s, inv))
    assert linking_number(d, 0, 1) == 0
    sub = component_subdiagram(d, [0])
    det = determinant(simplify(sub))
    assert int(det ** 0.5) ** 2 == det


def test_mirror_reverse_involution():
    from satkit.formats import serialize_string_link

    for s in (string_link_from_braid(2, [1, 1]), w23().link):
        assert serialize_string_link(mirror_reverse(mirror_reverse(s))) == serialize_string_link(s)
        signs = tangle_crossing_signs(s)
        assert tangle_crossing_signs(mirror_reverse(s)) == tuple(-x for x in signs)


def test_infect_with_unknot_is_identity():
    op = w23()
    out = infect(op, unknot())
    assert closure(out.link).crossing_count == closure(op.link).crossing_count
    assert winding_vector(out) == winding_vector(op)


def test_infect_preserves_winding_vector():
    op = w23()
    out = infect(op, trefoil())
    assert winding_vector(out) == (2, 3)
    assert embedding_genus(closure(out.link)) == 0


def test_meridian_operator_ties_local_knot():
    op = strand_meridian_operator(2, 0)
    out = infect(op, trefoil())
    d = closure(out.link)
    assert d.component_count == 2
    c0 = component_subdiagram(d, [0])
    c1 = component_subdiagram(d, [1])
    assert equal_up_to_units(alexander_poly(simplify(c0)), alexander_poly(trefoil()))
    assert simplify(c1).crossing_count == 0


def test_parallel_identity():
    op = w23()
    out = parallel(op, (1, 1))
    assert out.link.strand_count == 2
    assert winding_vector(out) == (2, 3)
    assert closure(out.link).crossing_count == closure(op.link).crossing_count


def test_parallel_omission():
    op = w23()
    out = parallel(op, (0, 1))
    assert out.link.strand_count == 1
    assert winding_vector(out) == (3,)


def test_parallel_w23_choice():
    op = w23()
    out = parallel(op, (2, -1))
    assert out.link.strand_count == 3
    assert winding_vector(out) == (2, 2, -3)
    assert sum(winding_vector(out)) == 1
    assert embedding_genus(closure(out.link)) == 0


def test_parallel_rejects_empty():
    with pytest.raises(DomainError):
        parallel(w23(), (0, 0))


def test_fuse_one_strand_identity():
    op = strand_meridian_operator(1, 0)
    p = fuse(op, ())
    assert patterns_equal(p, core_pattern())


def test_fuse_w23_reduction():
    op = w23()
    par = parallel(op, (2, -1))
    p = fuse(par)
    assert winding_number(p) == 1
    assert p.base.is_knot()
    assert embedding_genus(p.base) == 0


def test_reduce_to_pattern_gcd_check():
    op = w23()
    with pytest.raises(DomainError):
        reduce_to_pattern(op, (1, 1))  # 2 + 3 = 5 != 1
    p = reduce_to_pattern(op, (2, -1))
    assert winding_number(p) == 1


def test_reduce_meridian_gives_core():
    op = strand_meridian_operator(2, 0)
    p = reduce_to_pattern(op, (1, 0))
    assert patterns_equal(p, core_pattern())


def test_band_through_disk_rejected():
    op = both_strands_operator()
    from satkit.stringlinks import BandSpec

    with pytest.raises(DomainError):
        fuse(op, (BandSpec(1, 2),))


def test_commutation_at_alexander_level():
    cases = [
        (w23(), (2, -1), trefoil()),
        (w23(), (2, -1), figure_eight()),
        (strand_meridian_operator(2, 0), (1, 0), trefoil()),
        (both_strands_operator(), (1, 0), figure_eight()),
    ]
    for op, kvec, companion in cases:
        lhs = reduce_to_pattern(infect(op, companion), kvec).base
        rhs = satellite(reduce_to_pattern(op, kvec), companion)
        assert equal_up_to_units(alexander_poly(lhs), alexander_poly(rhs)), (kvec,)


# -- one-strand coherence with the pattern operations ---------------------------


def test_m1_infect_matches_satellite_bitwise():
    for companion in (trefoil(), figure_eight()):
        op = strand_meridian_operator(1, 0)
        p = as_pattern(op)
        lhs = serialize_diagram(closure(infect(op, companion).link))
        rhs = serialize_diagram(satellite(p, companion))
        assert lhs == rhs


def test_m1_winding_matches():
    op = strand_meridian_operator(1, 0)
    assert winding_vector(op)[0] == winding_number(as_pattern(op))


def test_m1_parallel_noop_matches():
    op = strand_meridian_operator(1, 0)
    out = parallel(op, (1,))
    assert serialize_diagram(closure(out.link)) == serialize_diagram(closure(op.link))


def test_m1_reduce_matches_compose_route():
    op = strand_meridian_operator(1, 0)
    k = trefoil()
    lhs = serialize_diagram(reduce_to_pattern(infect(op, k), (1,)).base)
    rhs = serialize_diagram(satellite(as_pattern(op), k))
    assert lhs == rhs
