"""Pattern knots in a solid torus and the satellite construction.

A pattern is a knot diagram together with a marked cut: the ordered list
of edges crossed by a vertical interval (the meridional disk of the solid
torus), each with the sign of the strand's passage through the disk.  The
satellite of a companion knot replaces the cut interval by parallel copies
of a one-string tangle presentation of the companion, followed by the
twist correction that restores the preferred (zero) framing.

The equivalent two-component link form (underlying knot, round encircling
curve) is an import/export format handled by ``to_link``/``from_link``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import Diagram, canonical, crossing_signs, mirror, reverse, total_writhe, _orient
from .errors import DomainError, ValidationError
from .wires import Builder, build_cable, cut_for_passage, encircle, twist_chain


@dataclass(frozen=True)
class Pattern:
    base: Diagram
    cut: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "cut", tuple((int(e), int(s)) for e, s in self.cut))
        if not self.base.is_knot():
            raise ValidationError("pattern base must be a knot diagram")
        if len(self.cut) < 1:
            raise ValidationError("pattern must cross the disk at least once")
        edges = [e for e, _ in self.cut]
        if len(set(edges)) != len(edges):
            raise ValidationError("cut strands must be pairwise distinct edges")
        base_edges = set(self.base.edges())
        for e, s in self.cut:
            if e not in base_edges:
                raise ValidationError(f"cut references missing edge {e}")
            if s not in (1, -1):
                raise ValidationError("cut signs must be +1 or -1")

    @property
    def strand_count(self) -> int:
        return len(self.cut)

    def __repr__(self):
        return f"Pattern({self.base!r}, cut={self.cut})"


def winding_number(p: Pattern) -> int:
    """Algebraic count of the pattern's passages through the disk."""
    return sum(s for _, s in p.cut)


def patterns_equal(p1: Pattern, p2: Pattern) -> bool:
    """Equality of the cut-marked diagrams (renumbering and rotation)."""
    return _pattern_key(p1) == _pattern_key(p2)


def _pattern_key(p: Pattern):
    # joint canonicalisation of the diagram and its cut marking: base
    # symmetries may permute edges, so the cut participates in the key
    best = None
    for starts in _rotation_choices(p.base):
        mapping = {}
        nxt = 1
        for cyc, r in zip(p.base.components, starts):
            for e in cyc[r:] + cyc[:r]:
                mapping[e] = nxt
                nxt += 1
        cr = tuple(sorted(tuple(mapping[e] for e in x) for x in p.base.crossings))
        comps = tuple(
            tuple(mapping[e] for e in cyc[r:] + cyc[:r])
            for cyc, r in zip(p.base.components, starts)
        )
        cut = tuple((mapping[e], s) for e, s in p.cut)
        key = (cr, comps, cut)
        if best is None or key < best:
            best = key
    return best


def _rotation_choices(d: Diagram):
    import itertools

    ranges = [range(max(1, len(c))) for c in d.components]
    return itertools.product(*ranges)


# -- the satellite construction ---------------------------------------------


def _tie_companion(b: Builder, pieces, signs, companion: Diagram, extra_twists: int = 0):
    """Tie the cut strands into the companion knot.

    ``pieces`` are the (tail_piece, head_piece) pairs from cutting the cut
    edges, in transverse order; ``signs`` the matching passage signs.  The
    companion is cut open at its lowest-labelled edge, cabled into
    ``len(pieces)`` parallel copies, given ``-writhe`` correction twists,
    and spliced in.  Returns the marked wires crossing the new disk
    position (entry side of the gadget), in order.

    ``extra_twists`` deliberately mis-frames the insertion; it exists so
    negative controls can exercise the formula checks.
    """
    if not companion.is_knot():
        raise DomainError("companion must be a knot diagram")
    m = len(pieces)
    orient = _orient(companion)
    loops = [e for e in companion.edges() if e not in orient.edge_head]
    cut_edge = min(companion.edges())
    widths = {e: m for e in companion.edges()}
    gb, _, ports = build_cable(
        companion.crossings,
        crossing_signs(companion),
        widths,
        cut_edges=(cut_edge,),
        loops=loops,
    )
    shift = b.absorb(gb)
    # cut order and copy offsets run through the disk in opposite transverse
    # directions: strand i of the cut meets copy m+1-i of the cable.  The
    # twist region is threaded in the same reading direction as the splice.
    entry = [shift[w] for w in reversed(ports[cut_edge][0])]
    exits = [shift[w] for w in reversed(ports[cut_edge][1])]
    exits = twist_chain(b, exits, -total_writhe(companion) + extra_twists)

    marked = []
    for (tail_piece, head_piece), sign, s_port, e_port in zip(pieces, signs, entry, exits):
        if sign > 0:
            b.fuse((b.live(tail_piece), 1), (b.live(s_port), 0))
            rest = e_port
        else:
            b.fuse((b.live(tail_piece), 1), (b.live(e_port), 1))
            rest = s_port
        lsrc = b.live(rest)
        tgt = b.live(head_piece)
        if lsrc == tgt:
            # the whole strand collapsed to one wire: close the circle
            survivor = b.fuse((lsrc, 1), (lsrc, 0))
        else:
            survivor = b.fuse(_single_dangle(b, lsrc), _single_dangle(b, tgt))
        marked.append(survivor if sign < 0 else b.live(tail_piece))
    return marked


def _single_dangle(b: Builder, w):
    lw = b.live(w)
    ends = b.wires[lw]
    free = [i for i in (0, 1) if ends[i] is None]
    if len(free) != 1:
        raise DomainError("expected exactly one dangling end")
    return (lw, free[0])


def _satellite_parts(p: Pattern, k: Diagram, extra_twists: int = 0):
    b, wmap = Builder.from_diagram(p.base)
    pieces = [b.cut(wmap[e]) for e, _ in p.cut]
    signs = [s for _, s in p.cut]
    marked = _tie_companion(b, pieces, signs, k, extra_twists)
    seed = b.live(pieces[0][0])
    d, labels = b.to_diagram([(seed, True)])
    new_cut = tuple(
        (labels[b.live(w)], s) for w, s in zip(marked, signs)
    )
    return d, new_cut


def satellite(p: Pattern, k: Diagram) -> Diagram:
    """The untwisted satellite with this pattern and companion ``k``."""
    d, _ = _satellite_parts(p, k)
    return d


def misframed_satellite(p: Pattern, k: Diagram, extra_twists: int = 1) -> Diagram:
    """A deliberately wrong satellite: the framing correction is off by the
    given number of full twists.  Negative-control fixture builder."""
    if p.strand_count < 2:
        raise DomainError("a one-strand insertion cannot be mis-framed")
    d, _ = _satellite_parts(p, k, extra_twists)
    return d


def compose(p: Pattern, a: Diagram) -> Pattern:
    """The satellite, kept as a pattern: same cut, base tied into ``a``.

    Satelliting with the result equals satelliting with ``p`` after
    connect-summing the companions.
    """
    d, cut = _satellite_parts(p, a)
    return Pattern(d, cut)


def difference_pattern(p: Pattern, k: Diagram) -> Pattern:
    """Connected sum of the reversed mirror of the satellite with the
    satellite kept as a pattern: the underlying knot is a concordance
    inverse connect-summed with the satellite, hence ribbon; the cut (and
    so the winding number) is inherited from the satellite summand."""
    q = compose(p, k)
    summand = mirror(reverse(q.base, 0))
    b, wmap = Builder.from_diagram(q.base)
    bs, wmaps = Builder.from_diagram(summand)
    shift = b.absorb(bs)

    cut_edges = {e for e, _ in q.cut}
    non_cut = sorted(set(q.base.edges()) - cut_edges)
    e2 = non_cut[0] if non_cut else min(q.base.edges())
    e1 = min(summand.edges())

    cut_wires = [wmap[e] for e, _ in q.cut]
    ta, ha = b.cut(wmap[e2])
    tb, hb = b.cut(shift[wmaps[e1]])
    b.join(ta, hb)
    b.join(tb, ha)
    seed = b.live(cut_wires[0])
    d, labels = b.to_diagram([(seed, True)])
    new_cut = tuple((labels[b.live(w)], s) for w, (_, s) in zip(cut_wires, q.cut))
    return Pattern(d, new_cut)


# -- the two-component link form ----------------------------------------------


def to_link(p: Pattern) -> Diagram:
    """Export as an ordered two-component link: the underlying knot first,
    then the round curve encircling the cut strands.  The curve is oriented
    so its linking number with the knot equals the winding number."""
    b, wmap = Builder.from_diagram(p.base)
    targets = [(wmap[e], s) for e, s in p.cut]
    circle_seed, _ = encircle(b, targets, over_first=True)
    base_seed = b.live(wmap[p.cut[0][0]])
    d, _ = b.to_diagram([(base_seed, True), (circle_seed, False)])
    return d


def from_link(d: Diagram, circle: int) -> Pattern:
    """Recover a pattern from a two-component link whose marked component is
    a round curve: no self-crossings, all its crossings consecutive along
    it, over on one arc and under on the other, each strand it encircles
    crossing straight through.  Inputs not in this position are rejected."""
    from .diagram import _orient as orient_fn

    if not 0 <= circle < len(d.components):
        raise DomainError("circle component out of range")
    if len(d.components) != 2:
        raise DomainError("pattern import needs exactly two components")
    orient = orient_fn(d)
    comp_of = orient.edge_component
    circle_edges = set(d.components[circle])

    passages = []  # (crossing index, circle is over)
    for ci, x in enumerate(d.crossings):
        on_circle = [comp_of[e] == circle for e in x]
        if all(on_circle):
            raise DomainError("marked component crosses itself; not a round curve")
        if any(on_circle):
            over = comp_of[x[1]] == circle
            passages.append((ci, over))
    if not passages:
        raise DomainError("marked component is split from the knot; no passages")
    if len(passages) % 2:
        raise ValidationError("odd passage count")

    # order the passages along the circle
    cyc = d.components[circle]
    order = []
    for e in cyc:
        ci, s = orient.edge_head[e]
        over = comp_of[d.crossings[ci][1]] == circle
        order.append((ci, over))
    # rotate so an over-run starts the list, then demand over^m under^m
    m = len(order) // 2
    starts = [i for i in range(len(order)) if order[i][1] and not order[i - 1][1]]
    if len(starts) != 1:
        raise DomainError("circle passages are not two consecutive runs")
    i0 = starts[0]
    order = order[i0:] + order[:i0]
    if not all(over for _, over in order[:m]) or any(over for _, over in order[m:]):
        raise DomainError("circle passages are not over-run then under-run")
    over_run = [ci for ci, _ in order[:m]]
    under_run = [ci for ci, _ in order[m:]]

    signs = crossing_signs(d)
    b, wmap = Builder.from_diagram(d)
    cut_info = []
    for i, ci in enumerate(over_run):
        cj = under_run[m - 1 - i]
        mids = set(d.crossings[ci][0::2]) & set(d.crossings[cj][0::2] + d.crossings[cj][1::2])
        mids = {e for e in mids if comp_of[e] != circle}
        shared = None
        for e in mids:
            occs = [occ for occ in _occ_pairs(d, e)]
            if {o[0] for o in occs} == {ci, cj}:
                shared = e
        if shared is None:
            raise DomainError("circle passages do not pair up across the disk")
        if signs[ci] != signs[cj]:
            raise DomainError("paired passages disagree in sign; strand does not cross straight through")
        cut_info.append((shared, signs[ci]))

    b.remove_edges({wmap[e] for e in circle_edges})
    base_comp = 1 - circle
    seed = None
    for e in d.components[base_comp]:
        lw = b.live(wmap[e])
        if lw is not None:
            seed = lw
            break
    base, labels = b.to_diagram([(seed, True)])
    # the circle is oriented to link positively, which walks the over-run
    # against the transverse cut order; flip back
    cut = tuple((labels[b.live(wmap[e])], s) for e, s in reversed(cut_info))
    return Pattern(base, cut)


def _occ_pairs(d: Diagram, e: int):
    return [(ci, s) for ci, x in enumerate(d.crossings) for s, ee in enumerate(x) if ee == e]
