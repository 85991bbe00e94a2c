"""String links, stacking, closure, infection operators, winding vectors,
parallels and fusion.

A string link has m strands in a rectangle, strand i joining the i-th
bottom boundary point to the i-th top point.  Strand paths are stored in
flow order; ``directions[i]`` is +1 when the flow runs bottom to top.
An infection operator marks, exactly as a pattern does, the ordered edges
crossed by a disk in the exterior together with passage signs; infecting
ties those strands into a companion knot with the same zero-framing gadget
the satellite construction uses, so the one-strand case reproduces the
pattern operations verbatim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .diagram import Diagram
from .errors import DomainError, ValidationError
from .patterns import Pattern, _tie_companion
from .wires import Builder, braid_step, build_cable, twist_chain

Crossing = tuple[int, int, int, int]


@dataclass(frozen=True)
class StringLink:
    strand_count: int
    crossings: tuple[Crossing, ...]
    strands: tuple[tuple[int, ...], ...]
    directions: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(x) for x in self.crossings))
        object.__setattr__(self, "strands", tuple(tuple(s) for s in self.strands))
        if not self.directions:
            object.__setattr__(self, "directions", (1,) * self.strand_count)
        else:
            object.__setattr__(self, "directions", tuple(self.directions))
        if len(self.strands) != self.strand_count or self.strand_count < 1:
            raise ValidationError("strand paths do not match the strand count")
        if len(self.directions) != self.strand_count:
            raise ValidationError("directions do not match the strand count")
        if any(d not in (1, -1) for d in self.directions):
            raise ValidationError("directions must be +1 or -1")
        _orient_tangle(self)  # validates

    def edges(self):
        return tuple(e for path in self.strands for e in path)

    def __repr__(self):
        return f"StringLink({self.strand_count} strands, {len(self.crossings)} crossings)"


@dataclass(frozen=True)
class _TangleOrientation:
    entry_slots: tuple[tuple[int, int], ...]
    edge_head: dict
    edge_tail: dict
    edge_strand: dict


_tangle_cache = {}


def _occurrences(crossings):
    occ = {}
    for ci, x in enumerate(crossings):
        for s, e in enumerate(x):
            occ.setdefault(e, []).append((ci, s))
    return occ


def _orient_tangle(sl: StringLink) -> _TangleOrientation:
    key = (sl.crossings, sl.strands)
    hit = _tangle_cache.get(key)
    if hit is not None:
        return hit
    occ = _occurrences(sl.crossings)
    declared = [e for path in sl.strands for e in path]
    if len(set(declared)) != len(declared):
        raise ValidationError("edge repeats across strand paths")
    for e in occ:
        if e not in set(declared):
            raise ValidationError(f"edge {e} in crossings but on no strand")

    entry_pairs = [[None, None] for _ in sl.crossings]
    edge_head, edge_tail, edge_strand = {}, {}, {}

    for si, path in enumerate(sl.strands):
        for e in path:
            edge_strand[e] = si
        first_occ = occ.get(path[0], [])
        if len(path) == 1 and not first_occ:
            continue
        if len(first_occ) != 1 or len(occ.get(path[-1], ())) != 1:
            raise ValidationError(f"strand {si} endpoints lie inside crossings")
        cur = first_occ[0]
        for i, e in enumerate(path):
            ci, s = cur
            if s == 2:
                raise ValidationError(f"crossing {ci} under-strand entered at position 2")
            kind = 0 if s in (0, 2) else 1
            if entry_pairs[ci][kind] is not None:
                raise ValidationError(f"crossing {ci} traversed twice on one strand pair")
            entry_pairs[ci][kind] = s
            edge_head[e] = cur
            exit_slot = (s + 2) % 4
            nxt_edge = sl.crossings[ci][exit_slot]
            if i + 1 >= len(path) or nxt_edge != path[i + 1]:
                raise ValidationError(f"strand {si} path breaks after edge {e}")
            edge_tail[nxt_edge] = (ci, exit_slot)
            rest = [p for p in occ[nxt_edge] if p != (ci, exit_slot)]
            if not rest:
                if i + 1 != len(path) - 1:
                    raise ValidationError(f"strand {si} ends early")
                break
            cur = rest[0]
    for ci, (u, o) in enumerate(entry_pairs):
        if u is None or o is None:
            raise ValidationError(f"crossing {ci} not fully traversed")
    out = _TangleOrientation(
        tuple((u, o) for u, o in entry_pairs), edge_head, edge_tail, edge_strand
    )
    _tangle_cache[key] = out
    return out


def tangle_crossing_signs(sl: StringLink) -> tuple[int, ...]:
    orient = _orient_tangle(sl)
    return tuple(1 if o == 1 else -1 for _, o in orient.entry_slots)


def strand_of_edge(sl: StringLink, edge: int) -> int:
    orient = _orient_tangle(sl)
    if edge not in orient.edge_strand:
        raise DomainError(f"no edge labelled {edge}")
    return orient.edge_strand[edge]


def self_writhe(sl: StringLink, strand: int) -> int:
    orient = _orient_tangle(sl)
    signs = tangle_crossing_signs(sl)
    total = 0
    for ci, x in enumerate(sl.crossings):
        if orient.edge_strand[x[0]] == strand and orient.edge_strand[x[1]] == strand:
            total += signs[ci]
    return total


def trivial_string_link(m: int) -> StringLink:
    return StringLink(m, (), tuple((i + 1,) for i in range(m)))


def string_link_from_braid(strands, word) -> StringLink:
    """A braid word as a (pure only if the permutation is trivial) string
    link is rejected unless each strand returns to its own slot."""
    from .catalog import braid_permutation

    if braid_permutation(strands, list(word)) != list(range(strands)):
        raise DomainError("braid must induce the identity permutation")
    b = Builder()
    start = [b.fresh() for _ in range(strands)]
    cur = list(start)
    for x in word:
        if x == 0 or abs(x) >= strands:
            raise DomainError("braid letter out of range")
        braid_step(b, cur, abs(x) - 1, positive=x > 0)
    for i, w in enumerate(start):
        b._bind(b.live(w), 0, ("t", ("bot", i)))
    for i, w in enumerate(cur):
        b._bind(b.live(w), 1, ("t", ("top", i)))
    sl, _ = _walk_out(b, [(b.live(start[i]), True) for i in range(strands)], (1,) * strands)
    return sl


@dataclass(frozen=True)
class InfectionOperator:
    link: StringLink
    cut: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "cut", tuple((int(e), int(s)) for e, s in self.cut))
        edges = [e for e, _ in self.cut]
        if len(set(edges)) != len(edges):
            raise ValidationError("cut strands must be pairwise distinct edges")
        link_edges = set(self.link.edges())
        for e, s in self.cut:
            if e not in link_edges:
                raise ValidationError(f"cut references missing edge {e}")
            if s not in (1, -1):
                raise ValidationError("cut signs must be +1 or -1")


# -- builder conversions -----------------------------------------------------


def _to_builder(sl: StringLink):
    b = Builder()
    wmap = {e: b.fresh() for e in sl.edges()}
    orient = _orient_tangle(sl)
    for x in sl.crossings:
        b.crossings.append([wmap[e] for e in x])
    for e, (ci, s) in orient.edge_head.items():
        b.wires[wmap[e]][1] = ("x", ci, s)
    for e, (ci, s) in orient.edge_tail.items():
        b.wires[wmap[e]][0] = ("x", ci, s)
    for si, path in enumerate(sl.strands):
        first, last = wmap[path[0]], wmap[path[-1]]
        start_key = ("bot", si) if sl.directions[si] > 0 else ("top", si)
        end_key = ("top", si) if sl.directions[si] > 0 else ("bot", si)
        b.wires[first][0] = ("t", start_key)
        b.wires[last][1] = ("t", end_key)
    return b, wmap


def _walk_out(b: Builder, seeds, directions):
    crossings, paths, labels = b.to_tangle(seeds)
    return StringLink(len(paths), crossings, paths, tuple(directions)), labels


def _terminal_end(b: Builder, key, among=None):
    binding = ("t", key)
    for w, ends in b.wires.items():
        if among is not None and w not in among:
            continue
        for i in (0, 1):
            if ends[i] == binding:
                return (w, i)
    raise DomainError(f"terminal {key} not found")


def _unbind(b: Builder, end):
    w, i = end
    b.wires[w][i] = None


# -- operations ---------------------------------------------------------------


def stack(s1: StringLink, s2: StringLink) -> StringLink:
    """Vertical concatenation: s2 on top of s1."""
    if s1.strand_count != s2.strand_count:
        raise DomainError("stacking needs equal strand counts")
    if s1.directions != s2.directions:
        raise DomainError("stacking needs matching strand orientations")
    b, w1 = _to_builder(s1)
    b2, w2 = _to_builder(s2)
    shift = b.absorb(b2)
    upper = {b.live(shift[w]) for w in w2.values()}
    lower = {b.live(w) for w in w1.values()}
    for i in range(s1.strand_count):
        top = _terminal_end(b, ("top", i), among=lower)
        bot = _terminal_end(b, ("bot", i), among=upper)
        _unbind(b, top)
        _unbind(b, bot)
        if s1.directions[i] > 0:
            b.fuse(top, bot)  # lower flow-end feeds the upper flow-start
        else:
            b.fuse(bot, top)
    seeds = []
    for i in range(s1.strand_count):
        if s1.directions[i] > 0:
            seeds.append((b.live(w1[s1.strands[i][0]]), True))
        else:
            seeds.append((b.live(shift[w2[s2.strands[i][0]]]), True))
    out, _ = _walk_out(b, seeds, s1.directions)
    return out


def closure(sl: StringLink) -> Diagram:
    """Close top to bottom with a trivial string link; component order is
    the strand order, orientations those of the strands."""
    b, wmap = _to_builder(sl)
    for i in range(sl.strand_count):
        top = _terminal_end(b, ("top", i))
        bot = _terminal_end(b, ("bot", i))
        _unbind(b, top)
        _unbind(b, bot)
        if sl.directions[i] > 0:
            b.fuse(top, bot)
        else:
            b.fuse(bot, top)
    seeds = [(b.live(wmap[sl.strands[i][0]]), True) for i in range(sl.strand_count)]
    d, _ = b.to_diagram(seeds)
    return d


def infect(op: InfectionOperator, k: Diagram) -> InfectionOperator:
    """Tie the strands through the marked disk into the companion knot.

    The marking survives; the winding vector is unchanged.
    """
    b, wmap = _to_builder(op.link)
    pieces = [b.cut(wmap[e]) for e, _ in op.cut]
    signs = [s for _, s in op.cut]
    marked = _tie_companion(b, pieces, signs, k)
    seeds = []
    for i in range(op.link.strand_count):
        w = b.live(wmap[op.link.strands[i][0]])
        seeds.append((w, True))
    out, labels = _walk_out(b, seeds, op.link.directions)
    new_cut = tuple((labels[b.live(w)], s) for w, s in zip(marked, signs))
    return InfectionOperator(out, new_cut)


def winding_vector(op: InfectionOperator) -> tuple[int, ...]:
    """Per-strand algebraic passage counts through the marked disk."""
    w = [0] * op.link.strand_count
    for e, s in op.cut:
        w[strand_of_edge(op.link, e)] += s
    return tuple(w)


def winding_gcd(op: InfectionOperator) -> int:
    g = 0
    for x in winding_vector(op):
        g = math.gcd(g, abs(x))
    return g


def parallel(op: InfectionOperator, kvec) -> InfectionOperator:
    """Untwisted parallel copies: |k_i| copies of strand i, reversed when
    k_i is negative, omitted when zero."""
    sl = op.link
    kvec = tuple(int(k) for k in kvec)
    if len(kvec) != sl.strand_count:
        raise DomainError("copy vector length must match the strand count")
    if all(k == 0 for k in kvec):
        raise DomainError("at least one strand must survive")
    orient = _orient_tangle(sl)
    occ = _occurrences(sl.crossings)
    widths = {e: abs(kvec[orient.edge_strand[e]]) for e in sl.edges()}
    bare = [path[0] for path in sl.strands if not occ.get(path[0])]
    b, copies, _ = build_cable(
        sl.crossings, tangle_crossing_signs(sl), widths, open_edges=bare
    )
    # untwisted copies: correct each copied strand by its self-writhe; the
    # twist region threads the bundle against the copy-offset direction,
    # matching the reading the companion gadget uses
    top_stubs = {}
    for si, path in enumerate(sl.strands):
        k = abs(kvec[si])
        if k == 0:
            continue
        stubs = [copies[path[-1]][j] for j in range(k)]
        if k >= 2:
            stubs = list(reversed(twist_chain(b, list(reversed(stubs)), -self_writhe(sl, si))))
        top_stubs[si] = stubs
    # Two independent orderings.  Strand slots are geometric, west to east:
    # copy offsets run to the left of the flow, so forward copies come out
    # right-to-left and reversed copies left-to-right.  The disk reading
    # order of the expanded passages is reversed in both cases, because
    # reversing a strand also flips which side of the disk it is read from.
    seeds = []
    directions = []
    for si, path in enumerate(sl.strands):
        k = kvec[si]
        slot_order = range(abs(k) - 1, -1, -1) if k > 0 else range(abs(k))
        for j in slot_order:
            if k > 0:
                w = b.live(copies[path[0]][j])
                ends = b.wires[w]
                seeds.append((w, ends[0] is None))
                directions.append(sl.directions[si])
            else:
                w = b.live(top_stubs[si][j])
                ends = b.wires[w]
                seeds.append((w, ends[0] is None))
                directions.append(-sl.directions[si])
    out, labels = _walk_out(b, seeds, directions)
    new_cut = []
    for e, s in op.cut:
        si = orient.edge_strand[e]
        k = kvec[si]
        if k == 0:
            continue
        for j in range(abs(k) - 1, -1, -1):
            w = b.live(copies[e][j])
            new_cut.append((labels[w], s if k > 0 else -s))
    if not new_cut:
        raise DomainError("every marked strand was omitted")
    return InfectionOperator(out, tuple(new_cut))


@dataclass(frozen=True)
class BandSpec:
    edge_low: int
    edge_high: int
    over_low: bool = True


def default_band_plan(op: InfectionOperator):
    """Bands joining consecutive strands at their bottom-boundary edges,
    where adjacent strands are face to face and clear of the marked disk."""
    cut_edges = {e for e, _ in op.cut}
    plan = []
    for i in range(op.link.strand_count - 1):
        plan.append(BandSpec(_bottom_edge(op.link, i, cut_edges), _bottom_edge(op.link, i + 1, cut_edges)))
    return tuple(plan)


def _bottom_edge(sl: StringLink, strand, forbidden):
    path = sl.strands[strand]
    e = path[0] if sl.directions[strand] > 0 else path[-1]
    if e not in forbidden:
        return e
    for e in path:
        if e not in forbidden:
            return e
    raise DomainError(f"strand {strand} has no edge free of the marked disk")


def fuse(op: InfectionOperator, band_plan=None) -> Pattern:
    """Band the strands together, in order, into a tangle whose closure is
    a knot; the marking becomes the pattern's cut.  Bands must avoid the
    marked disk: a band through a cut edge is rejected."""
    sl = op.link
    if band_plan is None:
        band_plan = default_band_plan(op)
    band_plan = tuple(band_plan)
    if len(band_plan) != sl.strand_count - 1:
        raise DomainError("band plan must join every consecutive strand pair")
    cut_edges = {e for e, _ in op.cut}
    orient = _orient_tangle(sl)
    for i, spec in enumerate(band_plan):
        if spec.edge_low in cut_edges or spec.edge_high in cut_edges:
            raise DomainError("band crosses the marked disk")
        if (
            orient.edge_strand[spec.edge_low] != i
            or orient.edge_strand[spec.edge_high] != i + 1
        ):
            raise DomainError(f"band {i} must join strand {i} to strand {i + 1}")
    b, wmap = _to_builder(sl)
    cut_wires = [(wmap[e], s) for e, s in op.cut]
    for i, spec in enumerate(band_plan):
        tu, hu = b.cut(b.live(wmap[spec.edge_low]))
        tv, hv = b.cut(b.live(wmap[spec.edge_high]))
        if sl.directions[i] == sl.directions[i + 1]:
            # coherent strands: the two band connectors swap ends across
            # one new crossing
            if spec.over_low:
                b.add_crossing(tv, hv, hu, tu, over_entry=3)
            else:
                b.add_crossing(tu, tv, hv, hu, over_entry=1)
        else:
            # antiparallel strands: the band is a plain turn-around
            b.join(tu, hv)
            b.join(tv, hu)
    for i in range(sl.strand_count):
        top = _terminal_end(b, ("top", i))
        bot = _terminal_end(b, ("bot", i))
        _unbind(b, top)
        _unbind(b, bot)
        if sl.directions[i] > 0:
            b.fuse(top, bot)
        else:
            b.fuse(bot, top)
    seed_wire = b.live(cut_wires[0][0])
    d, labels = b.to_diagram([(seed_wire, True)])
    cut = tuple((labels[b.live(w)], s) for w, s in cut_wires)
    return Pattern(d, cut)


def reduce_to_pattern(op: InfectionOperator, kvec, band_plan=None) -> Pattern:
    """Parallels then fusion: the winding number of the resulting pattern
    is the combination sum, which must equal the winding gcd."""
    kvec = tuple(int(k) for k in kvec)
    wv = winding_vector(op)
    total = sum(k * w for k, w in zip(kvec, wv))
    g = winding_gcd(op)
    if g == 0 or total != g:
        raise DomainError(
            f"combination {kvec} against {wv} gives {total}, need the winding gcd {g}"
        )
    par = parallel(op, kvec)
    return fuse(par, band_plan)


def mirror_reverse(sl: StringLink) -> StringLink:
    """The concordance inverse: flip the rectangle upside down and switch
    every crossing.  All crossing signs negate."""
    new_crossings = tuple((c, bb, a, dd) for (a, bb, c, dd) in sl.crossings)
    new_strands = tuple(tuple(reversed(path)) for path in sl.strands)
    return StringLink(sl.strand_count, new_crossings, new_strands, sl.directions)


def as_pattern(op: InfectionOperator) -> Pattern:
    """Closure of a one-strand operator, keeping the marking."""
    if op.link.strand_count != 1:
        raise DomainError("as_pattern needs a one-strand operator")
    return fuse(op, ())
