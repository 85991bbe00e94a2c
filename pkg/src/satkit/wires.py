"""Mutable crossing/slot graph used to assemble and rewire diagrams.

Every piece of diagram surgery lives here: connected sums, cabling a
strand into parallel copies, twist regions, tying strands into a companion
tangle, encircling a bundle with a round curve, deleting components, and
Reidemeister I/II reduction.  ``Diagram`` stays immutable; operations pull
a diagram into a ``Builder``, rewire, and walk the result back out.

Conventions
-----------
A wire is a future edge.  Its two ends are positional: ``ends[0]`` is the
tail (where the strand leaves a crossing), ``ends[1]`` the head.  Ends are
either ``None`` (dangling), ``('x', ci, slot)`` or ``('t', key)`` for a
tangle terminal.  A crossing-free circle is a wire whose ends hold the
``LOOP`` sentinel.

Crossing tuples are stored with the nominal convention that the strand
through slots 0/2 is the under-strand.  The walk performed by
``to_diagram`` rotates tuples by two positions whenever the under-strand
is traversed against that convention, so gadgets built for one nominal
orientation stay correct when spliced into strands that run the other way.
"""

from __future__ import annotations

from .errors import DomainError, ValidationError

LOOP = ("loop",)


class Builder:
    def __init__(self):
        self.crossings = []  # list of [w0, w1, w2, w3] or None when deleted
        self.wires = {}  # id -> [end0, end1] or [LOOP, LOOP]
        self._alias = {}
        self._next = 0

    # -- wire bookkeeping ------------------------------------------------

    def fresh(self):
        w = self._next
        self._next += 1
        self.wires[w] = [None, None]
        return w

    def fresh_loop(self):
        w = self.fresh()
        self.wires[w] = [LOOP, LOOP]
        return w

    def live(self, w):
        while w in self._alias:
            w = self._alias[w]
        return w if w in self.wires else None

    def any_wire(self):
        return next(iter(self.wires))

    def is_loop(self, w):
        return self.wires[self.live(w)][0] == LOOP

    def _bind(self, w, end, binding):
        w = self.live(w)
        if self.wires[w][end] is not None:
            raise DomainError("wire end already bound")
        self.wires[w][end] = binding

    def bind_tail(self, w, ci, slot):
        self._bind(w, 0, ("x", ci, slot))

    def bind_head(self, w, ci, slot):
        self._bind(w, 1, ("x", ci, slot))

    def add_crossing(self, a, b, c, d, over_entry):
        """New crossing with the under-strand entering at slot 0 via ``a``.

        ``over_entry`` is 1 or 3: the slot at which the over-strand enters,
        i.e. the over-strand runs b->d when 1 and d->b when 3.  Head/tail
        ends of the four wires are bound accordingly.
        """
        ci = len(self.crossings)
        a, b, c, d = (self.live(w) for w in (a, b, c, d))
        self.crossings.append([a, b, c, d])
        self.bind_head(a, ci, 0)
        self.bind_tail(c, ci, 2)
        if over_entry == 1:
            self.bind_head(b, ci, 1)
            self.bind_tail(d, ci, 3)
        else:
            self.bind_tail(b, ci, 1)
            self.bind_head(d, ci, 3)
        return ci

    # -- conversions -----------------------------------------------------

    @classmethod
    def from_diagram(cls, d):
        """Import a diagram.  Returns (builder, edge label -> wire id)."""
        from .diagram import _orient

        orient = _orient(d)
        b = cls()
        wmap = {}
        for cyc in d.components:
            for e in cyc:
                wmap[e] = b.fresh()
        for cyc in d.components:
            if len(cyc) == 1 and cyc[0] not in orient.edge_head:
                b.wires[wmap[cyc[0]]] = [LOOP, LOOP]
        for ci, x in enumerate(d.crossings):
            b.crossings.append([wmap[e] for e in x])
        for e, (ci, s) in orient.edge_head.items():
            b.wires[wmap[e]][1] = ("x", ci, s)
        for e, (ci, s) in orient.edge_tail.items():
            b.wires[wmap[e]][0] = ("x", ci, s)
        return b, wmap

    def absorb(self, other):
        """Merge another builder into this one.  Returns its wire id map."""
        shift = {}
        coff = len(self.crossings)
        for w, ends in other.wires.items():
            nw = self.fresh()
            shift[w] = nw
        for w, ends in other.wires.items():
            new_ends = []
            for e in ends:
                if e is not None and e != LOOP and e[0] == "x":
                    new_ends.append(("x", e[1] + coff, e[2]))
                else:
                    new_ends.append(e)
            self.wires[shift[w]] = new_ends
        for x in other.crossings:
            if x is None:
                self.crossings.append(None)
            else:
                self.crossings.append([shift[w] for w in x])
        return shift

    def cut(self, w):
        """Split a wire at an interior point.

        Returns (tail_piece, head_piece): the tail piece keeps the original
        tail end and dangles at its head; symmetrically for the head piece.
        Cutting a free loop yields a single open wire, returned twice.
        """
        w = self.live(w)
        ends = self.wires[w]
        if ends[0] == LOOP:
            self.wires[w] = [None, None]
            return w, w
        wa = self.fresh()
        wb = self.fresh()
        self.wires[wa] = [ends[0], None]
        self.wires[wb] = [None, ends[1]]
        for piece, end in ((wa, ends[0]), (wb, ends[1])):
            if end is not None and end[0] == "x":
                self.crossings[end[1]][end[2]] = piece
        del self.wires[w]
        self._alias[w] = wa  # callers holding the old id get the tail piece
        return wa, wb

    def fuse(self, end_a, end_b):
        """Concatenate two wires at the given dangling ends.

        ``end_a``/``end_b`` are (wire, end_index).  Fusing a wire to itself
        closes it into a free loop.  For flow coherence fuse a head-side
        dangle (index 1) to a tail-side dangle (index 0).
        """
        wa, ia = end_a
        wb, ib = end_b
        wa, wb = self.live(wa), self.live(wb)
        if self.wires[wa][ia] is not None or self.wires[wb][ib] is not None:
            raise DomainError("fuse requires dangling ends")
        if wa == wb:
            self.wires[wa] = [LOOP, LOOP]
            return wa
        far = self.wires[wb][1 - ib]
        self.wires[wa][ia] = far
        if far is not None and far[0] == "x":
            self.crossings[far[1]][far[2]] = wa
        del self.wires[wb]
        self._alias[wb] = wa
        return wa

    def join(self, tail_piece, head_piece):
        """Flow-coherent fuse: out of ``tail_piece`` into ``head_piece``."""
        return self.fuse((tail_piece, 1), (head_piece, 0))

    # -- walking back out ------------------------------------------------

    def _step(self, w, toward, allow_open=False):
        """Enter the crossing at ``w.ends[toward]``; return (next wire, its
        far end index) or None at a terminal or (when allowed) a dangle."""
        end = self.wires[w][toward]
        if end is None:
            if allow_open:
                return None
            raise ValidationError("walk reached a dangling end")
        if end[0] == "t":
            return None
        _, ci, s = end
        self._entries.setdefault(ci, []).append(s)
        s2 = (s + 2) % 4
        w2 = self.crossings[ci][s2]
        ends2 = self.wires[w2]
        if ends2[0] == ("x", ci, s2) and ends2[1] == ("x", ci, s2):
            raise ValidationError("wire bound twice to one slot")
        k = 0 if ends2[0] == ("x", ci, s2) else 1
        return w2, 1 - k

    def _walk_from(self, w, toward, allow_open=False):
        """Visit wires starting along ``w`` toward end ``toward``.

        Returns (wires, closed) where closed says the walk returned to its
        start rather than ending at a terminal.
        """
        seq = [w]
        start = (w, toward)
        cur = start
        while True:
            nxt = self._step(cur[0], cur[1], allow_open)
            if nxt is None:
                return seq, False
            if (nxt[0], nxt[1]) == start:
                return seq, True
            seq.append(nxt[0])
            cur = nxt

    def _finish(self, comp_wires):
        live_crossings = [i for i, x in enumerate(self.crossings) if x is not None]
        visited = {w for seq in comp_wires for w in seq}
        all_live = {self.live(w) for w in self.wires}
        if visited != all_live:
            raise ValidationError("walk did not cover every wire; missing seeds?")
        rotate = {}
        for ci in live_crossings:
            entries = sorted(self._entries.get(ci, []))
            under = [s for s in entries if s in (0, 2)]
            over = [s for s in entries if s in (1, 3)]
            if len(under) != 1 or len(over) != 1:
                raise ValidationError(f"crossing {ci} traversed {entries}, expected one strand per pair")
            rotate[ci] = under[0] == 2

        label = {}
        nxt = 1
        for seq in comp_wires:
            for w in seq:
                label[w] = nxt
                nxt += 1

        new_index = {}
        crossings = []
        for ci in live_crossings:
            x = [label[self.live(w)] for w in self.crossings[ci]]
            if rotate[ci]:
                x = x[2:] + x[:2]
            new_index[ci] = len(crossings)
            crossings.append(tuple(x))
        comps = tuple(tuple(label[w] for w in seq) for seq in comp_wires)
        return tuple(crossings), comps, label

    def to_diagram(self, seeds):
        """Walk out a diagram.  ``seeds``: one (wire, forward) per component,
        in the desired component order.  Returns (Diagram, wire -> label)."""
        from .diagram import Diagram

        self._entries = {}
        comp_wires = []
        for w, forward in seeds:
            w = self.live(w)
            if self.is_loop(w):
                comp_wires.append([w])
                continue
            seq, closed = self._walk_from(w, 1 if forward else 0)
            if not closed:
                raise ValidationError("component seed reached a terminal; not a closed diagram")
            comp_wires.append(seq)
        crossings, comps, label = self._finish(comp_wires)
        return Diagram(crossings, comps), label

    def to_tangle(self, seeds):
        """Walk out an open tangle.  ``seeds``: (wire, forward) per strand
        starting at its flow-start terminal.  Returns (crossings, strand
        edge paths, wire -> label)."""
        self._entries = {}
        comp_wires = []
        for w, forward in seeds:
            w = self.live(w)
            seq, closed = self._walk_from(w, 1 if forward else 0, allow_open=True)
            if closed:
                raise ValidationError("strand seed walked a closed loop")
            comp_wires.append(seq)
        crossings, comps, label = self._finish(comp_wires)
        return crossings, comps, label

    # -- structural surgery ----------------------------------------------

    def _unbind(self, w, end_binding):
        w = self.live(w)
        ends = self.wires[w]
        hits = [i for i in (0, 1) if ends[i] == end_binding]
        if not hits:
            raise DomainError("end not bound as stated")
        ends[hits[0]] = None
        return (w, hits[0])

    def _heal_through(self, ci, s_in_pair):
        """Delete crossing ``ci`` and reconnect the strand through slots
        ``s_in_pair`` (a pair like (0, 2) or (1, 3))."""
        sa, sb = s_in_pair
        wa = self.live(self.crossings[ci][sa])
        wb = self.live(self.crossings[ci][sb])
        ea = self._unbind(wa, ("x", ci, sa))
        eb = self._unbind(wb, ("x", ci, sb))
        # fuse flow-coherently: the end with index 1 was flowing in
        if ea[1] == 1:
            self.fuse(ea, eb)
        else:
            self.fuse(eb, ea)

    def remove_edges(self, drop):
        """Delete all wires in ``drop`` (whole components), healing the
        surviving strands through any crossings they shared."""
        drop = {self.live(w) for w in drop}
        for ci, x in enumerate(self.crossings):
            if x is None:
                continue
            under_in = self.live(x[0]) in drop
            over_in = self.live(x[1]) in drop
            if not (under_in or over_in):
                continue
            if under_in and over_in:
                self.crossings[ci] = None
                continue
            keep_pair = (1, 3) if under_in else (0, 2)
            gone_pair = (0, 2) if under_in else (1, 3)
            x_saved = list(x)
            self.crossings[ci] = None
            for s in gone_pair:
                w = self.live(x_saved[s])
                if w in self.wires:
                    ends = self.wires[w]
                    for i in (0, 1):
                        if ends[i] == ("x", ci, s):
                            ends[i] = None
            keep_wires = [x_saved[s] for s in keep_pair]
            ea = self._unbind(keep_wires[0], ("x", ci, keep_pair[0]))
            eb = self._unbind(keep_wires[1], ("x", ci, keep_pair[1]))
            if self.live(ea[0]) == self.live(eb[0]) and ea[0] == eb[0]:
                self.fuse(ea, eb)
            elif ea[1] == 1:
                self.fuse(ea, eb)
            else:
                self.fuse(eb, ea)
        for w in drop:
            w = self.live(w)
            if w is not None and w in self.wires:
                del self.wires[w]


# -- gadget constructions --------------------------------------------------


def braid_step(b: Builder, cur, pos, positive):
    """One braid letter on the strand list ``cur`` between ``pos`` and
    ``pos+1``.  ``cur`` holds the dangling top stubs of the strands in
    left-to-right order; entries are replaced by the new stubs.

    Positive means the strand entering bottom-right passes over.
    """
    bl, br = cur[pos], cur[pos + 1]
    tl, tr = b.fresh(), b.fresh()
    if positive:
        # under-strand: bottom-left -> top-right
        b.add_crossing(bl, br, tr, tl, over_entry=1)
    else:
        # under-strand: bottom-right -> top-left
        b.add_crossing(br, tr, tl, bl, over_entry=3)
    cur[pos], cur[pos + 1] = tl, tr


def twist_chain(b: Builder, stubs, count):
    """Append ``count`` full twists to the bundle of dangling stubs.

    Positive count inserts positive crossings (adding +1 to the pairwise
    linking of coherently oriented copies per twist).  Returns the new stub
    list, in the same transverse order.
    """
    m = len(stubs)
    cur = list(stubs)
    if m < 2 or count == 0:
        return cur
    positive = count > 0
    for _ in range(m * abs(count)):
        for pos in range(m - 1):
            braid_step(b, cur, pos, positive)
    return cur


def build_cable(crossings, signs, widths, cut_edges=(), loops=(), open_edges=()):
    """Cable every strand of a crossing code into parallel copies.

    crossings: iterable of 4-tuples of edge labels.
    signs: crossing sign per crossing (fixes the grid geometry).
    widths: edge label -> copy count (constant along each component).
    cut_edges: edges whose copies stay open: they get separate tail-side
        and head-side pieces instead of a single copy wire.
    loops: crossing-free circle labels (each becomes widths[e] free loops).
    open_edges: crossing-free open strand labels (copies dangle both ends).

    Returns (builder, copies, cut_ports) where copies maps an ordinary
    edge to its copy wires (transverse order: copy j sits j units to the
    left of the direction of travel) and cut_ports maps a cut edge to
    (entry_pieces, exit_pieces): the entry piece carries the original
    head occurrence, so flow begins there.
    """
    b = Builder()
    copies = {}
    cut_ports = {}
    cut_edges = set(cut_edges)
    edge_labels = {e for x in crossings for e in x}
    for e in edge_labels:
        w = widths[e]
        if e in cut_edges:
            cut_ports[e] = ([b.fresh() for _ in range(w)], [b.fresh() for _ in range(w)])
        else:
            copies[e] = [b.fresh() for _ in range(w)]
    for e in loops:
        if e in cut_edges:
            # a cut loop opens into bare strands: entry and exit are the same wires
            ws = [b.fresh() for _ in range(widths[e])]
            cut_ports[e] = (ws, ws)
        else:
            copies[e] = [b.fresh_loop() for _ in range(widths[e])]
    for e in open_edges:
        copies[e] = [b.fresh() for _ in range(widths[e])]

    def incoming(e):
        # wires arriving at a crossing along edge e
        return cut_ports[e][0] if e in cut_edges else copies[e]

    def outgoing(e):
        return cut_ports[e][1] if e in cut_edges else copies[e]

    for ci, (ea, eb, ec, ed) in enumerate(crossings):
        p = widths[ea]
        q = widths[eb]
        if widths[ec] != p or widths[ed] != q:
            raise DomainError("cable widths differ along a strand")
        s = signs[ci]
        over_in, over_out = (eb, ed) if s > 0 else (ed, eb)
        if p == 0 and q == 0:
            continue
        if p == 0:
            # under strand deleted: over copies pass straight through
            for win, wout in zip(incoming(over_in), outgoing(over_out)):
                b.fuse((b.live(win), 1), (b.live(wout), 0))
            continue
        if q == 0:
            for win, wout in zip(incoming(ea), outgoing(ec)):
                b.fuse((b.live(win), 1), (b.live(wout), 0))
            continue
        us = [[None] * (q + 1) for _ in range(p)]
        os_ = [[None] * (p + 1) for _ in range(q)]
        for u in range(p):
            us[u][0] = incoming(ea)[u]
            us[u][q] = outgoing(ec)[u]
            for j in range(1, q):
                us[u][j] = b.fresh()
        for v in range(q):
            os_[v][0] = incoming(over_in)[v]
            os_[v][p] = outgoing(over_out)[v]
            for j in range(1, p):
                os_[v][j] = b.fresh()
        for u in range(1, p + 1):
            for v in range(1, q + 1):
                if s > 0:
                    b.add_crossing(
                        us[u - 1][q - v], os_[v - 1][u - 1],
                        us[u - 1][q - v + 1], os_[v - 1][u],
                        over_entry=1,
                    )
                else:
                    b.add_crossing(
                        us[u - 1][v - 1], os_[v - 1][p - u + 1],
                        us[u - 1][v], os_[v - 1][p - u],
                        over_entry=3,
                    )
    return b, copies, cut_ports


def cut_for_passage(b: Builder, w):
    """Cut a wire twice around a marked passage point.

    Returns (west_in, mid, east_out) relative to the wire's own direction:
    ``west_in`` carries the original tail, ``east_out`` the original head.
    For a free loop the outer arc is a single wire returned in both outer
    positions.
    """
    w = b.live(w)
    if b.is_loop(w):
        opened, _ = b.cut(w)
        first, second = b.cut(opened)
        # first: (dangle, dangle) tail side of the second cut point;
        # the outer arc is `first` (tail at the second cut, head at the first)
        return second, first, second

    tail_piece, rest = b.cut(w)
    mid, head_piece = b.cut(rest)
    return tail_piece, mid, head_piece


def lasso(b: Builder, passages, over_first=True):
    """Build an open chain that passes over each listed passage in order,
    turns around, and passes back under each in reverse order (the round
    curve encircling those strands, before closing up).

    passages: list of (west_in, mid, east_out, sign) as produced by
    ``cut_for_passage`` plus the strand's sign through the marked interval.
    When ``over_first`` is false the chain passes under on the way out and
    over on the way back (mirrored gadget).

    Returns (first_wire, last_wire): dangling tail of the first chain wire
    and dangling head of the last; fuse them to close the circle.

    The four crossing layouts, with the chain descending on the way out
    and ascending on the way back:
      chain over an eastward strand:   (west_in, nxt, mid, cur)  entry 3
      chain over a westward strand:    (mid, cur, east_out, nxt) entry 1
      chain under an eastward strand:  (cur, east_out, nxt, mid) entry 3
      chain under a westward strand:   (cur, west_in, nxt, mid)  entry 1
    ``west_in`` always carries the strand's tail, ``east_out`` its head,
    regardless of which geometric side those pieces sit on.
    """

    def chain_over(cur, nxt, west_in, mid, east_out, sign, descending):
        # rotating both the chain and the strand by a half turn re-reads the
        # same tuple, so only the relative direction matters
        eff = sign if descending else -sign
        if eff > 0:
            b.add_crossing(west_in, nxt, mid, cur, over_entry=3)
        else:
            b.add_crossing(mid, cur, east_out, nxt, over_entry=1)

    def chain_under(cur, nxt, west_in, mid, east_out, sign, descending):
        eff = sign if descending else -sign
        if eff > 0:
            b.add_crossing(cur, west_in, nxt, mid, over_entry=1)
        else:
            b.add_crossing(cur, east_out, nxt, mid, over_entry=3)

    way_out = chain_over if over_first else chain_under
    way_back = chain_under if over_first else chain_over
    first = b.fresh()
    cur = first
    for west_in, mid, east_out, sign in passages:
        nxt = b.fresh()
        way_out(cur, nxt, west_in, mid, east_out, sign, descending=True)
        cur = nxt
    for west_in, mid, east_out, sign in reversed(passages):
        nxt = b.fresh()
        way_back(cur, nxt, west_in, mid, east_out, sign, descending=False)
        cur = nxt
    return first, cur


def encircle(b: Builder, targets, over_first=True):
    """Close a lasso around the target wires.  ``targets`` is a list of
    (wire, sign).  Returns (circle_seed_wire, mids) where the seed wire with
    forward=False orients the circle so its linking with the encircled
    strands is the sum of the signs."""
    passages = []
    mids = []
    for w, sign in targets:
        west_in, mid, east_out = cut_for_passage(b, w)
        passages.append((west_in, mid, east_out, sign))
        mids.append(mid)
    first, last = lasso(b, passages, over_first=over_first)
    b.fuse((last, 1), (first, 0))
    return b.live(first), mids


# -- local moves ------------------------------------------------------------


def insert_kink(d, edge, sign):
    """Reidemeister I insertion on the given edge."""
    from .diagram import _orient

    b, wmap = Builder.from_diagram(d)
    w_in, w_out = b.cut(wmap[edge])
    loop = b.fresh()
    if sign > 0:
        b.add_crossing(w_in, loop, loop, w_out, over_entry=1)
    else:
        b.add_crossing(w_in, w_out, loop, loop, over_entry=3)
    seeds = _component_seeds(d, b, wmap)
    out, _ = b.to_diagram(seeds)
    return out


def insert_poke(d, edge_under, edge_over):
    """Reidemeister II insertion: push ``edge_under`` beneath ``edge_over``."""
    b, wmap = Builder.from_diagram(d)
    if b.live(wmap[edge_under]) == b.live(wmap[edge_over]):
        raise DomainError("poke needs two distinct edges")
    if b.is_loop(wmap[edge_under]):
        opened, _ = b.cut(wmap[edge_under])
        ua, um = b.cut(opened)
        ub = ua  # the outer arc of the poked loop closes back on itself
    else:
        ua, rest = b.cut(wmap[edge_under])
        um, ub = b.cut(rest)
    if b.is_loop(wmap[edge_over]):
        opened, _ = b.cut(wmap[edge_over])
        oa, om = b.cut(opened)
        ob = oa
    else:
        oa, rest = b.cut(wmap[edge_over])
        om, ob = b.cut(rest)
    # two cancelling crossings: under-strand passes beneath the over edge
    b.add_crossing(ua, om, um, oa, over_entry=3)
    b.add_crossing(um, om, ub, ob, over_entry=1)
    seeds = _component_seeds(d, b, wmap)
    out, _ = b.to_diagram(seeds)
    return out


def _component_seeds(d, b, wmap):
    seeds = []
    for cyc in d.components:
        for e in cyc:
            w = b.live(wmap[e])
            if w is not None:
                seeds.append((w, True))
                break
        else:
            raise ValidationError("component lost all wires")
    return seeds


def _find_r1(b: Builder):
    for ci, x in enumerate(b.crossings):
        if x is None:
            continue
        for s in range(4):
            w1 = b.live(x[s])
            w2 = b.live(x[(s + 1) % 4])
            if w1 == w2:
                ends = b.wires[w1]
                if (
                    ends[0] is not None and ends[0] != LOOP and ends[0][0] == "x" and ends[0][1] == ci
                    and ends[1] is not None and ends[1][0] == "x" and ends[1][1] == ci
                    and {ends[0][2], ends[1][2]} == {s, (s + 1) % 4}
                ):
                    return ci, s
    return None


def _find_r2(b: Builder):
    for ci, x in enumerate(b.crossings):
        if x is None:
            continue
        for si in range(4):
            w = b.live(x[si])
            ends = b.wires[w]
            if ends[0] == LOOP or ends[0] is None or ends[1] is None:
                continue
            if ends[0][0] != "x" or ends[1][0] != "x":
                continue
            (c1, s1), (c2, s2) = (ends[0][1:], ends[1][1:])
            if c1 == c2:
                continue
            # orient the candidate pair so (ci, si) is on the c1 side
            if c1 != ci or s1 != si:
                c1, s1, c2, s2 = c2, s2, c1, s1
            if c1 != ci or s1 != si:
                continue
            cj, sj = c2, s2
            if b.crossings[cj] is None:
                continue
            # partner edge joining slot si+1 at ci to slot sj-1 at cj
            w2 = b.live(b.crossings[ci][(si + 1) % 4])
            ends2 = b.wires[w2]
            if ends2[0] == LOOP or ends2[0] is None or ends2[1] is None:
                continue
            if ends2[0][0] != "x" or ends2[1][0] != "x":
                continue
            bindings = {ends2[0][1:], ends2[1][1:]}
            if bindings != {(ci, (si + 1) % 4), (cj, (sj - 1) % 4)}:
                continue
            if w2 == w:
                continue
            # cancelling pair: one strand passes over at both crossings, so
            # each bigon edge keeps a single role; alternating roles mean a
            # clasp, which Reidemeister II cannot remove
            if (s1 in (0, 2)) != (sj in (0, 2)):
                continue
            return ci, si, cj, sj
    return None


def r1_r2_reduce(d, budget):
    from .diagram import Diagram

    b, wmap = Builder.from_diagram(d)
    tags = {}
    for comp_index, cyc in enumerate(d.components):
        for e in cyc:
            tags[b.live(wmap[e])] = comp_index

    def retag(w, comp_index):
        tags[b.live(w)] = comp_index

    moves = 0
    while moves < budget:
        hit = _find_r1(b)
        if hit is not None:
            ci, s = hit
            x = list(b.crossings[ci])
            comp = tags.get(b.live(x[s]))
            b.crossings[ci] = None
            loop_wire = b.live(x[s])
            ea = b._unbind(x[(s + 2) % 4], ("x", ci, (s + 2) % 4))
            eb = b._unbind(x[(s + 3) % 4], ("x", ci, (s + 3) % 4))
            for i in (0, 1):
                if b.wires[loop_wire][i] is not None:
                    b.wires[loop_wire][i] = None
            if b.live(ea[0]) != loop_wire:
                del b.wires[loop_wire]
            if ea[1] == 1:
                merged = b.fuse(ea, eb)
            else:
                merged = b.fuse(eb, ea)
            retag(merged, comp)
            moves += 1
            continue
        hit = _find_r2(b)
        if hit is not None:
            ci, si, cj, sj = hit
            xi = list(b.crossings[ci])
            xj = list(b.crossings[cj])
            comp_e = tags.get(b.live(xi[si]))
            comp_f = tags.get(b.live(xi[(si + 1) % 4]))
            b.crossings[ci] = None
            b.crossings[cj] = None
            # drop the two bigon edges entirely
            for w, binding in (
                (xi[si], ("x", ci, si)),
                (xi[(si + 1) % 4], ("x", ci, (si + 1) % 4)),
                (xj[sj], ("x", cj, sj)),
                (xj[(sj - 1) % 4], ("x", cj, (sj - 1) % 4)),
            ):
                lw = b.live(w)
                ends = b.wires[lw]
                for i in (0, 1):
                    if ends[i] == binding:
                        ends[i] = None
            for lw in {b.live(xi[si]), b.live(xi[(si + 1) % 4])}:
                if b.wires[lw][0] is None and b.wires[lw][1] is None:
                    del b.wires[lw]
            # reconnect each strand through its pair of outer stubs
            for slot_i, slot_j, comp in (
                ((si + 2) % 4, (sj + 2) % 4, comp_e),
                ((si + 3) % 4, (sj + 1) % 4, comp_f),
            ):
                wa = b.live(xi[slot_i])
                wb = b.live(xj[slot_j])
                ea = b._unbind(wa, ("x", ci, slot_i))
                eb = b._unbind(wb, ("x", cj, slot_j))
                if ea[1] == 1:
                    merged = b.fuse(ea, eb)
                else:
                    merged = b.fuse(eb, ea)
                retag(merged, comp)
            moves += 1
            continue
        break

    seeds_by_comp = {}
    for w in list(b.wires):
        lw = b.live(w)
        if lw is None:
            continue
        comp = tags.get(lw)
        if comp is not None and comp not in seeds_by_comp:
            seeds_by_comp[comp] = lw
    # every original component must survive (R1/R2 never delete one)
    seeds = []
    for comp_index in range(len(d.components)):
        seeds.append((seeds_by_comp[comp_index], True))
    out, _ = b.to_diagram(seeds)
    return out
