"""The graded convolution / arc algebra on oriented circle diagrams.

A basis element of Hom(x, y) is an orientation of the glued diagram with
m(x) below and m(y) on top.  Circles of a glued diagram carry one of two
orientations; the lower-degree one plays the role of 1 and the higher one
the role of X, with the dictionary "X on a circle = the generator x_i at
the circle's leftmost point i" tying everything to the ring presentations
in :mod:`arcalg.cohomology`.

Multiplication stacks two diagrams and contracts the shared middle
diagram one cup or ray at a time (a movie).  Ray columns are joined
first; cups are surgered outermost-first (surgering an inner cup before
an outer one would thread vertical strands through a still-present cup
and destroy planarity, and with it the sign rules).  Three rule sets are
implemented on top of the shared state machine:

* ``alpha=+1``   plain Frobenius label rules (merge m, split
  1 -> X(x)1 + 1(x)X); this is the associative arc algebra product;
* ``alpha=-1``   the raw geometric rules in z-coordinates
  (z_i = (-1)**i x_i): splits and circle births acquire (-1)**(left end),
  ray closings (-1)**(ray+1); non-associative;
* nested mode    the embedded TQFT which dispatches merges/splits on
  circle nesting (m, Delta for disjoint circles; m', Delta' with the
  outer circle first for nested ones).  It agrees with ``alpha=-1``.

Surgeries touching lines follow the graded rules: a saddle joining or
reconnecting two line segments is the identity when both vanishing arcs
are counter-clockwise (down mark at their left ends) and kills the
product otherwise (mismatched marks or clockwise arcs).

Everything is pure; the exhaustive checks at the bottom are
embarrassingly parallel over basis pairs/triples and merge their results
deterministically.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

from .diagrams import (CIRCLE, LINE, CircleDiagram, Component, CupDiagram,
                       DOWN, Shape, UP, ValidationError, Weight,
                       enumerate_standard, enumerate_weights, glue,
                       orientation_degree, orientations, render_circle_diagram,
                       weight_of_tableau, weight_sort_key, weight_to_m)


class CompositionError(ValidationError):
    """Product of elements whose middle weights disagree."""


class OrderError(ValidationError):
    """Cup order not compatible with the nesting partial order."""


@dataclass(frozen=True)
class BasisElement:
    """Oriented circle diagram: src below, tgt on top, orient a full weight."""

    src: Weight
    tgt: Weight
    orient: Weight

    def diagram(self) -> CircleDiagram:
        return diagram_of(self.src, self.tgt)

    def __str__(self) -> str:
        return f"[{self.src}|{self.tgt}|{self.orient}]"


@lru_cache(maxsize=None)
def diagram_of(src: Weight, tgt: Weight) -> CircleDiagram:
    return glue(weight_to_m(tgt), weight_to_m(src))


@lru_cache(maxsize=None)
def basis(x: Weight, y: Weight) -> tuple[BasisElement, ...]:
    """All basis elements of Hom(x, y), deterministically ordered."""
    z = diagram_of(x, y)
    vs = orientations(z, x, y)
    return tuple(BasisElement(x, y, v) for v in sorted(vs, key=weight_sort_key))


def degree(b: BasisElement) -> int:
    """Arcs whose left endpoint carries an up mark; rays contribute nothing."""
    return orientation_degree(b.diagram(), b.orient)


@dataclass
class AlgebraElement:
    """Integer combination of basis elements of one Hom space."""

    src: Weight
    tgt: Weight
    terms: dict[BasisElement, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.terms = {b: c for b, c in self.terms.items() if c != 0}
        for b in self.terms:
            if (b.src, b.tgt) != (self.src, self.tgt):
                raise ValidationError("terms must share src and tgt")

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if (self.src, self.tgt) != (other.src, other.tgt):
            raise ValidationError("cannot add elements of different Hom spaces")
        out = dict(self.terms)
        for b, c in other.terms.items():
            out[b] = out.get(b, 0) + c
        return AlgebraElement(self.src, self.tgt, out)

    def scale(self, c: int) -> "AlgebraElement":
        return AlgebraElement(self.src, self.tgt, {b: c * v for b, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self.src, self.tgt, self.terms) == (other.src, other.tgt, other.terms)

    def x_form(self) -> str:
        """Render as a polynomial in the leftmost-point generators."""
        if not self.terms:
            return "0"
        rendered = []
        for b, c in self.terms.items():
            idxs = tuple(comp.leftmost for comp in b.diagram().components
                         if comp.kind == CIRCLE and _is_high(comp, b.orient))
            mono = "*".join(f"x{i}" for i in idxs) if idxs else "1"
            rendered.append(((len(idxs), idxs), c, mono))
        parts = []
        for _, c, mono in sorted(rendered):
            sign = "-" if c < 0 else "+"
            coeff = "" if abs(c) == 1 else f"{abs(c)}*"
            parts.append(f"{sign} {coeff}{mono}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else text

    def __str__(self) -> str:
        if not self.terms:
            return f"0 [{self.src}->{self.tgt}]"
        return " ".join(f"{c:+d}*{b}" for b, c in sorted(
            self.terms.items(), key=lambda t: weight_sort_key(t[0].orient)))


def zero(x: Weight, y: Weight) -> AlgebraElement:
    return AlgebraElement(x, y, {})


def idempotent(x: Weight) -> AlgebraElement:
    """Degree-0 element of Hom(x, x); x itself orients its self-glued diagram."""
    e = BasisElement(x, x, x)
    assert degree(e) == 0
    return AlgebraElement(x, x, {e: 1})


def low_element(x: Weight, y: Weight) -> AlgebraElement | None:
    """The minimal-degree basis element of Hom(x, y), or None if Hom is zero."""
    els = basis(x, y)
    if not els:
        return None
    b = min(els, key=degree)
    return AlgebraElement(x, y, {b: 1})


# ---------------------------------------------------------------------------
# orientation helpers on components


def _circle_marks(comp: Component, high: bool) -> dict[int, str]:
    """Marks of the low or high orientation of a circle component."""
    for seed in (DOWN, UP):
        marks = {comp.leftmost: seed}
        frontier = [comp.leftmost]
        while frontier:
            v = frontier.pop()
            for _, a, b in comp.arcs:
                if v in (a, b):
                    other = a if v == b else b
                    want = UP if marks[v] == DOWN else DOWN
                    if other not in marks:
                        marks[other] = want
                        frontier.append(other)
        ups_left = sum(1 for (_, a, _b) in comp.arcs if marks[a] == UP)
        half = len(comp.arcs) // 2
        if (ups_left == half + 1) == high:
            return marks
    raise RuntimeError(f"circle {comp.vertices} has no {'high' if high else 'low'} orientation")


def _is_high(comp: Component, v: Weight) -> bool:
    ups_left = sum(1 for (_, a, _b) in comp.arcs if v.mark(a) == UP)
    return ups_left == len(comp.arcs) // 2 + 1


def _line_marks(comp: Component, w_bottom: Weight, w_top: Weight) -> dict[int, str]:
    """The forced orientation of a line component of a glued diagram."""
    forced = {r: w_bottom.mark(r) for r in comp.bottom_rays}
    forced.update({r: w_top.mark(r) for r in comp.top_rays})
    start, mark = next(iter(forced.items()))
    marks = {start: mark}
    frontier = [start]
    while frontier:
        v = frontier.pop()
        for _, a, b in comp.arcs:
            if v in (a, b):
                other = a if v == b else b
                want = UP if marks[v] == DOWN else DOWN
                if other not in marks:
                    marks[other] = want
                    frontier.append(other)
    for r, mk in forced.items():
        if marks.get(r) != mk:
            raise RuntimeError("line marks inconsistent with rays")
    return marks


# ---------------------------------------------------------------------------
# the movie state machine

# bands, bottom to top: cups of m(x), caps of m(y), cups of m(y), caps of m(z)
_B_CUP_X, _B_CAP_MID, _B_CUP_MID, _B_CAP_Z = 0, 1, 2, 3


class _Movie:
    def __init__(self, x: Weight, y: Weight, z: Weight):
        self.x, self.y, self.z = x, y, z
        self.n = x.n
        self.mx, self.my, self.mz = weight_to_m(x), weight_to_m(y), weight_to_m(z)
        self.arcs: set[tuple[int, int, int]] = set()
        for a, b in self.mx.cups:
            self.arcs.add((_B_CUP_X, a, b))
        for a, b in self.my.cups:
            self.arcs.add((_B_CAP_MID, a, b))
            self.arcs.add((_B_CUP_MID, a, b))
        for a, b in self.mz.cups:
            self.arcs.add((_B_CAP_Z, a, b))
        self.verticals: set[int] = set()
        self.stubs: set[int] = set(self.my.rays)

    # -- components ---------------------------------------------------------

    def components(self) -> dict[frozenset, dict]:
        adj: dict[tuple[str, int], list] = {}
        for lv in ("l", "u"):
            for i in range(1, self.n + 1):
                adj[(lv, i)] = []
        for band, a, b in self.arcs:
            lv = "l" if band in (_B_CUP_X, _B_CAP_MID) else "u"
            adj[(lv, a)].append((lv, b))
            adj[(lv, b)].append((lv, a))
        for c in self.verticals:
            adj[("l", c)].append(("u", c))
            adj[("u", c)].append(("l", c))
        ends = {("l", r) for r in self.mx.rays} | {("u", r) for r in self.mz.rays}
        for r in self.stubs:
            ends.add(("l", r))
            ends.add(("u", r))
        out: dict[frozenset, dict] = {}
        seen: set = set()
        for start in adj:
            if start in seen:
                continue
            nodes = set()
            stack = [start]
            while stack:
                v = stack.pop()
                if v in nodes:
                    continue
                nodes.add(v)
                stack.extend(adj[v])
            seen |= nodes
            arcs = frozenset(arc for arc in self.arcs
                             if (("l" if arc[0] in (_B_CUP_X, _B_CAP_MID) else "u"), arc[1]) in nodes)
            kind = LINE if nodes & ends else CIRCLE
            key = frozenset(nodes)
            out[key] = {"nodes": key, "arcs": arcs, "kind": kind}
        return out

    def find(self, comps: dict, node: tuple[str, int]) -> frozenset:
        for key in comps:
            if node in key:
                return key
        raise RuntimeError(f"node {node} not found")

    # -- forced marks on lines ----------------------------------------------

    def mark_at(self, comps: dict, key: frozenset, node: tuple[str, int]) -> str:
        forced: dict[tuple[str, int], str] = {}
        for r in self.mx.rays:
            if ("l", r) in key:
                forced[("l", r)] = self.x.mark(r)
        for r in self.mz.rays:
            if ("u", r) in key:
                forced[("u", r)] = self.z.mark(r)
        for r in self.stubs:
            for lv in ("l", "u"):
                if (lv, r) in key:
                    forced[(lv, r)] = self.y.mark(r)
        if not forced:
            raise RuntimeError("line without a forced end")
        start, mark = next(iter(forced.items()))
        marks = {start: mark}
        frontier = [start]
        arcs = comps[key]["arcs"]
        while frontier:
            v = frontier.pop()
            lv, col = v
            for band, a, b in arcs:
                alv = "l" if band in (_B_CUP_X, _B_CAP_MID) else "u"
                if alv == lv and col in (a, b):
                    other = (alv, a if col == b else b)
                    want = UP if marks[v] == DOWN else DOWN
                    if other not in marks:
                        marks[other] = want
                        frontier.append(other)
            if col in self.verticals:
                other = ("u" if lv == "l" else "l", col)
                if other not in marks:
                    marks[other] = marks[v]
                    frontier.append(other)
        return marks[node]

    # -- nesting test --------------------------------------------------------

    @staticmethod
    def _inside(p: dict, q: dict) -> bool:
        band, i, j = min(p["arcs"])
        t = 2 * i + 1  # doubled coordinates: arc (a, b) covers t iff 2a < t < 2b
        if band in (_B_CUP_X, _B_CUP_MID):  # cup: shoot downward
            hits = sum(1 for (b2, a, c) in q["arcs"] if b2 <= band and 2 * a < t < 2 * c)
        else:  # cap: shoot upward
            hits = sum(1 for (b2, a, c) in q["arcs"] if b2 >= band and 2 * a < t < 2 * c)
        return hits % 2 == 1

    def nested_pair(self, p: dict, q: dict) -> tuple[dict, dict] | None:
        """(outer, inner) when one circle encloses the other, else None."""
        if self._inside(p, q):
            return (q, p)
        if self._inside(q, p):
            return (p, q)
        return None


def _min_col(key: frozenset) -> int:
    return min(col for _, col in key)


def _cup_depth(mid: CupDiagram, cup: tuple[int, int]) -> int:
    return sum(1 for other in mid.cups if other[0] < cup[0] and cup[1] < other[1])


def canonical_order(mid: CupDiagram) -> tuple[tuple[int, int], ...]:
    """Outermost cups first; left to right among incomparable ones."""
    return tuple(sorted(mid.cups, key=lambda c: (_cup_depth(mid, c), c[0])))


def cup_orders(mid: CupDiagram):
    """All total cup orders processing containing cups before contained ones."""
    cups = list(mid.cups)
    contains = {(a, b) for a in cups for b in cups
                if a != b and a[0] < b[0] and b[1] < a[1]}

    def rec(remaining: list, done: list):
        if not remaining:
            yield tuple(done)
            return
        for c in remaining:
            if all((other, c) not in contains for other in remaining):
                yield from rec([o for o in remaining if o != c], done + [c])

    yield from rec(cups, [])


def _validate_order(mid: CupDiagram, order) -> tuple[tuple[int, int], ...]:
    if order is None:
        return canonical_order(mid)
    order = tuple(tuple(c) for c in order)
    if sorted(order) != sorted(mid.cups):
        raise OrderError(f"order {order} does not list the cups of {mid.cups}")
    for pos, cup in enumerate(order):
        for later in order[pos + 1:]:
            if later[0] < cup[0] and cup[1] < later[1]:
                raise OrderError(f"cup {later} contains {cup} but is surgered after it")
    return order


@lru_cache(maxsize=None)
def _split_parity(x: Weight, y: Weight, z: Weight,
                  cup_order: tuple[tuple[int, int], ...]) -> int:
    """Parity of the sum of left ends over the splitting and birthing cups.

    Which cups split (rather than merge) depends on the chosen order once
    the movie has positive genus, and the raw geometric sign
    (-1)**(left end) follows the splitting cup around.  This structural
    pass classifies the events without touching labels, so the sign
    drift between two orders can be cancelled exactly.
    """
    mv = _Movie(x, y, z)
    comps = mv.components()
    total = 0
    for r in sorted(mv.my.rays):
        mv.verticals.add(r)
        mv.stubs.discard(r)
    comps = mv.components()
    for i, j in cup_order:
        a_key = mv.find(comps, ("u", i))
        b_key = mv.find(comps, ("l", i))
        was_line = comps[a_key]["kind"] == LINE
        mv.arcs.discard((_B_CUP_MID, i, j))
        mv.arcs.discard((_B_CAP_MID, i, j))
        mv.verticals.add(i)
        mv.verticals.add(j)
        comps = mv.components()
        if a_key == b_key:
            pieces = {mv.find(comps, ("u", i)), mv.find(comps, ("u", j))}
            if not was_line:
                total += i  # circle split
            elif len(pieces) == 2 and any(
                    comps[p]["kind"] == CIRCLE for p in pieces):
                total += i  # a circle pinched off a line
    return total % 2


def _run_movie(ba: BasisElement, bb: BasisElement, mode: str,
               cup_order: tuple[tuple[int, int], ...]) -> dict[frozenset[frozenset], int]:
    """Run the surgery movie; returns {set of X-labelled final components: coeff}.

    Labels in minus mode are z-classes; callers convert at the boundary.
    In minus and nested modes the result is renormalized by the split
    parity of the canonical order, making the product independent of the
    chosen cup order also on movies with handles (first possible at
    n = 6), where the splitting cups themselves vary with the order.
    Genus-0 movies have order-invariant split parity, so every
    canonical-order value and every order of the handle-free products is
    left untouched.
    """
    mv = _Movie(ba.src, ba.tgt, bb.tgt)
    comps = mv.components()

    # initial labels: high circles of each factor carry X
    start: set[frozenset] = set()
    coeff = 1
    for b_elt, level in ((ba, "l"), (bb, "u")):
        for comp in b_elt.diagram().components:
            if comp.kind == CIRCLE and _is_high(comp, b_elt.orient):
                key = frozenset((level, v) for v in comp.vertices)
                assert key in comps
                start.add(key)
                if mode == "minus":
                    coeff *= (-1) ** comp.leftmost
    if mode in ("minus", "nested"):
        reference = canonical_order(mv.my)
        if cup_order != reference:
            drift = (_split_parity(ba.src, ba.tgt, bb.tgt, cup_order)
                     + _split_parity(ba.src, ba.tgt, bb.tgt, reference))
            coeff *= (-1) ** drift
    terms: dict[frozenset, int] = {frozenset(start): coeff}

    steps = [("ray", r) for r in sorted(mv.my.rays)] + [("cup", c) for c in cup_order]
    for kind, data in steps:
        if not terms:
            break
        if kind == "ray":
            terms, comps = _ray_step(mv, comps, terms, data, mode)
        else:
            terms, comps = _cup_step(mv, comps, terms, data, mode)
    return terms


def _retag(terms, updater):
    """Rebuild the term dict, letting ``updater`` map each term's label set."""
    out: dict[frozenset, int] = {}
    for labels, coeff in terms.items():
        for new_labels, factor in updater(labels):
            if factor == 0:
                continue
            key = frozenset(new_labels)
            out[key] = out.get(key, 0) + coeff * factor
    return {k: v for k, v in out.items() if v != 0}


def _ray_step(mv: _Movie, comps, terms, r: int, mode: str):
    a_key = mv.find(comps, ("u", r))
    b_key = mv.find(comps, ("l", r))
    mv.verticals.add(r)
    mv.stubs.discard(r)
    new_comps = mv.components()
    if a_key != b_key:
        # joining two stub-ended lines; stub marks agree by construction
        return terms, new_comps
    # the connection closes the line into a circle
    gamma = mv.find(new_comps, ("u", r))
    r_star = min(col for _, col in gamma if col in mv.my.rays)
    if mode == "plus":
        factor = 1
    elif mode == "minus":
        factor = (-1) ** (r_star + 1)
    else:
        factor = (-1) ** (r_star + 1 + _min_col(gamma))

    def upd(labels):
        yield labels | {gamma}, factor

    return _retag(terms, upd), new_comps


def _cup_step(mv: _Movie, comps, terms, cup: tuple[int, int], mode: str):
    i, j = cup
    a_key = mv.find(comps, ("u", i))
    b_key = mv.find(comps, ("l", i))
    a, b = comps[a_key], comps[b_key]

    # marks must be read before rewiring
    if a["kind"] == LINE and b["kind"] == LINE and a_key != b_key:
        mark_u = mv.mark_at(comps, a_key, ("u", i))
        mark_l = mv.mark_at(comps, b_key, ("l", i))
        line_factor = 1 if (mark_u == mark_l == DOWN) else 0
    elif a_key == b_key and a["kind"] == LINE:
        mark_u = mv.mark_at(comps, a_key, ("u", i))
        mark_l = mv.mark_at(comps, a_key, ("l", i))
        line_factor = 1 if (mark_u == mark_l == DOWN) else 0
    else:
        line_factor = None

    mv.arcs.discard((_B_CUP_MID, i, j))
    mv.arcs.discard((_B_CAP_MID, i, j))
    mv.verticals.add(i)
    mv.verticals.add(j)
    new_comps = mv.components()

    if a_key != b_key:
        if a["kind"] == CIRCLE and b["kind"] == CIRCLE:
            gamma = mv.find(new_comps, ("u", i))
            pair = mv.nested_pair(a, b) if mode == "nested" else None

            def upd(labels):
                has_a, has_b = a_key in labels, b_key in labels
                rest = labels - {a_key, b_key}
                if has_a and has_b:
                    return  # X * X = 0
                if not (has_a or has_b):
                    yield rest, 1
                    return
                factor = 1
                if pair is not None:
                    inner_key = pair[1]["nodes"]
                    if (has_a and a_key == inner_key) or (has_b and b_key == inner_key):
                        factor = -1  # m': 1 (x) X_inner -> -X
                yield rest | {gamma}, factor

            return _retag(terms, upd), new_comps

        if LINE in (a["kind"], b["kind"]) and CIRCLE in (a["kind"], b["kind"]):
            circle_key = a_key if a["kind"] == CIRCLE else b_key

            def upd(labels):
                if circle_key in labels:
                    return  # the circle variable dies on the line
                yield labels, 1

            return _retag(terms, upd), new_comps

        # two line segments reconnect; identity only for counter-clockwise arcs
        def upd(labels):
            yield labels, line_factor

        return _retag(terms, upd), new_comps

    # self-saddle
    if a["kind"] == CIRCLE:
        gi = mv.find(new_comps, ("u", i))
        gj = mv.find(new_comps, ("u", j))
        if gi == gj:
            raise RuntimeError("self-saddle failed to split a circle (non-planar state)")
        pair = mv.nested_pair(new_comps[gi], new_comps[gj]) if mode == "nested" else None
        sign = (-1) ** i if mode == "minus" else 1

        def upd(labels):
            rest = labels - {a_key}
            if a_key in labels:
                factor = -1 if mode == "nested" else sign
                yield rest | {gi, gj}, factor
                return
            if mode == "nested":
                if pair is not None:
                    outer_key = pair[0]["nodes"]
                    yield rest | {gi}, 1 if gi == outer_key else -1
                    yield rest | {gj}, 1 if gj == outer_key else -1
                else:
                    yield rest | {gi}, -1
                    yield rest | {gj}, -1
            else:
                yield rest | {gi}, sign
                yield rest | {gj}, sign

        return _retag(terms, upd), new_comps

    # self-saddle on a line: either a circle pinches off or the line reconnects
    pieces = {mv.find(new_comps, ("u", i)), mv.find(new_comps, ("u", j))}
    circle_keys = [k for k in pieces if new_comps[k]["kind"] == CIRCLE]
    if not circle_keys:
        def upd(labels):
            yield labels, line_factor

        return _retag(terms, upd), new_comps

    gamma = circle_keys[0]
    if mode == "plus":
        factor = 1
    elif mode == "minus":
        factor = (-1) ** i
    else:
        factor = (-1) ** (i + _min_col(gamma))

    def upd(labels):
        yield labels | {gamma}, factor

    return _retag(terms, upd), new_comps


# ---------------------------------------------------------------------------
# public products


_PRODUCT_CACHE: dict = {}


def _multiply_basis(ba: BasisElement, bb: BasisElement, mode: str,
                    cup_order: tuple[tuple[int, int], ...]) -> AlgebraElement:
    key = (ba, bb, mode, cup_order)
    hit = _PRODUCT_CACHE.get(key)
    if hit is not None:
        return hit
    x, z = ba.src, bb.tgt
    raw = _run_movie(ba, bb, mode, cup_order)
    zout = diagram_of(x, z)
    by_cols = {frozenset(c.vertices): c for c in zout.components}
    out: dict[BasisElement, int] = {}
    for labels, coeff in raw.items():
        labelled_cols = {frozenset(col for _, col in key_) for key_ in labels}
        marks: dict[int, str] = {}
        for comp in zout.components:
            cols = frozenset(comp.vertices)
            if comp.kind == LINE:
                marks.update(_line_marks(comp, x, z))
            else:
                high = cols in labelled_cols
                marks.update(_circle_marks(comp, high))
                if high and mode == "minus":
                    coeff *= (-1) ** comp.leftmost  # z -> leftmost-x dictionary
        v = Weight("".join(marks[i] for i in range(1, x.n + 1)))
        be = BasisElement(x, z, v)
        out[be] = out.get(be, 0) + coeff
    result = AlgebraElement(x, z, out)
    _PRODUCT_CACHE[key] = result
    return result


def _compose(a: AlgebraElement, b: AlgebraElement, mode: str, order) -> AlgebraElement:
    if a.tgt != b.src:
        raise CompositionError(f"cannot compose {a.src}->{a.tgt} with {b.src}->{b.tgt}")
    cup_order = _validate_order(weight_to_m(a.tgt), order)
    out = zero(a.src, b.tgt)
    for ba, ca in a.terms.items():
        for bb, cb in b.terms.items():
            out = out + _multiply_basis(ba, bb, mode, cup_order).scale(ca * cb)
    return out


def multiply(a: AlgebraElement, b: AlgebraElement, alpha: int = 1, order=None) -> AlgebraElement:
    """Movie product of a in Hom(x, y) with b in Hom(y, z).

    alpha=+1 gives the associative arc algebra product, alpha=-1 the
    complex-orientation convolution (equal to the embedded nested TQFT).
    ``order`` may fix the cup processing order; it must schedule
    containing cups before contained ones.
    """
    if alpha not in (1, -1):
        raise ValidationError("alpha must be +1 or -1")
    return _compose(a, b, "plus" if alpha == 1 else "minus", order)


def multiply_nested(a: AlgebraElement, b: AlgebraElement, order=None) -> AlgebraElement:
    """Embedded-TQFT product: merge/split maps sensitive to circle nesting."""
    return _compose(a, b, "nested", order)


# ---------------------------------------------------------------------------
# tables and exhaustive checks


@dataclass
class StructureTable:
    shape: Shape
    alpha: int
    weights: tuple[Weight, ...]
    basis: tuple[BasisElement, ...]
    products: dict[tuple[int, int], tuple[tuple[int, int], ...]]

    def index(self, b: BasisElement) -> int:
        return self.basis.index(b)

    def to_json(self) -> str:
        return json.dumps({
            "shape": [self.shape.n, self.shape.k],
            "alpha": self.alpha,
            "weights": [str(w) for w in self.weights],
            "basis": [{"src": str(b.src), "tgt": str(b.tgt), "orient": str(b.orient)}
                      for b in self.basis],
            "products": {f"{i},{j}": [list(t) for t in terms]
                         for (i, j), terms in sorted(self.products.items())},
        })

    @staticmethod
    def from_json(text: str) -> "StructureTable":
        data = json.loads(text)
        basis_ = tuple(BasisElement(Weight.parse(d["src"]), Weight.parse(d["tgt"]),
                                    Weight.parse(d["orient"])) for d in data["basis"])
        products = {}
        for key, terms in data["products"].items():
            i, j = key.split(",")
            products[(int(i), int(j))] = tuple(tuple(t) for t in terms)
        return StructureTable(Shape(*data["shape"]), data["alpha"],
                              tuple(Weight.parse(w) for w in data["weights"]),
                              basis_, products)

    def text_dump(self) -> str:
        lines = [f"shape ({self.shape.n},{self.shape.k})  alpha={self.alpha:+d}  "
                 f"basis size {len(self.basis)}"]
        for idx, b in enumerate(self.basis):
            lines.append(f"\n#{idx}  {b}  degree {degree(b)}")
            lines.append(render_circle_diagram(b.diagram(), b.orient))
        lines.append("\nproducts (i * j = sum of coeff * #k):")
        for (i, j), terms in sorted(self.products.items()):
            rhs = " ".join(f"{c:+d}*#{k}" for k, c in terms) or "0"
            lines.append(f"#{i} * #{j} = {rhs}")
        return "\n".join(lines)


def algebra_basis(shape: Shape, standard_only: bool = False) -> tuple[tuple[Weight, ...], tuple[BasisElement, ...]]:
    if standard_only:
        weights = tuple(weight_of_tableau(s) for s in enumerate_standard(shape))
    else:
        weights = tuple(enumerate_weights(shape))
    els: list[BasisElement] = []
    for x in weights:
        for y in weights:
            els.extend(basis(x, y))
    return weights, tuple(els)


def structure_table(shape: Shape, alpha: int = 1, standard_only: bool = False,
                    mode: str | None = None) -> StructureTable:
    """All pairwise products of basis elements (zero/uncomposable pairs omitted)."""
    weights, els = algebra_basis(shape, standard_only)
    index = {b: i for i, b in enumerate(els)}
    the_mode = mode or ("plus" if alpha == 1 else "minus")
    products: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
    for i, bi in enumerate(els):
        for j, bj in enumerate(els):
            if bi.tgt != bj.src:
                continue
            prod = _multiply_basis(bi, bj, the_mode, canonical_order(weight_to_m(bi.tgt)))
            if prod.terms:
                products[(i, j)] = tuple(sorted((index[b], c) for b, c in prod.terms.items()))
    return StructureTable(shape, alpha, weights, els, products)


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    witness: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_associativity(shape: Shape, alpha: int = 1) -> CheckResult:
    """(a*b)*c == a*(b*c) over every composable basis triple."""
    mode = "plus" if alpha == 1 else "minus"
    _, els = algebra_basis(shape)
    by_src: dict[Weight, list[BasisElement]] = {}
    for b in els:
        by_src.setdefault(b.src, []).append(b)

    def prod(p: BasisElement, q: BasisElement) -> AlgebraElement:
        return _multiply_basis(p, q, mode, canonical_order(weight_to_m(p.tgt)))

    for a in els:
        for b in by_src.get(a.tgt, ()):
            ab = prod(a, b)
            for c in by_src.get(b.tgt, ()):
                left = zero(a.src, c.tgt)
                for t, coeff in ab.terms.items():
                    left = left + prod(t, c).scale(coeff)
                bc = prod(b, c)
                right = zero(a.src, c.tgt)
                for t, coeff in bc.terms.items():
                    right = right + prod(a, t).scale(coeff)
                if left != right:
                    return CheckResult(False,
                                       f"a={a} b={b} c={c}: (ab)c={left.x_form()} "
                                       f"!= a(bc)={right.x_form()}")
    return CheckResult(True)


def check_order_independence(shape: Shape, alpha: int = 1) -> CheckResult:
    """Products agree across every nesting-compatible cup order."""
    mode = "plus" if alpha == 1 else "minus"
    _, els = algebra_basis(shape)
    by_src: dict[Weight, list[BasisElement]] = {}
    for b in els:
        by_src.setdefault(b.src, []).append(b)
    for a in els:
        mid = weight_to_m(a.tgt)
        orders = list(cup_orders(mid))
        if len(orders) <= 1:
            continue
        for b in by_src.get(a.tgt, ()):
            ref = _multiply_basis(a, b, mode, orders[0])
            for order in orders[1:]:
                alt = _multiply_basis(a, b, mode, order)
                if alt != ref:
                    return CheckResult(False, f"a={a} b={b} order={order}: "
                                              f"{alt.x_form()} != {ref.x_form()}")
    return CheckResult(True)


def check_nested_agreement(shape: Shape) -> CheckResult:
    """multiply_nested agrees with multiply(alpha=-1) on every composable pair."""
    _, els = algebra_basis(shape)
    by_src: dict[Weight, list[BasisElement]] = {}
    for b in els:
        by_src.setdefault(b.src, []).append(b)
    for a in els:
        order = canonical_order(weight_to_m(a.tgt))
        for b in by_src.get(a.tgt, ()):
            lhs = _multiply_basis(a, b, "nested", order)
            rhs = _multiply_basis(a, b, "minus", order)
            if lhs != rhs:
                return CheckResult(False, f"a={a} b={b}: nested {lhs.x_form()} "
                                          f"!= alpha=-1 {rhs.x_form()}")
    return CheckResult(True)


def check_degree_additivity(shape: Shape, alpha: int = 1) -> CheckResult:
    """Nonzero products sit in degree deg(a) + deg(b)."""
    mode = "plus" if alpha == 1 else "minus"
    _, els = algebra_basis(shape)
    by_src: dict[Weight, list[BasisElement]] = {}
    for b in els:
        by_src.setdefault(b.src, []).append(b)
    for a in els:
        order = canonical_order(weight_to_m(a.tgt))
        for b in by_src.get(a.tgt, ()):
            prod = _multiply_basis(a, b, mode, order)
            want = degree(a) + degree(b)
            for t in prod.terms:
                if degree(t) != want:
                    return CheckResult(False, f"a={a} b={b} term={t}: "
                                              f"degree {degree(t)} != {want}")
    return CheckResult(True)


def check_unit(shape: Shape, alpha: int = 1) -> CheckResult:
    """Idempotents act as identities and are mutually orthogonal."""
    weights, els = algebra_basis(shape)
    for b in els:
        e_left = idempotent(b.src)
        e_right = idempotent(b.tgt)
        one = AlgebraElement(b.src, b.tgt, {b: 1})
        if multiply(e_left, one, alpha) != one or multiply(one, e_right, alpha) != one:
            return CheckResult(False, f"unit law fails at {b}")
    return CheckResult(True)
