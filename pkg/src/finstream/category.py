"""Maps of streams and the universal constructions built from them.

A stream map is a continuous function that preserves each open set's order:
whenever x is below y on the preimage of an open U of the target, the images
are related on U. Checking the condition on the target's minimal opens
suffices (preimages commute with unions, the source value on a preimage
glues from the preimages of minimal opens, and closure cannot escape a
preorder), and the equivalence with the all-opens check is property-tested.

Colimit-style structure is transported by joining pushforwards; limit-style
structure by cosheafifying intersections of pullbacks. Limits and colimits
of finite diagrams are computed concretely on the underlying spaces
(compatible tuples inside a product, quotients of a tagged disjoint union)
and then endowed with the initial or final structure over their legs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .circulation import (
    FuncPrecirculation,
    Stream,
    chaotic_precirculation,
    circulation_from_generators,
    cosheafify,
    join_circulations,
    pullback,
    pushforward,
    substream_circulation,
    trivial_circulation,
)
from .errors import IllTypedDiagram, NotContinuous, NotStreamMap
from .relations import Preorder, iter_bits, product, tuple_point
from .spaces import (
    FiniteSpace,
    all_opens,
    coproduct_space,
    is_continuous,
    product_space,
    quotient_space,
    space_from_min_opens,
)


@dataclass(frozen=True)
class StreamMapCheck:
    ok: bool
    continuous: bool
    witness: tuple[tuple[str, ...], str, str] | None = None


def is_stream_map(
    f: Mapping[str, str], source: Stream, target: Stream, mode: str = "fast"
) -> StreamMapCheck:
    """Does the point map preserve the circulations?

    fast checks the defining condition on the target's minimal opens only;
    exhaustive checks every open of the target. A failure reports the open
    and the pair whose images it fails to relate."""
    if not is_continuous(f, source.space, target.space):
        return StreamMapCheck(False, False)
    if mode == "fast":
        masks = list(dict.fromkeys(target.space.min_open_rows))
    elif mode == "exhaustive":
        masks = list(all_opens(target.space))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    src, tgt = source.space, target.space
    for umask in masks:
        pre = 0
        for i, p in enumerate(src.points):
            if umask >> tgt.index(f[p]) & 1:
                pre |= 1 << i
        value = source.value_mask(pre)
        tvalue = target.value_mask(umask)
        for a, b in value.pairs():
            if not tvalue.has(f[a], f[b]):
                open_pts = tuple(sorted(tgt.set_of(umask)))
                return StreamMapCheck(False, True, (open_pts, a, b))
    return StreamMapCheck(True, True)


@dataclass(frozen=True, eq=False)
class StreamMap:
    """A verified stream map; construction re-checks the definition."""

    source: Stream
    target: Stream
    mapping: dict[str, str] = field(hash=False)

    def __post_init__(self):
        check = is_stream_map(self.mapping, self.source, self.target)
        if not check.continuous:
            raise NotContinuous("not continuous, hence not a stream map")
        if not check.ok:
            raise NotStreamMap(f"order not preserved on {check.witness[0]!r}")

    def __call__(self, x: str) -> str:
        return self.mapping[x]

    def __eq__(self, other) -> bool:
        if not isinstance(other, StreamMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.mapping == other.mapping
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, tuple(sorted(self.mapping.items()))))


def identity_map(s: Stream) -> StreamMap:
    return StreamMap(s, s, {p: p for p in s.space.points})


def compose(late: StreamMap, early: StreamMap) -> StreamMap:
    if early.target != late.source:
        raise IllTypedDiagram("composition endpoints do not match")
    return StreamMap(
        early.source, late.target, {p: late.mapping[q] for p, q in early.mapping.items()}
    )


def final_structure(
    target: FiniteSpace, legs: Sequence[tuple[Stream, Mapping[str, str]]]
) -> tuple[Stream, list[StreamMap]]:
    """The universal stream on a fixed space making a cocone of continuous
    maps into stream maps: join of the pushforwards (trivial for no legs)."""
    if legs:
        circ = join_circulations(
            [pushforward(s, f, target, check=False) for s, f in legs]
        )
    else:
        circ = trivial_circulation(target)
    stream = Stream(target, circ)
    return stream, [StreamMap(s, stream, dict(f)) for s, f in legs]


def initial_structure(
    source: FiniteSpace, legs: Sequence[tuple[Mapping[str, str], Stream]]
) -> tuple[Stream, list[StreamMap]]:
    """The universal stream on a fixed space making a cone of continuous maps
    into stream maps: cosheafification of the intersection of the pullbacks
    (of the everything-related assignment when there are no legs)."""
    if not legs:
        circ = cosheafify(chaotic_precirculation(source))
        return Stream(source, circ), []
    pulled = [pullback(s, f, source) for f, s in legs]

    def meet(mask: int) -> Preorder:
        rows = [m if mask >> i & 1 else 0 for i, m in enumerate([mask] * source.n)]
        for pb in pulled:
            prows = pb.rows_on(mask)
            rows = [r & p for r, p in zip(rows, prows)]
        carrier = tuple(source.points[i] for i in iter_bits(mask))
        positions = list(iter_bits(mask))
        out = []
        for i in positions:
            out.append(sum((rows[i] >> j & 1) << k for k, j in enumerate(positions)))
        return Preorder(carrier, tuple(out))

    circ = cosheafify(FuncPrecirculation(source, meet))
    stream = Stream(source, circ)
    return stream, [StreamMap(stream, s, dict(f)) for f, s in legs]


def product_stream(s: Stream, t: Stream) -> tuple[Stream, StreamMap, StreamMap]:
    """Product: componentwise order of the projected values on each open,
    cut down to the open, then cosheafified; projections are stream maps."""
    space = product_space(s.space, t.space)
    pairs = {
        tuple_point(x, y): (x, y) for x in s.space.points for y in t.space.points
    }

    def assign(wmask: int) -> Preorder:
        left_mask = 0
        right_mask = 0
        for i in iter_bits(wmask):
            x, y = pairs[space.points[i]]
            left_mask |= 1 << s.space.index(x)
            right_mask |= 1 << t.space.index(y)
        lvalue = s.value_mask(left_mask)
        rvalue = t.value_mask(right_mask)
        members = [space.points[i] for i in iter_bits(wmask)]
        carrier = tuple(sorted(members))
        rows = []
        for p in carrier:
            x, y = pairs[p]
            row = 0
            for k, q in enumerate(carrier):
                u, v = pairs[q]
                if lvalue.has(x, u) and rvalue.has(y, v):
                    row |= 1 << k
            rows.append(row)
        return Preorder(carrier, tuple(rows))

    circ = cosheafify(FuncPrecirculation(space, assign))
    stream = Stream(space, circ)
    first = {p: xy[0] for p, xy in pairs.items()}
    second = {p: xy[1] for p, xy in pairs.items()}
    return stream, StreamMap(stream, s, first), StreamMap(stream, t, second)


def substream(s: Stream, points: Iterable[str]) -> tuple[Stream, StreamMap]:
    """Subspace with the largest circulation making inclusion a stream map."""
    sub, circ = substream_circulation(s, points)
    stream = Stream(sub, circ)
    return stream, StreamMap(stream, s, {p: p for p in sub.points})


def quotient_stream(
    s: Stream, partition: Iterable[Iterable[str]]
) -> tuple[Stream, StreamMap]:
    """Quotient space carrying the pushforward along the projection."""
    space, projection = quotient_space(s.space, partition)
    circ = pushforward(s, projection, space, check=False)
    stream = Stream(space, circ)
    return stream, StreamMap(s, stream, projection)


def coproduct_stream(
    family: Sequence[Stream], tags: Sequence[str] | None = None
) -> tuple[Stream, list[StreamMap]]:
    """Disjoint union; the generators are the tagged generators of the
    summands."""
    space, inclusions = coproduct_space([s.space for s in family], tags)
    gens = {}
    for s, inc in zip(family, inclusions):
        for p in s.space.points:
            g = s.gen_of(p)
            gens[inc[p]] = Preorder.build(
                [inc[q] for q in g.carrier],
                [(inc[a], inc[b]) for a, b in g.pairs()],
            )
    stream = Stream(space, circulation_from_generators(space, gens))
    return stream, [StreamMap(s, stream, inc) for s, inc in zip(family, inclusions)]


@dataclass(frozen=True)
class DiagramArrow:
    source: str
    target: str
    mapping: Mapping[str, str]


@dataclass(frozen=True, eq=False)
class StreamDiagram:
    """Finitely many streams and stream maps between them, named."""

    objects: Mapping[str, Stream]
    arrows: Mapping[str, DiagramArrow]

    def __post_init__(self):
        for name, arrow in self.arrows.items():
            if arrow.source not in self.objects or arrow.target not in self.objects:
                raise IllTypedDiagram(f"arrow {name!r} references a missing object")
            check = is_stream_map(
                arrow.mapping, self.objects[arrow.source], self.objects[arrow.target]
            )
            if not check.ok:
                raise IllTypedDiagram(f"arrow {name!r} is not a stream map")

    def object_keys(self) -> list[str]:
        return sorted(self.objects)


def _product_many(spaces: Sequence[FiniteSpace]) -> tuple[FiniteSpace, dict[str, tuple[str, ...]]]:
    """Flat product; a single factor keeps its own point names, so one-object
    limits return the object itself."""
    if len(spaces) == 1:
        return spaces[0], {p: (p,) for p in spaces[0].points}
    combos = list(itertools.product(*(sp.points for sp in spaces)))
    assoc = {tuple_point(*combo): combo for combo in combos}
    table = {}
    for name, combo in assoc.items():
        opens = [sp.min_open(x) for sp, x in zip(spaces, combo)]
        table[name] = {tuple_point(*c) for c in itertools.product(*opens)}
    return space_from_min_opens(assoc.keys(), table), assoc


def limit(diagram: StreamDiagram) -> tuple[Stream, dict[str, StreamMap]]:
    """Compatible tuples inside the product of the objects, with the initial
    structure over the projections."""
    keys = diagram.object_keys()
    streams = [diagram.objects[k] for k in keys]
    prod, assoc = _product_many([s.space for s in streams])
    slot = {k: i for i, k in enumerate(keys)}
    compatible = []
    for name, combo in assoc.items():
        ok = True
        for arrow in diagram.arrows.values():
            x = combo[slot[arrow.source]]
            if arrow.mapping[x] != combo[slot[arrow.target]]:
                ok = False
                break
        if ok:
            compatible.append(name)
    from .spaces import subspace

    base = subspace(prod, compatible)
    legs = {
        k: {name: assoc[name][slot[k]] for name in base.points} for k in keys
    }
    stream, stream_legs = initial_structure(
        base, [(legs[k], diagram.objects[k]) for k in keys]
    )
    return stream, dict(zip(keys, stream_legs))


def colimit(diagram: StreamDiagram) -> tuple[Stream, dict[str, StreamMap]]:
    """Quotient of the tagged disjoint union by the equivalence the arrows
    generate, with the final structure over the insertions."""
    keys = diagram.object_keys()
    streams = [diagram.objects[k] for k in keys]
    space, inclusions = coproduct_space([s.space for s in streams], keys)
    tagged = dict(zip(keys, inclusions))
    parent = {p: p for p in space.points}

    def find(p: str) -> str:
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    def union(a: str, b: str) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for arrow in diagram.arrows.values():
        src_inc = tagged[arrow.source]
        dst_inc = tagged[arrow.target]
        for x in diagram.objects[arrow.source].space.points:
            union(src_inc[x], dst_inc[arrow.mapping[x]])
    classes: dict[str, set[str]] = {}
    for p in space.points:
        classes.setdefault(find(p), set()).add(p)
    base, projection = quotient_space(space, classes.values())
    legs = []
    for k, s in zip(keys, streams):
        legs.append((s, {p: projection[tagged[k][p]] for p in s.space.points}))
    stream, stream_legs = final_structure(base, legs)
    return stream, dict(zip(keys, stream_legs))


def enumerate_point_maps(
    source: FiniteSpace, target: FiniteSpace
) -> Iterator[dict[str, str]]:
    """Every function between the point sets, in deterministic order."""
    if source.n == 0:
        yield {}
        return
    for choice in itertools.product(target.points, repeat=source.n):
        yield dict(zip(source.points, choice))


def enumerate_stream_maps(source: Stream, target: Stream) -> list[dict[str, str]]:
    """Every point map that is a stream map."""
    return [
        f
        for f in enumerate_point_maps(source.space, target.space)
        if is_stream_map(f, source, target).ok
    ]


def stream_isomorphism(s: Stream, t: Stream) -> dict[str, str] | None:
    """A point bijection carrying one stream onto the other, or None.

    Backtracking over points grouped by local invariants (minimal-open size,
    generator graph size, specialization degrees); intended for small models.
    """
    if s.space.n != t.space.n:
        return None

    def signature(stream: Stream, p: str) -> tuple:
        space = stream.space
        i = space.index(p)
        mo = space.min_open_rows[i]
        spec_in = sum(
            1 for row in space.min_open_rows if row >> i & 1
        )
        return (mo.bit_count(), spec_in, stream.gen_of(p).graph_size())

    source_sigs = {p: signature(s, p) for p in s.space.points}
    target_pool: dict[tuple, list[str]] = {}
    for q in t.space.points:
        target_pool.setdefault(signature(t, q), []).append(q)
    if sorted(source_sigs.values()) != sorted(
        sig for sig, qs in target_pool.items() for _ in qs
    ):
        return None

    order = sorted(s.space.points, key=lambda p: (source_sigs[p], p))
    assignment: dict[str, str] = {}
    used: set[str] = set()

    def compatible(p: str, q: str) -> bool:
        for p2, q2 in assignment.items():
            if (p2 in s.space.min_open(p)) != (q2 in t.space.min_open(q)):
                return False
            if (p in s.space.min_open(p2)) != (q in t.space.min_open(q2)):
                return False
        return True

    def extend(k: int) -> bool:
        if k == len(order):
            return _is_full_stream_iso(s, t, assignment)
        p = order[k]
        for q in target_pool.get(source_sigs[p], []):
            if q in used or not compatible(p, q):
                continue
            assignment[p] = q
            used.add(q)
            if extend(k + 1):
                return True
            del assignment[p]
            used.discard(q)
        return False

    if extend(0):
        return dict(assignment)
    return None


def _is_full_stream_iso(s: Stream, t: Stream, f: Mapping[str, str]) -> bool:
    for p in s.space.points:
        if {f[q] for q in s.space.min_open(p)} != t.space.min_open(f[p]):
            return False
        g = s.gen_of(p)
        relabeled = {(f[a], f[b]) for a, b in g.pairs()}
        if relabeled != set(t.gen_of(f[p]).pairs()):
            return False
    return True


def box_identity_report(
    s: Stream, t: Stream, prod: Stream | None = None
) -> list[tuple[tuple[str, ...], tuple[str, ...]]]:
    """Diagnostic: on which pairs of opens (U, V) does the product stream's
    value on U x V differ from the componentwise product of the values?
    Reported, never asserted; an empty list means the identity held."""
    if prod is None:
        prod, _, _ = product_stream(s, t)
    failures = []
    for umask in all_opens(s.space):
        uvalue = s.value_mask(umask)
        upoints = s.space.set_of(umask)
        for vmask in all_opens(t.space):
            vvalue = t.value_mask(vmask)
            vpoints = t.space.set_of(vmask)
            box = [tuple_point(x, y) for x in upoints for y in vpoints]
            expected = product([uvalue, vvalue])
            if prod.value(box) != expected:
                failures.append(
                    (tuple(sorted(upoints)), tuple(sorted(vpoints)))
                )
    return failures
