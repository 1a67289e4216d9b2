"""Circulations: coherent per-open-set preorders on a finite space.

A circulation assigns a preorder to every open set so that the value on any
union of opens is the join of the values on the members (the cosheaf/gluing
condition). On a finite space the cover by minimal opens refines every cover,
so a circulation is determined by its values on minimal opens; that family
(``gen``) is the only thing stored, and every other value is derived by
joining. The determination is checked against a brute enumeration oracle in
the test suite.

A precirculation only promises monotonicity under inclusion of opens; it is
the raw material that cosheafification turns into the largest circulation
below it.

Two boundary notes. First, the minimal-open determination used throughout is
special to spaces whose arbitrary open intersections are open (here: all
finite spaces); no claim is made beyond that setting. Second, the
connectivity-based circulation ("related iff the pair sits in a common
compact Hausdorff connected subspace") degenerates on finite spaces, where
compact Hausdorff subspaces are discrete: see :func:`connectivity_circulation`.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from ._kernels import closure_rows
from .errors import (
    CarrierMismatch,
    MissingPoint,
    NeighborhoodConditionFailed,
    NotConvex,
    NotRelated,
    UnknownPoint,
)
from .relations import (
    Preorder,
    all_preorders,
    bounded_interval,
    is_convex,
    iter_bits,
    join,
)
from .spaces import (
    FiniteSpace,
    all_opens,
    closure_mask,
    count_opens,
    interior,
    is_connected,
    open_supersets,
    require_continuous,
    require_open_mask,
    subspace,
)

# Self-checks that enumerate the target's open lattice are skipped past this
# many opens; they are theorems, and the test suite exercises them at scale.
_SELF_CHECK_OPEN_CAP = 4096


def _embed_rows(p: Preorder, space: FiniteSpace) -> tuple[int, ...]:
    """Graph of p as full-space bitmask rows (zero rows off its carrier)."""
    rows = [0] * space.n
    for i, x in enumerate(p.carrier):
        row = 0
        for j in iter_bits(p.rows[i]):
            row |= 1 << space.index(p.carrier[j])
        rows[space.index(x)] = row
    return tuple(rows)


def _extract_preorder(space: FiniteSpace, mask: int, full_rows: Sequence[int]) -> Preorder:
    carrier = tuple(space.points[i] for i in iter_bits(mask))
    positions = list(iter_bits(mask))
    rows = []
    for i in positions:
        row = full_rows[i]
        rows.append(sum((row >> j & 1) << k for k, j in enumerate(positions)))
    return Preorder(carrier, tuple(rows))


def _close_on_mask(space: FiniteSpace, mask: int, full_rows: Sequence[int]) -> tuple[int, ...]:
    """Transitive-reflexive closure restricted to the mask, in full indexing."""
    closed = list(closure_rows(full_rows, space.n))
    for i in range(space.n):
        if not mask >> i & 1:
            closed[i] = 0
    return tuple(closed)


class Precirculation:
    """Base: a memoized, thread-safe assignment of preorders to open sets."""

    def __init__(self, space: FiniteSpace):
        self.space = space
        self._memo: dict[int, Preorder] = {}
        self._lock = threading.Lock()

    def _compute(self, mask: int) -> Preorder:
        raise NotImplementedError

    def assign_mask(self, mask: int) -> Preorder:
        require_open_mask(self.space, mask)
        with self._lock:
            hit = self._memo.get(mask)
        if hit is not None:
            return hit
        value = self._compute(mask)
        expected = frozenset(self.space.set_of(mask))
        if frozenset(value.carrier) != expected:
            raise CarrierMismatch("assignment returned a preorder off its open set")
        with self._lock:
            self._memo[mask] = value
        return value

    def assign(self, open_set: Iterable[str]) -> Preorder:
        return self.assign_mask(self.space.mask_of(open_set))

    def rows_on(self, mask: int) -> tuple[int, ...]:
        return _embed_rows(self.assign_mask(mask), self.space)


class FuncPrecirculation(Precirculation):
    def __init__(self, space: FiniteSpace, fn: Callable[[int], Preorder]):
        super().__init__(space)
        self._fn = fn

    def _compute(self, mask: int) -> Preorder:
        return self._fn(mask)


class StoredPrecirculation(Precirculation):
    """Values stored on a generating family of opens; any other open answers
    with the monotone hull (closure of the union of stored graphs of stored
    opens inside the query).

    ``exact`` records whether the hull is known to reproduce the intended
    assignment everywhere, or is merely a lower approximation.
    """

    def __init__(
        self,
        space: FiniteSpace,
        stored: Mapping[frozenset[str], Preorder] | Mapping[tuple[str, ...], Preorder],
        exact: bool = True,
    ):
        super().__init__(space)
        self.exact = exact
        self._stored: dict[int, tuple[int, ...]] = {}
        for open_set, value in stored.items():
            mask = require_open_mask(space, space.mask_of(open_set))
            if frozenset(value.carrier) != frozenset(open_set):
                raise CarrierMismatch(f"stored value off its open {sorted(open_set)!r}")
            self._stored[mask] = _embed_rows(value, space)

    def _compute(self, mask: int) -> Preorder:
        rows = [0] * self.space.n
        for smask, srows in self._stored.items():
            if not smask & ~mask:
                for i in range(self.space.n):
                    rows[i] |= srows[i]
        return _extract_preorder(self.space, mask, _close_on_mask(self.space, mask, rows))


def chaotic_precirculation(space: FiniteSpace) -> Precirculation:
    """Full preorder on every open set; the top of the precirculation order."""

    def full(mask: int) -> Preorder:
        return Preorder.full(space.set_of(mask))

    return FuncPrecirculation(space, full)


@dataclass(frozen=True, eq=False)
class Circulation:
    """A circulation stored by its minimal-open values, one per point,
    saturated so that gen(x) is the join of the gens inside min_open(x)."""

    space: FiniteSpace
    gen: tuple[Preorder, ...]

    @cached_property
    def _gen_rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(_embed_rows(p, self.space) for p in self.gen)

    @cached_property
    def _memo(self) -> dict[int, tuple[int, ...]]:
        return {}

    @cached_property
    def _lock(self) -> threading.Lock:
        return threading.Lock()

    def gen_of(self, x: str) -> Preorder:
        return self.gen[self.space.index(x)]

    def value_rows(self, mask: int) -> tuple[int, ...]:
        require_open_mask(self.space, mask)
        with self._lock:
            hit = self._memo.get(mask)
        if hit is not None:
            return hit
        rows = [0] * self.space.n
        for i in iter_bits(mask):
            for k, row in enumerate(self._gen_rows[i]):
                rows[k] |= row
        out = _close_on_mask(self.space, mask, rows)
        with self._lock:
            self._memo[mask] = out
        return out

    def value_mask(self, mask: int) -> Preorder:
        return _extract_preorder(self.space, mask, self.value_rows(mask))

    def value(self, open_set: Iterable[str]) -> Preorder:
        return self.value_mask(self.space.mask_of(open_set))

    def underlying(self) -> Preorder:
        return self.value_mask((1 << self.space.n) - 1)

    def as_precirculation(self) -> Precirculation:
        return FuncPrecirculation(self.space, self.value_mask)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Circulation):
            return NotImplemented
        return self.space == other.space and self.gen == other.gen

    def __hash__(self) -> int:
        return hash((self.space, self.gen))

    def __repr__(self) -> str:
        table = {x: sorted(self.gen_of(x).pairs()) for x in self.space.points}
        return f"Circulation({table!r})"


@dataclass(frozen=True, eq=False)
class Stream:
    """A finite space together with a circulation on it."""

    space: FiniteSpace
    circ: Circulation

    def __post_init__(self):
        if self.circ.space != self.space:
            raise CarrierMismatch("circulation lives on a different space")

    def value(self, open_set: Iterable[str]) -> Preorder:
        return self.circ.value(open_set)

    def value_mask(self, mask: int) -> Preorder:
        return self.circ.value_mask(mask)

    def underlying(self) -> Preorder:
        return self.circ.underlying()

    def gen_of(self, x: str) -> Preorder:
        return self.circ.gen_of(x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Stream):
            return NotImplemented
        return self.space == other.space and self.circ == other.circ

    def __hash__(self) -> int:
        return hash((self.space, self.circ))

    def __repr__(self) -> str:
        return f"Stream({self.space!r}, {self.circ!r})"


def circulation_from_generators(
    space: FiniteSpace, gens: Mapping[str, Preorder]
) -> Circulation:
    """The circulation whose value on each open U is the closure of the union
    of the generator graphs over U's points. The stored family is the
    saturation of the input: each gen(x) is recomputed as the join, inside
    min_open(x), of the generators of min_open(x)'s points."""
    embedded = []
    for x in space.points:
        if x not in gens:
            raise MissingPoint(f"no generator for {x!r}")
        p = gens[x]
        if frozenset(p.carrier) != space.min_open(x):
            raise CarrierMismatch(f"generator for {x!r} is not on min_open({x!r})")
        embedded.append(_embed_rows(p, space))
    saturated = []
    for i in range(space.n):
        mo = space.min_open_rows[i]
        rows = [0] * space.n
        for j in iter_bits(mo):
            for k, row in enumerate(embedded[j]):
                rows[k] |= row
        saturated.append(
            _extract_preorder(space, mo, _close_on_mask(space, mo, rows))
        )
    return Circulation(space, tuple(saturated))


def stream_from_generators(space: FiniteSpace, gens: Mapping[str, Preorder]) -> Stream:
    return Stream(space, circulation_from_generators(space, gens))


def preorder_on_open(s: Stream, open_set: Iterable[str]) -> Preorder:
    """The stream's preorder on an open set; join of the generators over it."""
    return s.value(open_set)


def trivial_circulation(space: FiniteSpace) -> Circulation:
    gens = {x: Preorder.identity(space.min_open(x)) for x in space.points}
    return circulation_from_generators(space, gens)


def trivial_stream(space: FiniteSpace) -> Stream:
    return Stream(space, trivial_circulation(space))


def specialization_circulation(space: FiniteSpace) -> Circulation:
    """Restriction of the specialization preorder to each open set.

    The value derived on the whole space is asserted equal to the
    specialization preorder itself, not assumed."""
    spec = Preorder(space.points, space.min_open_rows)
    gens = {x: spec.restrict(space.min_open(x)) for x in space.points}
    circ = circulation_from_generators(space, gens)
    assert circ.underlying() == spec
    return circ


def connectivity_circulation(space: FiniteSpace) -> Circulation:
    """The circulation relating points that share a compact Hausdorff
    connected subspace. Finite Hausdorff subspaces are discrete, so the only
    connected ones are singletons and the value degenerates to the trivial
    circulation; kept as a named constructor so the degeneracy is explicit.
    """
    return trivial_circulation(space)


def join_circulations(circs: Sequence[Circulation]) -> Circulation:
    """Pointwise join of a non-empty family of circulations on one space."""
    if not circs:
        raise ValueError("join of circulations needs a non-empty family")
    space = circs[0].space
    for c in circs[1:]:
        if c.space != space:
            raise CarrierMismatch("circulations live on different spaces")
    gens = {
        x: join([c.gen_of(x) for c in circs]) for x in space.points
    }
    return circulation_from_generators(space, gens)


@dataclass(frozen=True)
class CosheafWitness:
    """A failing instance of the gluing condition: a collection of opens and
    a pair related on one side of the equation but not the other."""

    collection: tuple[tuple[str, ...], ...]
    x: str
    y: str


@dataclass(frozen=True)
class CirculationCheck:
    ok: bool
    witness: CosheafWitness | None = None


def _least_mismatch(
    space: FiniteSpace, lhs: Sequence[int], rhs: Sequence[int]
) -> tuple[str, str]:
    best = None
    for i in range(space.n):
        diff = lhs[i] ^ rhs[i]
        for j in iter_bits(diff):
            cand = (space.points[i], space.points[j])
            if best is None or cand < best:
                best = cand
    assert best is not None
    return best


def is_circulation(pc: Precirculation, mode: str = "fast") -> CirculationCheck:
    """Does the assignment satisfy the gluing condition?

    fast: for every open W, compare the assigned value with the join of the
    assigned values on the minimal opens of W's points (the minimal-open
    cover refines every cover, so this is equivalent to the full condition;
    the equivalence is itself property-tested).

    exhaustive: literally quantify over collections of nonempty opens, in a
    deterministic order (collections by size, then lexicographically by their
    sorted member point-tuples), and report the first failure with its
    lexicographically least mismatched pair. Collections containing the empty
    set are skipped: the empty member changes neither side.
    """
    space = pc.space
    if mode == "fast":
        minop_rows = [pc.rows_on(row) for row in space.min_open_rows]
        for wmask in all_opens(space):
            rows = [0] * space.n
            for i in iter_bits(wmask):
                for k, row in enumerate(minop_rows[i]):
                    rows[k] |= row
            expected = _close_on_mask(space, wmask, rows)
            actual = pc.rows_on(wmask)
            if tuple(actual) != expected:
                cover = sorted(
                    {tuple(sorted(space.min_open(space.points[i]))) for i in iter_bits(wmask)}
                )
                x, y = _least_mismatch(space, actual, expected)
                return CirculationCheck(False, CosheafWitness(tuple(cover), x, y))
        return CirculationCheck(True)
    if mode == "exhaustive":
        opens = [m for m in all_opens(space) if m]
        keys = {m: tuple(sorted(space.set_of(m))) for m in opens}
        opens.sort(key=lambda m: keys[m])
        member_rows = {m: pc.rows_on(m) for m in opens}
        closure_memo: dict[tuple[int, ...], tuple[int, ...]] = {}
        for size in range(1, len(opens) + 1):
            for combo in itertools.combinations(opens, size):
                union = 0
                rows = [0] * space.n
                for m in combo:
                    union |= m
                    for k, row in enumerate(member_rows[m]):
                        rows[k] |= row
                key = tuple(rows)
                joined = closure_memo.get(key)
                if joined is None:
                    joined = _close_on_mask(space, union, rows)
                    closure_memo[key] = joined
                actual = pc.rows_on(union)
                if tuple(actual) != joined:
                    x, y = _least_mismatch(space, actual, joined)
                    collection = tuple(keys[m] for m in combo)
                    return CirculationCheck(False, CosheafWitness(collection, x, y))
        return CirculationCheck(True)
    raise ValueError(f"unknown mode {mode!r}")


def check_monotone(pc: Precirculation) -> tuple[bool, tuple[str, str, str] | None]:
    """Graphs grow with the open set; witness is (open, x, y) naming the
    larger open whose value misses a pair from a smaller one."""
    opens = all_opens(pc.space)
    for small in opens:
        small_rows = pc.rows_on(small)
        for big in opens:
            if small & ~big:
                continue
            big_rows = pc.rows_on(big)
            for i in range(pc.space.n):
                extra = small_rows[i] & ~big_rows[i]
                if extra:
                    j = next(iter_bits(extra))
                    return False, (
                        ",".join(sorted(pc.space.set_of(big))),
                        pc.space.points[i],
                        pc.space.points[j],
                    )
    return True, None


def half_cosheaf_holds(pc: Precirculation, collection: Sequence[Iterable[str]]) -> bool:
    """Join of the values on the members sits inside the value on the union."""
    space = pc.space
    union = 0
    rows = [0] * space.n
    for open_set in collection:
        mask = space.mask_of(open_set)
        union |= mask
        for k, row in enumerate(pc.rows_on(mask)):
            rows[k] |= row
    joined = _close_on_mask(space, union, rows)
    big = pc.rows_on(union)
    return all(not joined[i] & ~big[i] for i in range(space.n))


def cosheafify(pc: Precirculation) -> Circulation:
    """The largest circulation pointwise below the precirculation.

    Only the minimal-open values of the input are consulted: the result's
    generators are exactly those values, then saturated. Any circulation
    below the input has each value below the corresponding join of
    minimal-open values, so this dominates them all; monotonicity of the
    input keeps the result below it."""
    space = pc.space
    gens = {x: pc.assign_mask(space.min_open_rows[space.index(x)]) for x in space.points}
    return circulation_from_generators(space, gens)


@lru_cache(maxsize=None)
def enumerate_circulations(space: FiniteSpace) -> tuple[Circulation, ...]:
    """Every circulation on a small space: all generator families, saturated,
    deduplicated. Intended for oracle use; guarded against blowup."""
    choices = [all_preorders(space.min_open(x)) for x in space.points]
    total = 1
    for c in choices:
        total *= len(c)
    if total > 2_000_000:
        raise ValueError("too many generator families to enumerate")
    seen = {}
    for combo in itertools.product(*choices):
        circ = circulation_from_generators(
            space, dict(zip(space.points, combo))
        )
        seen.setdefault(circ.gen, circ)
    return tuple(seen.values())


def cosheafify_by_enumeration(pc: Precirculation) -> Circulation:
    """Oracle for cosheafification: join of every circulation dominated by
    the precirculation on all opens."""
    space = pc.space
    opens = all_opens(space)
    bounds = {m: pc.rows_on(m) for m in opens}
    dominated = []
    for circ in enumerate_circulations(space):
        ok = True
        for m in opens:
            rows = circ.value_rows(m)
            bound = bounds[m]
            if any(rows[i] & ~bound[i] for i in range(space.n)):
                ok = False
                break
        if ok:
            dominated.append(circ)
    return join_circulations(dominated)


def pushforward(
    s: Stream,
    f: Mapping[str, str],
    target: FiniteSpace,
    check: bool | None = None,
) -> Circulation:
    """Transport along a continuous map: the value on an open U of the target
    is the closure of the image of the value on its preimage.

    The result is a circulation (its assignment is determined by the minimal
    opens); with ``check`` on, that determination is re-verified on every
    open of the target. ``check=None`` verifies whenever the target's open
    lattice is small enough to enumerate cheaply."""
    require_continuous(f, s.space, target)
    src = s.space
    fidx = {src.index(p): target.index(f[p]) for p in src.points}

    def pf_rows(umask: int) -> tuple[int, ...]:
        pre = 0
        for i in range(src.n):
            if umask >> fidx[i] & 1:
                pre |= 1 << i
        src_rows = s.circ.value_rows(pre)
        rows = [0] * target.n
        for i in iter_bits(pre):
            ti = fidx[i]
            for j in iter_bits(src_rows[i]):
                rows[ti] |= 1 << fidx[j]
        return _close_on_mask(target, umask, rows)

    gens = {
        y: _extract_preorder(
            target, target.min_open_rows[target.index(y)],
            pf_rows(target.min_open_rows[target.index(y)]),
        )
        for y in target.points
    }
    circ = circulation_from_generators(target, gens)
    if check is None:
        check = count_opens(target, _SELF_CHECK_OPEN_CAP) is not None
    if check:
        for umask in all_opens(target):
            assert circ.value_rows(umask) == pf_rows(umask)
    return circ


def pullback(
    source: Circulation | Stream | Precirculation,
    f: Mapping[str, str],
    src_space: FiniteSpace,
) -> Precirculation:
    """Transport against a continuous map: the value on an open U of the
    domain is cut out of the value on the smallest open of the codomain
    containing the image of U (which exists here, as the union of the image
    points' minimal opens). The result is a precirculation and in general
    not a circulation."""
    if isinstance(source, Stream):
        source = source.circ
    if isinstance(source, Circulation):
        target_space = source.space
        value_rows = source.value_rows
    else:
        target_space = source.space
        value_rows = source.rows_on
    require_continuous(f, src_space, target_space)
    fidx = {src_space.index(p): target_space.index(f[p]) for p in src_space.points}

    def compute(umask: int) -> Preorder:
        vmask = 0
        for i in iter_bits(umask):
            vmask |= target_space.min_open_rows[fidx[i]]
        vrows = value_rows(vmask)
        rows = [0] * src_space.n
        for a in iter_bits(umask):
            for b in iter_bits(umask):
                if vrows[fidx[a]] >> fidx[b] & 1:
                    rows[a] |= 1 << b
        return _extract_preorder(src_space, umask, tuple(rows))

    return FuncPrecirculation(src_space, compute)


def underlying_preorder(s: Stream) -> Preorder:
    """The value on the whole space: the global reachability preorder."""
    return s.underlying()


def substream_circulation(s: Stream, points: Iterable[str]) -> tuple[FiniteSpace, Circulation]:
    """Universal circulation on a subspace: cosheafify the pullback along
    the inclusion."""
    sub = subspace(s.space, points)
    inclusion = {p: p for p in sub.points}
    return sub, cosheafify(pullback(s.circ, inclusion, sub))


@dataclass(frozen=True)
class AlternatingChain:
    """A certificate for x related to y on a union of two opens: points
    x = p0, ..., pn = y with labels alternating between the opens, each step
    related in the labelled open's preorder."""

    points: tuple[str, ...]
    labels: tuple[str, ...]  # one of "U", "V" per step

    def __len__(self) -> int:
        return len(self.labels)


def alternating_witness(
    s: Stream, u: Iterable[str], v: Iterable[str], x: str, y: str
) -> AlternatingChain:
    """A minimal-length alternating chain certifying x <= y on the union of
    two opens. Raises NotRelated when the union's preorder does not relate
    the pair."""
    space = s.space
    umask = require_open_mask(space, space.mask_of(u))
    vmask = require_open_mask(space, space.mask_of(v))
    both = umask | vmask
    union_value = s.value_mask(both)
    if x not in union_value or y not in union_value:
        raise UnknownPoint(f"{x!r} or {y!r} outside the union")
    if not union_value.has(x, y):
        raise NotRelated(f"{x!r} is not below {y!r} on the union")
    if x == y:
        return AlternatingChain((x,), ())
    pu = s.value_mask(umask)
    pv = s.value_mask(vmask)
    start = (x, "")
    parents: dict[tuple[str, str], tuple[str, str] | None] = {start: None}
    frontier = [start]
    while frontier:
        nxt = []
        for point, last in frontier:
            for label, value in (("U", pu), ("V", pv)):
                if label == last or point not in value:
                    continue
                for q in value.image_set(point):
                    if q == point:
                        continue
                    state = (q, label)
                    if state in parents:
                        continue
                    parents[state] = (point, last)
                    if q == y:
                        chain_points = [q]
                        chain_labels = [label]
                        cur = (point, last)
                        while parents[cur] is not None:
                            chain_points.append(cur[0])
                            chain_labels.append(cur[1])
                            cur = parents[cur]
                        chain_points.append(cur[0])
                        chain_points.reverse()
                        chain_labels.reverse()
                        return AlternatingChain(tuple(chain_points), tuple(chain_labels))
                    nxt.append(state)
        frontier = nxt
    raise AssertionError("related pair admits no alternating chain")


def validate_alternating_witness(
    s: Stream, u: Iterable[str], v: Iterable[str], x: str, y: str, chain: AlternatingChain
) -> bool:
    """Re-check every step of a chain against the two opens' preorders."""
    if chain.points[0] != x or chain.points[-1] != y:
        return False
    if len(chain.points) != len(chain.labels) + 1:
        return False
    for a, b in zip(chain.labels, chain.labels[1:]):
        if a == b:
            return False
    pu = s.value(u)
    pv = s.value(v)
    for k, label in enumerate(chain.labels):
        value = pu if label == "U" else pv
        a, b = chain.points[k], chain.points[k + 1]
        if a not in value or b not in value or not value.has(a, b):
            return False
    return True


def chain_witness(
    s: Stream, open_set: Iterable[str], x: str, y: str
) -> list[tuple[str, str, str]]:
    """A minimal chain of generator steps certifying x <= y on an open set:
    each step (a, z, b) is related inside min_open(z) for some z in the set.
    This is the gluing decomposition for the canonical minimal-open cover."""
    space = s.space
    mask = require_open_mask(space, space.mask_of(open_set))
    value = s.value_mask(mask)
    if x not in value or y not in value:
        raise UnknownPoint(f"{x!r} or {y!r} outside the open set")
    if not value.has(x, y):
        raise NotRelated(f"{x!r} is not below {y!r} on the open set")
    if x == y:
        return []
    steps: dict[str, list[tuple[str, str]]] = {p: [] for p in value.carrier}
    for i in iter_bits(mask):
        z = space.points[i]
        g = s.gen_of(z)
        for a, b in g.pairs():
            if a != b:
                steps[a].append((z, b))
    parents: dict[str, tuple[str, str] | None] = {x: None}
    frontier = [x]
    while frontier:
        nxt = []
        for a in frontier:
            for z, b in steps[a]:
                if b in parents:
                    continue
                parents[b] = (a, z)
                if b == y:
                    out = []
                    cur = b
                    while parents[cur] is not None:
                        prev, via = parents[cur]
                        out.append((prev, via, cur))
                        cur = prev
                    out.reverse()
                    return out
                nxt.append(b)
        frontier = nxt
    raise AssertionError("related pair admits no generator chain")


def check_connected_intervals(s: Stream) -> tuple[bool, tuple[str, str] | None]:
    """Closures of bounded intervals of the underlying preorder are
    connected; the empty interval passes vacuously. Holds for every stream,
    so a failure indicates an implementation bug."""
    under = s.underlying()
    for x in s.space.points:
        for y in s.space.points:
            interval = bounded_interval(under, x, y)
            if not interval:
                continue
            closed = closure_mask(s.space, s.space.mask_of(interval))
            if not is_connected(s.space, s.space.set_of(closed)):
                return False, (x, y)
    return True, None


def check_convex_restriction(s: Stream, points: Iterable[str]) -> bool:
    """For a convex subset A of the underlying preorder, the restriction of
    the value on any open neighborhood of A's closure equals the restriction
    of the underlying preorder."""
    subset = frozenset(points)
    under = s.underlying()
    if not is_convex(under, subset):
        raise NotConvex(f"{sorted(subset)!r} is not convex in the underlying preorder")
    target = under.restrict(subset)
    closed = closure_mask(s.space, s.space.mask_of(subset))
    for umask in open_supersets(s.space, closed):
        if s.value_mask(umask).restrict(subset) != target:
            return False
    return True


def check_pseudo_circulation(s: Stream, family: Sequence[Iterable[str]]) -> bool:
    """Gluing over a family of (not necessarily open) subsets, each a
    neighborhood of every point of the union it contains: the value on the
    union equals the join of the substream values and the join of the plain
    restrictions."""
    space = s.space
    sets = [frozenset(a) for a in family]
    union: set[str] = set()
    for a in sets:
        union.update(a)
    for p in union:
        if not any(p in interior(space, a) for a in sets):
            raise NeighborhoodConditionFailed(f"no member is a neighborhood of {p!r}")
    carrier = sorted(union)
    big = s.value(carrier)
    via_substreams = join(
        [substream_circulation(s, a)[1].underlying() for a in sets], carrier=carrier
    )
    via_restrictions = join([big.restrict(a) for a in sets], carrier=carrier)
    return big == via_substreams == via_restrictions


def check_convex_cover_identity(s: Stream, open_set: Iterable[str]) -> tuple[bool, bool | None]:
    """Probe for recovering a local value from global data: when every point
    of the open set has a convex neighborhood whose closure stays inside the
    set, the value on the set equals the join of the underlying preorder
    restricted to the convex subsets with closure inside the set.

    Returns (hypothesis_holds, identity_holds_or_None)."""
    space = s.space
    mask = require_open_mask(space, space.mask_of(open_set))
    under = s.underlying()
    eligible = [
        p
        for p in space.set_of(mask)
        if not closure_mask(space, space.mask_of([p])) & ~mask
    ]
    candidates = []
    for r in range(len(eligible) + 1):
        for combo in itertools.combinations(sorted(eligible), r):
            subset = frozenset(combo)
            if closure_mask(space, space.mask_of(subset)) & ~mask:
                continue
            if is_convex(under, subset):
                candidates.append(subset)
    covered = set()
    for a in candidates:
        covered.update(interior(space, a))
    if covered != space.set_of(mask):
        return False, None
    carrier = sorted(space.set_of(mask))
    rhs = join([under.restrict(a) for a in candidates], carrier=carrier)
    return True, s.value_mask(mask) == rhs


def check_antisymmetric_convexity(s: Stream) -> tuple[bool, bool]:
    """When the space is T0 and every minimal open is convex in the
    underlying preorder (so each point has a local base of convex
    neighborhoods), the underlying preorder must be antisymmetric.

    Returns (hypothesis_holds, underlying_antisymmetric)."""
    space = s.space
    under = s.underlying()
    t0 = Preorder(space.points, space.min_open_rows).is_antisymmetric()
    convex_base = all(is_convex(under, space.min_open(x)) for x in space.points)
    return t0 and convex_base, under.is_antisymmetric()
