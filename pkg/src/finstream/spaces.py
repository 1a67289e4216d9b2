"""Finite topological spaces in minimal-open-neighborhood form.

A finite space is stored as a sorted point tuple plus, for each point, the
bitmask of its smallest open neighborhood. A set is open exactly when it
contains the minimal open of each of its members; arbitrary intersections of
opens are then open, and the whole open lattice is the lattice of up-sets of
the specialization preorder (x below y iff y lies in every neighborhood of x).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import (
    InvalidPartition,
    MissingPoint,
    NotContinuous,
    NotMinimal,
    NotOpen,
    UnknownPoint,
)
from .relations import Preorder, iter_bits, tuple_point


@dataclass(frozen=True, eq=False)
class FiniteSpace:
    points: tuple[str, ...]
    min_open_rows: tuple[int, ...]

    @cached_property
    def _index(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.points)}

    @property
    def n(self) -> int:
        return len(self.points)

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownPoint(f"{x!r} not a point of the space") from None

    def __contains__(self, x: str) -> bool:
        return x in self._index

    def mask_of(self, points: Iterable[str]) -> int:
        mask = 0
        for p in points:
            mask |= 1 << self.index(p)
        return mask

    def set_of(self, mask: int) -> frozenset[str]:
        return frozenset(self.points[i] for i in iter_bits(mask))

    def min_open(self, x: str) -> frozenset[str]:
        return self.set_of(self.min_open_rows[self.index(x)])

    def min_open_table(self) -> dict[str, frozenset[str]]:
        return {p: self.min_open(p) for p in self.points}

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteSpace):
            return NotImplemented
        return self.points == other.points and self.min_open_rows == other.min_open_rows

    def __hash__(self) -> int:
        return hash((self.points, self.min_open_rows))

    def __repr__(self) -> str:
        table = {p: sorted(self.min_open(p)) for p in self.points}
        return f"FiniteSpace({table!r})"


def space_from_min_opens(
    points: Iterable[str], min_open: Mapping[str, Iterable[str]]
) -> FiniteSpace:
    """Validated construction from a point set and minimal-open table.

    Rejects tables missing a point, containing unknown names, omitting the
    point from its own neighborhood, or breaking the nesting rule that
    y in min_open(x) forces min_open(y) inside min_open(x).
    """
    pts = tuple(sorted(set(points)))
    index = {p: i for i, p in enumerate(pts)}
    rows = []
    for p in pts:
        if p not in min_open:
            raise MissingPoint(f"min_open table misses {p!r}")
        mask = 0
        for q in min_open[p]:
            if q not in index:
                raise UnknownPoint(f"min_open({p!r}) contains unknown point {q!r}")
            mask |= 1 << index[q]
        rows.append(mask)
    for q in min_open:
        if q not in index:
            raise UnknownPoint(f"min_open table keys unknown point {q!r}")
    for i, p in enumerate(pts):
        if not rows[i] >> i & 1:
            raise NotMinimal(f"{p!r} not in its own minimal open", pair=(p, p))
        for j in iter_bits(rows[i]):
            if rows[j] & ~rows[i]:
                raise NotMinimal(
                    f"min_open({pts[j]!r}) not inside min_open({p!r})",
                    pair=(p, pts[j]),
                )
    return FiniteSpace(pts, tuple(rows))


def is_open(space: FiniteSpace, subset: Iterable[str]) -> bool:
    mask = space.mask_of(subset)
    return is_open_mask(space, mask)


def is_open_mask(space: FiniteSpace, mask: int) -> bool:
    for i in iter_bits(mask):
        if space.min_open_rows[i] & ~mask:
            return False
    return True


def require_open_mask(space: FiniteSpace, mask: int) -> int:
    if not is_open_mask(space, mask):
        raise NotOpen(f"{sorted(space.set_of(mask))!r} is not open")
    return mask


def interior(space: FiniteSpace, subset: Iterable[str]) -> frozenset[str]:
    mask = space.mask_of(subset)
    out = 0
    for i in iter_bits(mask):
        if not space.min_open_rows[i] & ~mask:
            out |= 1 << i
    return space.set_of(out)


def closure_set(space: FiniteSpace, subset: Iterable[str]) -> frozenset[str]:
    mask = space.mask_of(subset)
    return space.set_of(closure_mask(space, mask))


def closure_mask(space: FiniteSpace, mask: int) -> int:
    out = 0
    for i in range(space.n):
        if space.min_open_rows[i] & mask:
            out |= 1 << i
    return out


def specialization_preorder(space: FiniteSpace) -> Preorder:
    """x <= y iff y lies in min_open(x); the rows are the minimal opens."""
    return Preorder(space.points, space.min_open_rows)


def is_continuous(f: Mapping[str, str], src: FiniteSpace, dst: FiniteSpace) -> bool:
    """Preimages of opens are open; equivalently the map is monotone for the
    specialization preorders. Both criteria are computed and must agree."""
    for p in src.points:
        if p not in f:
            raise MissingPoint(f"map undefined on {p!r}")
        if f[p] not in dst:
            raise UnknownPoint(f"map sends {p!r} outside the target space")
    by_preimages = True
    for q in dst.points:
        target = dst.min_open_rows[dst.index(q)]
        pre = 0
        for i, p in enumerate(src.points):
            if target >> dst.index(f[p]) & 1:
                pre |= 1 << i
        if not is_open_mask(src, pre):
            by_preimages = False
            break
    by_monotonicity = True
    for i, p in enumerate(src.points):
        fi = dst.index(f[p])
        for j in iter_bits(src.min_open_rows[i]):
            if not dst.min_open_rows[fi] >> dst.index(f[src.points[j]]) & 1:
                by_monotonicity = False
                break
        if not by_monotonicity:
            break
    assert by_preimages == by_monotonicity
    return by_preimages


def require_continuous(f: Mapping[str, str], src: FiniteSpace, dst: FiniteSpace) -> None:
    if not is_continuous(f, src, dst):
        raise NotContinuous("map is not continuous")


def is_connected(space: FiniteSpace, subset: Iterable[str] | None = None) -> bool:
    """Connectivity of the subspace, via reachability in the comparability
    graph of the specialization preorder restricted to the subset. The empty
    subspace counts as connected here."""
    mask = (
        (1 << space.n) - 1 if subset is None else space.mask_of(subset)
    )
    if not mask:
        return True
    undirected = {}
    for i in iter_bits(mask):
        nbrs = space.min_open_rows[i] & mask
        undirected[i] = nbrs
    for i in list(undirected):
        for j in iter_bits(undirected[i]):
            undirected[j] |= 1 << i
    start = next(iter_bits(mask))
    seen = 1 << start
    frontier = [start]
    while frontier:
        i = frontier.pop()
        for j in iter_bits(undirected[i] & ~seen):
            seen |= 1 << j
            frontier.append(j)
    return seen == mask


def subspace(space: FiniteSpace, subset: Iterable[str]) -> FiniteSpace:
    """Subspace topology; the minimal open of a point a is A intersected with
    its ambient minimal open, which is already minimal in the subspace."""
    sub = tuple(sorted(set(subset)))
    mask = space.mask_of(sub)
    rows = []
    for p in sub:
        rows.append(_remap_mask(space.min_open_rows[space.index(p)] & mask, space, sub))
    return FiniteSpace(sub, tuple(rows))


def _remap_mask(mask: int, space: FiniteSpace, sub: Sequence[str]) -> int:
    out = 0
    for k, p in enumerate(sub):
        if mask >> space.index(p) & 1:
            out |= 1 << k
    return out


def product_space(left: FiniteSpace, right: FiniteSpace) -> FiniteSpace:
    """Product topology: min_open((x,y)) = min_open(x) x min_open(y)."""
    pairs = {
        tuple_point(x, y): (x, y) for x in left.points for y in right.points
    }
    pts = tuple(sorted(pairs))
    index = {p: i for i, p in enumerate(pts)}
    rows = []
    for p in pts:
        x, y = pairs[p]
        mask = 0
        for a in left.min_open(x):
            for b in right.min_open(y):
                mask |= 1 << index[tuple_point(a, b)]
        rows.append(mask)
    return FiniteSpace(pts, tuple(rows))


def product_projections(
    left: FiniteSpace, right: FiniteSpace
) -> tuple[dict[str, str], dict[str, str]]:
    """Point maps of the two projections out of product_space(left, right)."""
    first = {}
    second = {}
    for x in left.points:
        for y in right.points:
            name = tuple_point(x, y)
            first[name] = x
            second[name] = y
    return first, second


def coproduct_space(
    family: Sequence[FiniteSpace], tags: Sequence[str] | None = None
) -> tuple[FiniteSpace, list[dict[str, str]]]:
    """Disjoint union with tagged points; returns the space and the point
    maps of the inclusions. A single summand keeps its own names, so
    one-object colimits return the object itself."""
    if tags is None:
        tags = [str(i) for i in range(len(family))]
    if len(tags) != len(family) or len(set(tags)) != len(tags):
        raise ValueError("tags must be distinct and match the family")
    if len(family) == 1:
        return family[0], [{p: p for p in family[0].points}]
    table: dict[str, set[str]] = {}
    inclusions = []
    for tag, space in zip(tags, family):
        inc = {p: f"{tag}:{p}" for p in space.points}
        inclusions.append(inc)
        for p in space.points:
            table[inc[p]] = {inc[q] for q in space.min_open(p)}
    return space_from_min_opens(table.keys(), table), inclusions


def quotient_space(
    space: FiniteSpace, partition: Iterable[Iterable[str]]
) -> tuple[FiniteSpace, dict[str, str]]:
    """Quotient topology for a partition of the points.

    Classes are named by their sorted first element. A set of classes is open
    iff its preimage is open; the minimal open of a class is computed as the
    smallest saturated open containing it (alternate closing under minimal
    opens and under saturation until stable).
    """
    classes = [tuple(sorted(set(c))) for c in partition]
    if any(not c for c in classes):
        raise InvalidPartition("empty class")
    seen: dict[str, str] = {}
    for c in classes:
        for p in c:
            if p not in space:
                raise UnknownPoint(f"partition names unknown point {p!r}")
            if p in seen:
                raise InvalidPartition(f"{p!r} occurs in more than one class")
            seen[p] = c[0]
    if len(seen) != space.n:
        missing = sorted(set(space.points) - set(seen))
        raise InvalidPartition(f"partition misses points {missing!r}")
    class_mask = {c[0]: space.mask_of(c) for c in classes}
    projection = {p: seen[p] for p in space.points}

    def saturate_open(mask: int) -> int:
        while True:
            grown = mask
            for i in iter_bits(mask):
                grown |= space.min_open_rows[i]
            for name, cmask in class_mask.items():
                if grown & cmask:
                    grown |= cmask
            if grown == mask:
                return mask
            mask = grown

    table = {}
    for name, cmask in class_mask.items():
        sat = saturate_open(cmask)
        table[name] = {projection[p] for p in space.set_of(sat)}
    return space_from_min_opens(table.keys(), table), projection


@lru_cache(maxsize=4096)
def all_opens(space: FiniteSpace, cap: int | None = None) -> tuple[int, ...]:
    """Every open set as a bitmask, ascending; optionally capped (raises
    ValueError beyond the cap). The opens are the up-sets of specialization,
    i.e. the unions of minimal opens, discovered one extension at a time."""
    opens = {0}
    frontier = [0]
    while frontier:
        mask = frontier.pop()
        for row in space.min_open_rows:
            u = mask | row
            if u not in opens:
                opens.add(u)
                frontier.append(u)
                if cap is not None and len(opens) > cap:
                    raise ValueError(f"open lattice exceeds cap {cap}")
    return tuple(sorted(opens))


def open_supersets(space: FiniteSpace, subset_mask: int) -> list[int]:
    """All opens containing the given set."""
    core = subset_mask
    for i in iter_bits(subset_mask):
        core |= space.min_open_rows[i]
    rest = [p for p in space.points if not core >> space.index(p) & 1]
    side = subspace(space, rest)
    out = []
    for mask in all_opens(side):
        lifted = core
        for k in iter_bits(mask):
            lifted |= 1 << space.index(side.points[k])
        out.append(lifted)
    return sorted(set(out))


@lru_cache(maxsize=4096)
def count_opens(space: FiniteSpace, cap: int) -> int | None:
    """Number of opens, or None when it exceeds the cap."""
    try:
        return len(all_opens(space, cap=cap))
    except ValueError:
        return None


def empty_space() -> FiniteSpace:
    return FiniteSpace((), ())


def point_space(name: str = "pt") -> FiniteSpace:
    return FiniteSpace((name,), (1,))
