"""Relations and preorders on finite named carriers.

A relation keeps its carrier as a sorted tuple of point names and its graph
as one successor bitmask per carrier index, so equality is bit-exact and
serialization order is canonical. Values are immutable and shareable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from ._kernels import closure_rows
from .errors import InvalidPreorder, UnknownPoint


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def tuple_point(*parts: str) -> str:
    """Canonical name of a product point, e.g. tuple_point("a", "b") == "(a,b)"."""
    return "(" + ",".join(parts) + ")"


@dataclass(frozen=True, eq=False)
class Relation:
    """A binary relation: sorted carrier plus one successor bitmask per point.

    Direct construction trusts its arguments; use :meth:`build` to
    canonicalize and validate raw data.
    """

    carrier: tuple[str, ...]
    rows: tuple[int, ...]

    @classmethod
    def build(cls, points: Iterable[str], pairs: Iterable[tuple[str, str]]) -> "Relation":
        carrier = tuple(sorted(set(points)))
        index = {p: i for i, p in enumerate(carrier)}
        rows = [0] * len(carrier)
        for x, y in pairs:
            if x not in index:
                raise UnknownPoint(f"pair ({x!r}, {y!r}): {x!r} not in carrier")
            if y not in index:
                raise UnknownPoint(f"pair ({x!r}, {y!r}): {y!r} not in carrier")
            rows[index[x]] |= 1 << index[y]
        return cls(carrier, tuple(rows))

    @cached_property
    def _index(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.carrier)}

    @property
    def n(self) -> int:
        return len(self.carrier)

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownPoint(f"{x!r} not in carrier") from None

    def __contains__(self, x: str) -> bool:
        return x in self._index

    def has(self, x: str, y: str) -> bool:
        return bool(self.rows[self.index(x)] >> self.index(y) & 1)

    def pairs(self) -> tuple[tuple[str, str], ...]:
        """The graph as a sorted pair list."""
        return tuple(
            (x, self.carrier[j])
            for i, x in enumerate(self.carrier)
            for j in iter_bits(self.rows[i])
        )

    def image_set(self, x: str) -> frozenset[str]:
        """All y with x related to y."""
        return frozenset(self.carrier[j] for j in iter_bits(self.rows[self.index(x)]))

    def preimage_set(self, y: str) -> frozenset[str]:
        j = self.index(y)
        return frozenset(x for i, x in enumerate(self.carrier) if self.rows[i] >> j & 1)

    def mask_of(self, points: Iterable[str]) -> int:
        mask = 0
        for p in points:
            mask |= 1 << self.index(p)
        return mask

    def set_of(self, mask: int) -> frozenset[str]:
        return frozenset(self.carrier[i] for i in iter_bits(mask))

    def restrict(self, subset: Iterable[str]) -> "Relation":
        """The relation induced on a sub-carrier: graph intersected with A x A."""
        sub = tuple(sorted(set(subset)))
        old = [self.index(p) for p in sub]
        rows = []
        for i in old:
            row = self.rows[i]
            rows.append(sum((row >> j & 1) << k for k, j in enumerate(old)))
        return type(self)(sub, tuple(rows))

    def inverse(self) -> "Relation":
        rows = [0] * self.n
        for i, row in enumerate(self.rows):
            for j in iter_bits(row):
                rows[j] |= 1 << i
        return type(self)(self.carrier, tuple(rows))

    def is_reflexive(self) -> bool:
        return all(row >> i & 1 for i, row in enumerate(self.rows))

    def is_transitive(self) -> bool:
        for i in range(self.n):
            reach = 0
            for j in iter_bits(self.rows[i]):
                reach |= self.rows[j]
            if reach & ~self.rows[i]:
                return False
        return True

    def is_antisymmetric(self) -> bool:
        for i in range(self.n):
            for j in iter_bits(self.rows[i]):
                if j != i and self.rows[j] >> i & 1:
                    return False
        return True

    def graph_size(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return self.carrier == other.carrier and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.carrier, self.rows))

    def __repr__(self) -> str:
        kind = type(self).__name__
        return f"{kind}({list(self.carrier)!r}, {sorted(self.pairs())!r})"


class Preorder(Relation):
    """A reflexive, transitive relation. Construction does not re-verify;
    :meth:`build` does."""

    @classmethod
    def build(cls, points: Iterable[str], pairs: Iterable[tuple[str, str]]) -> "Preorder":
        raw = Relation.build(points, pairs)
        if not raw.is_reflexive():
            raise InvalidPreorder("relation is not reflexive")
        if not raw.is_transitive():
            raise InvalidPreorder("relation is not transitive")
        return cls(raw.carrier, raw.rows)

    @classmethod
    def identity(cls, points: Iterable[str]) -> "Preorder":
        carrier = tuple(sorted(set(points)))
        return cls(carrier, tuple(1 << i for i in range(len(carrier))))

    @classmethod
    def full(cls, points: Iterable[str]) -> "Preorder":
        carrier = tuple(sorted(set(points)))
        all_bits = (1 << len(carrier)) - 1
        return cls(carrier, tuple(all_bits for _ in carrier))


def transitive_reflexive_closure(r: Relation) -> Preorder:
    """The preorder on r's carrier with the smallest graph containing r's."""
    return Preorder(r.carrier, closure_rows(r.rows, r.n))


def join(preorders: Sequence[Preorder], carrier: Iterable[str] | None = None) -> Preorder:
    """Closure of the union: carrier is the union of carriers (plus any extra
    points supplied), graph is the closure of the union of graphs.

    An empty family is allowed only with an explicit carrier and yields the
    identity preorder on it.
    """
    points: set[str] = set(carrier) if carrier is not None else set()
    if not preorders and carrier is None:
        raise ValueError("empty join requires an explicit carrier")
    for p in preorders:
        points.update(p.carrier)
    out = tuple(sorted(points))
    index = {x: i for i, x in enumerate(out)}
    rows = [0] * len(out)
    for p in preorders:
        for i, x in enumerate(p.carrier):
            merged = 0
            for j in iter_bits(p.rows[i]):
                merged |= 1 << index[p.carrier[j]]
            rows[index[x]] |= merged
    return Preorder(out, closure_rows(rows, len(out)))


def product(factors: Sequence[Relation]) -> Relation:
    """Componentwise relation on the Cartesian product of the carriers.

    Product points are named with :func:`tuple_point`. A product of preorders
    is returned as a Preorder.
    """
    tuples = sorted(
        itertools.product(*(f.carrier for f in factors)),
        key=lambda t: tuple_point(*t),
    )
    carrier = tuple(tuple_point(*t) for t in tuples)
    indices = [tuple(f.index(x) for f, x in zip(factors, t)) for t in tuples]
    rows = []
    for src in indices:
        row = 0
        for k, dst in enumerate(indices):
            if all(f.rows[i] >> j & 1 for f, i, j in zip(factors, src, dst)):
                row |= 1 << k
        rows.append(row)
    cls = Preorder if all(isinstance(f, Preorder) for f in factors) else Relation
    return cls(carrier, tuple(rows))


def bounded_interval(p: Preorder, x: str, y: str) -> frozenset[str]:
    """All z with x <= z and z <= y."""
    up = p.rows[p.index(x)]
    j = p.index(y)
    down = 0
    for i in range(p.n):
        if p.rows[i] >> j & 1:
            down |= 1 << i
    return p.set_of(up & down)


@lru_cache(maxsize=None)
def _all_preorder_rows(n: int) -> tuple[tuple[int, ...], ...]:
    if n > 4:
        raise ValueError("preorder enumeration is limited to 4 points")
    diag = [1 << i for i in range(n)]
    slots = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = []
    for choice in range(1 << len(slots)):
        rows = list(diag)
        for k, (i, j) in enumerate(slots):
            if choice >> k & 1:
                rows[i] |= 1 << j
        ok = True
        for i in range(n):
            reach = 0
            for j in iter_bits(rows[i]):
                reach |= rows[j]
            if reach & ~rows[i]:
                ok = False
                break
        if ok:
            out.append(tuple(rows))
    return tuple(out)


def all_preorders(points: Iterable[str]) -> list[Preorder]:
    """Every preorder on a small carrier (at most 4 points)."""
    carrier = tuple(sorted(set(points)))
    return [Preorder(carrier, rows) for rows in _all_preorder_rows(len(carrier))]


def is_convex(p: Preorder, points: Iterable[str]) -> bool:
    """True iff x <= y <= z with x, z in the set forces y into the set."""
    mask = p.mask_of(points)
    up = 0
    for i in iter_bits(mask):
        up |= p.rows[i]
    down = 0
    for i in range(p.n):
        if p.rows[i] & mask:
            down |= 1 << i
    return not (up & down & ~mask)
