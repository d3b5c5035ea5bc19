"""Finite topological spaces with an explicit lattice of open sets.

Points are the integers ``0..n-1`` and subsets of points are int bitmasks,
so a whole topology on at most a handful of points fits in a tuple of
masks and every structural question is answered by a direct scan.

Opens are kept in a canonical order (by size, then lexicographically by
their sorted member lists); the position of an open in that order is its
``OpenId`` and stays stable for the lifetime of the space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

OpenId = int


class TopologyError(ValueError):
    """A family of subsets failed to be a topology."""


class MissingEmptyOrTotal(TopologyError):
    pass


class DuplicateOpen(TopologyError):
    def __init__(self, subset: tuple[int, ...]):
        self.subset = subset
        super().__init__(f"open {set(subset) if subset else 'set()'} listed more than once")


class NotClosedUnderUnion(TopologyError):
    def __init__(self, a: tuple[int, ...], b: tuple[int, ...]):
        self.witness = (a, b)
        super().__init__(f"union of opens {set(a) or set()} and {set(b) or set()} is not an open")


class NotClosedUnderIntersection(TopologyError):
    def __init__(self, a: tuple[int, ...], b: tuple[int, ...]):
        self.witness = (a, b)
        super().__init__(
            f"intersection of opens {set(a) or set()} and {set(b) or set()} is not an open"
        )


class PointNotInOpen(ValueError):
    pass


def mask_of(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def members(mask: int) -> tuple[int, ...]:
    """The points of a bitmask, ascending."""
    return tuple(iter_bits(mask))


def subset_key(mask: int) -> tuple[int, tuple[int, ...]]:
    return (mask.bit_count(), members(mask))


@dataclass(frozen=True)
class FiniteSpace:
    """A validated finite topology: use :func:`validate_topology` to build one."""

    n: int
    opens: tuple[int, ...]  # canonical order: (size, lexicographic)
    _index: dict[int, int] = field(repr=False, compare=False)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def empty_id(self) -> OpenId:
        return 0

    @property
    def full_id(self) -> OpenId:
        return len(self.opens) - 1

    def mask(self, v: OpenId) -> int:
        return self.opens[v]

    def id_of(self, mask: int) -> OpenId:
        return self._index[mask]

    def is_open(self, mask: int) -> bool:
        return mask in self._index

    def open_ids(self) -> range:
        return range(len(self.opens))

    def closed_masks(self) -> list[int]:
        """Complements of opens, in open-id order."""
        full = self.full_mask
        return [full & ~m for m in self.opens]

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        shown = ", ".join(str(set(members(m)) or "{}") for m in self.opens)
        return f"FiniteSpace(n={self.n}, opens=[{shown}])"


def validate_topology(points: Iterable[int], candidate_opens: Iterable[Iterable[int]]) -> FiniteSpace:
    """Check that ``candidate_opens`` is a topology on ``points`` and build the space.

    Raises :class:`MissingEmptyOrTotal`, :class:`DuplicateOpen`,
    :class:`NotClosedUnderUnion` or :class:`NotClosedUnderIntersection` with a
    witness; for finite families, closure under pairwise union already gives
    closure under arbitrary unions.
    """
    pts = sorted(points)
    n = len(pts)
    if pts != list(range(n)):
        raise ValueError(f"points must be 0..n-1, got {pts}")
    full = (1 << n) - 1

    masks: list[int] = []
    seen: set[int] = set()
    for subset in candidate_opens:
        m = mask_of(subset)
        if m & ~full:
            raise ValueError(f"open {set(subset)} contains points outside 0..{n - 1}")
        if m in seen:
            raise DuplicateOpen(members(m))
        seen.add(m)
        masks.append(m)

    if 0 not in seen or full not in seen:
        raise MissingEmptyOrTotal("topology must contain the empty set and the full point set")

    for a in masks:
        for b in masks:
            if a < b:
                if (a | b) not in seen:
                    raise NotClosedUnderUnion(members(a), members(b))
                if (a & b) not in seen:
                    raise NotClosedUnderIntersection(members(a), members(b))

    ordered = tuple(sorted(masks, key=subset_key))
    index = {m: i for i, m in enumerate(ordered)}
    return FiniteSpace(n, ordered, index)


def open_sublattice(space: FiniteSpace, v: OpenId) -> list[OpenId]:
    """All opens contained in ``v`` (including the empty open and ``v``), by id."""
    vm = space.mask(v)
    return [w for w, wm in enumerate(space.opens) if wm & ~vm == 0]


def neighborhood_filter(space: FiniteSpace, x: int, v: OpenId) -> frozenset[OpenId]:
    """The opens ``W`` with ``x in W`` and ``W`` contained in ``v``."""
    vm = space.mask(v)
    if not (vm >> x) & 1:
        raise PointNotInOpen(f"point {x} not in open {set(members(vm)) or set()}")
    bit = 1 << x
    return frozenset(w for w, wm in enumerate(space.opens) if wm & bit and wm & ~vm == 0)


def point_closure(space: FiniteSpace, b: int) -> int:
    """Smallest closed set containing ``b``: the points whose every neighborhood meets ``b``."""
    bbit = 1 << b
    out = 0
    for y in range(space.n):
        ybit = 1 << y
        if all(m & bbit for m in space.opens if m & ybit):
            out |= ybit
    return out


def is_T0(space: FiniteSpace) -> bool:
    """Distinct points have distinct neighborhood filters."""
    profiles = []
    for x in range(space.n):
        bit = 1 << x
        profiles.append(tuple(bool(m & bit) for m in space.opens))
    return len(set(profiles)) == space.n


def is_T1(space: FiniteSpace) -> bool:
    """Every singleton is closed."""
    full = space.full_mask
    return all(space.is_open(full & ~(1 << b)) for b in range(space.n))


def is_discrete(space: FiniteSpace) -> bool:
    return len(space.opens) == 1 << space.n
