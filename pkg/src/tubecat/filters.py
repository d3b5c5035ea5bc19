"""Completely prime filters of open sublattices and the sobriety decision.

A filter here always lives in the sublattice ``O(V)`` of opens contained in
some open ``V``.  On a finite lattice every join is finite, so "completely
prime" reduces to the empty-family case (the empty open is not a member)
plus binary primality; that reduction is itself asserted against the
unrestricted definition in the test suite.

The filter cosheaf assigns to each open the completely prime filters of its
sublattice, with extension maps that transport a filter on ``W`` to the
opens of ``V`` whose trace on ``W`` belongs to it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .space import FiniteSpace, OpenId, neighborhood_filter, open_sublattice


class OpenNotInFilter(ValueError):
    pass


class NotSubOpen(ValueError):
    pass


@dataclass(frozen=True)
class CPFilter:
    """A completely prime filter in the open sublattice of ``ambient``."""

    ambient: OpenId
    members: frozenset[OpenId]

    def member_masks(self, space: FiniteSpace) -> tuple[int, ...]:
        """Sorted member bitmasks; the canonical sort key for filters."""
        return tuple(sorted(space.opens[w] for w in self.members))

    def minimal_member(self, space: FiniteSpace) -> OpenId:
        """The least member; exists because members are finite and meet-closed."""
        return min(self.members, key=lambda w: space.opens[w].bit_count())


def is_completely_prime(space: FiniteSpace, v: OpenId, family: Iterable[OpenId]) -> bool:
    """Decide whether ``family`` is a completely prime filter in ``O(v)``.

    Checks: nonempty, inside ``O(v)``, upward closed there, closed under
    binary intersection, empty open excluded (primality at the empty join),
    and binary join primality.  Binary plus empty-join primality implies the
    unrestricted form because every join of opens is a finite join here.
    Malformed input yields ``False`` rather than an error.
    """
    sub = open_sublattice(space, v)
    subset_ids = set(sub)
    ids = set(family)
    if not ids or not ids <= subset_ids:
        return False
    if space.empty_id in ids:
        return False
    masks = space.opens
    for u in ids:
        um = masks[u]
        for w in sub:
            if um & ~masks[w] == 0 and w not in ids:
                return False  # not upward closed
    for u in ids:
        for w in ids:
            if space.id_of(masks[u] & masks[w]) not in ids:
                return False  # not meet closed
    for a in sub:
        for b in sub:
            if space.id_of(masks[a] | masks[b]) in ids and a not in ids and b not in ids:
                return False  # join reachable without either joinand
    return True


@lru_cache(maxsize=None)
def _cp_filters(space: FiniteSpace, v: OpenId) -> tuple[CPFilter, ...]:
    # A filter on a finite lattice is principal, generated by its least
    # member m, and completely prime exactly when m is join-prime; so it
    # suffices to scan candidate generators.  The brute-force oracle over
    # all subfamilies of O(v) lives in the tests.
    sub = open_sublattice(space, v)
    masks = space.opens
    out = []
    for m in sub:
        mm = masks[m]
        if mm == 0:
            continue
        prime = True
        for a in sub:
            am = masks[a]
            for b in sub:
                if mm & ~(am | masks[b]) == 0 and mm & ~am != 0 and mm & ~masks[b] != 0:
                    prime = False
                    break
            if not prime:
                break
        if prime:
            mem = frozenset(w for w in sub if mm & ~masks[w] == 0)
            out.append(CPFilter(v, mem))
    out.sort(key=lambda f: f.member_masks(space))
    return tuple(out)


def enumerate_cp_filters(space: FiniteSpace, v: OpenId) -> list[CPFilter]:
    """Every completely prime filter in ``O(v)``, canonically ordered."""
    return list(_cp_filters(space, v))


@dataclass(frozen=True)
class SobrietyWitness:
    """A completely prime filter matched by no point, or by several."""

    filter: CPFilter
    points: tuple[int, ...]


def is_sober(space: FiniteSpace) -> tuple[bool, SobrietyWitness | None]:
    """True when point -> neighborhood filter is a bijection onto the filters of the space."""
    full = space.full_id
    filters = _cp_filters(space, full)
    matched = 0
    for flt in filters:
        pts = tuple(
            b for b in range(space.n) if neighborhood_filter(space, b, full) == flt.members
        )
        if len(pts) != 1:
            return False, SobrietyWitness(flt, pts)
        matched += 1
    if matched != space.n:
        # every neighborhood filter is completely prime, so this would mean
        # the enumeration missed one
        raise RuntimeError("filter enumeration out of sync with neighborhood filters")
    return True, None


def restrict_filter(space: FiniteSpace, a: CPFilter, w: OpenId) -> CPFilter:
    """Trace a filter down to a member open ``w``: keep the members inside ``w``."""
    if w not in a.members:
        raise OpenNotInFilter(f"open id {w} is not a member of the filter")
    wm = space.opens[w]
    return CPFilter(w, frozenset(u for u in a.members if space.opens[u] & ~wm == 0))


def extend_filter(space: FiniteSpace, a: CPFilter, v: OpenId) -> CPFilter:
    """Transport a filter on ``W`` up to ``V ⊇ W``: opens of ``V`` whose trace on ``W`` is a member."""
    wm = space.opens[a.ambient]
    vm = space.opens[v]
    if wm & ~vm:
        raise NotSubOpen(f"open id {a.ambient} is not contained in open id {v}")
    mem = frozenset(
        u for u in open_sublattice(space, v) if space.id_of(space.opens[u] & wm) in a.members
    )
    return CPFilter(v, mem)


def filter_cosheaf(space: FiniteSpace):
    """The cosheaf of completely prime filters with the transport maps as extensions.

    Component elements are the :class:`CPFilter` objects themselves, in
    canonical order, so positions are reproducible.
    """
    from .cosheaf import Copresheaf  # deferred: cosheaf imports this module

    comps = tuple(_cp_filters(space, v) for v in space.open_ids())
    pos = [{f: i for i, f in enumerate(fs)} for fs in comps]
    ext: dict[tuple[OpenId, OpenId], tuple[int, ...]] = {}
    for v in space.open_ids():
        vm = space.opens[v]
        for w in space.open_ids():
            if space.opens[w] & ~vm == 0:
                ext[(w, v)] = tuple(pos[v][extend_filter(space, a, v)] for a in comps[w])
    return Copresheaf(space, comps, ext)
