"""Ground frames, gapped cyclic orders and weak separation.

Subsets of ``{1, ..., n}`` are handled internally as integer bitmasks
(element ``i`` is bit ``i - 1``).  The public functions accept any iterable
of 1-based integers and return sorted tuples, or tuples listed in cyclic
traversal order where the order carries meaning (interval blocks).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

MAX_N = 64


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


def to_mask(elements: Iterable[int]) -> int:
    mask = 0
    for i in elements:
        if i < 1:
            raise DomainError(f"elements are 1-based, got {i}")
        mask |= 1 << (i - 1)
    return mask


def from_mask(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class GroundFrame:
    """The set ``{1..n}`` minus a removed face label ``L``, cyclically ordered.

    Frames are interned: ``GroundFrame(6, {6}) is GroundFrame(6, [6])``.
    """

    __slots__ = ("n", "removed", "active_mask", "active", "_succ", "_pred", "_pos")

    def __new__(cls, n: int, removed: Iterable[int] = ()):
        removed_mask = removed if isinstance(removed, int) else to_mask(removed)
        return _frame(n, removed_mask)

    @classmethod
    def _build(cls, n: int, removed_mask: int) -> "GroundFrame":
        if not 1 <= n <= MAX_N:
            raise DomainError(f"n must lie in 1..{MAX_N}, got {n}")
        full = (1 << n) - 1
        if removed_mask & ~full:
            raise DomainError(f"removed set {from_mask(removed_mask)} not inside 1..{n}")
        active_mask = full & ~removed_mask
        if not active_mask:
            raise DomainError("frame has no active elements")
        self = object.__new__(cls)
        self.n = n
        self.removed = removed_mask
        self.active_mask = active_mask
        self.active = from_mask(active_mask)
        m = len(self.active)
        self._succ = {a: self.active[(t + 1) % m] for t, a in enumerate(self.active)}
        self._pred = {a: self.active[(t - 1) % m] for t, a in enumerate(self.active)}
        self._pos = {a: t for t, a in enumerate(self.active)}
        return self

    def __reduce__(self):
        return (GroundFrame, (self.n, self.removed))

    def __repr__(self) -> str:
        return f"GroundFrame(n={self.n}, removed={from_mask(self.removed)})"

    @property
    def size(self) -> int:
        return len(self.active)

    def succ(self, i: int) -> int:
        try:
            return self._succ[i]
        except KeyError:
            raise DomainError(f"{i} is not active in {self!r}") from None

    def pred(self, i: int) -> int:
        try:
            return self._pred[i]
        except KeyError:
            raise DomainError(f"{i} is not active in {self!r}") from None

    def position(self, i: int) -> int:
        try:
            return self._pos[i]
        except KeyError:
            raise DomainError(f"{i} is not active in {self!r}") from None

    def check(self, mask: int) -> None:
        if mask & ~self.active_mask:
            bad = from_mask(mask & ~self.active_mask)
            raise DomainError(f"elements {bad} are not active in {self!r}")

    def next_in(self, start: int, mask: int) -> int:
        """First element of ``mask`` reached from ``start`` (inclusive) going forward."""
        i = start
        for _ in range(self.size):
            if mask >> (i - 1) & 1:
                return i
            i = self._succ[i]
        raise DomainError("empty subset has no next element")


@lru_cache(maxsize=None)
def _frame(n: int, removed_mask: int) -> GroundFrame:
    return GroundFrame._build(n, removed_mask)


def frame_of(frame_or_n, removed: Iterable[int] = ()) -> GroundFrame:
    if isinstance(frame_or_n, GroundFrame):
        return frame_or_n
    return GroundFrame(frame_or_n, removed)


# ---------------------------------------------------------------- intervals

@lru_cache(maxsize=1 << 16)
def _interval_starts(frame: GroundFrame, mask: int) -> tuple[int, ...]:
    """Cyclic initial points of the maximal runs of ``mask``, block of min first."""
    if not mask:
        return ()
    if mask == frame.active_mask:
        return (frame.active[0],)
    starts = [a for a in frame.active
              if mask >> (a - 1) & 1 and not mask >> (frame.pred(a) - 1) & 1]
    # the run holding min(J) may start before it (wrapping); rotate it to front
    lowest = from_mask(mask & -mask)[0]
    first = lowest
    while mask >> (frame.pred(first) - 1) & 1 and frame.pred(first) != lowest:
        first = frame.pred(first)
    t = starts.index(first)
    return tuple(starts[t:] + starts[:t])


def _blocks(frame: GroundFrame, mask: int) -> list[tuple[int, ...]]:
    blocks = []
    for s in _interval_starts(frame, mask):
        block = [s]
        i = frame.succ(s)
        while mask >> (i - 1) & 1 and i != s:
            block.append(i)
            i = frame.succ(i)
        blocks.append(tuple(block))
    return blocks


def _count_blocks(frame: GroundFrame, mask: int) -> int:
    return len(_interval_starts(frame, mask))


def _is_frozen(frame: GroundFrame, mask: int) -> bool:
    return _count_blocks(frame, mask) <= 1


def cyclic_intervals(frame: GroundFrame, J: Iterable[int]) -> list[tuple[int, ...]]:
    """Maximal runs of ``J`` under the frame's successor map.

    Each block is listed in traversal order; the block containing ``min(J)``
    comes first and the rest follow cyclically.
    """
    mask = to_mask(J)
    if not mask:
        raise DomainError("J must be nonempty")
    frame.check(mask)
    return _blocks(frame, mask)


def _complements(frame: GroundFrame, mask: int) -> list[tuple[int, ...]]:
    out = []
    for s in _interval_starts(frame, mask):
        gap = []
        i = frame.pred(s)
        while not mask >> (i - 1) & 1:
            gap.append(i)
            i = frame.pred(i)
        out.append(tuple(reversed(gap)))
    return out


def interlaced_complements(frame: GroundFrame, J: Iterable[int]) -> list[tuple[int, ...]]:
    """Gaps ``C_1..C_l`` with ``C_j`` immediately preceding block ``J_j``."""
    mask = to_mask(J)
    if not mask:
        raise DomainError("J must be nonempty")
    frame.check(mask)
    if mask == frame.active_mask:
        raise DomainError("J equals the active set; there is no complement")
    return _complements(frame, mask)


def is_frozen(frame: GroundFrame, J: Iterable[int]) -> bool:
    mask = to_mask(J)
    frame.check(mask)
    return _is_frozen(frame, mask)


def is_totally_nonfrozen(frame: GroundFrame, J: Iterable[int]) -> bool:
    mask = to_mask(J)
    frame.check(mask)
    return _count_blocks(frame, mask) == popcount(mask) and mask != frame.active_mask


# --------------------------------------------------------- weak separation

def _weakly_separated(frame: GroundFrame, a: int, b: int) -> bool:
    only_a = a & ~b
    only_b = b & ~a
    if not only_a or not only_b:
        return True
    # walk the cyclic order; alternation <=> more than two label changes
    labels = []
    for x in frame.active:
        bit = 1 << (x - 1)
        if only_a & bit:
            labels.append(0)
        elif only_b & bit:
            labels.append(1)
    changes = sum(1 for t in range(len(labels)) if labels[t] != labels[t - 1])
    return changes <= 2


def weakly_separated(frame: GroundFrame, I: Iterable[int], J: Iterable[int]) -> bool:
    a, b = to_mask(I), to_mask(J)
    if popcount(a) != popcount(b):
        raise DomainError("weak separation needs subsets of equal size")
    frame.check(a)
    frame.check(b)
    return _weakly_separated(frame, a, b)


def is_ws_collection(frame: GroundFrame, collection: Iterable[Iterable[int]]) -> bool:
    masks = [to_mask(c) for c in collection]
    if masks:
        size = popcount(masks[0])
        for m in masks:
            if popcount(m) != size:
                raise DomainError("weak separation needs subsets of equal size")
            frame.check(m)
    return all(_weakly_separated(frame, a, b) for a, b in combinations(masks, 2))


# --------------------------------------------------------------- octahedra

def ksubset_masks(n: int, k: int, within: int | None = None) -> list[int]:
    """All ``k``-subsets (as masks) of ``within`` (default ``{1..n}``), colex-free order."""
    pool = from_mask(within) if within is not None else tuple(range(1, n + 1))
    return [to_mask(c) for c in combinations(pool, k)]


def octahedra(k: int, n: int) -> Iterator[tuple[tuple[int, ...], tuple[int, int, int, int]]]:
    """Every octahedral face ``(L, Q)``: ``|L| = k - 2`` and ``Q`` a 4-set avoiding ``L``."""
    if not 2 <= k <= n - 2:
        raise DomainError(f"octahedra need 2 <= k <= n - 2, got k={k}, n={n}")
    for L in combinations(range(1, n + 1), k - 2):
        rest = [x for x in range(1, n + 1) if x not in L]
        for Q in combinations(rest, 4):
            yield L, Q
