"""The graded space of weighted blade arrangements and its boundary maps.

A term is a symbol ``beta^{(L)}_J`` with ``L`` the face label and ``J`` a
subset of the gapped frame ``{1..n} \\ L`` with ``|L| + |J| = k``.  Symbols
whose ``J`` is a single cyclic interval of their frame are zero and are never
stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from . import jsonio
from .combinatorics import (
    DomainError,
    GroundFrame,
    _blocks,
    _complements,
    _interval_starts,
    _is_frozen,
    from_mask,
    popcount,
    to_mask,
)

Key = tuple[int, int]  # (L mask, J mask)


def _symbol_is_zero(n: int, Lm: int, Jm: int) -> bool:
    return _is_frozen(GroundFrame(n, Lm), Jm)


class WeightedBladeArrangement:
    """Sparse exact combination of blade symbols on the faces of ``Delta(k, n)``.

    Values are immutable.  Coefficients are ``int`` or ``Fraction``.
    """

    __slots__ = ("k", "n", "_terms", "_hash")

    def __init__(self, k: int, n: int, terms: Mapping[Key, object] | Iterable[tuple[Key, object]] = ()):
        if not 1 <= k < n:
            raise DomainError(f"need 1 <= k < n, got k={k}, n={n}")
        self.k = k
        self.n = n
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Key, object] = {}
        full = (1 << n) - 1
        for (Lm, Jm), c in items:
            if (Lm | Jm) & ~full or Lm & Jm:
                raise DomainError(f"bad symbol L={from_mask(Lm)}, J={from_mask(Jm)}")
            if popcount(Lm) + popcount(Jm) != k:
                raise DomainError(
                    f"|L| + |J| must equal k={k}: L={from_mask(Lm)}, J={from_mask(Jm)}")
            if _symbol_is_zero(n, Lm, Jm):
                continue
            acc[(Lm, Jm)] = acc.get((Lm, Jm), 0) + c
        self._terms = {key: jsonio.simplify(c) for key, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def _trusted(cls, k: int, n: int, terms: dict[Key, object]) -> "WeightedBladeArrangement":
        self = object.__new__(cls)
        self.k, self.n = k, n
        self._terms = {key: jsonio.simplify(c) for key, c in terms.items() if c != 0}
        self._hash = None
        return self

    @classmethod
    def zero(cls, k: int, n: int) -> "WeightedBladeArrangement":
        return cls._trusted(k, n, {})

    # -- mapping-ish access
    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator[Key]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, L: Iterable[int], J: Iterable[int]):
        return self._terms.get((to_mask(L), to_mask(J)), 0)

    def grade(self, L: Iterable[int] | int) -> dict[int, object]:
        """Terms on the face ``L`` as ``{J mask: coefficient}``."""
        Lm = L if isinstance(L, int) else to_mask(L)
        return {Jm: c for (Lm2, Jm), c in self._terms.items() if Lm2 == Lm}

    def faces(self) -> set[int]:
        return {Lm for Lm, _ in self._terms}

    def terms(self) -> list[tuple[tuple[int, ...], tuple[int, ...], object]]:
        """Terms sorted by ``(|L|, L, J)`` with 1-based tuples."""
        rows = [(from_mask(Lm), from_mask(Jm), c) for (Lm, Jm), c in self._terms.items()]
        rows.sort(key=lambda r: (len(r[0]), r[0], r[1]))
        return rows

    # -- arithmetic
    def _check_same(self, other: "WeightedBladeArrangement") -> None:
        if (self.k, self.n) != (other.k, other.n):
            raise DomainError(f"mismatched spaces ({self.k},{self.n}) vs ({other.k},{other.n})")

    def __add__(self, other):
        if not isinstance(other, WeightedBladeArrangement):
            return NotImplemented
        self._check_same(other)
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out.get(key, 0) + c
        return WeightedBladeArrangement._trusted(self.k, self.n, out)

    def __neg__(self):
        return WeightedBladeArrangement._trusted(self.k, self.n, {key: -c for key, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, WeightedBladeArrangement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, WeightedBladeArrangement):
            return NotImplemented
        return WeightedBladeArrangement._trusted(
            self.k, self.n, {key: c * scalar for key, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (Fraction(1) / Fraction(scalar))

    def __eq__(self, other):
        if not isinstance(other, WeightedBladeArrangement):
            return NotImplemented
        return (self.k, self.n) == (other.k, other.n) and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.k, self.n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        if not self._terms:
            return f"<0 in B({self.k},{self.n})>"
        parts = []
        for L, J, c in self.terms():
            sym = "b" + ("^(" + ",".join(map(str, L)) + ")" if L else "") + "_" + ",".join(map(str, J))
            parts.append(f"{jsonio.rational_str(c)}*{sym}")
        return f"<{' + '.join(parts)} in B({self.k},{self.n})>"

    # -- JSON
    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "terms": [{"L": list(L), "J": list(J), "c": jsonio.rational_str(c)}
                      for L, J, c in self.terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "WeightedBladeArrangement":
        try:
            k, n = int(data["k"]), int(data["n"])
            rows = [((to_mask(t.get("L", [])), to_mask(t["J"])), jsonio.parse_rational(t.get("c", "1")))
                    for t in data.get("terms", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed arrangement payload: {exc}") from exc
        return cls(k, n, rows)


def blade(k: int, n: int, L: Iterable[int], J: Iterable[int]) -> WeightedBladeArrangement:
    """The symbol ``beta^{(L)}_J`` with coefficient 1 (zero if ``J`` is frozen)."""
    Lm, Jm = to_mask(L), to_mask(J)
    if Lm & Jm:
        raise DomainError("L and J must be disjoint")
    if popcount(Lm) + popcount(Jm) != k:
        raise DomainError(f"|L| + |J| must equal k={k}")
    return WeightedBladeArrangement(k, n, {(Lm, Jm): 1})


def arrangement(k: int, n: int, coeffs: Mapping[Iterable[int], object] | Iterable[tuple[Iterable[int], object]],
                L: Iterable[int] = ()) -> WeightedBladeArrangement:
    """Build ``sum c_J beta^{(L)}_J`` from ``{J: c}`` (or pairs) on a single face."""
    Lm = to_mask(L)
    items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
    return WeightedBladeArrangement(k, n, [((Lm, to_mask(J)), c) for J, c in items])


# ----------------------------------------------------------------- boundary

@lru_cache(maxsize=1 << 18)
def _boundary_symbol(n: int, Lm: int, Jm: int, j: int) -> Key | None:
    bit = 1 << (j - 1)
    if Lm & bit:
        return None
    frame = GroundFrame(n, Lm)
    ell = j if Jm & bit else frame.next_in(j, Jm)
    L2, J2 = Lm | bit, Jm & ~(1 << (ell - 1))
    if _is_frozen(GroundFrame(n, L2), J2):
        return None
    return (L2, J2)


def boundary_j(a: WeightedBladeArrangement, j: int) -> WeightedBladeArrangement:
    if not 1 <= j <= a.n:
        raise DomainError(f"j must lie in 1..{a.n}")
    out: dict[Key, object] = {}
    for (Lm, Jm), c in a.items():
        key = _boundary_symbol(a.n, Lm, Jm, j)
        if key is not None:
            out[key] = out.get(key, 0) + c
    return WeightedBladeArrangement._trusted(a.k, a.n, out)


def boundary(a: WeightedBladeArrangement) -> WeightedBladeArrangement:
    out: dict[Key, object] = {}
    for (Lm, Jm), c in a.items():
        for j in range(1, a.n + 1):
            key = _boundary_symbol(a.n, Lm, Jm, j)
            if key is not None:
                out[key] = out.get(key, 0) + c
    return WeightedBladeArrangement._trusted(a.k, a.n, out)


def boundary_L(a: WeightedBladeArrangement, L: Iterable[int]) -> WeightedBladeArrangement:
    """``d_{l_1} ... d_{l_m}`` applied in ascending index order; identity for empty ``L``."""
    for j in sorted(set(L)):
        a = boundary_j(a, j)
    return a


def support_on_face(a: WeightedBladeArrangement, L: Iterable[int]) -> list[tuple[int, ...]]:
    L = tuple(sorted(set(L)))
    if len(L) != a.k - 2:
        raise DomainError(f"second hypersimplicial faces need |L| = k - 2 = {a.k - 2}")
    grade = boundary_L(a, L).grade(to_mask(L))
    return sorted(from_mask(Jm) for Jm, c in grade.items() if c != 0)


# ------------------------------------------------------------------- cubes

def _cube(frame: GroundFrame, Jm: int) -> list[tuple[int, int]]:
    """Corners ``(J_M mask, sign)`` of the cube decrementing each interval start."""
    if Jm == frame.active_mask:
        raise DomainError("the cube of the full active set is undefined")
    starts = _interval_starts(frame, Jm)
    corners = []
    for M in range(1 << len(starts)):
        mask = Jm
        flips = 0
        for b, s in enumerate(starts):
            if M >> b & 1:
                mask ^= (1 << (s - 1)) | (1 << (frame.pred(s) - 1))
                flips += 1
        corners.append((mask, -1 if flips % 2 == 0 else 1))
    return corners


def l_element(k: int, n: int, L: Iterable[int], J: Iterable[int]) -> WeightedBladeArrangement:
    """The localized spanning element ``sum_M (-1)^{1+|M|} beta^{(L)}_{J_M}``."""
    Lm, Jm = to_mask(L), to_mask(J)
    if not Jm:
        raise DomainError("J must be nonempty")
    if Lm & Jm or popcount(Lm) + popcount(Jm) != k:
        raise DomainError(f"need disjoint L, J with |L| + |J| = k={k}")
    frame = GroundFrame(n, Lm)
    frame.check(Jm)
    return WeightedBladeArrangement(k, n, [((Lm, m), s) for m, s in _cube(frame, Jm)])


# -------------------------------------------------------------------- DOSPs

@dataclass(frozen=True, eq=False)
class DecoratedOSP:
    """An ordered set partition with weights; compared modulo cyclic block rotation."""

    blocks: tuple[tuple[int, ...], ...]
    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(tuple(b) for b in self.blocks))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if len(self.blocks) != len(self.weights) or not self.blocks:
            raise DomainError("need one weight per block and at least one block")
        seen: set[int] = set()
        for b in self.blocks:
            if not b or seen & set(b) or len(set(b)) != len(b):
                raise DomainError("blocks must be nonempty and pairwise disjoint")
            seen |= set(b)

    @property
    def k(self) -> int:
        return sum(self.weights)

    @property
    def ground(self) -> tuple[int, ...]:
        return tuple(sorted(x for b in self.blocks for x in b))

    def is_hypersimplicial(self) -> bool:
        return all(1 <= s <= len(b) - 1 for b, s in zip(self.blocks, self.weights))

    def rotate(self, t: int) -> "DecoratedOSP":
        t %= len(self.blocks)
        return DecoratedOSP(self.blocks[t:] + self.blocks[:t], self.weights[t:] + self.weights[:t])

    def canonical(self) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
        """Rotation with the block of the smallest element first; blocks sorted."""
        low = self.ground[0]
        t = next(i for i, b in enumerate(self.blocks) if low in b)
        rot = self.rotate(t)
        return tuple(tuple(sorted(b)) for b in rot.blocks), rot.weights

    def __eq__(self, other):
        if not isinstance(other, DecoratedOSP):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self) -> str:
        inner = " ".join("".join(str(x) if x < 10 else f"({x})" for x in b) + f"_{s}"
                         for b, s in zip(self.blocks, self.weights))
        return f"(({inner}))"

    def to_json(self) -> dict:
        return {"blocks": [sorted(b) for b in self.blocks], "weights": list(self.weights)}

    @classmethod
    def from_json(cls, data: Mapping) -> "DecoratedOSP":
        try:
            return cls(tuple(tuple(b) for b in data["blocks"]), tuple(data["weights"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed DOSP payload: {exc}") from exc


def dosp_from_vertex(frame: GroundFrame, J: Iterable[int]) -> DecoratedOSP:
    """The multi-split DOSP induced by the blade translated to ``e_J``.

    Block ``S_j`` is the gap ``C_j`` followed by the interval ``J_j``; its
    weight is ``|J_j|``.
    """
    Jm = to_mask(J)
    frame.check(Jm)
    if _is_frozen(frame, Jm):
        raise DomainError(f"{from_mask(Jm)} is frozen in {frame!r}; the subdivision is trivial")
    blocks = [C + Jb for C, Jb in zip(_complements(frame, Jm), _blocks(frame, Jm))]
    weights = [len(Jb) for Jb in _blocks(frame, Jm)]
    return DecoratedOSP(tuple(blocks), tuple(weights))


@dataclass(frozen=True)
class PlateSystem:
    """Facet inequalities ``x_S >= rhs`` of a plate cone."""

    inequalities: tuple[tuple[tuple[int, ...], int], ...]

    def contains(self, x: Mapping[int, object] | list) -> bool:
        get = (lambda i: x[i - 1]) if isinstance(x, (list, tuple)) else (lambda i: x.get(i, 0))
        return all(sum(get(i) for i in S) >= r for S, r in self.inequalities)


def plate_system(d: DecoratedOSP) -> PlateSystem:
    rows = []
    union: list[int] = []
    total = 0
    for b, s in list(zip(d.blocks, d.weights))[:-1]:
        union += b
        total += s
        rows.append((tuple(sorted(union)), total))
    return PlateSystem(tuple(rows))


def plate_rotations(d: DecoratedOSP) -> list[PlateSystem]:
    """The plates of all cyclic block rotations; the blade is the union of their boundaries."""
    return [plate_system(d.rotate(t)) for t in range(len(d.blocks))]


def nonfrozen_masks(k: int, n: int, L: Iterable[int] = ()) -> list[int]:
    """Masks of the nonfrozen ``(k - |L|)``-subsets of the frame ``(n, L)``."""
    Lm = to_mask(L)
    frame = GroundFrame(n, Lm)
    m = k - popcount(Lm)
    return [to_mask(c) for c in combinations(frame.active, m) if not _is_frozen(frame, to_mask(c))]
