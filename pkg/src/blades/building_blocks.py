"""The tau building blocks and their closure under the boundary maps.

For a vertex ``e_J`` with cyclic intervals ``J_1..J_l`` and gaps ``C_j``
(``C_j`` immediately before ``J_j``), every choice of ``I_j`` with
``|I_j| = |J_j|``, ``I_j`` inside ``J_j + C_{j+1}`` and ``I_j != J_j`` gives

    tau = -(l - 2) beta_J + sum_j beta_{J with J_j replaced by I_j}.

Everything is parametrized by a face label ``L`` so the same code runs on
the gapped frames reached by the boundary maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb, prod
from typing import Iterable, Iterator, Mapping

from .blade_complex import WeightedBladeArrangement, _boundary_symbol, boundary_j
from .combinatorics import (
    DomainError,
    GroundFrame,
    _blocks,
    _complements,
    _is_frozen,
    _interval_starts,
    from_mask,
    popcount,
    to_mask,
)


@dataclass(frozen=True)
class TauSpec:
    k: int
    n: int
    J: tuple[int, ...]
    I_blocks: tuple[tuple[int, ...], ...]
    face: tuple[int, ...] = ()

    @property
    def ell(self) -> int:
        return len(self.I_blocks)

    def target(self) -> tuple[int, ...]:
        """The vertex ``I`` obtained by replacing every block at once."""
        return tuple(sorted(x for b in self.I_blocks for x in b))

    def validate(self) -> None:
        frame = GroundFrame(self.n, to_mask(self.face))
        Jm = to_mask(self.J)
        frame.check(Jm)
        if len(self.face) + popcount(Jm) != self.k:
            raise DomainError("|L| + |J| must equal k")
        if _is_frozen(frame, Jm):
            raise DomainError(f"J={self.J} is frozen")
        slots = _slots(frame, Jm)
        if len(slots) != len(self.I_blocks):
            raise DomainError(f"expected {len(slots)} I-blocks, got {len(self.I_blocks)}")
        for (Jb, pool), Ib in zip(slots, self.I_blocks):
            if len(Ib) != len(Jb) or not set(Ib) <= set(pool) or set(Ib) == set(Jb):
                raise DomainError(f"bad I-block {Ib} for interval {Jb}")

    def to_json(self) -> dict:
        out = {"J": list(self.J), "I_blocks": [list(b) for b in self.I_blocks]}
        if self.face:
            out["L"] = list(self.face)
        return out

    @classmethod
    def from_json(cls, data: Mapping, k: int | None = None, n: int | None = None) -> "TauSpec":
        try:
            J = tuple(sorted(int(x) for x in data["J"]))
            face = tuple(sorted(int(x) for x in data.get("L", ())))
            blocks = tuple(tuple(int(x) for x in b) for b in data["I_blocks"])
            k = int(data.get("k", k if k is not None else len(J) + len(face)))
            n = int(data["n"] if "n" in data else n)
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed tau payload: {exc}") from exc
        spec = cls(k, n, J, blocks, face)
        spec.validate()
        return spec


def _slots(frame: GroundFrame, Jm: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """``(J_j, J_j + C_{j+1})`` in traversal order."""
    blocks = _blocks(frame, Jm)
    gaps = _complements(frame, Jm)
    ell = len(blocks)
    return [(blocks[j], blocks[j] + gaps[(j + 1) % ell]) for j in range(ell)]


def _prepare(k: int, n: int, J: Iterable[int], face: Iterable[int]):
    Lm, Jm = to_mask(face), to_mask(J)
    if Lm & Jm or popcount(Lm) + popcount(Jm) != k:
        raise DomainError(f"need disjoint L, J with |L| + |J| = k={k}")
    frame = GroundFrame(n, Lm)
    frame.check(Jm)
    if _is_frozen(frame, Jm):
        raise DomainError(f"J={from_mask(Jm)} is frozen; no tau generators")
    return frame, Jm


def dj_vertices(k: int, n: int, J: Iterable[int], face: Iterable[int] = ()) -> Iterator[TauSpec]:
    """All specs for ``J``: one factor per interval, the vertex ``J_j`` removed."""
    face = tuple(sorted(face))
    frame, Jm = _prepare(k, n, J, face)
    choices = []
    for Jb, pool in _slots(frame, Jm):
        target = set(Jb)
        choices.append([c for c in combinations(pool, len(Jb)) if set(c) != target])
    Jt = from_mask(Jm)
    for pick in product(*choices):
        yield TauSpec(k, n, Jt, tuple(pick), face)


def tau_count(k: int, n: int, J: Iterable[int], face: Iterable[int] = ()) -> int:
    frame, Jm = _prepare(k, n, J, face)
    return prod(comb(len(pool), len(Jb)) - 1 for Jb, pool in _slots(frame, Jm))


def tau(spec: TauSpec) -> WeightedBladeArrangement:
    Lm, Jm = to_mask(spec.face), to_mask(spec.J)
    frame = GroundFrame(spec.n, Lm)
    blocks = _blocks(frame, Jm)
    terms = [((Lm, Jm), -(len(blocks) - 2))]
    for Jb, Ib in zip(blocks, spec.I_blocks):
        terms.append(((Lm, (Jm & ~to_mask(Jb)) | to_mask(Ib)), 1))
    return WeightedBladeArrangement(spec.k, spec.n, terms)


def is_totally_nonfrozen_vertex(n: int, J: Iterable[int], face: Iterable[int] = ()) -> bool:
    frame = GroundFrame(n, to_mask(face))
    Jm = to_mask(J)
    return len(_interval_starts(frame, Jm)) == popcount(Jm) and Jm != frame.active_mask


@dataclass(frozen=True)
class ClosureEntry:
    j: int
    status: str  # "zero" | "matched" | "nonnegative" | "mismatch"
    image: WeightedBladeArrangement
    spec: TauSpec | None = None


def _find_tau(target: WeightedBladeArrangement, n: int, Lm: int, hint: int | None) -> TauSpec | None:
    k = target.k
    frame = GroundFrame(n, Lm)
    face = from_mask(Lm)
    candidates = []
    if hint is not None:
        candidates.append(hint)
    m = k - popcount(Lm)
    candidates.extend(to_mask(c) for c in combinations(frame.active, m))
    seen = set()
    for Jm in candidates:
        if Jm in seen or _is_frozen(frame, Jm):
            continue
        seen.add(Jm)
        for spec in dj_vertices(k, n, from_mask(Jm), face):
            if tau(spec) == target:
                return spec
    return None


def check_tau_closure(spec: TauSpec) -> dict[int, ClosureEntry]:
    """Match each nonzero ``d_j tau`` with a tau generator on the face ``L + j``.

    Images that match no generator but have only nonnegative coefficients
    are reported as ``"nonnegative"``; ``"mismatch"`` means a negative term
    survived without a tau to explain it.
    """
    t = tau(spec)
    Lm, Jm = to_mask(spec.face), to_mask(spec.J)
    report = {}
    for j in GroundFrame(spec.n, Lm).active:
        img = boundary_j(t, j)
        if not img:
            report[j] = ClosureEntry(j, "zero", img)
            continue
        L2 = Lm | (1 << (j - 1))
        key = _boundary_symbol(spec.n, Lm, Jm, j)
        found = _find_tau(img, spec.n, L2, key[1] if key else None)
        if found:
            status = "matched"
        elif all(c >= 0 for _, c in img.items()):
            status = "nonnegative"  # a plain sum of blades, no cancellation to track
        else:
            status = "mismatch"
        report[j] = ClosureEntry(j, status, img, found)
    return report


def closure_ok(spec: TauSpec) -> bool:
    return all(e.status != "mismatch" for e in check_tau_closure(spec).values())
