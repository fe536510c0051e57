"""Positive tropical Plücker vectors, the blade map, and X/Y/Z membership.

Sign conventions (all checked exactly in the test suite):

* the positive relation is the max form
  ``p_Lac + p_Lbd = max(p_Lab + p_Lcd, p_Lad + p_Lbc)``, which every height
  vector satisfies;
* ``to_blades(p) = -(1/n) * sum_J p_J L_J`` so that ``to_blades(h_J) = beta_J``;
* consequently ``omega^(L)_ij = (1/n)(p_Lij - p_L,i,j+ - p_L,i+,j + p_L,i+,j+)``
  with ``+`` the successor in the gapped order on ``{1..n} \\ L``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from . import jsonio
from .blade_complex import (
    DecoratedOSP,
    WeightedBladeArrangement,
    _boundary_symbol,
    dosp_from_vertex,
)
from .combinatorics import (
    DomainError,
    GroundFrame,
    _is_frozen,
    _weakly_separated,
    from_mask,
    octahedra,
    popcount,
    to_mask,
)
from .heights import VertexVector, _cube_ambient


class PluckerVector(VertexVector):
    """Heights ``p_J`` on the vertices of the hypersimplex."""

    __slots__ = ()

    @classmethod
    def of(cls, v: VertexVector) -> "PluckerVector":
        return cls(v.k, v.n, v.items())


@dataclass(frozen=True)
class Verdict:
    """Boolean outcome plus the first failing witness (``None`` on success)."""

    ok: bool
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.ok


def certificate(v: Verdict) -> dict:
    out: dict = {"in_Z": v.ok}
    if v.witness is not None:
        out["witness"] = v.witness
    return out


# ------------------------------------------------------------ Plücker side

@lru_cache(maxsize=None)
def _octahedron_table(k: int, n: int) -> tuple[tuple, ...]:
    rows = []
    for L, (a, b, c, d) in octahedra(k, n):
        Lm = to_mask(L)
        m = lambda x, y: Lm | (1 << (x - 1)) | (1 << (y - 1))
        rows.append((L, (a, b, c, d), m(a, c), m(b, d), m(a, b), m(c, d), m(a, d), m(b, c)))
    return tuple(rows)


def is_pos_plucker(p: VertexVector) -> Verdict:
    """Every octahedron satisfies the three-term max relation."""
    if p.k < 2 or p.k > p.n - 2:
        return Verdict(True)
    g = dict(p.items()).get
    for L, Q, ac, bd, ab, cd, ad, bc in _octahedron_table(p.k, p.n):
        lhs = g(ac, 0) + g(bd, 0)
        if lhs != max(g(ab, 0) + g(cd, 0), g(ad, 0) + g(bc, 0)):
            return Verdict(False, {"L": list(L), "quadruple": list(Q), "reason": "plucker-relation"})
    return Verdict(True)


@lru_cache(maxsize=1 << 14)
def _blade_column(n: int, Jm: int) -> tuple[tuple[int, int], ...]:
    """Nonfrozen corners of ``L_J`` as ``(J' mask, sign)``."""
    frame = GroundFrame(n, 0)
    return tuple((m, s) for m, s in _cube_ambient(n, Jm) if not _is_frozen(frame, m))


def to_blades(p: VertexVector) -> WeightedBladeArrangement:
    """``-(1/n) sum_J p_J L_J`` in grade 0; kills exactly the lineality space."""
    acc: dict[int, object] = {}
    for Jm, c in p.items():
        for m, s in _blade_column(p.n, Jm):
            acc[m] = acc.get(m, 0) + s * c
    scale = Fraction(-1, p.n)
    return WeightedBladeArrangement._trusted(p.k, p.n, {(0, m): v * scale for m, v in acc.items() if v})


def lineality_equal(p: VertexVector, q: VertexVector) -> bool:
    return to_blades(p) == to_blades(q)


# -------------------------------------------------------------- face tables

@dataclass(frozen=True)
class FaceWeightTable:
    """``omega^(L)_ij`` for every nonfrozen pair of the face's gapped order."""

    n: int
    face: tuple[int, ...]
    weights: dict = field(compare=True)

    def support(self) -> list[tuple[int, int]]:
        return [ij for ij, w in sorted(self.weights.items()) if w != 0]

    def to_json(self) -> dict:
        return {"n": self.n, "L": list(self.face),
                "weights": [{"pair": list(ij), "w": jsonio.rational_str(w)}
                            for ij, w in sorted(self.weights.items())]}


@lru_cache(maxsize=None)
def _nonfrozen_pairs(n: int, Lm: int) -> tuple[tuple[int, int], ...]:
    frame = GroundFrame(n, Lm)
    return tuple(ij for ij in combinations(frame.active, 2) if not _is_frozen(frame, to_mask(ij)))


def _face_key(k: int, n: int, L) -> int:
    Lm = L if isinstance(L, int) else to_mask(L)
    if popcount(Lm) != k - 2 or Lm & ~((1 << n) - 1):
        raise DomainError(f"second hypersimplicial faces need |L| = k - 2 = {k - 2} inside 1..{n}")
    return Lm


@lru_cache(maxsize=1 << 16)
def _face_image(n: int, Lm: int, Jm: int) -> int | None:
    """Pair mask of ``d_L beta_J`` (ascending order), or ``None`` when it vanishes."""
    cur = (0, Jm)
    for j in from_mask(Lm):
        cur = _boundary_symbol(n, cur[0], cur[1], j)
        if cur is None:
            return None
    return cur[1]


def _grade0(a: WeightedBladeArrangement) -> None:
    if any(Lm for Lm, _ in a):
        raise DomainError("expected a grade-0 arrangement (all face labels empty)")


def _raw_face_weights(a: WeightedBladeArrangement, Lm: int) -> dict[int, object]:
    out: dict[int, object] = {}
    for (_, Jm), c in a.items():
        pm = _face_image(a.n, Lm, Jm)
        if pm is not None:
            out[pm] = out.get(pm, 0) + c
    return out


def face_weights(a: WeightedBladeArrangement, L) -> FaceWeightTable:
    """Coefficients of ``beta^(L)_ij`` in ``d_L(a)``."""
    _grade0(a)
    Lm = _face_key(a.k, a.n, L)
    raw = _raw_face_weights(a, Lm)
    w = {ij: jsonio.simplify(raw.get(to_mask(ij), 0)) for ij in _nonfrozen_pairs(a.n, Lm)}
    return FaceWeightTable(a.n, from_mask(Lm), w)


def face_weights_from_plucker(p: VertexVector, L) -> FaceWeightTable:
    Lm = _face_key(p.k, p.n, L)
    frame = GroundFrame(p.n, Lm)
    g = dict(p.items()).get

    def val(x, y):
        return g(Lm | (1 << (x - 1)) | (1 << (y - 1)), 0)

    w = {}
    for i, j in _nonfrozen_pairs(p.n, Lm):
        ip, jp = frame.succ(i), frame.succ(j)
        w[(i, j)] = jsonio.simplify(Fraction(val(i, j) - val(i, jp) - val(ip, j) + val(ip, jp), p.n))
    return FaceWeightTable(p.n, from_mask(Lm), w)


def _faces(k: int, n: int):
    return [to_mask(L) for L in combinations(range(1, n + 1), k - 2)]


# ------------------------------------------------------------- membership

def _check_face(a: WeightedBladeArrangement, Lm: int, want_x: bool, want_y: bool) -> dict | None:
    raw = _raw_face_weights(a, Lm)
    support = sorted((from_mask(m), c) for m, c in raw.items() if c != 0)
    if want_y:
        for ij, c in support:
            if c < 0:
                return {"L": list(from_mask(Lm)), "pairs": [list(ij)], "reason": "negative-weight"}
    if want_x:
        frame = GroundFrame(a.n, Lm)
        for (ij, _), (kl, _) in combinations(support, 2):
            if not _weakly_separated(frame, to_mask(ij), to_mask(kl)):
                return {"L": list(from_mask(Lm)), "pairs": [list(ij), list(kl)],
                        "reason": "not-weakly-separated"}
    return None


def _membership(a: WeightedBladeArrangement, want_x: bool, want_y: bool) -> Verdict:
    _grade0(a)
    if a.k < 2 or a.k > a.n - 2:
        return Verdict(True)
    for Lm in _faces(a.k, a.n):
        w = _check_face(a, Lm, want_x, want_y)
        if w is not None:
            return Verdict(False, w)
    return Verdict(True)


def is_in_X(a: WeightedBladeArrangement) -> Verdict:
    """Weakly separated support on every second hypersimplicial face."""
    return _membership(a, True, False)


def is_in_Y(a: WeightedBladeArrangement) -> Verdict:
    """Nonnegative curvature on every second hypersimplicial face."""
    return _membership(a, False, True)


def is_in_Z(a: WeightedBladeArrangement) -> Verdict:
    return _membership(a, True, True)


def pairs_not_ws_check(a: WeightedBladeArrangement, L) -> bool:
    """``min(w_ij, sum of w_ab over pairs crossing ij) == 0`` for every nonfrozen pair."""
    table = face_weights(a, L)
    frame = GroundFrame(a.n, to_mask(table.face))
    w = table.weights
    for ij, wij in w.items():
        m = to_mask(ij)
        crossing = sum(wab for ab, wab in w.items() if not _weakly_separated(frame, m, to_mask(ab)))
        if min(wij, crossing) != 0:
            return False
    return True


def faces_report(a: WeightedBladeArrangement) -> dict[tuple[int, ...], tuple[WeightedBladeArrangement, list[DecoratedOSP]]]:
    """Per face: ``d_L(a)`` and the 2-split DOSPs of its supported pairs."""
    v = is_in_Z(a)
    if not v:
        raise DomainError(f"arrangement is not in Z: {jsonio.dumps(v.witness)}")
    out = {}
    for Lm in _faces(a.k, a.n):
        raw = _raw_face_weights(a, Lm)
        terms = {(Lm, m): c for m, c in raw.items() if c != 0}
        if not terms:
            continue
        frame = GroundFrame(a.n, Lm)
        local = WeightedBladeArrangement._trusted(a.k, a.n, terms)
        dosps = [dosp_from_vertex(frame, from_mask(m)) for _, m in sorted(terms, key=lambda t: from_mask(t[1]))]
        out[from_mask(Lm)] = (local, dosps)
    return out


def plucker_from_arrangement(a: WeightedBladeArrangement) -> PluckerVector:
    """A preimage under ``to_blades``: ``sum_J c_J h_J`` for grade-0 ``a``."""
    from .heights import _height
    _grade0(a)
    acc: dict[int, object] = {}
    for (_, Jm), c in a.items():
        for Im, r in _height(a.k, a.n, Jm):
            if r:
                acc[Im] = acc.get(Im, 0) + r * c
    return PluckerVector(a.k, a.n, acc)


def lineality_shift(p: VertexVector, shifts: Mapping[int, object]) -> PluckerVector:
    """``p + sum_a t_a sum_{J containing a} e^J``."""
    acc = dict(p.items())
    from .heights import all_subsets
    for Im in all_subsets(p.k, p.n):
        add = sum(t for a, t in shifts.items() if Im >> (a - 1) & 1)
        if add:
            acc[Im] = acc.get(Im, 0) + add
    return PluckerVector(p.k, p.n, acc)
