"""Decorated ordered set partitions, Eulerian numbers, and rays of Z(3, n).

Ray certification
-----------------
For ``x`` in Z every decomposition ``x = y + z`` inside Z keeps the face
weights of ``y`` and ``z`` inside the support of those of ``x``.  Since the
face weights determine a grade-0 arrangement, ``x`` spans a ray exactly when

    V_x = {y : omega^(j)_e(y) = 0 whenever omega^(j)_e(x) = 0}

is one-dimensional.  ``cone_dimension`` computes ``dim V_x``; a rank over
GF(2) that already leaves a one-dimensional kernel certifies the answer
(the rational rank can only be larger and ``x`` itself lies in ``V_x``),
otherwise the rank is recomputed over the rationals.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import gcd, lcm
from typing import Iterable, Iterator

from . import jsonio
from .blade_complex import DecoratedOSP, WeightedBladeArrangement, nonfrozen_masks
from .building_blocks import TauSpec, closure_ok, dj_vertices, tau
from .combinatorics import DomainError, from_mask, to_mask
from .heights import VertexVector
from .linalg import rank, sparse_rank
from .tropical import _face_image, _raw_face_weights, is_in_Z, plucker_from_arrangement, to_blades

# ------------------------------------------------------------------ DOSPs


def _weightings(blocks: list[tuple[int, ...]], k: int) -> Iterator[tuple[int, ...]]:
    if not blocks:
        if k == 0:
            yield ()
        return
    size = len(blocks[0])
    rest = sum(len(b) for b in blocks[1:])
    for s in range(1, size):
        r = k - s
        if (rest == 0 and r == 0) or (rest and len(blocks) - 1 <= r <= rest - (len(blocks) - 1)):
            for tail in _weightings(blocks[1:], r):
                yield (s,) + tail


@lru_cache(maxsize=None)
def _plain_cached(left: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], ...], ...]:
    if not left:
        return ((),)
    out = []
    for size in range(2, len(left) + 1):
        for head in combinations(left, size):
            rest = tuple(x for x in left if x not in head)
            for tail in _plain_cached(rest):
                out.append((head,) + tail)
    return tuple(out)


def enumerate_dosps(k: int, n: int, anchored: bool = True) -> Iterator[DecoratedOSP]:
    """Every hypersimplicial DOSP of type ``Delta(k, n)``.

    ``anchored`` keeps only those with ``1`` in the first block, which picks
    one representative per cyclic rotation class.
    """
    if not 1 <= k <= n - 1:
        raise DomainError(f"need 1 <= k <= n - 1, got k={k}, n={n}")
    ground = tuple(range(1, n + 1))
    for blocks in _partitions(ground, 1 if anchored else None):
        for w in _weightings(blocks, k):
            yield DecoratedOSP(tuple(blocks), w)


def _partitions(pool: tuple[int, ...], first: int | None) -> Iterator[list[tuple[int, ...]]]:
    """Ordered partitions of ``pool`` into blocks of size at least 2."""
    if first is None:
        for t in _plain_cached(pool):
            yield list(t)
        return
    others = tuple(x for x in pool if x != first)
    for size in range(1, len(pool)):
        for c in combinations(others, size):
            head = (first,) + c
            rest = tuple(x for x in others if x not in c)
            for tail in _plain_cached(rest):
                yield [head, *tail]


@lru_cache(maxsize=None)
def eulerian(m: int, d: int) -> int:
    """Permutations of ``{1..m}`` with exactly ``d`` descents."""
    if m < 1 or not 0 <= d < m:
        if m >= 1 and d >= m:
            return 0
        raise DomainError(f"need m >= 1 and 0 <= d < m, got m={m}, d={d}")
    if m == 1:
        return 1
    total = (d + 1) * eulerian(m - 1, d) if d < m - 1 else 0
    if d >= 1:
        total += (m - d) * eulerian(m - 1, d - 1)
    return total


def eulerian_bruteforce(m: int, d: int) -> int:
    return sum(1 for p in permutations(range(m)) if sum(p[i] > p[i + 1] for i in range(m - 1)) == d)


def enumerate_multisplits(k: int, n: int) -> list[DecoratedOSP]:
    """Nontrivial hypersimplicial DOSPs modulo cyclic block rotation."""
    if not 2 <= k <= n - 2:
        raise DomainError(f"need 2 <= k <= n - 2, got k={k}, n={n}")
    return [d for d in enumerate_dosps(k, n, anchored=True) if len(d.blocks) >= 2]


# ------------------------------------------------------- ray certification

@lru_cache(maxsize=None)
def _ray_system(k: int, n: int):
    cols = nonfrozen_masks(k, n)
    faces = [to_mask(L) for L in combinations(range(1, n + 1), k - 2)]
    image = {(Lm, J): _face_image(n, Lm, J) for Lm in faces for J in cols}
    return cols, faces, image


def _gf2_rank(rows: list[int]) -> int:
    pivots: dict[int, int] = {}
    for v in rows:
        while v:
            h = v.bit_length() - 1
            if h in pivots:
                v ^= pivots[h]
            else:
                pivots[h] = v
                break
    return len(pivots)


def cone_dimension(a: WeightedBladeArrangement) -> int:
    """``dim V_a``: the span of the smallest cone of Z containing ``a`` (for ``a`` in Z)."""
    cols, faces, image = _ray_system(a.k, a.n)
    rows = []
    for Lm in faces:
        raw = _raw_face_weights(a, Lm)
        groups: dict[int, int] = {}
        for t, J in enumerate(cols):
            pm = image[(Lm, J)]
            if pm is not None and not raw.get(pm, 0):
                groups[pm] = groups.get(pm, 0) | (1 << t)
        rows.extend(groups.values())
    dim2 = len(cols) - _gf2_rank(rows)
    if dim2 <= 1 and a:
        return dim2
    sparse = [{t: 1 for t in range(len(cols)) if r >> t & 1} for r in rows]
    return len(cols) - sparse_rank(sparse)


def _face_support(a: WeightedBladeArrangement) -> frozenset[tuple[int, int]]:
    _, faces, _ = _ray_system(a.k, a.n)
    return frozenset((Lm, m) for Lm in faces for m, c in _raw_face_weights(a, Lm).items() if c)


@lru_cache(maxsize=None)
def _blade_supports(k: int, n: int) -> tuple[tuple[int, frozenset], ...]:
    return tuple((J, _face_support(WeightedBladeArrangement._trusted(k, n, {(0, J): 1})))
                 for J in nonfrozen_masks(k, n))


def is_ray(a: WeightedBladeArrangement) -> bool:
    """Exact ray test for ``a`` in Z.

    Shortcut: a single blade whose face support sits inside that of ``a``
    lies in the smallest cone containing ``a``, so ``a`` cannot be a ray
    unless it is that blade.
    """
    if not a or not is_in_Z(a):
        return False
    if len(a) > 1:
        sx = _face_support(a)
        if any(s <= sx for _, s in _blade_supports(a.k, a.n)):
            return False
    return cone_dimension(a) == 1


# --------------------------------------------------------- dihedral action

def _relabel(a: WeightedBladeArrangement, perm: dict[int, int]) -> WeightedBladeArrangement:
    def m(mask):
        return to_mask(perm[i] for i in from_mask(mask))
    return WeightedBladeArrangement(a.k, a.n, [((m(Lm), m(Jm)), c) for (Lm, Jm), c in a.items()])


def rotate(a: WeightedBladeArrangement, t: int = 1) -> WeightedBladeArrangement:
    n = a.n
    return _relabel(a, {i: (i - 1 + t) % n + 1 for i in range(1, n + 1)})


def reflect(a: WeightedBladeArrangement) -> WeightedBladeArrangement:
    """Reflection ``i -> n + 1 - i``, transported through a Plücker preimage.

    Relabeling blade symbols directly does not commute with the geometry
    (blades are not reflection symmetric about their apex), so the height
    function is reflected instead and mapped back.
    """
    n = a.n
    p = plucker_from_arrangement(a)
    flip = lambda m: to_mask(n + 1 - i for i in from_mask(m))
    return to_blades(VertexVector(a.k, n, [(flip(m), c) for m, c in p.items()]))


def primitive(a: WeightedBladeArrangement) -> WeightedBladeArrangement:
    """Positive rescaling to coprime integer coefficients."""
    if not a:
        return a
    coeffs = [Fraction(c) for _, c in a.items()]
    den = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return WeightedBladeArrangement._trusted(a.k, a.n, {key: v // g for key, v in zip(a, ints)})


def _sort_key(a: WeightedBladeArrangement):
    return tuple((L, J, c) for L, J, c in a.terms())


def dihedral_orbit(a: WeightedBladeArrangement) -> list[WeightedBladeArrangement]:
    out = {}
    base = [a, reflect(a)]
    for b in base:
        for t in range(a.n):
            r = rotate(b, t)
            out[_sort_key(r)] = r
    return [out[key] for key in sorted(out)]


def dihedral_canonical(a: WeightedBladeArrangement) -> WeightedBladeArrangement:
    return dihedral_orbit(primitive(a))[0]


# ------------------------------------------------------------ ray catalog

@dataclass
class CatalogEntry:
    """One dihedral class of rays.

    The representative is the orbit member with the fewest negative terms
    (ties broken by tripod count, then term order).  ``tripods`` counts the
    tau generators glued to build it; ``rotation_classes`` is the number of
    rotation orbits the class splits into, which is where tripod counts
    are invariant.
    """

    arrangement: WeightedBladeArrangement
    orbit_size: int
    negatives: int
    tripods: int
    rotation_classes: int
    specs: tuple[TauSpec, ...] = ()

    @property
    def tag(self) -> str:
        return f"neg={self.negatives},tripods={self.tripods}"

    def to_json(self) -> dict:
        return {"arrangement": self.arrangement.to_json(), "orbit_size": self.orbit_size,
                "negatives": self.negatives, "tripods": self.tripods,
                "rotation_classes": self.rotation_classes,
                "tau": [s.to_json() for s in self.specs]}


@dataclass
class RayCatalog:
    n: int
    entries: list[CatalogEntry]
    rays: list[WeightedBladeArrangement] = field(repr=False, default_factory=list)
    seconds: float = 0.0

    @property
    def labeled_count(self) -> int:
        return sum(e.orbit_size for e in self.entries)

    def summary(self) -> list[dict]:
        groups: dict[tuple[int, int], list[CatalogEntry]] = {}
        for e in self.entries:
            groups.setdefault((e.tripods, e.negatives), []).append(e)
        rows = []
        for (t, neg), es in sorted(groups.items()):
            rows.append({"tripods": t, "negatives": neg, "classes": len(es),
                         "rays": sum(e.orbit_size for e in es),
                         "example": es[0].arrangement.to_json()["terms"]})
        return rows

    def to_json_lines(self) -> list[str]:
        return [jsonio.dumps(e.to_json()) for e in self.entries]


def _negatives(a: WeightedBladeArrangement) -> int:
    return sum(1 for _, c in a.items() if c < 0)


def _legs(t: WeightedBladeArrangement) -> frozenset[int]:
    return frozenset(J for (_, J), c in t.items() if c > 0)


def _candidates(n: int, k: int = 3):
    """``(arrangement, tau specs used)``: blades, taus, and shared-leg tripod chains.

    Generators sharing positive legs are glued by counting each shared leg
    once.  Pairs must share a leg; triples must be connected through shared
    legs (a chain or a triangle).
    """
    for J in nonfrozen_masks(k, n):
        yield WeightedBladeArrangement._trusted(k, n, {(0, J): 1}), ()
    taus: list[tuple[TauSpec, WeightedBladeArrangement]] = []
    for J in nonfrozen_masks(k, n):
        for spec in dj_vertices(k, n, from_mask(J)):
            t = tau(spec)
            taus.append((spec, t))
            yield t, (spec,)
    legs = [_legs(t) for _, t in taus]
    by_leg: dict[int, list[int]] = {}
    for i, ls in enumerate(legs):
        for s in ls:
            by_leg.setdefault(s, []).append(i)

    def glue(idx: tuple[int, ...]) -> WeightedBladeArrangement:
        total: dict = {}
        mult = Counter(s for i in idx for s in legs[i])
        for i in idx:
            for key, c in taus[i][1].items():
                total[key] = total.get(key, 0) + c
        for s, m in mult.items():
            if m > 1:
                total[(0, s)] -= m - 1
        return WeightedBladeArrangement._trusted(k, n, total)

    pairs = set()
    for lst in by_leg.values():
        for i1, i2 in combinations(lst, 2):
            pairs.add((i1, i2))
    for pair in sorted(pairs):
        yield glue(pair), tuple(taus[i][0] for i in pair)
    yield from _triples(sorted(pairs), legs, by_leg, glue, taus)


def _triples(pairs, legs, by_leg, glue, taus):
    """Leg-connected triples: chains and triangles of glued tripods."""
    seen = set()
    for i1, i2 in pairs:
        for s in legs[i1] | legs[i2]:
            for i3 in by_leg[s]:
                trip = tuple(sorted((i1, i2, i3)))
                if len(set(trip)) < 3 or trip in seen:
                    continue
                seen.add(trip)
                yield glue(trip), tuple(taus[i][0] for i in trip)


def decomposes_in_pairs(x: WeightedBladeArrangement, members: list[WeightedBladeArrangement]) -> bool:
    """Pair oracle: ``x = a y + b z`` with ``a, b > 0`` and ``y, z`` non-proportional members.

    Only members whose face supports sit inside those of ``x`` can occur in
    such a decomposition, which keeps the search small.
    """
    def support(a):
        out = set()
        for j in range(1, a.n + 1):
            for m, c in _raw_face_weights(a, 1 << (j - 1)).items():
                if c:
                    out.add((j, m))
        return out

    sx = support(x)
    inside = [y for y in members if y != x and support(y) <= sx]
    keys = sorted({key for a in [x, *members] for key in a})
    vec = lambda a: [Fraction(a._terms.get(key, 0)) for key in keys]
    vx = vec(x)
    for y in inside:
        vy = vec(y)
        for z in members:
            vz = vec(z)
            if z == y:
                continue
            sol = _solve2(vy, vz, vx)
            if sol is not None and sol[0] > 0 and sol[1] > 0:
                return True
    return False


def _solve2(u, v, w):
    """``(a, b)`` with ``a u + b v = w`` if it exists and is unique."""
    from .linalg import solve
    rows = [[a, b] for a, b in zip(u, v)]
    if rank(rows, 2) < 2:
        return None
    return solve(rows, w)


def catalog_rays(n: int, k: int = 3) -> RayCatalog:
    """Certified rays of Z(3, n) from blades, taus and glued tripods, grouped by dihedral class."""
    if k != 3:
        raise DomainError("the ray catalog is implemented for k = 3")
    if not 6 <= n <= 9:
        raise DomainError(f"the ray catalog covers 6 <= n <= 9, got n={n}")
    start = time.perf_counter()
    found: dict[tuple, tuple[WeightedBladeArrangement, tuple[TauSpec, ...]]] = {}
    tried = set()
    for x, specs in _candidates(n, k):
        key = _sort_key(x)
        if key in tried:
            continue
        tried.add(key)
        if is_ray(x):
            x = primitive(x)
            key = _sort_key(x)
            if key not in found or len(specs) < len(found[key][1]):
                found[key] = (x, specs)
    entries = []
    labeled: dict[tuple, WeightedBladeArrangement] = {}
    for key in sorted(found):
        if key in labeled:
            continue
        orbit = dihedral_orbit(found[key][0])
        for y in orbit:
            ky = _sort_key(y)
            if ky not in found and not is_ray(y):
                raise AssertionError(f"symmetry image is not a ray: {y!r}")
            labeled[ky] = y

        def rank_key(y):
            ky = _sort_key(y)
            t = len(found[ky][1]) if ky in found else 99
            return (_negatives(y), t, ky)

        rep = min(orbit, key=rank_key)
        specs = found.get(_sort_key(rep), (rep, ()))[1]
        rot = {min(_sort_key(rotate(y, t)) for t in range(n)) for y in orbit}
        entries.append(CatalogEntry(rep, len(orbit), _negatives(rep), len(specs), len(rot), specs))
    entries.sort(key=lambda e: (e.tripods, e.negatives, _sort_key(e.arrangement)))
    rays = [labeled[key] for key in sorted(labeled)]
    return RayCatalog(n, entries, rays, time.perf_counter() - start)


def rotation_classes(catalog: RayCatalog) -> int:
    return sum(e.rotation_classes for e in catalog.entries)


def entry_closure_ok(e: CatalogEntry) -> bool:
    """Every tau generator glued into the entry is closed under the boundary maps."""
    return all(closure_ok(s) for s in e.specs)
