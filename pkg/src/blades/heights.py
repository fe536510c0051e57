"""Piecewise-linear heights on hypersimplex vertices and the planar basis.

Vertex-space vectors live in ``R^{C(n,k)}`` with basis ``e^J``.  Conventions:

* ``rho(k, n, J, I) = h(e_I - e_J)``, always ``<= 0``;
* the height vector of ``J`` has coordinate ``rho(J, I)`` at ``I``;
* ``cube_R(e^J) = -(1/n) * height_vector(J)``, which makes the cube
  identity ``sum_M (-1)^{1+|M|} R(e^{J_M}) = e^J`` exact for nonfrozen ``J``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import jsonio
from .blade_complex import WeightedBladeArrangement, _cube
from .combinatorics import DomainError, GroundFrame, _is_frozen, from_mask, popcount, to_mask


class VertexVector:
    """Sparse exact vector indexed by the ``k``-subsets of ``{1..n}``."""

    __slots__ = ("k", "n", "_coords")

    def __init__(self, k: int, n: int, coords: Mapping[int, object] | Iterable[tuple[int, object]] = ()):
        if not 1 <= k < n:
            raise DomainError(f"need 1 <= k < n, got k={k}, n={n}")
        self.k, self.n = k, n
        acc: dict[int, object] = {}
        items = coords.items() if isinstance(coords, Mapping) else coords
        full = (1 << n) - 1
        for m, v in items:
            if m & ~full or popcount(m) != k:
                raise DomainError(f"{from_mask(m)} is not a {k}-subset of 1..{n}")
            acc[m] = acc.get(m, 0) + v
        self._coords = {m: jsonio.simplify(v) for m, v in acc.items() if v != 0}

    @classmethod
    def from_subsets(cls, k: int, n: int, coords: Mapping[Iterable[int], object]) -> "VertexVector":
        return cls(k, n, [(to_mask(J), v) for J, v in coords.items()])

    @classmethod
    def basis(cls, k: int, n: int, J: Iterable[int]) -> "VertexVector":
        return cls(k, n, {to_mask(J): 1})

    def __getitem__(self, J) -> object:
        m = J if isinstance(J, int) else to_mask(J)
        return self._coords.get(m, 0)

    def items(self):
        return self._coords.items()

    def __len__(self):
        return len(self._coords)

    def _same(self, other):
        if (self.k, self.n) != (other.k, other.n):
            raise DomainError("vectors live in different spaces")

    def __add__(self, other):
        if not isinstance(other, VertexVector):
            return NotImplemented
        self._same(other)
        out = dict(self._coords)
        for m, v in other._coords.items():
            out[m] = out.get(m, 0) + v
        return VertexVector(self.k, self.n, out)

    def __neg__(self):
        return VertexVector(self.k, self.n, {m: -v for m, v in self._coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        if isinstance(s, VertexVector):
            return NotImplemented
        return VertexVector(self.k, self.n, {m: v * s for m, v in self._coords.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, VertexVector):
            return NotImplemented
        return (self.k, self.n, self._coords) == (other.k, other.n, other._coords)

    def __hash__(self):
        return hash((self.k, self.n, frozenset(self._coords.items())))

    def __repr__(self):
        body = ", ".join(f"{''.join(map(str, from_mask(m)))}:{jsonio.rational_str(v)}"
                         for m, v in sorted(self._coords.items(), key=lambda t: from_mask(t[0])))
        return f"VertexVector({self.k},{self.n}; {body})"

    def dense(self) -> list:
        """Coordinates in lexicographic subset order."""
        return [self._coords.get(m, 0) for m in all_subsets(self.k, self.n)]

    def to_json(self) -> dict:
        rows = sorted((from_mask(m), v) for m, v in self._coords.items())
        return {"k": self.k, "n": self.n,
                "coords": [{"J": list(J), "v": jsonio.rational_str(v)} for J, v in rows]}

    @classmethod
    def from_json(cls, data: Mapping) -> "VertexVector":
        try:
            return cls(int(data["k"]), int(data["n"]),
                       [(to_mask(r["J"]), jsonio.parse_rational(r["v"])) for r in data.get("coords", [])])
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed vertex-vector payload: {exc}") from exc


@lru_cache(maxsize=None)
def all_subsets(k: int, n: int) -> tuple[int, ...]:
    return tuple(to_mask(c) for c in combinations(range(1, n + 1), k))


# ---------------------------------------------------------------- h and rho

def hmin(x: Sequence[int]) -> int:
    """``min_j L_j(x)`` on the zero-sum hyperplane, via the root expansion.

    ``x = sum_j t_j (e_j - e_{j+1})`` with ``t_j = x_1 + ... + x_j + c``;
    choosing ``c`` so that ``min t = 0`` gives ``h(x) = -sum t``.
    """
    if sum(x) != 0:
        raise DomainError("h is defined on the hyperplane sum(x) = 0")
    partial = []
    s = 0
    for v in x:
        s += v
        partial.append(s)
    low = min(partial)
    return -sum(p - low for p in partial)


def hmin_linear_forms(x: Sequence[int]) -> int:
    """``min_j L_j(x)`` with ``L_j(x) = x_{j+1} + 2 x_{j+2} + ... + (n-1) x_{j-1}``."""
    if sum(x) != 0:
        raise DomainError("h is defined on the hyperplane sum(x) = 0")
    n = len(x)
    return min(sum(m * x[(j + m) % n] for m in range(1, n)) for j in range(n))


def _rho_mask(n: int, Jm: int, Im: int) -> int:
    # h(e_I - e_J) with the partial-sum expansion, no list building
    s = 0
    low = 0
    total = 0
    for i in range(n):
        bit = 1 << i
        s += (1 if Im & bit else 0) - (1 if Jm & bit else 0)
        total += s
        if s < low:
            low = s
    # the last partial sum is 0, so low <= 0 already covers it
    return -(total - n * low)


def rho(k: int, n: int, J: Iterable[int], I: Iterable[int]) -> int:
    """The translated height ``rho_J`` evaluated at the vertex ``e_I``."""
    Jm, Im = to_mask(J), to_mask(I)
    if popcount(Jm) != k or popcount(Im) != k:
        raise DomainError(f"rho needs two {k}-subsets")
    return _rho_mask(n, Jm, Im)


@lru_cache(maxsize=4096)
def _height(k: int, n: int, Jm: int) -> tuple[tuple[int, int], ...]:
    return tuple((Im, _rho_mask(n, Jm, Im)) for Im in all_subsets(k, n))


def height_vector(k: int, n: int, J: Iterable[int]) -> VertexVector:
    Jm = to_mask(J)
    if popcount(Jm) != k:
        raise DomainError(f"J must be a {k}-subset")
    return VertexVector(k, n, _height(k, n, Jm))


# ------------------------------------------------------------ cube operators

def _cube_ambient(n: int, Jm: int) -> list[tuple[int, int]]:
    return _cube(GroundFrame(n, 0), Jm)


def cube_L(k: int, n: int, J: Iterable[int]) -> VertexVector:
    """``L(e^J) = sum_M (-1)^{1+|M|} e^{J_M}`` (no frozen normalization)."""
    Jm = to_mask(J)
    if popcount(Jm) != k:
        raise DomainError(f"J must be a {k}-subset")
    return VertexVector(k, n, _cube_ambient(n, Jm))


def apply_cube_L(v: VertexVector) -> VertexVector:
    out: dict[int, object] = {}
    for Jm, c in v.items():
        for m, s in _cube_ambient(v.n, Jm):
            out[m] = out.get(m, 0) + s * c
    return VertexVector(v.k, v.n, out)


def cube_R(v: VertexVector) -> VertexVector:
    """``R(e^J) = -(1/n) h_J`` extended linearly."""
    out: dict[int, object] = {}
    for Jm, c in v.items():
        for Im, r in _height(v.k, v.n, Jm):
            if r:
                out[Im] = out.get(Im, 0) + r * c
    scale = Fraction(-1, v.n)
    return VertexVector(v.k, v.n, {m: x * scale for m, x in out.items()})


def blade_image(v: VertexVector) -> WeightedBladeArrangement:
    """``sum_J v_J L_J`` in the top grade, frozen symbols dropped."""
    terms = []
    for Jm, c in v.items():
        terms.extend(((0, m), s * c) for m, s in _cube_ambient(v.n, Jm))
    return WeightedBladeArrangement(v.k, v.n, terms)


# --------------------------------------------------------- kinematic space

def lineality_vector(k: int, n: int, a: int) -> VertexVector:
    """``sum_{J containing a} e^J``."""
    bit = 1 << (a - 1)
    return VertexVector(k, n, {m: 1 for m in all_subsets(k, n) if m & bit})


def is_kinematic(v: VertexVector) -> bool:
    for a in range(1, v.n + 1):
        bit = 1 << (a - 1)
        if sum(c for m, c in v.items() if m & bit) != 0:
            return False
    return True


def kinematic_basis(k: int, n: int) -> list[VertexVector]:
    """A basis of the kinematic subspace (exact nullspace of the point constraints)."""
    from .linalg import nullspace
    subsets = all_subsets(k, n)
    rows = [[1 if m >> a & 1 else 0 for m in subsets] for a in range(n)]
    return [VertexVector(k, n, dict(zip(subsets, vec))) for vec in nullspace(rows, len(subsets))]


def eta(v: VertexVector, J: Iterable[int]) -> Fraction:
    """Planar basis element ``eta_J(s) = -(1/n) sum_I s_I rho_J(e_I)``."""
    if not is_kinematic(v):
        raise DomainError("eta is only evaluated on kinematic vectors")
    Jm = to_mask(J)
    if popcount(Jm) != v.k:
        raise DomainError(f"J must be a {v.k}-subset")
    heights = dict(_height(v.k, v.n, Jm))
    return Fraction(-sum(c * heights[m] for m, c in v.items()), v.n)


def eta_functional(k: int, n: int, J: Iterable[int]) -> VertexVector:
    """``eta_J`` written as a linear functional in s-coordinates."""
    return cube_R(VertexVector.basis(k, n, J))


def express_in_planar(f: VertexVector) -> dict[tuple[int, ...], Fraction]:
    """Coefficients of the functional ``s -> sum_I f_I s_I`` in the nonfrozen ``eta_J``.

    Substituting ``s_I -> L_I`` and ``eta_J -> beta_J`` turns the change of
    basis into the blade expansion of ``sum_I f_I L_I``.
    """
    image = blade_image(f)
    return {from_mask(Jm): Fraction(c) for (_, Jm), c in image.items()}


def is_frozen_vertex(k: int, n: int, J: Iterable[int]) -> bool:
    return _is_frozen(GroundFrame(n, 0), to_mask(J))
