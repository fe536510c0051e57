"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from blades.blade_complex import WeightedBladeArrangement, nonfrozen_masks
from blades.combinatorics import GroundFrame

SIZES = [(2, 4), (2, 5), (2, 6), (3, 6), (3, 7), (4, 8)]


@st.composite
def frames(draw, max_n=9):
    n = draw(st.integers(4, max_n))
    removed = draw(st.sets(st.integers(1, n), max_size=n - 3))
    return GroundFrame(n, tuple(removed))


@st.composite
def subsets_of(draw, frame, size=None):
    active = list(frame.active)
    if size is None:
        size = draw(st.integers(1, len(active) - 1))
    return tuple(sorted(draw(st.permutations(active))[:size]))


@st.composite
def grade0(draw, sizes=SIZES, lo=-3, hi=3):
    k, n = draw(st.sampled_from(sizes))
    masks = nonfrozen_masks(k, n)
    picks = draw(st.lists(st.sampled_from(masks), min_size=1, max_size=6))
    coeffs = draw(st.lists(st.integers(lo, hi), min_size=len(picks), max_size=len(picks)))
    return WeightedBladeArrangement(k, n, [((0, m), c) for m, c in zip(picks, coeffs)])


@st.composite
def mixed_grade(draw, sizes=((3, 6), (3, 7), (4, 8))):
    """Arrangements with terms on several faces."""
    k, n = draw(st.sampled_from(sizes))
    terms = []
    for _ in range(draw(st.integers(1, 5))):
        g = draw(st.integers(0, k - 2))
        L = draw(st.permutations(range(1, n + 1)))[:g]
        masks = nonfrozen_masks(k, n, L)
        if not masks:
            continue
        Lm = sum(1 << (x - 1) for x in L)
        terms.append(((Lm, draw(st.sampled_from(masks))), draw(st.integers(-3, 3))))
    return WeightedBladeArrangement(k, n, terms)
