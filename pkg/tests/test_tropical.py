import json
import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from blades import jsonio
from blades.blade_complex import WeightedBladeArrangement, arrangement, l_element
from blades.combinatorics import DomainError, GroundFrame, from_mask, octahedra
from blades.heights import VertexVector, all_subsets, height_vector
from blades.tropical import (
    PluckerVector,
    certificate,
    face_weights,
    face_weights_from_plucker,
    faces_report,
    is_in_X,
    is_in_Y,
    is_in_Z,
    is_pos_plucker,
    lineality_equal,
    lineality_shift,
    pairs_not_ws_check,
    plucker_from_arrangement,
    to_blades,
)
from blades.blade_complex import DecoratedOSP
from samples import lemma_samples, random_integer_vector, shifted
from strategies import grade0

W37 = {(2, 4, 7): -1, (1, 2, 4): 1, (2, 5, 7): 1, (3, 4, 7): 1}
BIPYRAMID = {(2, 4, 6): -1, (1, 2, 4): 1, (3, 4, 6): 1, (2, 5, 6): 1}


def plucker_oracle(p):
    """Every octahedron, written out with tuples."""
    for L, (a, b, c, d) in octahedra(p.k, p.n):
        v = lambda x, y: p[tuple(sorted(L + (x, y)))]
        if v(a, c) + v(b, d) != max(v(a, b) + v(c, d), v(a, d) + v(b, c)):
            return False
    return True


def test_plucker_counterexample_has_witness():
    v = is_pos_plucker(PluckerVector.from_subsets(2, 4, {(1, 3): 1, (2, 4): 1}))
    assert not v
    assert v.witness == {"L": [], "quadruple": [1, 2, 3, 4], "reason": "plucker-relation"}


@pytest.mark.parametrize("k,n", [(2, 5), (3, 6), (3, 7)])
def test_heights_are_plucker_and_map_to_blades(k, n):
    for J in combinations(range(1, n + 1), k):
        h = height_vector(k, n, J)
        assert is_pos_plucker(h)
        assert to_blades(h) == arrangement(k, n, {J: 1})


def test_to_blades_of_basis_vector():
    # -(1/n) times the cube element, frozen corners dropped
    assert to_blades(VertexVector.basis(3, 6, (2, 4, 6))) == l_element(3, 6, (), (2, 4, 6)) * Fraction(-1, 6)


@given(st.data())
def test_lineality_is_invisible(data):
    k, n = data.draw(st.sampled_from([(2, 5), (3, 6), (3, 7)]))
    rng = random.Random(data.draw(st.integers(0, 10 ** 6)))
    p = random_integer_vector(k, n, rng)
    q = shifted(p, rng)
    assert lineality_equal(p, q)
    assert bool(is_pos_plucker(p)) == bool(is_pos_plucker(q))


def test_distinct_heights_are_not_lineality_equal():
    assert not lineality_equal(height_vector(3, 6, (1, 3, 5)), height_vector(3, 6, (2, 4, 6)))


@given(grade0(sizes=[(3, 6), (3, 7), (4, 8)]))
def test_preimage_round_trip(a):
    assert to_blades(plucker_from_arrangement(a)) == a


@given(st.data())
def test_face_weights_agree_with_plucker_formula(data):
    k, n = data.draw(st.sampled_from([(3, 6), (3, 7), (4, 8)]))
    rng = random.Random(data.draw(st.integers(0, 10 ** 6)))
    p = random_integer_vector(k, n, rng)
    a = to_blades(p)
    for L in combinations(range(1, n + 1), k - 2):
        assert face_weights_from_plucker(p, L) == face_weights(a, L)


def test_d6_table():
    # coefficient of beta^(6)_ij as a sum of c_abc
    table = {}
    for J in combinations(range(1, 7), 3):
        for ij in face_weights(arrangement(3, 6, {J: 1}), (6,)).support():
            table.setdefault(ij, []).append(J)
    assert table == {(1, 3): [(1, 3, 6)], (1, 4): [(1, 4, 6)], (2, 4): [(1, 2, 4), (2, 4, 6)],
                     (2, 5): [(1, 2, 5), (2, 5, 6)], (3, 5): [(1, 3, 5), (2, 3, 5), (3, 5, 6)]}
    assert face_weights(arrangement(3, 6, {(1, 2, 4): 1, (2, 4, 6): 1}), (6,)).weights[(2, 4)] == 2


def test_face_weights_need_second_faces():
    with pytest.raises(DomainError):
        face_weights(arrangement(3, 6, {(1, 3, 5): 1}), (1, 2))
    with pytest.raises(DomainError):
        face_weights(WeightedBladeArrangement(3, 6, {(1, 0b10100): 1}), (6,))


def test_membership_examples():
    assert is_in_Z(arrangement(3, 6, BIPYRAMID))
    assert is_in_Z(arrangement(3, 7, W37))
    both = arrangement(3, 6, {(1, 3, 5): 1, (2, 4, 6): 1})
    assert is_in_Y(both)
    v = is_in_X(both)
    assert not v and v.witness["reason"] == "not-weakly-separated"
    neg = is_in_Z(arrangement(3, 6, {(2, 4, 6): -1}))
    assert not neg and neg.witness["reason"] == "negative-weight"
    assert certificate(neg) == {"in_Z": False, "witness": neg.witness}
    assert certificate(is_in_Z(both - both)) == {"in_Z": True}


def test_bipyramid_identity():
    t = arrangement(3, 6, BIPYRAMID)
    h = to_blades(height_vector(3, 6, (2, 4, 6)))
    total = h + t
    assert total == arrangement(3, 6, {(1, 2, 4): 1, (3, 4, 6): 1, (2, 5, 6): 1})
    assert is_in_Z(h) and is_in_Z(t) and is_in_Z(total)


def test_min_condition_instances():
    # for a in Z: min(w_ij, sum of crossing weights) = 0 on the face L = {6}
    assert pairs_not_ws_check(arrangement(3, 6, BIPYRAMID), (6,))
    assert not pairs_not_ws_check(arrangement(3, 6, {(1, 4, 6): 1, (2, 3, 5): 1}), (6,))


@given(grade0(sizes=[(3, 6), (3, 7)], lo=0, hi=3))
def test_min_condition_holds_on_z(a):
    if is_in_Z(a):
        for L in range(1, a.n + 1):
            assert pairs_not_ws_check(a, (L,))


def test_faces_report():
    report = faces_report(arrangement(3, 7, W37))
    local, dosps = report[(1,)]
    assert set(dosps) == {DecoratedOSP(((3, 4), (5, 6, 7, 2)), (1, 1)), DecoratedOSP(((2, 3, 4, 5), (6, 7)), (1, 1))}
    assert [J for _, J, _ in local.terms()] == [(2, 4), (5, 7)]
    local, dosps = faces_report(arrangement(3, 6, {(2, 4, 6): 1}))[(6,)]
    assert dosps == [DecoratedOSP(((5, 1, 2), (3, 4)), (1, 1))]
    with pytest.raises(DomainError):
        faces_report(arrangement(3, 6, {(2, 4, 6): -1}))


@pytest.mark.parametrize("k,n", [(2, 5), (2, 6), (3, 6), (3, 7)])
def test_lemma_equivalence_smoke(k, n):
    for p in lemma_samples(k, n, 600, seed=1):
        assert bool(is_pos_plucker(p)) == bool(is_in_Z(to_blades(p)))
        assert bool(is_pos_plucker(p)) == plucker_oracle(p)


def c_is_adjacent(J, n):
    """``J`` contains a cyclically consecutive pair."""
    s = set(J)
    return any((x % n) + 1 in s for x in s)


@pytest.mark.parametrize("n", [6, 7])
def test_negativity_lemma_smoke(n):
    from blades.blade_complex import nonfrozen_masks
    rng = random.Random(n)
    masks = nonfrozen_masks(3, n)
    accepted = 0
    while accepted < 100:
        picks = rng.sample(masks, rng.randint(1, 5))
        a = WeightedBladeArrangement(3, n, [((0, m), rng.choice([-1, 1, 1, 2])) for m in picks])
        if not is_in_Y(a):
            continue
        accepted += 1
        for (_, m), c in a.items():
            if c_is_adjacent(from_mask(m), n):
                assert c >= 0


def test_lineality_shift():
    p = height_vector(2, 4, (1, 3))
    q = lineality_shift(p, {1: 2})
    assert q[(1, 2)] == p[(1, 2)] + 2 and q[(2, 3)] == p[(2, 3)]


def test_face_table_json():
    t = face_weights(arrangement(3, 6, {(2, 4, 6): 1}), (6,))
    data = json.loads(jsonio.dumps(t.to_json()))
    assert data["L"] == [6]
    assert {tuple(r["pair"]): r["w"] for r in data["weights"]}[(2, 4)] == "1"
