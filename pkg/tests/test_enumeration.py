import json
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

import oracles
from blades.blade_complex import WeightedBladeArrangement, arrangement
from blades.combinatorics import DomainError
from blades.enumeration import (
    _relabel,
    catalog_rays,
    cone_dimension,
    decomposes_in_pairs,
    dihedral_canonical,
    dihedral_orbit,
    entry_closure_ok,
    enumerate_dosps,
    enumerate_multisplits,
    eulerian,
    eulerian_bruteforce,
    is_ray,
    primitive,
    reflect,
    rotate,
    rotation_classes,
)
from blades.heights import VertexVector
from blades.tropical import is_in_Z, plucker_from_arrangement, to_blades
from strategies import grade0

W37 = {(2, 4, 7): -1, (1, 2, 4): 1, (2, 5, 7): 1, (3, 4, 7): 1}
BIPYRAMID = {(2, 4, 6): -1, (1, 2, 4): 1, (3, 4, 6): 1, (2, 5, 6): 1}


@pytest.fixture(scope="module")
def cat6():
    return catalog_rays(6)


@pytest.fixture(scope="module")
def cat7():
    return catalog_rays(7)


def test_eulerian_values():
    assert eulerian(3, 1) == 4
    assert eulerian(5, 2) == 66
    for m in range(1, 8):
        for d in range(m):
            assert eulerian(m, d) == eulerian_bruteforce(m, d) == oracles.eulerian(m, d)
    assert eulerian(4, 4) == 0


@pytest.mark.parametrize("k,n,want", [(2, 4, 4), (2, 5, 11), (3, 6, 66)])
def test_dosp_counts_by_exhaustion(k, n, want):
    got = list(enumerate_dosps(k, n))
    assert len(got) == len(set(got)) == want
    assert len(oracles.dosp_classes(k, n)) == want
    canon = {tuple(zip(*d.canonical())) for d in got}
    assert canon == oracles.dosp_classes(k, n)


def test_unanchored_stream_dedupes_to_anchored():
    free = set(enumerate_dosps(2, 5, anchored=False))
    assert free == set(enumerate_dosps(2, 5))


@pytest.mark.parametrize("n", range(4, 9))
def test_anchored_counts_are_eulerian(n):
    for k in range(2, n - 1):
        assert sum(1 for _ in enumerate_dosps(k, n)) == eulerian(n - 1, k - 1)
        assert len(enumerate_multisplits(k, n)) == eulerian(n - 1, k - 1) - 1


def test_multisplit_classes():
    assert len(enumerate_multisplits(2, 4)) == 3
    assert len(enumerate_multisplits(2, 5)) == 10
    assert len(enumerate_multisplits(3, 6)) == 65
    with pytest.raises(DomainError):
        enumerate_multisplits(1, 4)


def test_ray_tests():
    assert is_ray(arrangement(3, 6, {(2, 4, 6): 1}))
    assert is_ray(arrangement(3, 6, BIPYRAMID))
    assert is_ray(arrangement(3, 7, W37))
    assert not is_ray(arrangement(3, 6, {(1, 2, 4): 1, (2, 4, 6): 1}))
    assert not is_ray(arrangement(3, 6, {(2, 4, 6): -1}))
    assert cone_dimension(arrangement(3, 6, {(1, 2, 4): 1, (1, 2, 5): 1})) == 2


@given(grade0(sizes=[(3, 6), (3, 7)], lo=0, hi=3))
def test_rotation_agrees_with_plucker_transport(a):
    n = a.n
    p = plucker_from_arrangement(a)
    from blades.combinatorics import from_mask, to_mask
    rot = VertexVector(a.k, n, [(to_mask(x % n + 1 for x in from_mask(m)), c) for m, c in p.items()])
    assert to_blades(rot) == rotate(a, 1)
    assert bool(is_in_Z(rotate(a))) == bool(is_in_Z(a))
    assert bool(is_in_Z(reflect(a))) == bool(is_in_Z(a))
    assert reflect(reflect(a)) == a


def test_naive_reflection_breaks_membership(cat7):
    n = 7
    flip = {i: n + 1 - i for i in range(1, n + 1)}
    outside = [x for x in cat7.rays if not is_in_Z(_relabel(x, flip))]
    assert outside, "relabeling symbols is not a symmetry of Z"
    assert all(is_in_Z(reflect(x)) for x in cat7.rays)


def test_primitive_scaling():
    a = arrangement(3, 6, {(2, 4, 6): 4, (1, 2, 4): 6})
    assert primitive(a) == arrangement(3, 6, {(2, 4, 6): 2, (1, 2, 4): 3})
    assert dihedral_canonical(a) == dihedral_canonical(rotate(primitive(a), 2))


def test_catalog_6(cat6):
    assert cat6.labeled_count == len(cat6.rays) == 16
    assert len(cat6.entries) == 3 and rotation_classes(cat6) == 4
    assert arrangement(3, 6, {(2, 4, 6): 1}) in cat6.rays
    assert arrangement(3, 6, BIPYRAMID) in cat6.rays
    for x in cat6.rays:
        assert is_in_Z(x) and is_ray(x)
        assert not decomposes_in_pairs(x, cat6.rays)


def test_catalog_entries_are_inequivalent(cat6, cat7):
    for cat in (cat6, cat7):
        canon = [dihedral_canonical(e.arrangement) for e in cat.entries]
        assert len(set(map(repr, canon))) == len(canon)
        assert sum(len(dihedral_orbit(e.arrangement)) for e in cat.entries) == cat.labeled_count


def test_catalog_7(cat7):
    assert cat7.labeled_count == 42
    assert arrangement(3, 7, W37) in cat7.rays
    for e in cat7.entries:
        assert is_in_Z(e.arrangement) and entry_closure_ok(e)


def test_catalog_json_lines(cat6):
    lines = cat6.to_json_lines()
    assert len(lines) == len(cat6.entries)
    for line, e in zip(lines, cat6.entries):
        data = json.loads(line)
        assert WeightedBladeArrangement.from_json(data["arrangement"]) == e.arrangement
        assert data["orbit_size"] == e.orbit_size
    rows = cat6.summary()
    assert sum(r["rays"] for r in rows) == 16


def test_catalog_domain():
    with pytest.raises(DomainError):
        catalog_rays(5)
    with pytest.raises(DomainError):
        catalog_rays(8, k=4)
