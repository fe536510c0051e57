"""Worked examples with stored golden outputs, replayed by the CLI.

Each example is a zero-argument function returning a JSON value.  The
goldens live in ``data/goldens.json`` and were transcribed by hand; a few
carry an ``erratum`` note where the printed statement had to be corrected
(the note says what was changed and why).
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from importlib import resources
from itertools import combinations
from typing import Callable

from . import jsonio
from .blade_complex import (
    DecoratedOSP,
    WeightedBladeArrangement,
    arrangement,
    blade,
    boundary,
    boundary_j,
    boundary_L,
    dosp_from_vertex,
    plate_system,
    support_on_face,
)
from .building_blocks import TauSpec, check_tau_closure, dj_vertices, tau, tau_count
from .combinatorics import GroundFrame, cyclic_intervals, interlaced_complements, is_frozen
from .heights import (
    VertexVector,
    blade_image,
    cube_L,
    cube_R,
    eta,
    height_vector,
    is_frozen_vertex,
    kinematic_basis,
)
from .linalg import rank
from .tropical import face_weights, faces_report, is_in_Z, is_pos_plucker, pairs_not_ws_check, to_blades

W37 = {(2, 4, 7): -1, (1, 2, 4): 1, (2, 5, 7): 1, (3, 4, 7): 1}
BIPYRAMID = {(2, 4, 6): -1, (1, 2, 4): 1, (3, 4, 6): 1, (2, 5, 6): 1}
TAU_13579 = TauSpec(5, 12, (1, 3, 5, 7, 9), ((2,), (4,), (6,), (8,), (10,)))

EXAMPLES: dict[str, Callable[[], object]] = {}


def example(fn):
    EXAMPLES[fn.__name__] = fn
    return fn


def _terms(a: WeightedBladeArrangement):
    return a.to_json()["terms"]


@example
def intervals_456_on_face_1():
    return [list(b) for b in cyclic_intervals(GroundFrame(8, (1,)), (4, 5, 6))]


@example
def complements_2578():
    return [list(b) for b in interlaced_complements(GroundFrame(9), (2, 5, 7, 8))]


@example
def frozen_456_on_face_1():
    return is_frozen(GroundFrame(8, (1,)), (4, 5, 6))


@example
def d1_beta_1456():
    return _terms(boundary_j(blade(4, 8, (), (1, 4, 5, 6)), 1))


@example
def d2_beta_1456():
    return _terms(boundary_j(blade(4, 8, (), (1, 4, 5, 6)), 2))


@example
def boundary_w37():
    return _terms(boundary(arrangement(3, 7, W37)))


@example
def boundary_tau_4_7_11():
    return _terms(boundary_L(tau(TAU_13579), (4, 7, 11)))


@example
def boundary_tau_6_11():
    return _terms(boundary_L(tau(TAU_13579), (6, 11)))


@example
def support_w37_face_1():
    return [list(p) for p in support_on_face(arrangement(3, 7, W37), (1,))]


@example
def dosp_246():
    return dosp_from_vertex(GroundFrame(6), (2, 4, 6)).to_json()


@example
def dosp_25_face_6():
    return dosp_from_vertex(GroundFrame(6, (6,)), (2, 5)).to_json()


@example
def dosp_24_face_1():
    d = dosp_from_vertex(GroundFrame(7, (1,)), (2, 4))
    return d == DecoratedOSP(((3, 4), (5, 6, 7, 2)), (1, 1))


@example
def plate_123_456():
    rows = plate_system(DecoratedOSP(((1, 2, 3), (4, 5, 6)), (2, 1))).inequalities
    return [[list(S), r] for S, r in rows]


@example
def frozen_heights_are_linear():
    out = {}
    for k, n in [(2, 4), (2, 5), (3, 6)]:
        out[f"{k},{n}"] = all(not blade_image(height_vector(k, n, J))
                              for J in combinations(range(1, n + 1), k) if is_frozen_vertex(k, n, J))
    return out


def inversion_residual(k: int, n: int, J) -> VertexVector:
    """``sum_I rho_J(e_I) L(e^I) + n e^J`` with the frozen coordinates dropped."""
    acc = VertexVector.basis(k, n, J) * n
    for Im, r in height_vector(k, n, J).items():
        acc = acc + r * cube_L(k, n, _tuple(Im))
    return VertexVector(k, n, {m: c for m, c in acc.items() if not is_frozen_vertex(k, n, _tuple(m))})


@example
def inversion_2_4():
    return all(not inversion_residual(2, 4, J) for J in combinations(range(1, 5), 2))


def _n4_combination() -> VertexVector:
    # R(e^24) - R(e^14) - R(e^23) + R(e^13), i.e. minus the cube of 24
    return -cube_R(cube_L(2, 4, (2, 4)))


@example
def cube_entry_12():
    return jsonio.rational_str(_n4_combination()[(1, 2)])


@example
def cube_entry_24():
    return jsonio.rational_str(_n4_combination()[(2, 4)])


@example
def eta_frozen_vanishes():
    rng = random.Random(7)
    out = {}
    for k, n in [(2, 5), (3, 6)]:
        basis = kinematic_basis(k, n)
        ok = True
        for _ in range(20):
            v = VertexVector(k, n)
            for b in basis:
                v = v + b * rng.randint(-3, 3)
            ok = ok and all(eta(v, J) == 0 for J in combinations(range(1, n + 1), k) if is_frozen_vertex(k, n, J))
        out[f"{k},{n}"] = ok
    return out


@example
def eta_matrix_invertible():
    out = {}
    for k, n in [(2, 5), (3, 6)]:
        basis = kinematic_basis(k, n)
        live = [J for J in combinations(range(1, n + 1), k) if not is_frozen_vertex(k, n, J)]
        rows = [[eta(b, J) for b in basis] for J in live]
        out[f"{k},{n}"] = len(rows) == len(basis) and rank(rows) == len(basis)
    return out


@example
def heights_are_positive_plucker():
    return all(is_pos_plucker(height_vector(3, 6, J)).ok for J in combinations(range(1, 7), 3))


@example
def heights_map_to_blades():
    ok = True
    for J in combinations(range(1, 7), 3):
        want = WeightedBladeArrangement(3, 6, {(0, _mask(J)): 1})
        ok = ok and to_blades(height_vector(3, 6, J)) == want
    return ok


@example
def d6_coefficient_table():
    # the coefficient of beta^(6)_ij as the list of c_abc feeding into it
    table = {}
    for J in combinations(range(1, 7), 3):
        w = face_weights(arrangement(3, 6, {J: 1}), (6,))
        for ij in w.support():
            table.setdefault("".join(map(str, ij)), []).append("".join(map(str, J)))
    return {key: sorted(v) for key, v in sorted(table.items())}


@example
def bipyramid_in_z():
    return is_in_Z(arrangement(3, 6, BIPYRAMID)).ok


@example
def w37_in_z():
    return is_in_Z(arrangement(3, 7, W37)).ok


@example
def crossing_pairs_face_6():
    # the pairs whose weights enter the min-condition for 14 and for 35
    from .combinatorics import _weakly_separated, to_mask
    frame = GroundFrame(6, (6,))
    out = {}
    for target in [(1, 4), (3, 5)]:
        feeders = []
        for J in combinations(range(1, 7), 3):
            w = face_weights(arrangement(3, 6, {J: 1}), (6,))
            for ij in w.support():
                if not _weakly_separated(frame, to_mask(ij), to_mask(target)):
                    feeders.append("".join(map(str, J)))
        out["".join(map(str, target))] = sorted(feeders)
    return out


@example
def min_condition_holds_on_bipyramid():
    return pairs_not_ws_check(arrangement(3, 6, BIPYRAMID), (6,))


@example
def faces_report_w37_face_1():
    _, dosps = faces_report(arrangement(3, 7, W37))[(1,)]
    want = {DecoratedOSP(((3, 4), (5, 6, 7, 2)), (1, 1)), DecoratedOSP(((2, 3, 4, 5), (6, 7)), (1, 1))}
    return len(dosps) == 2 and set(dosps) == want


@example
def tau_count_2578():
    return sum(1 for _ in dj_vertices(4, 9, (2, 5, 7, 8)))


@example
def tau_count_formula():
    rng = random.Random(11)
    ok = True
    for _ in range(30):
        J = tuple(sorted(rng.sample(range(1, 10), 4)))
        if is_frozen_vertex(4, 9, J):
            continue
        ok = ok and tau_count(4, 9, J) == sum(1 for _ in dj_vertices(4, 9, J))
    return ok


@example
def tau_246_135():
    return _terms(tau(TauSpec(3, 6, (2, 4, 6), ((3,), (5,), (1,)))))


@example
def tau_13579():
    return _terms(tau(TAU_13579))


@example
def d1_tau_13579():
    t = boundary_j(tau(TAU_13579), 1)
    return {"terms": _terms(t), "is_tau": check_tau_closure(TAU_13579)[1].status == "matched"}


@example
def d6_11_tau_is_tau():
    img = boundary_L(tau(TAU_13579), (6, 11))
    negs = [t["c"] for t in _terms(img) if t["c"].startswith("-")]
    closure = check_tau_closure(TauSpec(5, 12, (3, 5, 7, 9), ((4,), (6,), (8,), (10,)), (1,)))
    return {"negative": negs, "matched": all(e.status != "mismatch" for e in closure.values())}


@example
def catalog_6_bipyramid():
    from .enumeration import catalog_rays
    rays = catalog_rays(6).rays
    want = [arrangement(3, 6, {(2, 4, 6): 1}), arrangement(3, 6, BIPYRAMID)]
    return [w in rays and is_in_Z(w).ok for w in want]


@example
def catalog_7_w37():
    from .enumeration import catalog_rays
    return arrangement(3, 7, W37) in catalog_rays(7).rays


@example
def cli_check_w37():
    from .cli import main
    import contextlib
    import io
    payload = jsonio.dumps(arrangement(3, 7, W37).to_json())
    with contextlib.redirect_stdout(io.StringIO()):
        return main(["check", "--z", payload])


def _mask(J) -> int:
    from .combinatorics import to_mask
    return to_mask(J)


def _tuple(m: int) -> tuple[int, ...]:
    from .combinatorics import from_mask
    return from_mask(m)


def load_goldens() -> dict:
    text = resources.files(__package__).joinpath("data/goldens.json").read_text()
    return json.loads(text)


def replay(names=None) -> list[dict]:
    """Run examples and diff their canonical JSON against the goldens."""
    goldens = load_goldens()
    rows = []
    for name, fn in EXAMPLES.items():
        if names and name not in names:
            continue
        entry = goldens.get(name)
        got = fn()
        row = {"name": name, "ok": entry is not None and jsonio.dumps(got) == jsonio.dumps(entry["value"])}
        if not row["ok"]:
            row["got"] = got
            row["want"] = None if entry is None else entry["value"]
        if entry and "erratum" in entry:
            row["erratum"] = entry["erratum"]
        rows.append(row)
    return rows
