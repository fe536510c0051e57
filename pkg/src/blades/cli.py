"""Command-line front end: ``blades VERB [options] [INPUT]``.

INPUT is a path, ``-`` for standard input, or inline JSON.  Output is
canonical JSON on standard output.  Exit codes: 0 success or membership,
1 certified non-membership (the witness is printed) or a failed replay,
2 input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import jsonio
from .blade_complex import WeightedBladeArrangement, boundary, boundary_L
from .building_blocks import TauSpec, check_tau_closure, dj_vertices, tau
from .combinatorics import DomainError, GroundFrame, _is_frozen, from_mask
from .heights import VertexVector, all_subsets, eta
from .tropical import faces_report, is_in_X, is_in_Y, is_in_Z, is_pos_plucker, to_blades

VERBS = ("boundary", "check", "to-blades", "faces", "eta", "tau", "enumerate", "catalog",
         "replay-paper-examples")


class InputError(Exception):
    pass


def _face(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(sorted(int(x) for x in text.replace(" ", "").split(",") if x))
    except ValueError as exc:
        raise InputError(f"--face expects comma-separated integers, got {text!r}") from exc


def _read(source: str | None):
    if source is None:
        raise InputError("this verb needs an input (path, '-' or inline JSON)")
    if source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith(("{", "[")):
        text = source
    else:
        try:
            with open(source) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON at line {exc.lineno} column {exc.colno} (char {exc.pos}): {exc.msg}") from exc


def _with_shape(data, args) -> dict:
    if not isinstance(data, dict):
        raise InputError("expected a JSON object")
    data = dict(data)
    if args.k is not None:
        data.setdefault("k", args.k)
    if args.frame is not None:
        data.setdefault("n", args.frame)
    return data


def _arrangement(data, args) -> WeightedBladeArrangement:
    return WeightedBladeArrangement.from_json(_with_shape(data, args))


def _vector(data, args) -> VertexVector:
    return VertexVector.from_json(_with_shape(data, args))


# ------------------------------------------------------------------ verbs

def _boundary(args):
    a = _arrangement(_read(args.input), args)
    face = _face(args.face)
    out = boundary_L(a, face) if face else boundary(a)
    return out.to_json(), 0


def _check(args):
    data = _with_shape(_read(args.input), args)
    if "coords" in data:
        v = is_pos_plucker(VertexVector.from_json(data))
        key = "pos_plucker"
    else:
        a = WeightedBladeArrangement.from_json(data)
        if args.x:
            v, key = is_in_X(a), "in_X"
        elif args.y:
            v, key = is_in_Y(a), "in_Y"
        else:
            v, key = is_in_Z(a), "in_Z"
    out = {key: v.ok}
    if v.witness is not None:
        out["witness"] = v.witness
    return out, 0 if v.ok else 1


def _to_blades(args):
    return to_blades(_vector(_read(args.input), args)).to_json(), 0


def _faces(args):
    a = _arrangement(_read(args.input), args)
    v = is_in_Z(a)
    if not v:
        return {"in_Z": False, "witness": v.witness}, 1
    want = _face(args.face)
    rows = []
    for L, (local, dosps) in sorted(faces_report(a).items()):
        if want and L != want:
            continue
        rows.append({"L": list(L), "terms": local.to_json()["terms"], "dosps": [d.to_json() for d in dosps]})
    return {"k": a.k, "n": a.n, "faces": rows}, 0


def _eta(args):
    data = _with_shape(_read(args.input), args)
    s = VertexVector.from_json(data)
    wanted = data.get("J")
    if wanted is not None:
        rows = [tuple(sorted(wanted))]
    else:
        frame = GroundFrame(s.n)
        rows = [from_mask(m) for m in all_subsets(s.k, s.n) if not _is_frozen(frame, m)]
    return {"k": s.k, "n": s.n,
            "eta": [{"J": list(J), "v": jsonio.rational_str(eta(s, J))} for J in rows]}, 0


def _tau(args):
    data = _with_shape(_read(args.input), args)
    if "I_blocks" not in data:
        try:
            k, n, J = int(data["k"]), int(data["n"]), data["J"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"tau listing needs k, n and J: {exc}") from exc
        specs = list(dj_vertices(k, n, J, data.get("L", ())))
        return {"k": k, "n": n, "count": len(specs), "specs": [s.to_json() for s in specs]}, 0
    spec = TauSpec.from_json(data)
    closure = check_tau_closure(spec)
    return {"tau": tau(spec).to_json(),
            "closure": [{"j": j, "status": e.status} for j, e in sorted(closure.items())]}, 0


def _enumerate(args):
    from .enumeration import enumerate_dosps, enumerate_multisplits, eulerian
    if args.k is None or args.n is None:
        raise InputError("enumerate needs --k and --n")
    if args.multisplits:
        items = enumerate_multisplits(args.k, args.n)
    else:
        items = list(enumerate_dosps(args.k, args.n))
    return {"k": args.k, "n": args.n, "count": len(items), "eulerian": eulerian(args.n - 1, args.k - 1),
            "dosps": [d.to_json() for d in items]}, 0


def _catalog(args):
    from .enumeration import catalog_rays, rotation_classes
    if args.n is None:
        raise InputError("catalog needs --n")
    cat = catalog_rays(args.n, args.k or 3)
    out = {"n": cat.n, "labeled_rays": cat.labeled_count, "classes": len(cat.entries),
           "rotation_classes": rotation_classes(cat), "summary": cat.summary()}
    if args.lines:
        out["entries"] = [e.to_json() for e in cat.entries]
    return out, 0


def _replay(args):
    from .paper_examples import replay
    rows = replay()
    failed = [r["name"] for r in rows if not r["ok"]]
    return {"examples": rows, "passed": len(rows) - len(failed), "failed": failed}, 1 if failed else 0


HANDLERS = {
    "boundary": _boundary,
    "check": _check,
    "to-blades": _to_blades,
    "faces": _faces,
    "eta": _eta,
    "tau": _tau,
    "enumerate": _enumerate,
    "catalog": _catalog,
    "replay-paper-examples": _replay,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="blades", description="Weighted blade arrangements and positive tropical heights.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("input", nargs="?", help="path, '-' for stdin, or inline JSON")
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int, help="ground set size for enumerate/catalog")
    p.add_argument("--frame", type=int, metavar="N", help="n for payloads that omit it")
    p.add_argument("--face", metavar="L", help="face label, e.g. 4,7,11")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--z", action="store_true", help="check membership in Z (default)")
    group.add_argument("--x", action="store_true", help="check weak separation only")
    group.add_argument("--y", action="store_true", help="check nonnegativity only")
    p.add_argument("--multisplits", action="store_true", help="enumerate: multi-split classes only (drop the one-block DOSP)")
    p.add_argument("--lines", action="store_true", help="catalog: include every entry")
    return p


def _error(message: str) -> tuple[dict, int]:
    return {"error": message}, 2


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_intermixed_args(argv)
    except SystemExit as exc:  # argparse already printed usage
        return 0 if exc.code == 0 else 2
    try:
        out, code = HANDLERS[args.verb](args)
    except InputError as exc:
        out, code = _error(str(exc))
    except DomainError as exc:
        out, code = _error(str(exc))
    sys.stdout.write(jsonio.dumps(out) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
