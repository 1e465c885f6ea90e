"""Command-line front end.

    symcurve <classify|invariants|fan|galois|mv> [--format json|text]
             [--which total|proper|diagonal] [--dim N] [--pretty] FILES...

Each input file is a JSON document ``{"points": [[...], ...], "name": "..."}``.
Galois inputs may give ``{"coefficients": {"j": [k, ...], ...}}`` instead.
Exit codes: 0 success, 1 input error, 2 precondition violation, 3 internal check failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Any, Sequence

from . import bkk, galois
from . import invariants as iv
from . import symmetric as sy
from .lattice import LatticeError

SCHEMA_VERSION = "1"


class InputError(Exception):
    """Malformed input document."""


class PreconditionError(Exception):
    """Valid input that the requested computation does not accept."""


# ---------------------------------------------------------------------------
# input


def _integer(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"expected an integer, got {x!r}")
    return x


def _points(raw, path: str, dim: int | None) -> tuple[tuple[int, ...], ...]:
    if not isinstance(raw, list) or not raw:
        raise InputError(f"{path}: 'points' must be a non-empty list")
    pts = []
    for p in raw:
        if not isinstance(p, list):
            raise InputError(f"{path}: every point must be a list of integers")
        pts.append(tuple(_integer(c) for c in p))
    dims = {len(p) for p in pts}
    if len(dims) != 1:
        raise InputError(f"{path}: points have mixed dimensions")
    if dim is not None and dims != {dim}:
        raise InputError(f"{path}: expected points in Z^{dim}")
    unique = sorted(set(pts))
    if len(unique) < len(pts):
        print(f"warning: {path}: removed {len(pts) - len(unique)} duplicate point(s)", file=sys.stderr)
    return tuple(unique)


def load_document(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg})") from exc
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be an object")
    return doc


def read_support(path: str, dim: int | None = 3) -> tuple[str | None, tuple[tuple[int, ...], ...]]:
    doc = load_document(path)
    if "points" not in doc:
        raise InputError(f"{path}: missing 'points'")
    return doc.get("name"), _points(doc["points"], path, dim)


def read_family(path: str) -> tuple[str | None, galois.FamilySupport]:
    doc = load_document(path)
    if "points" in doc:
        return doc.get("name"), galois.FamilySupport(_points(doc["points"], path, 2))
    coeffs = doc.get("coefficients")
    if not isinstance(coeffs, dict) or not coeffs:
        raise InputError(f"{path}: need 'points' or a non-empty 'coefficients' map")
    supports = {}
    for key, ks in coeffs.items():
        try:
            j = int(key)
        except ValueError as exc:
            raise InputError(f"{path}: coefficient key {key!r} is not an integer") from exc
        if not isinstance(ks, list):
            raise InputError(f"{path}: coefficient {key} must list t-exponents")
        supports[j] = sorted({_integer(k) for k in ks})
    try:
        return doc.get("name"), galois.FamilySupport.from_coefficients(supports)
    except LatticeError as exc:
        raise InputError(f"{path}: {exc}") from exc


# ---------------------------------------------------------------------------
# serialization


def fan_json(fan: iv.TropicalFan | None) -> list | None:
    if fan is None:
        return None
    return [{"ray": list(g), "multiplicity": w} for g, w in sorted(fan.rays)]


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, iv.TropicalFan):
        return fan_json(obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


def classification_json(report: sy.ClassificationReport, A) -> dict:
    out = to_jsonable(report)
    out["exceptional"] = report.exceptional
    found = sy.minimal_witness(A) if not report.exceptional else None
    out["minimal_witness"] = None if found is None else {"points": to_jsonable(found[0]), "shape": found[1]}
    return out


def curve_json(rep: iv.CurveReport) -> dict:
    out = to_jsonable(rep)
    out["classification"] = to_jsonable(rep.classification)
    out["blinders"] = [
        {k: v for k, v in to_jsonable(b).items() if k != "preimage"} for b in rep.blinders
    ]
    return out


def _text(value: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v, sort_keys=True)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(v, sort_keys=True)}")
    else:
        lines.append(f"{pad}{json.dumps(value)}")
    return lines


def _flat(v) -> bool:
    if isinstance(v, dict):
        return False
    return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and all(not isinstance(y, (dict, list)) for y in x)) for x in v)


def render(docs: list[dict], fmt: str, pretty: bool) -> str:
    if fmt == "text":
        blocks = ["\n".join(_text(d)) for d in docs]
        return "\n\n".join(blocks) + "\n"
    payload = docs[0] if len(docs) == 1 else docs
    if pretty:
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def _envelope(command: str, name, path: str, body: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "input": path, "name": name, "result": body}


# ---------------------------------------------------------------------------
# commands


def _require_points(A, path: str):
    if len(A) <= 1:
        raise PreconditionError(f"{path}: a support set needs at least two points")


def cmd_classify(path: str, args) -> dict:
    name, A = read_support(path)
    _require_points(A, path)
    return _envelope("classify", name, path, classification_json(sy.classify(A), A))


def cmd_invariants(path: str, args) -> dict:
    name, A = read_support(path)
    _require_points(A, path)
    return _envelope("invariants", name, path, curve_json(iv.curve_report(A)))


def cmd_fan(path: str, args) -> dict:
    name, A = read_support(path)
    _require_points(A, path)
    cls = sy.classify(A)
    if cls.canonical_type == "D":
        raise PreconditionError(f"{path}: type D support sets define a surface, not a curve")
    which = args.which
    if which == "proper" and cls.exceptional:
        raise PreconditionError(f"{path}: the proper fan needs a non-exceptional support set (type {cls.canonical_type})")
    if which == "total":
        fan = iv.tropical_fan_symmetric(A)
    elif which == "proper":
        fan = iv.tropical_fan_proper(A)
    else:
        fan = iv.tropical_fan_diagonal(A)
    body = {"which": which, "rays": fan_json(fan), "total_multiplicity": fan.total, "balanced": fan.is_balanced()}
    return _envelope("fan", name, path, body)


def cmd_galois(path: str, args) -> dict:
    name, F = read_family(path)
    body = to_jsonable(galois.galois_verdict(F))
    body["points"] = to_jsonable(F.points)
    return _envelope("galois", name, path, body)


def cmd_mv(paths: Sequence[str], args) -> dict:
    dim = args.dim
    if dim not in (1, 2, 3):
        raise PreconditionError("--dim must be 1, 2 or 3")
    if len(paths) != dim:
        raise PreconditionError(f"mixed volume in dimension {dim} needs {dim} files, got {len(paths)}")
    loaded = [read_support(p, dim) for p in paths]
    value = bkk.mixed_volume(*[A for _, A in loaded])
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "mv",
        "inputs": list(paths),
        "names": [n for n, _ in loaded],
        "result": {"dim": dim, "mixed_volume": value},
    }


COMMANDS = {"classify": cmd_classify, "invariants": cmd_invariants, "fan": cmd_fan, "galois": cmd_galois}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symcurve", description="Combinatorial invariants of symmetric spatial curves.")
    parser.add_argument("command", choices=[*COMMANDS, "mv"])
    parser.add_argument("files", nargs="+", metavar="FILES")
    parser.add_argument("--format", choices=["json", "text"], default="json")
    parser.add_argument("--which", choices=["total", "proper", "diagonal"], default="total")
    parser.add_argument("--dim", type=int, default=3)
    parser.add_argument("--pretty", action="store_true")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        if args.command == "mv":
            docs = [cmd_mv(args.files, args)]
        else:
            docs = [COMMANDS[args.command](p, args) for p in args.files]
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (PreconditionError, LatticeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(render(docs, args.format, args.pretty))
    return 0


if __name__ == "__main__":
    sys.exit(main())
