"""Command-line front end.

Exit codes: 0 ok, 2 malformed input, 3 mathematical failure, 4 size limits.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import errors
from .axioms import TypeCollection, check_tom, tom_contraction, tom_deletion
from .duality import check_slice_structure, dual_complex, pseudohyperplane
from .mixsd import (
    MixedSubdivision,
    mixsd_contraction,
    mixsd_deletion,
    reconstruct_from_topes,
    tom_to_mixsd,
    validate_mixsd,
)
from .ndtype import parse_type
from .realize import WeightMatrix, realizable_tom
from .render import render_arrangement, render_subdivision

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_MATH = 3
EXIT_LIMIT = 4


class InputError(Exception):
    pass


def _load(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _emit(payload, out: str | None) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _kind(data: dict) -> str:
    if "maximal_cells" in data:
        return "subdivision"
    if "types" in data:
        return "tom"
    if "a" in data:
        return "weights"
    if "topes" in data:
        return "topes"
    raise InputError("unrecognised JSON document")


def _subdivision_from(data: dict) -> MixedSubdivision:
    kind = _kind(data)
    if kind == "subdivision":
        return MixedSubdivision.from_json(data)
    if kind == "tom":
        return tom_to_mixsd(TypeCollection.from_json(data))
    if kind == "weights":
        return tom_to_mixsd(realizable_tom(WeightMatrix.from_json(data)))
    raise InputError(f"expected a subdivision, got {kind}")


def cmd_gen(args) -> int:
    W = WeightMatrix.from_json(_load(args.input))
    _emit(realizable_tom(W).to_json(), args.output)
    return EXIT_OK


def cmd_check_tom(args) -> int:
    report = check_tom(TypeCollection.from_json(_load(args.input)))
    _emit(report.to_json(), args.output)
    return EXIT_OK if report.passed else EXIT_MATH


def cmd_check_mixsd(args) -> int:
    data = _load(args.input)
    n, d = int(data["n"]), int(data["d"])
    if "cells" in data:
        cells = [parse_type(s, d) for s in data["cells"]]
    else:
        cells = MixedSubdivision.from_json(data).cells
    report = validate_mixsd(cells, n, d, volume_check=args.volume_check)
    _emit(report.to_json(), args.output)
    return EXIT_OK if report.passed else EXIT_MATH


def cmd_reconstruct(args) -> int:
    data = _load(args.input)
    if isinstance(data, list):
        data = {"topes": data}
    n = args.n if args.n is not None else data.get("n")
    d = args.d if args.d is not None else data.get("d")
    if n is None or d is None:
        raise InputError("reconstruct needs n and d (flags or JSON fields)")
    topes = [parse_type(s, int(d)) for s in data["topes"]]
    S = reconstruct_from_topes(topes, int(n), int(d))
    _emit(S.to_json(), args.output)
    return EXIT_OK


def _transform(args, tom_op, sd_op, index: int) -> int:
    data = _load(args.input)
    kind = _kind(data)
    if kind == "tom":
        _emit(tom_op(TypeCollection.from_json(data), index).to_json(), args.output)
    elif kind == "subdivision":
        _emit(sd_op(MixedSubdivision.from_json(data), index).to_json(), args.output)
    else:
        raise InputError(f"cannot transform a {kind} document")
    return EXIT_OK


def cmd_delete(args) -> int:
    return _transform(args, tom_deletion, mixsd_deletion, args.coord)


def cmd_contract(args) -> int:
    return _transform(args, tom_contraction, mixsd_contraction, args.letter)


def cmd_dualize(args) -> int:
    S = _subdivision_from(_load(args.input))
    try:
        D = dual_complex(S)
    except errors.InvalidSubdivision:
        report = validate_mixsd(S.cells, S.n, S.d)
        _emit(report.to_json(), args.output)
        return EXIT_MATH
    indices = [args.slice] if args.slice else list(range(1, S.n + 1))
    payload = {"format": "tropmat/1", "dual": D.to_json(), "slices": []}
    ok = True
    for i in indices:
        entry = pseudohyperplane(S, i).to_json()
        if S.d == 3:
            rep = check_slice_structure(S, i)
            entry["structure"] = rep.to_json()
            ok = ok and rep.passed
        payload["slices"].append(entry)
    _emit(payload, args.output)
    return EXIT_OK if ok else EXIT_MATH


def cmd_render(args) -> int:
    data = _load(args.input)
    if args.mode == "arrangement":
        if _kind(data) != "weights":
            raise InputError("arrangement mode needs a weight matrix")
        scene = render_arrangement(WeightMatrix.from_json(data), labels=not args.no_labels)
    else:
        scene = render_subdivision(_subdivision_from(data), labels=not args.no_labels)
    _emit(scene.to_svg(), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropmat",
        description="Tropical oriented matroids and mixed subdivisions of dilated simplices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("-i", "--input", required=True, help="input JSON ('-' for stdin)")
        p.add_argument("-o", "--output", help="output path (default stdout)")
        p.set_defaults(func=func)
        return p

    add("gen", cmd_gen, "weight matrix -> realizable TOM")
    add("check-tom", cmd_check_tom, "verify the four TOM axioms")
    p = add("check-mixsd", cmd_check_mixsd, "validate a mixed subdivision")
    p.add_argument("--volume-check", action="store_true", help="also compare cell volumes with n^(d-1)")
    p = add("reconstruct", cmd_reconstruct, "rebuild a subdivision from its topes")
    p.add_argument("-n", type=int)
    p.add_argument("-d", type=int)
    p = add("delete", cmd_delete, "delete a coordinate of a TOM or subdivision")
    p.add_argument("--coord", type=int, required=True)
    p = add("contract", cmd_contract, "contract a letter of a TOM or subdivision")
    p.add_argument("--letter", type=int, required=True)
    p = add("dualize", cmd_dualize, "dual complex and pseudohyperplane slices")
    p.add_argument("--slice", type=int)
    p = add("render", cmd_render, "SVG picture (d = 3)")
    p.add_argument("--mode", choices=["subdivision", "arrangement"], default="subdivision")
    p.add_argument("--no-labels", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except errors.LimitExceeded as exc:
        print(f"tropmat: limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except errors.NotATom as exc:
        if exc.report is not None:
            _emit(exc.report.to_json(), None)
        print(f"tropmat: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (InputError, errors.TropmatError, KeyError, TypeError, ValueError) as exc:
        print(f"tropmat: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
