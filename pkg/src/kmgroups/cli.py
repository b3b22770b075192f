"""Command-line front end.

Commands: classify, roots, module, verify, kernel, commutator-signs, word.
All output is deterministic JSON (fixed key order, sorted collections).

Exit codes:
  0  success
  1  I/O error (unreadable input, unwritable output)
  2  invalid input (bad GCM, non-dominant lambda, bad word syntax)
  3  at least one relation instance failed
  4  at least one relation instance had an empty validity window
  5  kernel oracle mismatch (internal inconsistency)
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cartan, roots as rootsmod
from .cartan import (
    DisconnectedInput,
    NotGCM,
    NotSimplyLaced,
    classify,
    gcm_from_json,
    gcm_to_json,
    is_hyperbolic,
)
from .groupgen import (
    NonUnitScalar,
    WindowEmpty,
    WordSyntaxError,
    evaluate_word,
    parse_word,
)
from .verifier import (
    OracleMismatch,
    kernel_probe,
    resolve_commutator_sign,
    verify_all,
)
from .weightmod import (
    DepthOverflow,
    DominantWeight,
    NonDominantWeight,
    build_module,
    module_to_json,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_INVALID = 2
EXIT_RELATION_FAILED = 3
EXIT_WINDOW_EMPTY = 4
EXIT_ORACLE_MISMATCH = 5


def _load_gcm(path: str, require_simply_laced: bool = False):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise _CliError(EXIT_IO, f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise _CliError(EXIT_INVALID, f"bad JSON in {path}: {exc}")
    try:
        return gcm_from_json(data, require_simply_laced=require_simply_laced)
    except (NotGCM, NotSimplyLaced) as exc:
        raise _CliError(EXIT_INVALID, f"{type(exc).__name__}: {exc}")


def _parse_lambda(text: str, rank: int) -> DominantWeight:
    try:
        coords = tuple(int(c) for c in text.split(","))
    except ValueError:
        raise _CliError(EXIT_INVALID, f"bad lambda {text!r}")
    if len(coords) != rank:
        raise _CliError(
            EXIT_INVALID, f"lambda has {len(coords)} coordinates, rank is {rank}"
        )
    try:
        return DominantWeight(coords)
    except NonDominantWeight as exc:
        raise _CliError(EXIT_INVALID, f"NonDominantWeight: {exc}")


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _emit(payload: dict, out_path: str | None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if out_path:
        try:
            with open(out_path, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise _CliError(EXIT_IO, f"cannot write {out_path}: {exc}")
    else:
        sys.stdout.write(text)


def _build(args, require_lambda=True):
    gcm = _load_gcm(args.gcm, require_simply_laced=True)
    lam = _parse_lambda(args.lam, gcm.rank)
    try:
        return gcm, lam, build_module(
            gcm, lam, args.depth, max_basis=args.max_basis
        )
    except DepthOverflow as exc:
        raise _CliError(EXIT_INVALID, f"DepthOverflow: {exc}")


def cmd_classify(args) -> int:
    gcm = _load_gcm(args.gcm)
    try:
        hyperbolic = is_hyperbolic(gcm)
    except DisconnectedInput:
        hyperbolic = False
    payload = {
        "type": classify(gcm),
        "simply_laced": gcm.simply_laced,
        "hyperbolic": hyperbolic,
    }
    _emit(payload, args.out)
    return EXIT_OK


def cmd_roots(args) -> int:
    gcm = _load_gcm(args.gcm, require_simply_laced=True)
    if args.height < 1:
        raise _CliError(EXIT_INVALID, "height bound must be >= 1")
    rset = rootsmod.enumerate_real_roots(gcm, args.height)
    positives = rset.positive()
    payload = {
        "diagram": gcm_to_json(gcm),
        "height_bound": args.height,
        "count": len(rset),
        "positive_roots": [list(r.coeffs) for r in positives],
    }
    _emit(payload, args.out)
    return EXIT_OK


def cmd_module(args) -> int:
    _, _, module = _build(args)
    _emit(module_to_json(module), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    _, _, module = _build(args)
    try:
        report = verify_all(
            module, min_window=args.min_window, jobs=args.jobs
        )
    except OracleMismatch as exc:
        _emit({"error": f"OracleMismatch: {exc}"}, args.out)
        return EXIT_ORACLE_MISMATCH
    _emit(report.to_json(), args.out)
    if any(r.status == "failed" for r in report.results):
        return EXIT_RELATION_FAILED
    if report.any_window_empty:
        return EXIT_WINDOW_EMPTY
    return EXIT_OK


def cmd_kernel(args) -> int:
    gcm, lam, module = _build(args)
    try:
        kernel = kernel_probe(module)
    except OracleMismatch as exc:
        _emit({"error": f"OracleMismatch: {exc}"}, args.out)
        return EXIT_ORACLE_MISMATCH
    payload = {
        "diagram": gcm_to_json(gcm),
        "lambda": list(lam.coords),
        "depth": module.depth,
        "kernel": kernel,
    }
    _emit(payload, args.out)
    return EXIT_OK


def cmd_commutator_signs(args) -> int:
    gcm, lam, module = _build(args)
    signs = []
    for i, j in sorted(
        (i, j)
        for i in range(gcm.rank)
        for j in range(gcm.rank)
        if i != j and gcm.adjacent(i, j)
    ):
        try:
            eps = resolve_commutator_sign(module, i, j)
        except WindowEmpty:
            return EXIT_WINDOW_EMPTY
        signs.append({"pair": [i + 1, j + 1], "sign": eps})
    payload = {
        "diagram": gcm_to_json(gcm),
        "lambda": list(lam.coords),
        "depth": module.depth,
        "signs": signs,
    }
    _emit(payload, args.out)
    return EXIT_OK


def cmd_word(args) -> int:
    gcm, lam, module = _build(args)
    try:
        symbols = parse_word(args.word, gcm.rank)
    except (WordSyntaxError, NonUnitScalar) as exc:
        raise _CliError(EXIT_INVALID, f"{type(exc).__name__}: {exc}")
    mat = evaluate_word(module, symbols)
    window = mat.valid_depth()
    columns = []
    for k in module.weight_keys():
        for c in range(module.slices[k].rank):
            if not mat.exact[k][c]:
                continue
            columns.append(
                {
                    "source": {"depth_vector": list(k), "index": c},
                    "image": [
                        {"depth_vector": list(t), "entries": list(v)}
                        for t, v in sorted(mat.column(k, c).items())
                    ],
                }
            )
    payload = {
        "diagram": gcm_to_json(gcm),
        "lambda": list(lam.coords),
        "depth": module.depth,
        "word": args.word,
        "window": window,
        "columns": columns,
    }
    _emit(payload, args.out)
    if window < 0:
        return EXIT_WINDOW_EMPTY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kmgroups",
        description="Exact computations in simply-laced hyperbolic "
        "Kac-Moody groups over Z",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_lambda=False):
        p.add_argument("--gcm", required=True, help="path to GCM JSON file")
        p.add_argument("--out", default=None, help="output JSON path (default stdout)")
        if needs_lambda:
            p.add_argument(
                "--lambda",
                dest="lam",
                required=True,
                help='dominant weight coordinates, e.g. "1,1,1,1"',
            )
            p.add_argument("--depth", type=int, required=True)
            p.add_argument(
                "--max-basis",
                type=int,
                default=None,
                help="cap on total basis vectors (DepthOverflow beyond)",
            )

    p = sub.add_parser("classify", help="diagram type / simply-laced / hyperbolic")
    add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("roots", help="enumerate real roots up to a height bound")
    add_common(p)
    p.add_argument("--height", type=int, required=True)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("module", help="build a depth-truncated Z-form")
    add_common(p, needs_lambda=True)
    p.set_defaults(func=cmd_module)

    p = sub.add_parser("verify", help="verify the relations R1-R12")
    add_common(p, needs_lambda=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument(
        "--min-window",
        type=int,
        default=0,
        help="minimum joint validity window required per instance",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("kernel", help="probe the kernel intersection with H(Z)")
    add_common(p, needs_lambda=True)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser(
        "commutator-signs", help="resolve structure-constant signs per adjacent pair"
    )
    add_common(p, needs_lambda=True)
    p.set_defaults(func=cmd_commutator_signs)

    p = sub.add_parser("word", help="evaluate a generator word on the module")
    add_common(p, needs_lambda=True)
    p.add_argument("--word", required=True, help='e.g. "X1(1) S2 S1^-1 Y3(-2)"')
    p.set_defaults(func=cmd_word)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
