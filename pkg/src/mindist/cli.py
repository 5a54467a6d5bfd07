"""Command-line front end.

Commands:
  mindist    exact minimum distance of a generator matrix file
  brute      brute-force oracle over all 2^k - 1 nonzero codewords
  random     seeded random systematic generator matrix
  construct  run a construction script (cyclic / matrix-product / ops)
  bench      run one strategy and report combinations per second

Reports go to standard output as key=value lines; --out additionally
writes them to a file (atomically, so no partial files survive errors).
Interrupting a long mindist run (Ctrl-C) still emits the report, which
--resume accepts to continue from the recorded round and upper bound.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import engine
from .constructions import run_construction_script
from .engine import (
    EngineConfig,
    STATUS_UPPER_BOUND_ONLY,
    STRATEGIES,
    brute_force_distance,
    format_report,
    minimum_distance,
    parse_report,
)
from .errors import (
    BudgetExceeded,
    Interrupted,
    InvalidArity,
    InvalidDimensions,
    LengthMismatch,
    MatrixFormatError,
    MindistError,
    NotADivisor,
    NotAUnit,
    RankDeficient,
    ScriptError,
    TooLarge,
)
from .gf2 import (
    format_matrix_text,
    random_systematic_matrix,
    read_matrix_file,
    write_matrix_file,
)

EXIT_OK = 0
EXIT_PARSE = 3
EXIT_RANK_DEFICIENT = 4
EXIT_BUDGET = 5
EXIT_MAX_G = 6
EXIT_NOT_A_DIVISOR = 7
EXIT_NOT_A_UNIT = 8
EXIT_LENGTH_MISMATCH = 9
EXIT_INTERRUPTED = 10
EXIT_TOO_LARGE = 11
EXIT_INVALID = 12
EXIT_SCRIPT = 13

THREADS_ENV_VAR = "MINDIST_THREADS"


def _default_threads() -> int:
    env = os.environ.get(THREADS_ENV_VAR)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _write_text_atomic(path: str, text: str) -> None:
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w", encoding="ascii") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _emit_report(report, out_path: str | None) -> None:
    text = format_report(report)
    sys.stdout.write(text)
    if out_path:
        _write_text_atomic(out_path, text)


def _engine_config(args) -> EngineConfig:
    workers = args.threads if args.threads is not None else _default_threads()
    unroll = args.unroll
    if unroll is None:
        unroll = 2 if args.algorithm == "saved-unrolled" else 1
    if unroll > 1 and args.algorithm != "saved-unrolled":
        raise InvalidArity("--unroll above 1 requires --algorithm saved-unrolled")
    if args.algorithm == "saved-unrolled" and unroll == 1:
        raise InvalidArity("saved-unrolled needs --unroll 2 or 3")
    config = EngineConfig(
        strategy=args.algorithm,
        s=args.s,
        unroll=unroll,
        workers=workers,
        memory_budget=args.budget_mb * 1024 * 1024,
        max_g=args.max_g,
    )
    if getattr(args, "resume", None):
        with open(args.resume, "r", encoding="ascii") as fh:
            prev = parse_report(fh.read())
        config.start_g = prev["g_reached"] + 1
        config.start_upper = prev["distance"]
    if not args.quiet:
        config.progress = lambda g, L, U: print(
            f"g={g} L={L} U={U}", file=sys.stderr, flush=True)
    return config


def _run_engine_command(args, capped_exit: int) -> int:
    try:
        matrix = read_matrix_file(args.infile)
    except (OSError, MatrixFormatError) as exc:
        return _fail(EXIT_PARSE, str(exc))
    try:
        config = _engine_config(args)
    except OSError as exc:
        return _fail(EXIT_PARSE, str(exc))
    except InvalidArity as exc:
        return _fail(EXIT_INVALID, str(exc))
    try:
        report = minimum_distance(matrix, config)
    except Interrupted as exc:
        _emit_report(exc.report, args.out)
        return _fail(EXIT_INTERRUPTED, "interrupted; report written, resume with --resume")
    except RankDeficient as exc:
        return _fail(EXIT_RANK_DEFICIENT, str(exc))
    except BudgetExceeded as exc:
        return _fail(EXIT_BUDGET, str(exc))
    except (InvalidArity, InvalidDimensions) as exc:
        return _fail(EXIT_INVALID, str(exc))
    _emit_report(report, args.out)
    if report.status == STATUS_UPPER_BOUND_ONLY:
        if capped_exit != EXIT_OK:
            print("error: max_g reached; distance= is only an upper bound",
                  file=sys.stderr)
        return capped_exit
    return EXIT_OK


def cmd_mindist(args) -> int:
    return _run_engine_command(args, capped_exit=EXIT_MAX_G)


def cmd_bench(args) -> int:
    # capping the rounds is normal benchmark usage; the report's status
    # field still flags the result as an upper bound only
    return _run_engine_command(args, capped_exit=EXIT_OK)


def cmd_brute(args) -> int:
    try:
        matrix = read_matrix_file(args.infile)
    except (OSError, MatrixFormatError) as exc:
        return _fail(EXIT_PARSE, str(exc))
    try:
        distance = brute_force_distance(matrix, args.max_k)
    except TooLarge as exc:
        return _fail(EXIT_TOO_LARGE, str(exc))
    text = (f"n={matrix.num_cols}\nk={matrix.num_rows}\n"
            f"distance={distance}\nmethod=brute_force\n")
    sys.stdout.write(text)
    if args.out:
        _write_text_atomic(args.out, text)
    return EXIT_OK


def cmd_random(args) -> int:
    try:
        matrix = random_systematic_matrix(args.k, args.n, args.seed)
    except InvalidDimensions as exc:
        return _fail(EXIT_INVALID, str(exc))
    comments = [f"random systematic code k={args.k} n={args.n} seed={args.seed}"]
    if args.out:
        write_matrix_file(args.out, matrix, comments)
        if not args.quiet:
            print(f"wrote [{args.n},{args.k}] matrix to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(format_matrix_text(matrix, comments))
    return EXIT_OK


def cmd_construct(args) -> int:
    try:
        with open(args.infile, "r", encoding="ascii") as fh:
            text = fh.read()
    except OSError as exc:
        return _fail(EXIT_PARSE, str(exc))
    try:
        code = run_construction_script(text, base_dir=os.path.dirname(args.infile) or ".")
    except ScriptError as exc:
        return _fail(EXIT_SCRIPT, str(exc))
    except MatrixFormatError as exc:
        return _fail(EXIT_PARSE, str(exc))
    except NotADivisor as exc:
        return _fail(EXIT_NOT_A_DIVISOR, str(exc))
    except NotAUnit as exc:
        return _fail(EXIT_NOT_A_UNIT, str(exc))
    except LengthMismatch as exc:
        return _fail(EXIT_LENGTH_MISMATCH, str(exc))
    except (InvalidDimensions, OSError) as exc:
        return _fail(EXIT_INVALID, str(exc))
    params = f"[{code.num_cols},{code.num_rows}]"
    if args.out:
        write_matrix_file(args.out, code)
        print(params)
    else:
        sys.stdout.write(format_matrix_text(code))
        print(params, file=sys.stderr)
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser, engine_flags: bool) -> None:
    parser.add_argument("--in", dest="infile", metavar="PATH",
                        help="input file (matrix, or script for construct)")
    parser.add_argument("--out", metavar="PATH", help="output file")
    parser.add_argument("--quiet", action="store_true",
                        help="suppress progress and informational messages")
    if engine_flags:
        parser.add_argument("--algorithm", choices=STRATEGIES, default="saved")
        parser.add_argument("--s", type=int, default=3, choices=range(1, 6),
                            metavar="S", help="saved-store depth (1..5)")
        parser.add_argument("--unroll", type=int, choices=(1, 2, 3), default=None,
                            help="combinations processed together (saved-unrolled)")
        parser.add_argument("--threads", type=int, default=None, metavar="N",
                            help=f"worker count (default: ${THREADS_ENV_VAR} "
                                 "or hardware parallelism)")
        parser.add_argument("--budget-mb", type=int, default=256, metavar="MB",
                            help="memory budget for the saved store")
        parser.add_argument("--max-g", type=int, default=engine.DEFAULT_MAX_G,
                            metavar="G", help="round cap; capped runs report "
                                              "an upper bound only")
        parser.add_argument("--resume", metavar="REPORT",
                            help="resume from a previously written report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mindist",
        description="Minimum distance of binary linear codes "
                    "(Brouwer-Zimmermann method)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mindist", help="compute the exact minimum distance")
    _add_common(p, engine_flags=True)
    p.set_defaults(func=cmd_mindist)

    p = sub.add_parser("bench", help="run one strategy, report throughput")
    _add_common(p, engine_flags=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("brute", help="brute-force all codewords")
    _add_common(p, engine_flags=False)
    p.add_argument("--max-k", type=int, default=28,
                   help="refuse dimensions above this")
    p.set_defaults(func=cmd_brute)

    p = sub.add_parser("random", help="write a seeded random code")
    _add_common(p, engine_flags=False)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("construct", help="run a construction script")
    _add_common(p, engine_flags=False)
    p.set_defaults(func=cmd_construct)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command != "random" and not args.infile:
        print("error: --in is required", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args)
    except MindistError as exc:  # anything a command did not map itself
        return _fail(EXIT_INVALID, str(exc))


if __name__ == "__main__":
    sys.exit(main())
