"""Command-line entry point: ``stabkit <command> [options]``.

Exit status is 0 on success, 1 for invalid input or configuration and 2 when
a resource guard refuses the work.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from collections.abc import Sequence

from . import qchk
from ._search import DEFAULT_BUDGET
from .channels import CHANNELS
from .decode import DECODERS, DEFAULT_MAX_ITER, DEFAULT_NORM
from .distance import is_degenerate, min_weight_logical
from .errors import CodeError, ConfigError, ResourceLimitError
from .harness import ExperimentConfig, run_sweep
from .knill_laflamme import errors_up_to_weight, kl_check
from .registry import build_code
from .stabilizer import StabilizerCode, generator_weights, validate

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RESOURCE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _add_code_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--code", help="construction name, e.g. steane, surface:3, hgp:rep3,rep3")
    src.add_argument("--file", help="QCHK v1 check-matrix file")


def _add_globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    p.add_argument("--seed", type=int, default=default, help="master seed (default 0)")
    p.add_argument("--trials", type=int, default=default, help="trials per eps (default 1000)")
    p.add_argument("--workers", type=int, default=default, help="worker threads (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stabkit", description="Stabilizer code construction, analysis and simulation.")
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", help="write a code's check matrix as QCHK v1")
    p.add_argument("--code", required=True)
    p.add_argument("-o", "--output", help="output path (default: standard output)")

    p = sub.add_parser("params", help="print n, k and the generator weight histogram")
    _add_code_source(p)

    p = sub.add_parser("logicals", help="print the paired logical operators")
    _add_code_source(p)

    p = sub.add_parser("distance", help="brute-force minimum distance up to a weight cap")
    _add_code_source(p)
    p.add_argument("--max-weight", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="candidate budget")
    _add_globals(p, suppress=True)

    p = sub.add_parser("klcheck", help="dense Knill-Laflamme check on all errors of weight <= t")
    _add_code_source(p)
    p.add_argument("--max-weight", type=int, required=True, help="t")

    p = sub.add_parser("simulate", help="Monte Carlo logical error rate sweep, CSV output")
    _add_code_source(p)
    p.add_argument("--channel", choices=sorted(CHANNELS), default="depolarizing")
    p.add_argument("--eps", type=float, nargs="+", required=True)
    p.add_argument("--decoder", choices=DECODERS, default="mlcoset")
    p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    p.add_argument("--norm", type=float, default=DEFAULT_NORM)
    p.add_argument("--timing", action="store_true", help="fill the seconds column (breaks byte-identical output)")
    p.add_argument("-o", "--output", help="CSV path (default: standard output)")
    _add_globals(p, suppress=True)
    return parser


def _load(args: argparse.Namespace) -> StabilizerCode:
    if args.file:
        return validate(qchk.read(args.file), allow_redundant=True)
    return build_code(args.code)


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_construct(args) -> None:
    _emit(qchk.dumps(build_code(args.code).check), args.output)


def _cmd_params(args) -> None:
    code = _load(args)
    hist = Counter(generator_weights(code))
    print(f"n={code.n}")
    print(f"k={code.k}")
    print(f"r={code.r}")
    print("weights " + " ".join(f"{w}:{hist[w]}" for w in sorted(hist)))


def _cmd_logicals(args) -> None:
    code = _load(args)
    for j, (xbar, zbar) in enumerate(code.logical_pairs, start=1):
        print(f"X{j}: {xbar}")
        print(f"Z{j}: {zbar}")


def _cmd_distance(args) -> None:
    code = _load(args)
    if args.max_weight < 1:
        raise ConfigError("--max-weight must be at least 1")
    cap = min(args.max_weight, code.n)
    found = min_weight_logical(code, cap, budget=args.budget, workers=args.workers or 1)
    if code.k == 0:
        print("k=0: no logical operators")
    elif found is None:
        print(f"d>{cap}")
    else:
        d, witness = found
        print(f"d={d}")
        print(f"witness: {witness}")
        print(f"degenerate={str(is_degenerate(code, d, budget=args.budget)).lower()}")


def _cmd_klcheck(args) -> None:
    code = _load(args)
    if args.max_weight < 0:
        raise ConfigError("--max-weight must be nonnegative")
    errors = errors_up_to_weight(code.n, args.max_weight)
    ok, _ = kl_check(code, errors)
    verdict = "pass" if ok else "fail"
    print(f"{verdict}: {len(errors)} errors of weight <= {args.max_weight}")


def _cmd_simulate(args) -> None:
    cfg = ExperimentConfig(
        code=args.code or "",
        code_file=args.file,
        channel=args.channel,
        eps=tuple(args.eps),
        decoder=args.decoder,
        max_iter=args.max_iter,
        norm=args.norm,
        trials=1000 if args.trials is None else args.trials,
        seed=0 if args.seed is None else args.seed,
        workers=1 if args.workers is None else args.workers,
        timing=args.timing,
    )
    _emit(run_sweep(cfg).to_csv(), args.output)


COMMANDS = {
    "construct": _cmd_construct,
    "params": _cmd_params,
    "logicals": _cmd_logicals,
    "distance": _cmd_distance,
    "klcheck": _cmd_klcheck,
    "simulate": _cmd_simulate,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except ResourceLimitError as exc:
        print(f"stabkit: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ConfigError, CodeError, ValueError, OSError) as exc:
        print(f"stabkit: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
