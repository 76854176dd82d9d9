"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 data/validation error, 3 degenerate fit.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import datafiles, experiments, synth
from .estimation import DegenerateDesignError, evaluate, fit
from .model import model_from_dict, model_to_dict

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_DEGENERATE = 0, 1, 2, 3

log = logging.getLogger("pathloss_fit")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _float_list(text: str) -> list:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("expected at least one number")
    return values


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--quiet", "-q", action="store_true", help="suppress warnings")

    parser = _Parser(prog="pathloss-fit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("fit", parents=[common], help="fit a CI or ABG model, print FitResult JSON")
    p.add_argument("--model", choices=("ci", "abg"), required=True)
    p.add_argument("--input", "-i", required=True)

    p = sub.add_parser("eval", parents=[common], help="residual statistics of given parameters")
    p.add_argument("--params", required=True, help='inline JSON, e.g. \'{"n": 2.67}\'')
    p.add_argument("--input", "-i", required=True)

    p = sub.add_parser("filter", parents=[common], help="apply the 100 dB relative dynamic-range filter")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--nlos-only", action="store_true", help="also drop LOS rows")

    def experiment(name, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--input", "-i", required=True)
        p.add_argument("--jobs", "-j", type=int, default=1)
        return p

    p = experiment("sweep-distance", "prediction in distance")
    p.add_argument("--mode", choices=("near", "far"), required=True)
    p.add_argument("--grid", type=_float_list, default=list(experiments.DEFAULT_DELTA_GRID),
                   help="comma-separated delta_d values in m")
    p.add_argument("--d-max", type=float, default=experiments.DEFAULT_D_MAX)
    p.add_argument("--d-min", type=float, default=experiments.DEFAULT_D_MIN)

    p = experiment("loo-frequency", "leave-one-band-out prediction in frequency")
    p.add_argument("--bands", type=_float_list, default=list(experiments.DEFAULT_BANDS))

    p = experiment("cross-env", "prediction across environments")
    p.add_argument("--measurement-env", required=True)
    p.add_argument("--prediction-env", required=True)
    p.add_argument("--bands", type=_float_list, default=list(experiments.DEFAULT_BANDS))

    p = sub.add_parser("generate", parents=[common], help="write a synthetic dataset")
    p.add_argument("--spec", action="append", required=True,
                   help=f"GeneratorSpec JSON file or preset name ({', '.join(synth.PRESETS)}); repeatable")
    return parser


def _emit(text: str, output):
    if output:
        Path(output).write_bytes(text.encode("utf-8"))
    else:
        sys.stdout.write(text)


def _load_specs(ref: str) -> list:
    if ref in synth.PRESETS:
        return synth.preset(ref)
    return synth.load_specs(Path(ref).read_text(encoding="utf-8"))


def run(args) -> int:
    cmd = args.command
    if cmd == "generate":
        specs = [s for ref in args.spec for s in _load_specs(ref)]
        _emit(datafiles.dataset_to_text(synth.generate_many(specs)), args.output)
        return EXIT_OK

    samples = datafiles.read_dataset(args.input)
    if cmd == "fit":
        result = fit(samples, args.model)
        doc = {"model": model_to_dict(result.model), "stats": result.stats.to_dict(),
               "sample_count": result.sample_count}
        _emit(json.dumps(doc, indent=2) + "\n", args.output)
    elif cmd == "eval":
        try:
            params = json.loads(args.params)
        except json.JSONDecodeError as exc:
            raise ValueError(f"--params is not valid JSON: {exc}") from None
        stats = evaluate(model_from_dict(params), samples)
        _emit(json.dumps(stats.to_dict(), indent=2) + "\n", args.output)
    elif cmd == "filter":
        kept = experiments.dynamic_range_filter(samples)
        if args.nlos_only:
            kept = [s for s in kept if s.link_state == "NLOS"]
        log.info("kept %d of %d samples", len(kept), len(samples))
        _emit(datafiles.dataset_to_text(kept), args.output)
    else:
        if args.jobs < 1:
            raise UsageError(f"--jobs must be >= 1, got {args.jobs}")
        if cmd == "sweep-distance":
            table = experiments.run_distance_sweep(
                samples, args.mode, args.grid, d_max=args.d_max, d_min=args.d_min, jobs=args.jobs
            )
        elif cmd == "loo-frequency":
            table = experiments.run_frequency_loo(samples, args.bands, jobs=args.jobs)
        else:
            table = experiments.run_environment_cross(
                samples, args.measurement_env, args.prediction_env, args.bands, jobs=args.jobs
            )
        _emit(datafiles.render_table(table, args.format, datafiles.file_digest(args.input)), args.output)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.ERROR if args.quiet else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return run(args)
    except UsageError as exc:
        print(f"pathloss-fit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateDesignError as exc:
        print(f"pathloss-fit: degenerate fit: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ValueError, OSError) as exc:
        print(f"pathloss-fit: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
