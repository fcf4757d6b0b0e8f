"""Command line interface.

Exit codes: 0 on success, 1 on usage errors, 2 on data errors.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from pathlib import Path

from .datagen import GenSpec, generate_corpus, star_alliance
from .errors import InvalidArgumentError, PacBasisError
from .experiments import (DataError, run_stability, run_sweep, stability_spec_from_file,
                          sweep_spec_from_file)
from .implications import (canonical_basis, format_implications, is_valid_in, parse_implications,
                           refuting_objects)
from .io import read_context, save_context
from .learning import PacParams, biased_sampler, pac_basis_of_context, uniform_sampler
from .metrics import evaluate, horn_distance

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2

STAR_ALLIANCE = "star-alliance"

# The epsilon=0.5, delta=0.1 basis reported for one run on the Star-Alliance context.
CASE_STUDY_COARSE_BASIS = """\
Caribbean -> ⊥
Asia Pacific, Mexico -> ⊥
Asia Pacific, Europe -> ⊥
Middle East -> ⊥
Latin America -> Mexico, United States, Canada
"""
CASE_STUDY_VALID = "Africa, Asia Pacific, Europe, United States, Canada -> Middle East"
CASE_STUDY_MISSED = ("Africa, Latin America, Asia Pacific, Mexico, Europe, United States, Canada -> ⊥")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def load_context(source: str):
    """Read a context file; ``star-alliance`` names the bundled context."""
    if source == STAR_ALLIANCE or (not os.path.exists(source)
                                   and os.path.basename(source) == "star-alliance.cxt"):
        return star_alliance()
    try:
        return read_context(source)
    except OSError as exc:
        raise DataError(f"cannot read {source}: {exc.strerror or exc}") from None


def _sampler(text, universe):
    if text == "uniform":
        return uniform_sampler(universe)
    if text.startswith("biased:"):
        try:
            probs = [float(p) for p in text[len("biased:"):].split(",")]
        except ValueError:
            raise UsageError(f"bad probability list in {text!r}") from None
        return biased_sampler(universe, probs)
    raise UsageError(f"unknown sampler {text!r}; use 'uniform' or 'biased:p1,p2,...'")


def _out(text: str) -> None:
    sys.stdout.write(text)


def cmd_canonical_basis(args) -> int:
    ctx = load_context(args.context)
    _out(format_implications(canonical_basis(ctx)))
    return EXIT_OK


def cmd_pac_basis(args) -> int:
    ctx = load_context(args.context)
    sampler = _sampler(args.sampler, ctx.universe)
    basis, stats = pac_basis_of_context(ctx, PacParams(args.epsilon, args.delta, args.seed, sampler))
    _out(format_implications(basis))
    if args.stats:
        sys.stderr.write(stats.to_record() + "\n")
    return EXIT_OK


def cmd_eval(args) -> int:
    ctx = load_context(args.context)
    try:
        text = Path(args.implications).read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {args.implications}: {exc.strerror or exc}") from None
    h = parse_implications(text, ctx.universe)
    report = evaluate(ctx, h, samples=args.sampled, seed=args.seed)
    _out("".join(line + "\n" for line in report.lines()))
    return EXIT_OK


def cmd_gen(args) -> int:
    spec = GenSpec(num_attributes=args.attributes, object_count_range=tuple(args.objects),
                   density_range=tuple(args.density), seed=args.seed)
    entries = generate_corpus(spec, args.count, args.min_basis_size)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "manifest.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["index", "seed", "objects", "density", "canonical_size"])
        for e in entries:
            save_context(e.context, out / f"ctx{e.index:04d}.cxt")
            writer.writerow([e.index, e.seed, len(e.context), f"{e.context.density():.6g}", e.canonical_size])
    _out(f"wrote {len(entries)} contexts to {out}\n")
    return EXIT_OK


def cmd_experiment(args) -> int:
    if args.kind == "sweep":
        result = run_sweep(sweep_spec_from_file(args.spec))
    else:
        s = stability_spec_from_file(args.spec)
        result = run_stability(s.context, s.epsilons, s.delta, s.runs, s.seed, s.fixed_seed)
    if args.out in (None, "-"):
        result.write_csv(sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            result.write_csv(fh)
    return EXIT_OK


def cmd_case_study(args) -> int:
    ctx = star_alliance()
    u = ctx.universe
    can = canonical_basis(ctx)
    lines = [f"context: {len(ctx)} objects x {len(u)} attributes",
             f"canonical basis ({len(can)} implications):"]
    lines += ["  " + line for line in format_implications(can).splitlines()]
    valid = parse_implications(CASE_STUDY_VALID, u)[0]
    missed = parse_implications(CASE_STUDY_MISSED, u)[0]
    lines.append(f"valid: {valid}  [{is_valid_in(ctx, valid)}]")
    lines.append(f"refuted by {', '.join(refuting_objects(ctx, missed))}: {missed}")
    coarse = parse_implications(CASE_STUDY_COARSE_BASIS, u)
    lines.append(f"coarse basis horn_distance={float(horn_distance(coarse, ctx)):.6g} "
                 f"(exact {horn_distance(coarse, ctx)})")
    for eps, delta in ((0.1, 0.1), (0.1, 0.8), (0.5, 0.1)):
        basis, stats = pac_basis_of_context(ctx, PacParams(eps, delta, args.seed))
        report = evaluate(ctx, basis)
        lines.append(f"pac-basis epsilon={eps:g} delta={delta:g} seed={args.seed}: {len(basis)} implications")
        lines += ["  " + line for line in format_implications(basis).splitlines()]
        lines.append("  " + " ".join(report.lines()[:3]))
    _out("".join(line + "\n" for line in lines))
    return EXIT_OK


def _range(cast, sep):
    def parse(text):
        lo, _, hi = text.partition(sep)
        try:
            lo = cast(lo)
            return [lo, cast(hi) if hi else lo]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected lo{sep}hi, got {text!r}") from None
    return parse


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pacbasis", description="Exact and PAC implication bases of formal contexts.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("canonical-basis", help="print the canonical basis of a context")
    p.add_argument("context", help=f"context file (.cxt or .csv) or '{STAR_ALLIANCE}'")
    p.set_defaults(func=cmd_canonical_basis)

    p = sub.add_parser("pac-basis", help="compute a PAC basis")
    p.add_argument("context")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sampler", default="uniform", help="'uniform' or 'biased:p1,p2,...'")
    p.add_argument("--stats", action="store_true", help="write run statistics to stderr")
    p.set_defaults(func=cmd_pac_basis)

    p = sub.add_parser("eval", help="Horn-distance, precision and recall of an implication file")
    p.add_argument("context")
    p.add_argument("implications")
    p.add_argument("--sampled", type=int, default=None, metavar="N",
                   help="estimate the Horn-distance from N random subsets")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("gen", help="generate a corpus of random contexts")
    p.add_argument("--attributes", type=int, default=10)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--min-basis-size", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--objects", type=_range(int, "-"), default=[1, 400], help="lo-hi")
    p.add_argument("--density", type=_range(float, ":"), default=[0.0, 1.0], help="lo:hi")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("experiment", help="run a sweep or stability experiment")
    p.add_argument("kind", choices=("sweep", "stability"))
    p.add_argument("--spec", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("case-study", help="Star-Alliance walkthrough")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_case_study)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, InvalidArgumentError) as exc:
        sys.stderr.write(f"pacbasis: {exc}\n")
        return EXIT_USAGE
    except (PacBasisError, OSError) as exc:
        sys.stderr.write(f"pacbasis: {exc}\n")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
