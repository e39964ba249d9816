#!/usr/bin/env python3
"""
Graded ring toolkit: command-line entry point.

    graded_cli.py classify  samples/z4_trivial.ring --ideal P --phi zero
    graded_cli.py enumerate samples/z2x_sq_z2graded.ring
    graded_cli.py verify    --corpus default --theorem all --summary out.json
    graded_cli.py construct samples/z4_trivial.ring --quotient P

Exit codes:
    0  success
    1  verification found violations
    2  ring-spec / corpus-spec parse error
    3  semantic error (the described algebra is invalid, or a construction fails)
    4  usage error (bad flags, unknown theorem or mutation, unreadable file)
"""

import argparse, dataclasses, sys
from typing import List, Optional

from constructions import ConstructionError, ZeroRingTarget, idealization, localize, quotient
from graded_algebra import AlgebraError, GradedRing
from ideal_lattice import ENUMERATION_CAP, enumerate_graded_ideals
from mutations import KNOWN_MUTATIONS, UnknownMutation, mutated
from phi_classifiers import InvalidPhi, PHI_ZERO, PhiMap, classify, describe_witness, phi_apply
from ring_log import log_err, log_info, set_quiet
from ring_spec import (ParseError, export_ring, parse_module, read_corpus_spec, read_ring_spec, resolve_ideal,
                       resolve_mset)
from theorem_harness import (CorpusSpec, THEOREM_IDS, UnknownTheorem, build_corpus, format_reports, run_all,
                             summary_json)

# ================= CONFIG =================

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_PARSE = 2
EXIT_SEMANTIC = 3
EXIT_USAGE = 4

# ================= ARGUMENTS =================

class UsageError(Exception):
    pass

class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad flags; that code belongs to parse errors here."""

    def error(self, message: str) -> None:
        raise UsageError(f"{self.prog}: {message}")

def _phi_arg(text: str) -> PhiMap:
    try:
        return PhiMap.parse(text)
    except InvalidPhi as e:
        raise argparse.ArgumentTypeError(str(e)) from None

def _theorem_arg(text: str) -> str:
    if text != "all" and text not in THEOREM_IDS:
        raise argparse.ArgumentTypeError(f"unknown theorem '{text}' (use all | {' | '.join(THEOREM_IDS)})")
    return text

def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got '{text}'") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="Silence [INFO] lines on stderr.")

    parser = _Parser(prog="graded_cli.py", description="Graded ideals of finite group-graded commutative rings.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("classify", parents=[common], help="Every predicate verdict for one ideal and phi.")
    p.add_argument("file", help="Ring-spec file.")
    p.add_argument("--ideal", required=True, help="Ideal name from the file, or a JSON generator list.")
    p.add_argument("--phi", type=_phi_arg, default=PHI_ZERO, help="empty | zero | identity | omega | power:n")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("enumerate", parents=[common], help="List all graded ideals with their components.")
    p.add_argument("file", help="Ring-spec file.")
    p.add_argument("--cap", type=_positive, default=ENUMERATION_CAP, help="Largest ring order to enumerate.")
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("verify", parents=[common], help="Run the theorem suite over a corpus.")
    p.add_argument("--corpus", default="default", help="'default' or a corpus-spec file.")
    p.add_argument("--theorem", type=_theorem_arg, default="all", help="A theorem id or 'all'.")
    p.add_argument("--max-order", type=_positive, default=None, help="Override the corpus max_order.")
    p.add_argument("--report", default=None, help="Also write the text report to this path.")
    p.add_argument("--summary", default=None, help="Write the JSON summary to this path.")
    p.add_argument("--mutate", action="append", default=[], choices=sorted(KNOWN_MUTATIONS),
                   help="Activate a deliberate defect (repeatable).")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("construct", parents=[common], help="Build a quotient, localization or idealization.")
    p.add_argument("file", help="Ring-spec file.")
    how = p.add_mutually_exclusive_group(required=True)
    how.add_argument("--quotient", metavar="IDEAL", help="Ideal name or JSON generator list.")
    how.add_argument("--localize", metavar="SET", help="Multiplicative set name or JSON element list.")
    how.add_argument("--idealize", metavar="MODULE", nargs="?", const="",
                     help="zero | regular [shift=g] | quotient ideal=NAME [shift=g]; defaults to the file's module.")
    p.add_argument("--output", default=None, help="Write the ring spec here instead of stdout.")
    p.set_defaults(handler=cmd_construct)
    return parser

# ================= COMMANDS =================

def _grading_line(R: GradedRing) -> str:
    return f"ring: {R.name} (order {R.order}, graded by {R.group.name})"

def cmd_classify(args: argparse.Namespace) -> int:
    spec = read_ring_spec(args.file)
    R = spec.ring
    P = resolve_ideal(spec, args.ideal)
    inv = enumerate_graded_ideals(R, cross_check=False)
    result = classify(P, args.phi, inv)
    value = phi_apply(args.phi, P)
    print(_grading_line(R))
    print(f"ideal: {P.label()}")
    print(f"phi: {args.phi.label} -> {'empty' if value is None else value.label()}")
    width = max(len(name) for name in result.verdicts)
    for name, verdict in result.verdicts.items():
        print(f"  {name:<{width}}  {'true ' if verdict.holds else 'false'}  witness={describe_witness(R, verdict.witness)}")
    return EXIT_OK

def cmd_enumerate(args: argparse.Namespace) -> int:
    spec = read_ring_spec(args.file)
    R = spec.ring
    inv = enumerate_graded_ideals(R, cap=args.cap)
    print(_grading_line(R))
    print(f"graded ideals: {len(inv)}")
    for I in inv:
        print(f"  {I.label()}")
        for g, part in I.components().items():
            print(f"    {R.group.labels[g]}: {R.labels_of(sorted(part))}")
    return EXIT_OK

def _corpus_spec(args: argparse.Namespace) -> CorpusSpec:
    spec = CorpusSpec() if args.corpus == "default" else read_corpus_spec(args.corpus)
    if args.max_order is not None:
        spec = dataclasses.replace(spec, max_order=args.max_order)
    return spec

def cmd_verify(args: argparse.Namespace) -> int:
    spec = _corpus_spec(args)
    ids = None if args.theorem == "all" else [args.theorem]
    with mutated(*args.mutate):
        corpus = build_corpus(spec)
        reports, status = run_all(corpus, ids)
        text = format_reports(reports)
        summary = summary_json(reports, corpus)
    sys.stdout.write(text)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as f:
            f.write(text)
    if args.summary:
        with open(args.summary, "w", encoding="utf-8") as f:
            f.write(summary)
    log_info(f"verify: exit {status}")
    return EXIT_OK if status == 0 else EXIT_VIOLATIONS

def _construct(args: argparse.Namespace) -> GradedRing:
    spec = read_ring_spec(args.file)
    R = spec.ring
    if args.quotient is not None:
        return quotient(R, resolve_ideal(spec, args.quotient)).target
    if args.localize is not None:
        L = localize(R, resolve_mset(spec, args.localize))
        if L.target is None:
            raise ZeroRingTarget(f"0 is in the multiplicative set; the localization of {R.name} is the zero ring")
        return L.target
    if args.idealize:
        M = parse_module(R, args.idealize, spec.ideals)
    elif spec.module is not None:
        M = spec.module
    else:
        raise ConstructionError(f"--idealize needs a module: {args.file} has no 'module:' line")
    return idealization(R, M).target

def cmd_construct(args: argparse.Namespace) -> int:
    text = export_ring(_construct(args))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
        log_info(f"construct: wrote {args.output}")
    else:
        sys.stdout.write(text)
    return EXIT_OK

# ================= MAIN =================

def main(argv: Optional[List[str]] = None) -> int:
    """
    Parses arguments and runs one command under the error supervisor.

    @param argv: Arguments without the program name (defaults to sys.argv[1:])
    @return: The process exit code
    """
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        log_err("Usage", e)
        return EXIT_USAGE
    set_quiet(args.quiet)
    try:
        return args.handler(args)
    except ParseError as e:
        log_err("Parse", e)
        return EXIT_PARSE
    except (UnknownTheorem, UnknownMutation) as e:
        log_err("Usage", e)
        return EXIT_USAGE
    except AlgebraError as e:
        log_err(args.command.capitalize(), e)
        return EXIT_SEMANTIC
    except OSError as e:
        log_err("File", e)
        return EXIT_USAGE
    except KeyboardInterrupt:
        print("\nInterrupted.", file=sys.stderr)
        return EXIT_USAGE
    finally:
        set_quiet(False)

if __name__ == "__main__":
    sys.exit(main())
