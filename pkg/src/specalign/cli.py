"""Command-line interface.

Subcommands: analyze, preprocess, slice, sentences, match, mutate, eval.
Exit codes: 0 success, 1 usage error, 2 invalid input, 3 backend failure.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import backends as backends_mod
from .detect import classify_model
from .errors import BackendError, SpecAlignError
from .generate import generate
from .matching import DEFAULT_TAU, match
from .metrics import (
    MetricsRow,
    aggregate,
    read_truth_csv,
    render_ratio,
    score,
    write_metrics_csv,
    write_truth_csv,
)
from .model import enumerate_elements, parse_model, serialize_model
from .mutate import MutationOperator, mutate_all
from .preprocess import dump_extraction, preprocess
from .report import (
    read_report_csv,
    render_report,
    render_report_csv,
    render_timings,
    write_atomic,
)
from .slicing import slice_element

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_BACKEND = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise SpecAlignError(f"cannot read {path}: {exc.strerror}") from None


def _load_model(path: str):
    return parse_model(_read(path))


def _make_backend(selector: str, record_path: str | None):
    if selector == "live":
        backend = backends_mod.LiveBackend()
        model_name = backend.config.model
    elif selector.startswith("mock:"):
        backend = backends_mod.MockBackend.from_script(selector[len("mock:") :])
        model_name = "gpt-4o"
    elif selector.startswith("replay:"):
        backend = backends_mod.ReplayBackend.from_file(selector[len("replay:") :])
        model_name = backend.cassette.model
    else:
        raise SpecAlignError(
            f"unknown backend {selector!r}; use live, mock:<script>, or replay:<cassette>"
        )
    if record_path:
        backend = backends_mod.record(backend, record_path, model=model_name)
    return backend


def _cmd_analyze(args) -> int:
    model = _load_model(args.model)
    text = _read(args.spec)
    backend = _make_backend(args.backend, args.record)
    try:
        report = classify_model(
            model,
            text,
            backend,
            mode=args.mode,
            tau=args.tau,
            jobs=args.jobs,
        )
    except BackendError as exc:
        print(f"backend failure: {exc}", file=sys.stderr)
        return EXIT_BACKEND
    finally:
        if hasattr(backend, "flush"):
            backend.flush()
    rendered = render_report(report)
    if args.out:
        write_atomic(args.out, rendered)
    else:
        sys.stdout.write(rendered)
    if args.csv:
        write_atomic(args.csv, render_report_csv(report))
    if args.timings:
        sys.stderr.write(render_timings(report))
    return EXIT_OK


def _cmd_preprocess(args) -> int:
    extraction = preprocess(_read(args.spec))
    if args.dump_extraction:
        sys.stdout.write(dump_extraction(extraction))
    else:
        for sentence in extraction.sentences:
            sys.stdout.write(f"s{sentence.index}\t{sentence.resolved_text}\n")
    return EXIT_OK


def _cmd_slice(args) -> int:
    model = _load_model(args.model)
    for element in enumerate_elements(model):
        slice_ = slice_element(model, element)
        sys.stdout.write(f"{element.element_id}\t{' '.join(slice_.member_ids())}\n")
    return EXIT_OK


def _cmd_sentences(args) -> int:
    model = _load_model(args.model)
    for element in enumerate_elements(model):
        sentence = generate(model, slice_element(model, element))
        sys.stdout.write(f"{element.element_id}\t{sentence.text}\n")
    return EXIT_OK


def _cmd_match(args) -> int:
    model = _load_model(args.model)
    extraction = preprocess(_read(args.spec))
    for matched in match(model, enumerate_elements(model), extraction, args.tau):
        indices = ",".join(f"s{i}" for i in sorted(matched.sentences))
        sys.stdout.write(f"{matched.element_id} → {{{indices}}}\n")
    return EXIT_OK


def _cmd_mutate(args) -> int:
    model = _load_model(args.model)
    try:
        ops = [MutationOperator(op.strip().lower()) for op in args.ops.split(",") if op.strip()]
    except ValueError as exc:
        raise SpecAlignError(f"unknown operator in {args.ops!r}") from exc
    if not ops:
        raise SpecAlignError("no operators given")
    mutated, truth = mutate_all(model, ops, args.seed)
    write_atomic(args.out, serialize_model(mutated))
    write_truth_csv(args.truth, truth.labels)
    changed = len(truth.misaligned_ids())
    sys.stdout.write(f"mutated {changed} element(s); model written to {args.out}\n")
    return EXIT_OK


def _cmd_eval(args) -> int:
    verdicts = read_report_csv(args.report)
    truth = read_truth_csv(args.truth)
    row = score(verdicts, truth)
    if args.out:
        write_metrics_csv(args.out, [row])
    header = ",".join(("A", "PA", "CPA", "M", "PM", "CPM"))
    sys.stdout.write(f"{header}: {row.a},{row.pa},{row.cpa},{row.m},{row.pm},{row.cpm}\n")
    for name, value in row.ratios().items():
        sys.stdout.write(f"{name}: {render_ratio(value)}\n")
    return EXIT_OK


def _add_tau(parser):
    parser.add_argument(
        "--tau",
        type=float,
        default=DEFAULT_TAU,
        help="name similarity threshold in (0,1] (default %(default)s)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="specalign", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="classify every model element against the text")
    analyze.add_argument("--model", required=True)
    analyze.add_argument("--spec", required=True)
    analyze.add_argument("--backend", required=True, help="live | mock:<script> | replay:<cassette>")
    analyze.add_argument("--mode", choices=("parallel", "sequential"), default="parallel")
    analyze.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    analyze.add_argument("--record", help="write a replay cassette of every completion")
    analyze.add_argument("--out", help="report file (stdout when omitted)")
    analyze.add_argument("--csv", help="also write the report as CSV")
    analyze.add_argument("--timings", action="store_true", help="print per-component times")
    _add_tau(analyze)
    analyze.set_defaults(func=_cmd_analyze)

    pre = sub.add_parser("preprocess", help="segment and extract concepts/relations")
    pre.add_argument("--spec", required=True)
    pre.add_argument("--dump-extraction", action="store_true")
    pre.set_defaults(func=_cmd_preprocess)

    slc = sub.add_parser("slice", help="print the minimal slice of every element")
    slc.add_argument("--model", required=True)
    slc.set_defaults(func=_cmd_slice)

    sen = sub.add_parser("sentences", help="print the generated sentence of every element")
    sen.add_argument("--model", required=True)
    sen.set_defaults(func=_cmd_sentences)

    mat = sub.add_parser("match", help="print matched sentence indices per element")
    mat.add_argument("--model", required=True)
    mat.add_argument("--spec", required=True)
    _add_tau(mat)
    mat.set_defaults(func=_cmd_match)

    mut = sub.add_parser("mutate", help="inject seeded errors and emit ground truth")
    mut.add_argument("--model", required=True)
    mut.add_argument("--ops", required=True, help="comma list of was2,was4,wge")
    mut.add_argument("--seed", type=int, required=True)
    mut.add_argument("--out", required=True)
    mut.add_argument("--truth", required=True)
    mut.set_defaults(func=_cmd_mutate)

    ev = sub.add_parser("eval", help="score a report CSV against a truth CSV")
    ev.add_argument("--report", required=True)
    ev.add_argument("--truth", required=True)
    ev.add_argument("--out", help="write a metrics CSV")
    ev.set_defaults(func=_cmd_eval)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "tau") and not 0.0 < args.tau <= 1.0:
        print(f"error: tau must be in (0,1], got {args.tau}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except BackendError as exc:
        print(f"backend failure: {exc}", file=sys.stderr)
        return EXIT_BACKEND
    except SpecAlignError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
