"""Command-line front end.

    fuzzytemporal run     --facts kb.json --rules rules.swrl [--out derived.json]
    fuzzytemporal fuzzify --ite about --t "30 days" --w 0.4
    fuzzytemporal curve   --ite about --t "30 days" --w 0.4 --samples 61 --range 15..45
    fuzzytemporal query   --facts kb.json [--rules rules.swrl] --query "C(?x) -> select(?x)"

Exit status: 0 on success, 1 when an input cannot be read or parsed,
2 when evaluation fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import errors
from .config import Config
from .fuzzy import MembershipFunction, sample_curve
from .ite import ITEKind, fuzzify, format_axis_value
from .kb import dump_facts, load_facts
from .rules import forward_chain, parse_query, parse_rules, run_query
from .temporal import parse_duration, parse_instant

EXIT_OK, EXIT_PARSE, EXIT_EVAL = 0, 1, 2


class _Failure(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _read(path, what):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Failure(EXIT_PARSE, f"cannot read {what} file {path}: {exc.strerror}") from None


def _parse_phase(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (errors.FuzzyTemporalError, ValueError) as exc:
        raise _Failure(EXIT_PARSE, str(exc)) from None


def _eval_phase(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (errors.FuzzyTemporalError, ValueError, TypeError, OverflowError) as exc:
        raise _Failure(EXIT_EVAL, f"evaluation failed: {exc}") from None


def _config(args) -> Config:
    config = Config()
    if getattr(args, "config", None):
        _read(args.config, "config")
        config = _parse_phase(Config.load, args.config)
    changes = {}
    if getattr(args, "now", None):
        changes["now"] = _parse_phase(parse_instant, args.now)
    if getattr(args, "w", None) is not None and args.command in ("run", "query"):
        changes["default_w"] = args.w
    if getattr(args, "max_iterations", None):
        changes["max_iterations"] = args.max_iterations
    return _parse_phase(config.replace, **changes) if changes else config


def _load_kb(path):
    text = _read(path, "facts")
    try:
        return load_facts(text)
    except errors.SchemaError as exc:
        raise _Failure(EXIT_PARSE, f"{path}: {exc}") from None
    except errors.FuzzyTemporalError as exc:
        raise _Failure(EXIT_PARSE, f"{path}: {exc}") from None


def _load_rules(path):
    text = _read(path, "rules")
    return _parse_phase(parse_rules, text, source=str(path))


def _emit(text, out):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_run(args):
    config = _config(args)
    kb = _load_kb(args.facts)
    rules = _load_rules(args.rules)
    result, report = _eval_phase(forward_chain, kb, rules, config)
    _emit(dump_facts(result), args.out)
    if args.report:
        Path(args.report).write_text(json.dumps(report.to_dict(), indent=2) + "\n",
                                     encoding="utf-8")
    print(f"derived {len(report.derived)} facts in {report.iterations} iterations",
          file=sys.stderr)
    return EXIT_OK


def _interval(args, config):
    kind = _parse_phase(ITEKind.parse, args.ite)
    T = _parse_phase(parse_duration, args.t)
    origin = _parse_phase(parse_instant, args.origin) if args.origin else None
    return _parse_phase(fuzzify, kind, T, args.w, origin, default_w=config.default_w)


def fuzzify_document(iv) -> dict:
    unit_mf = iv.mf_in()
    doc = {
        "ite": iv.kind.value,
        "axis": iv.axis,
        "w": iv.w,
        "minFT": format_axis_value(iv, iv.min_ft),
        "peak": format_axis_value(iv, iv.peak),
        "maxFT": format_axis_value(iv, iv.max_ft),
        "minFTMillis": iv.min_ft,
        "peakMillis": iv.peak,
        "maxFTMillis": iv.max_ft,
        "unit": iv.unit.value,
        "mfFamily": iv.mf.family,
        "mfParams": {k: float(f"{v:.12g}") for k, v in unit_mf.named_params().items()},
    }
    if iv.origin is not None:
        doc["origin"] = str(iv.origin)
    return doc


def cmd_fuzzify(args):
    config = _config(args)
    iv = _interval(args, config)
    sys.stdout.write(json.dumps(fuzzify_document(iv), indent=2) + "\n")
    return EXIT_OK


def _parse_range(text):
    try:
        lo, hi = text.split("..")
        return float(lo), float(hi)
    except ValueError:
        raise _Failure(EXIT_PARSE, f"--range must look like LO..HI, got {text!r}") from None


def cmd_curve(args):
    config = _config(args)
    if args.family:
        if not args.params:
            raise _Failure(EXIT_PARSE, "--family needs --params")
        params = [float(p) for p in args.params.split(",")]
        mf = _parse_phase(MembershipFunction, args.family, tuple(params))
        if not args.range:
            raise _Failure(EXIT_PARSE, "--family needs --range")
        lo, hi = _parse_range(args.range)
    else:
        if not args.ite or not args.t:
            raise _Failure(EXIT_PARSE, "curve needs either --family or --ite with --t")
        iv = _interval(args, config)
        mf = iv.mf_in()
        if args.range:
            lo, hi = _parse_range(args.range)
        else:
            peak = (iv.peak - (iv.origin.epoch_millis if iv.origin else 0)) / iv.unit.millis
            spread = max(iv.max_ft - iv.peak, iv.peak - iv.min_ft) / iv.unit.millis or peak / 2
            lo, hi = peak - 2 * spread, peak + 2 * spread
    points = _parse_phase(sample_curve, mf, lo, hi, args.samples)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "mu"])
    for x, mu in points:
        writer.writerow([f"{x:.10g}", f"{mu:.10g}"])
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_query(args):
    config = _config(args)
    kb = _load_kb(args.facts)
    query = _parse_phase(parse_query, args.query)
    if args.rules:
        rules = _load_rules(args.rules)
        kb, _ = _eval_phase(forward_chain, kb, rules, config)
    result = _eval_phase(run_query, kb, query, config)
    sys.stdout.write(result.to_tsv())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fuzzytemporal", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON configuration file")
        p.add_argument("--now", help="pin the current time (ISO 8601)")
        p.add_argument("--w", type=float, help="weight degree (default from config, 0.5)")

    p = sub.add_parser("run", help="forward-chain rules over a fact file")
    p.add_argument("--facts", required=True)
    p.add_argument("--rules", required=True)
    p.add_argument("--out", help="write derived fact file here instead of stdout")
    p.add_argument("--report", help="write the derivation report (JSON) here")
    p.add_argument("--max-iterations", type=int)
    common(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("fuzzify", help="fuzzy interval of a single ITE")
    p.add_argument("--ite", required=True)
    p.add_argument("--t", required=True, help='valid time, e.g. "30 days"')
    p.add_argument("--origin", help="anchor instant; puts the interval on the instant axis")
    common(p)
    p.set_defaults(func=cmd_fuzzify)

    p = sub.add_parser("curve", help="sample a membership function as CSV")
    p.add_argument("--ite")
    p.add_argument("--t")
    p.add_argument("--origin")
    p.add_argument("--family", help="gaussmf, trapmf, gbellmf, smf or zmf")
    p.add_argument("--params", help="comma-separated family parameters")
    p.add_argument("--samples", type=int, default=101)
    p.add_argument("--range", help="LO..HI in units of T (use --range=-1..1 for negatives)")
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("query", help="run a select query, optionally after chaining")
    p.add_argument("--facts", required=True)
    p.add_argument("--rules")
    p.add_argument("--query", required=True)
    p.add_argument("--max-iterations", type=int)
    common(p)
    p.set_defaults(func=cmd_query)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Failure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
