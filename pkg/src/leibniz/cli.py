"""Command-line front end.

Every invocation prints exactly one JSON report on stdout (or to ``--out``).
Exit codes: 0 pass, 1 counterexamples found, 2 usage or parse error,
3 error raised by the operation itself.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Sequence

from . import analysis
from .errors import (
    DegreeCapExceeded,
    ExpressionSyntaxError,
    LeibnizError,
    NegativeExponent,
    SpecError,
)
from .gaussian import DEFAULT_NORM_BOUND
from .generators import FuzzConfig, default_root_pool, random_factored, transcendental_pool
from .maps import (
    additivity_probe,
    chain_rule_check,
    lmap_check_additive,
    lmap_check_leibniz,
    lmap_eval,
    spec_nvars,
)
from .operators import RootPowerReal, apply, apply_expanded, apply_real, pointwise_log_eval
from .parsing import parse_poly, parse_scalar, print_poly, print_scalar
from .poly import DEFAULT_DEGREE_CAP, FactoredPoly, RealFactoredPoly, expand, try_factor
from .report import CheckReport
from .scalars import MAX_TRANSCENDENTALS, ScalarElem
from .specio import load_json, map_from_json, op_from_json

log = logging.getLogger("leibniz")

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_ERROR = 0, 1, 2, 3


class UsageError(Exception):
    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


@dataclass(frozen=True)
class SessionConfig:
    m: int = 1
    seed: int = 0
    degree_cap: int = DEFAULT_DEGREE_CAP
    norm_bound: int = DEFAULT_NORM_BOUND

    def __post_init__(self):
        if not 0 <= self.m <= MAX_TRANSCENDENTALS:
            raise UsageError(f"--m must be between 0 and {MAX_TRANSCENDENTALS}")
        if self.degree_cap <= 0 or self.norm_bound <= 0:
            raise UsageError("caps must be positive")


@dataclass
class ReportDoc:
    command: str
    seed: int | None
    inputs: dict[str, Any]
    status: str = "pass"
    payload: dict[str, Any] = field(default_factory=dict)
    counts: dict[str, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "status": self.status,
            "seed": self.seed,
            "inputs": self.inputs,
            "payload": self.payload,
            "counts": self.counts,
        }


# -- argument helpers ------------------------------------------------------------


def _parsing(fn: Callable, *args):
    """Run a text/spec parser, turning its errors into usage errors."""
    try:
        return fn(*args)
    except (ExpressionSyntaxError, NegativeExponent, DegreeCapExceeded, SpecError, ZeroDivisionError) as exc:
        raise UsageError(f"{type(exc).__name__}: {exc}", getattr(exc, "position", None)) from exc
    except OSError as exc:
        raise UsageError(str(exc)) from exc


def _poly(text: str, cfg: SessionConfig):
    return _parsing(parse_poly, text, cfg.m, cfg.degree_cap)


def _scalar(text: str, cfg: SessionConfig) -> ScalarElem:
    return _parsing(parse_scalar, text, cfg.m)


def _scalar_list(text: str | None, cfg: SessionConfig) -> list[ScalarElem] | None:
    if text is None:
        return None
    return [_scalar(t, cfg) for t in text.split(",") if t.strip()]


def _op(args, cfg: SessionConfig):
    if not args.op:
        raise UsageError("--op FILE is required for this command")
    doc = _parsing(load_json, args.op)
    return _parsing(op_from_json, doc, cfg.m)


def _factored_input(args, cfg: SessionConfig) -> FactoredPoly | None:
    if args.roots is None and args.lead is None:
        return None
    lead = _scalar(args.lead or "1", cfg)
    roots = _scalar_list(args.roots or "", cfg)
    try:
        fp = FactoredPoly(lead, tuple(roots))
    except LeibnizError as exc:
        raise UsageError(str(exc)) from exc
    if fp.degree > cfg.degree_cap:
        raise UsageError(f"degree {fp.degree} exceeds cap {cfg.degree_cap}")
    return fp


def _default_points(cfg: SessionConfig) -> list[ScalarElem]:
    pts = list(default_root_pool())
    if cfg.m:
        pts += list(transcendental_pool(1))
    return pts


def _status_from(report: CheckReport) -> str:
    return "pass" if report.ok else "fail"


def _counts(report: CheckReport) -> dict[str, int]:
    return {"total": report.total, "passed": report.passed, "failed": len(report.counterexamples), "skipped": report.skipped}


# -- subcommands --------------------------------------------------------------------


def cmd_apply(args, cfg, doc: ReportDoc) -> None:
    op = _op(args, cfg)
    fp = _factored_input(args, cfg)
    if fp is not None:
        result = apply(op, fp)
    elif args.poly:
        result = apply_expanded(op, _poly(args.poly[0], cfg))
    else:
        raise UsageError("apply needs --poly EXPR or --lead/--roots")
    doc.payload = {"result": print_poly(result)}


def cmd_apply_real(args, cfg, doc: ReportDoc) -> None:
    op = _op(args, cfg)
    if not isinstance(op, RootPowerReal):
        raise UsageError("apply-real needs a root_power_real operator")
    lead = _scalar(args.lead or "1", cfg)
    linear = _scalar_list(args.roots or "", cfg)
    quads = []
    for q in args.quadratic or []:
        parts = _scalar_list(q, cfg)
        if len(parts) != 2:
            raise UsageError("--quadratic takes ALPHA,BETA")
        quads.append(tuple(parts))
    try:
        p = RealFactoredPoly(lead, tuple(linear), tuple(quads))
    except (LeibnizError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    doc.payload = {"input": print_poly(p.expand()), "result": print_poly(apply_real(op, p))}


def cmd_check(args, cfg, doc: ReportDoc) -> None:
    op = _op(args, cfg)
    if args.poly:
        if len(args.poly) != 2:
            raise UsageError("check with --poly needs exactly two polynomials")
        p, q = (_poly(t, cfg) for t in args.poly)
        report = analysis.leibniz_check(op, p, q)
    else:
        config = FuzzConfig(max_degree=args.max_degree)
        report = analysis.leibniz_fuzz(op, config, args.n, cfg.seed)
    doc.payload = {"report": report.to_json()}
    doc.counts = _counts(report)
    doc.status = _status_from(report)


def _map_from_file(args, cfg):
    if not args.op:
        raise UsageError("--op FILE is required for this command")
    data = _parsing(load_json, args.op)
    if isinstance(data, dict) and data.get("kind") == "coeff_derivation":
        data = data.get("map", {})
    return _parsing(map_from_json, data, cfg.m)


def map_suite(spec, n: int, seed: int, m: int) -> dict[str, Any]:
    """Vanishing values, Leibniz identity, additivity and (if additive) the chain rule."""
    from .generators import random_pairs, random_poly, random_scalar

    rng = random.Random(seed)
    domain_m = spec_nvars(spec) if m else 0
    constants_only = domain_m == 0
    vanish = CheckReport()
    for x in (0, 1, -1):
        vanish.record((ScalarElem.of(x),), lmap_eval(spec, x), ScalarElem.of(0), "vanishing")
    pairs = random_pairs(rng, n, max(domain_m, 0), constants_only=constants_only)
    leibniz = lmap_check_leibniz(spec, pairs)
    additive = lmap_check_additive(spec, pairs + additivity_probe(spec)[:4])
    out: dict[str, Any] = {
        "vanishing": vanish.to_json(),
        "leibniz": leibniz.to_json(),
        "additive": additive.to_json(limit=3),
        "is_additive": additive.ok,
    }
    reports = [vanish, leibniz]
    if additive.ok:
        chain = CheckReport()
        for _ in range(min(n, 100)):
            p = random_poly(rng, 4, domain_m)
            a = random_scalar(rng, domain_m)
            chain.merge(chain_rule_check(spec, p, a))
        out["chain_rule"] = chain.to_json()
        reports.append(chain)
    out["_reports"] = reports
    return out


def cmd_check_map(args, cfg, doc: ReportDoc) -> None:
    spec = _map_from_file(args, cfg)
    suite = map_suite(spec, args.n, cfg.seed, cfg.m)
    reports = suite.pop("_reports")
    total = CheckReport()
    for r in reports:
        total.merge(CheckReport(r.total, r.passed, list(r.counterexamples), r.skipped))
    doc.payload = suite
    doc.counts = _counts(total)
    doc.status = _status_from(total)


def cmd_fingerprint(args, cfg, doc: ReportDoc) -> None:
    op = _op(args, cfg)
    points = _scalar_list(args.points, cfg) or _default_points(cfg)
    doc.payload = {"fingerprint": analysis.fingerprint(op, points).to_json()}


def cmd_roundtrip(args, cfg, doc: ReportDoc) -> None:
    op = _op(args, cfg)
    points = _scalar_list(args.points, cfg) or _default_points(cfg)
    fp = analysis.fingerprint(op, points)
    samples = analysis.pool_compatible_samples(random.Random(cfg.seed), fp.points, args.n, args.max_degree)
    report = analysis.roundtrip_check(op, fp, samples)
    doc.payload = {"kmax": fp.kmax, "report": report.to_json()}
    doc.counts = _counts(report)
    doc.status = _status_from(report)


def _classify_samples(n: int, seed: int, max_degree: int) -> list[FactoredPoly]:
    rng = random.Random(seed)
    config = FuzzConfig(max_degree=max_degree, min_degree=1)
    samples = [FactoredPoly(1, (0,) * k) for k in range(1, max_degree + 1)]
    samples += [random_factored(rng, config) for _ in range(n)]
    return samples


def cmd_classify(args, cfg, doc: ReportDoc) -> None:
    op = _op(args, cfg)
    behavior = analysis.classify_degree(op, _classify_samples(args.n, cfg.seed, args.max_degree))
    doc.payload = {"behavior": behavior.to_json()}


def cmd_constants(args, cfg, doc: ReportDoc) -> None:
    op = _op(args, cfg)
    doc.payload = {"constants": analysis.monomial_constants(op, args.max_n).to_json()}


def cmd_recurrences(args, cfg, doc: ReportDoc) -> None:
    op = _op(args, cfg)
    g = ScalarElem.gaussian
    a_values = _scalar_list(args.a_values, cfg) or [g(1), g(2), g(-1), g(0, 1), g(1, 2)]
    b_values = _scalar_list(args.b_values, cfg) or [g(0), g(1), g(-1), g(2), g(0, 1)]
    table = analysis.linear_action(op, analysis.closed_grid(a_values, b_values))
    report = analysis.recurrence_check(table)
    doc.payload = {"grid_size": len(table.entries), "report": report.to_json()}
    doc.counts = _counts(report)
    doc.status = _status_from(report)


def cmd_probe(args, cfg, doc: ReportDoc) -> None:
    op = _op(args, cfg)
    found = analysis.localization_probe(op, args.budget)
    doc.payload = {"counterexample": found.to_json() if found else None}


def cmd_factor(args, cfg, doc: ReportDoc) -> None:
    if not args.poly:
        raise UsageError("factor needs --poly EXPR")
    fp = try_factor(_poly(args.poly[0], cfg), cfg.norm_bound)
    doc.payload = {"lead": print_scalar(fp.lead), "roots": [print_scalar(r) for r in fp.roots]}


def cmd_expand(args, cfg, doc: ReportDoc) -> None:
    fp = _factored_input(args, cfg)
    if fp is not None:
        result = expand(fp, cfg.degree_cap)
    elif args.poly:
        result = _poly(args.poly[0], cfg)
    else:
        raise UsageError("expand needs --poly EXPR or --lead/--roots")
    doc.payload = {"result": print_poly(result)}


def _point(text: str, cfg: SessionConfig):
    """An exact scalar when the text is in the grammar (e.g. "1/3", "1+i"), else a decimal complex."""
    try:
        return parse_scalar(text, 0)
    except LeibnizError:
        pass
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise UsageError(f"not a complex number: {text!r}") from None


def cmd_eval_log(args, cfg, doc: ReportDoc) -> None:
    if not args.poly:
        raise UsageError("eval-log needs --poly EXPR")
    p = _poly(args.poly[0], cfg)
    values = []
    for text in args.z or ["0"]:
        pv = pointwise_log_eval(p, _point(text, cfg))
        values.append({"z": [pv.z.real, pv.z.imag], "value": [pv.value.real, pv.value.imag]})
    doc.payload = {"values": values}


COMMANDS: dict[str, Callable] = {
    "apply": cmd_apply,
    "apply-real": cmd_apply_real,
    "check": cmd_check,
    "check-map": cmd_check_map,
    "fingerprint": cmd_fingerprint,
    "roundtrip": cmd_roundtrip,
    "classify": cmd_classify,
    "constants": cmd_constants,
    "recurrences": cmd_recurrences,
    "probe-localize": cmd_probe,
    "factor": cmd_factor,
    "expand": cmd_expand,
    "eval-log": cmd_eval_log,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--op", metavar="FILE")
    common.add_argument("--poly", metavar="EXPR", action="append")
    common.add_argument("--n", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=100)
    common.add_argument("--m", type=int, default=1)
    common.add_argument("--out", metavar="FILE")
    common.add_argument("--lead", metavar="SCALAR")
    common.add_argument("--roots", metavar="LIST", help="comma-separated roots")
    common.add_argument("--quadratic", metavar="ALPHA,BETA", action="append")
    common.add_argument("--points", metavar="LIST")
    common.add_argument("--a-values", metavar="LIST")
    common.add_argument("--b-values", metavar="LIST")
    common.add_argument("--max-degree", type=int, default=6)
    common.add_argument("--max-n", type=int, default=16)
    common.add_argument("--z", metavar="COMPLEX", action="append")
    common.add_argument("--degree-cap", type=int, default=DEFAULT_DEGREE_CAP)
    common.add_argument("--norm-bound", type=int, default=DEFAULT_NORM_BOUND)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="leibniz", description="Exact checks for Leibniz-rule operators on polynomials.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


_DEFAULT_N = {"check": 1000, "check-map": 1000, "roundtrip": 200, "classify": 200}


def _inputs(args) -> dict[str, Any]:
    keep = ("op", "poly", "n", "budget", "m", "lead", "roots", "quadratic", "points",
            "a_values", "b_values", "max_degree", "max_n", "z")
    return {k: getattr(args, k) for k in keep if getattr(args, k, None) is not None}


def _emit(doc: ReportDoc, out: str | None) -> None:
    text = json.dumps(doc.to_json(), indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def run(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = None
    command = argv[0] if argv and not argv[0].startswith("-") else ""
    doc = ReportDoc(command=command, seed=None, inputs={})
    try:
        args = build_parser().parse_args(argv)
        if not args.command:
            raise UsageError(f"a subcommand is required: {', '.join(COMMANDS)}")
        out = args.out
        logging.basicConfig(stream=sys.stderr, level=logging.INFO if args.verbose else logging.WARNING)
        if args.n is None:
            args.n = _DEFAULT_N.get(args.command, 100)
        if args.n < 0 or args.budget < 0:
            raise UsageError("--n and --budget must be nonnegative")
        cfg = SessionConfig(args.m, args.seed, args.degree_cap, args.norm_bound)
        doc.seed = cfg.seed
        doc.inputs = _inputs(args)
        COMMANDS[args.command](args, cfg, doc)
        code = EXIT_PASS if doc.status == "pass" else EXIT_FAIL
    except UsageError as exc:
        log.error("%s", exc)
        doc.status = "error"
        doc.payload = {"error": str(exc), "kind": "usage"}
        if exc.position is not None:
            doc.payload["position"] = exc.position
        code = EXIT_USAGE
    except (LeibnizError, ArithmeticError, ValueError) as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        doc.status = "error"
        doc.payload = {"error": str(exc), "kind": type(exc).__name__}
        code = EXIT_ERROR
    _emit(doc, out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
