"""Command line front end.

    glcsurf verify   [--out PATH] [--format json|markdown]
    glcsurf scenario --config PATH [--format json|markdown|csv] [--out PATH]
    glcsurf sweep    --family NAME --param RANGE [--format csv|json] [--out PATH]

Exit codes: 0 success, 1 claim mismatch, 2 config or validation error.
"""
from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path

from .families import (
    ConfigError,
    Family,
    ScenarioAborted,
    ScenarioConfig,
    ScenarioReport,
    build,
    calabi_yau_config,
    general_type_config,
    kodaira_one_config,
    validate,
    weak_fano_config,
)
from .serialize import (
    SCHEMA_VERSION,
    dumps,
    load_config,
    rational_doc,
    report_markdown,
    report_to_doc,
    sweep_csv,
    sweep_doc,
    sweep_rows,
)

EXIT_OK, EXIT_MISMATCH, EXIT_CONFIG = 0, 1, 2

GENERAL_TYPE_TORSION = 7


def verify_battery() -> list[ScenarioConfig]:
    """Pinned configurations covering all four families."""
    return [
        *(calabi_yau_config(n) for n in (5, 7, 9)),
        kodaira_one_config(1, cover_degree=2),
        *(general_type_config(r, GENERAL_TYPE_TORSION) for r in (4, 5)),
        *(weak_fano_config(n) for n in (1, 9)),
    ]


def _elapsed(start: int) -> Fraction:
    return Fraction(time.perf_counter_ns() - start, 10**9)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _failure_line(label: str, claim) -> str:
    return f"FAIL {label} {claim.claim_id}: expected {claim.expected}, computed {claim.computed}"


def run_verify(configs: list[ScenarioConfig] | None = None) -> tuple[dict, list[ScenarioReport], str | None]:
    """Build every configuration; returns (document, reports, first failure message)."""
    configs = verify_battery() if configs is None else configs
    start = time.perf_counter_ns()
    docs, reports, first = [], [], None
    for cfg in configs:
        t0 = time.perf_counter_ns()
        try:
            rep = build(cfg)
        except ScenarioAborted as exc:
            claim = exc.first_failure
            msg = _failure_line(cfg.label, claim) if claim else f"FAIL {cfg.label} aborted: {exc.cause}"
            first = first or msg
            docs.append(
                {
                    "label": cfg.label,
                    "passed": False,
                    "aborted": str(exc.cause),
                    "first_failure": claim.claim_id if claim else None,
                }
            )
            continue
        reports.append(rep)
        docs.append(report_to_doc(rep, _elapsed(t0)))
        if not rep.passed and first is None:
            first = _failure_line(cfg.label, rep.failures[0])
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "passed": first is None,
        "first_failure": first,
        "scenarios": docs,
        "timing": {"seconds": rational_doc(_elapsed(start))},
    }
    return doc, reports, first


def cmd_verify(args) -> int:
    doc, reports, first = run_verify()
    if args.format == "markdown":
        text = "".join(report_markdown(r) + "\n" for r in reports)
        if first:
            text += f"\n**{first}**\n"
    else:
        text = dumps(doc)
    _emit(text, args.out)
    if first:
        print(first, file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_scenario(args) -> int:
    try:
        cfg = validate(load_config(Path(args.config).read_text()))
    except OSError as exc:
        raise ConfigError("--config", f"cannot read {args.config}: {exc.strerror}") from None
    t0 = time.perf_counter_ns()
    try:
        rep = build(cfg)
    except ScenarioAborted as exc:
        claim = exc.first_failure
        print(_failure_line(cfg.label, claim) if claim else f"FAIL {cfg.label} aborted: {exc.cause}", file=sys.stderr)
        return EXIT_MISMATCH
    if args.format == "markdown":
        text = report_markdown(rep)
    elif args.format == "csv":
        text = sweep_csv(sweep_rows([("config", rep)]))
    else:
        text = dumps(report_to_doc(rep, _elapsed(t0)))
    _emit(text, args.out)
    if not rep.passed:
        print(_failure_line(cfg.label, rep.failures[0]), file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def parse_range(text: str) -> list[int | None]:
    """'5,7,11', '1..30' or a mix; 'free' stands for a point of infinite order."""
    values: list[int | None] = []
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        if tok == "free":
            values.append(None)
        elif ".." in tok:
            lo, hi = tok.split("..", 1)
            try:
                values.extend(range(int(lo), int(hi) + 1))
            except ValueError:
                raise ConfigError("--param", f"bad range {tok!r}") from None
        else:
            try:
                values.append(int(tok))
            except ValueError:
                raise ConfigError("--param", f"bad value {tok!r}") from None
    if not values:
        raise ConfigError("--param", "empty range")
    return values


def sweep_config(family: Family, value: int | None) -> ScenarioConfig:
    """The swept parameter is the torsion order n, or r for the general type family."""
    if family == Family.GENERAL_TYPE:
        if value is None:
            raise ConfigError("--param", "r must be an integer")
        return general_type_config(value, GENERAL_TYPE_TORSION)
    maker = {
        Family.CALABI_YAU: calabi_yau_config,
        Family.KODAIRA_ONE: kodaira_one_config,
        Family.WEAK_FANO: weak_fano_config,
    }[family]
    return maker(value)


def cmd_sweep(args) -> int:
    try:
        family = Family(args.family)
    except ValueError:
        raise ConfigError("--family", f"must be one of {[f.value for f in Family]}") from None
    pairs = []
    for value in parse_range(args.param):
        cfg = validate(sweep_config(family, value))
        try:
            pairs.append((value, build(cfg)))
        except ScenarioAborted as exc:
            print(f"FAIL {cfg.label} aborted: {exc.cause}", file=sys.stderr)
            return EXIT_MISMATCH
    rows = sweep_rows(pairs)
    text = sweep_csv(rows) if args.format == "csv" else dumps(sweep_doc(family, rows))
    _emit(text, args.out)
    bad = [rep for _, rep in pairs if not rep.passed]
    if bad:
        print(_failure_line(bad[0].config.label, bad[0].failures[0]), file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="glcsurf", description="Exact checks for glc surface families.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the pinned verification battery")
    v.add_argument("--out")
    v.add_argument("--format", choices=["json", "markdown"], default="json")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("scenario", help="build one scenario from a JSON config")
    s.add_argument("--config", required=True)
    s.add_argument("--format", choices=["json", "markdown", "csv"], default="json")
    s.add_argument("--out")
    s.set_defaults(func=cmd_scenario)

    w = sub.add_parser("sweep", help="tabulate one family over a parameter range")
    w.add_argument("--family", required=True)
    w.add_argument("--param", required=True, help="e.g. 5,7,11,13 or 1..30; 'free' for infinite order")
    w.add_argument("--format", choices=["csv", "json"], default="csv")
    w.add_argument("--out")
    w.set_defaults(func=cmd_sweep)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
