"""JSON documents for scenario configs and reports, plus markdown and CSV renderings.

Every rational is written as {"num": "<int>", "den": "<int>"} with both parts
as decimal strings; infinity is {"num": "1", "den": "0"}. Floats are refused
on input and never written.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Iterable

from .groups import INFINITE, AbelianGroup, GroupElement
from .families.config import POINT_NAMES, ConfigError, Family, ScenarioConfig
from .families.report import ScenarioReport
from .positivity import PositivityReport

SCHEMA_VERSION = "1"


def rational_doc(x) -> dict | None:
    if x is None:
        return None
    if x == INFINITE:
        return {"num": "1", "den": "0"}
    if isinstance(x, float) or isinstance(x, bool):
        raise TypeError(f"refusing to serialise {x!r} as a rational")
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def parse_rational(doc) -> Fraction | float:
    if not isinstance(doc, dict) or set(doc) != {"num", "den"}:
        raise ValueError(f"not a rational document: {doc!r}")
    num, den = int(doc["num"]), int(doc["den"])
    if den == 0:
        if num != 1:
            raise ValueError("only 1/0 (infinity) may have a zero denominator")
        return INFINITE
    return Fraction(num, den)


def decode_rationals(doc):
    """Replace every {"num", "den"} object in a parsed document by its value."""
    if isinstance(doc, dict):
        if set(doc) == {"num", "den"}:
            return parse_rational(doc)
        return {k: decode_rationals(v) for k, v in doc.items()}
    if isinstance(doc, list):
        return [decode_rationals(v) for v in doc]
    return doc


def _no_floats(text: str):
    raise ValueError(f"floating point literal {text!r} is not allowed")


def loads(text: str):
    return json.loads(text, parse_float=_no_floats, parse_constant=_no_floats)


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# configs


def _element_doc(e: GroupElement) -> dict:
    return {"free": list(e.free), "torsion": list(e.torsion)}


def config_to_doc(cfg: ScenarioConfig) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "family": Family(cfg.family).value,
        "group": {"free_rank": cfg.group.free_rank, "torsion_orders": list(cfg.group.torsion_orders)},
        "points": {name: _element_doc(e) for name, e in cfg.points.items()},
        "parameters": dict(cfg.parameters),
    }


def _int(value, field: str) -> int:
    if isinstance(value, bool):
        raise ConfigError(field, "must be an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value)
        except ValueError:
            pass
    raise ConfigError(field, "must be an integer")


def _int_list(value, field: str) -> list[int]:
    if not isinstance(value, list):
        raise ConfigError(field, "must be a list of integers")
    return [_int(v, f"{field}[{i}]") for i, v in enumerate(value)]


def config_from_doc(doc) -> ScenarioConfig:
    """Parse and shape-check a config document; points left out default to p0."""
    if not isinstance(doc, dict):
        raise ConfigError("<root>", "config must be an object")
    allowed = {"schema_version", "family", "group", "points", "parameters"}
    extra = set(doc) - allowed
    if extra:
        raise ConfigError(sorted(extra)[0], "unknown field")
    if "schema_version" in doc and str(doc["schema_version"]) != SCHEMA_VERSION:
        raise ConfigError("schema_version", f"unsupported version {doc['schema_version']!r}")
    if "family" not in doc:
        raise ConfigError("family", "required")
    try:
        family = Family(doc["family"])
    except ValueError:
        raise ConfigError("family", f"must be one of {[f.value for f in Family]}") from None

    g = doc.get("group", {})
    if not isinstance(g, dict) or set(g) - {"free_rank", "torsion_orders"}:
        raise ConfigError("group", "expected an object with free_rank and torsion_orders")
    free_rank = _int(g.get("free_rank", 0), "group.free_rank")
    orders = _int_list(g.get("torsion_orders", []), "group.torsion_orders")
    try:
        group = AbelianGroup(free_rank, tuple(orders))
    except ValueError as exc:
        raise ConfigError("group", str(exc)) from None

    raw_points = doc.get("points", {})
    if not isinstance(raw_points, dict):
        raise ConfigError("points", "must be an object keyed by point name")
    points = {}
    for name in POINT_NAMES[family]:
        e = raw_points.get(name)
        if e is None:
            points[name] = group.identity
            continue
        field = f"points.{name}"
        if not isinstance(e, dict) or set(e) - {"free", "torsion"}:
            raise ConfigError(field, "expected an object with free and torsion lists")
        free = _int_list(e.get("free", [0] * free_rank), f"{field}.free")
        tors = _int_list(e.get("torsion", [0] * len(orders)), f"{field}.torsion")
        if len(free) != free_rank or len(tors) != len(orders):
            raise ConfigError(field, f"expected {free_rank} free and {len(orders)} torsion coordinates")
        points[name] = GroupElement(group, tuple(free), tuple(tors))
    extra = set(raw_points) - set(POINT_NAMES[family])
    if extra:
        raise ConfigError(f"points.{sorted(extra)[0]}", f"not a point of the {family.value} family")

    params = doc.get("parameters", {})
    if not isinstance(params, dict):
        raise ConfigError("parameters", "must be an object")
    params = {k: _int(v, f"parameters.{k}") for k, v in params.items()}
    return ScenarioConfig(family, group, points, params)


def load_config(text: str) -> ScenarioConfig:
    try:
        doc = loads(text)
    except ValueError as exc:
        raise ConfigError("<document>", f"not valid JSON: {exc}") from None
    return config_from_doc(doc)


# reports


def positivity_doc(rep: PositivityReport) -> dict:
    return {
        "subject": {k: rational_doc(v) for k, v in rep.subject.coefficients.items() if v},
        "verdict": rep.verdict.value,
        "criterion": rep.criterion,
        "witnesses": [{"label": w.label, "value": rational_doc(w.value)} for w in rep.witnesses],
        "notes": list(rep.notes),
    }


def report_to_doc(rep: ScenarioReport, elapsed: Fraction | None = None) -> dict:
    div = rep.divergence
    doc = {
        "schema_version": SCHEMA_VERSION,
        "scenario": config_to_doc(rep.config),
        "label": rep.config.label,
        "passed": rep.passed,
        "ledger": [
            {
                "claim_id": c.claim_id,
                "anchor": c.anchor,
                "expected": rational_doc(c.expected),
                "computed": rational_doc(c.computed),
                "verdict": "pass" if c.passed else "fail",
            }
            for c in rep.ledger
        ],
        "volume": rational_doc(rep.volume),
        "coefficient_set": [rational_doc(x) for x in rep.coefficient_set],
        "torsion_order": rational_doc(rep.torsion_order),
        "semiample_multiple": rational_doc(rep.semiample_multiple),
        "cartier_index": rational_doc(rep.cartier_index),
        "discrepancies": {k: rational_doc(v) for k, v in rep.pair.discrepancies.entries},
        "divergence": None
        if div is None
        else {
            "status": div.status,
            "value": rational_doc(div.value),
            "lower_bound": rational_doc(div.lower_bound),
            "bound": str(div.bound),
            "solution": None if div.solution is None else [str(v) for v in div.solution],
        },
        "positivity": {k: positivity_doc(v) for k, v in rep.positivity.items()},
        "extras": {k: rational_doc(v) for k, v in rep.extras.items()},
    }
    if elapsed is not None:
        doc["timing"] = {"seconds": rational_doc(elapsed)}
    return doc


def _fmt(x) -> str:
    if x is None:
        return "-"
    if x == INFINITE:
        return "inf"
    return str(Fraction(x))


def report_markdown(rep: ScenarioReport) -> str:
    lines = [f"# {rep.config.label}", ""]
    lines.append(f"- result: {'PASS' if rep.passed else 'FAIL'} ({len(rep.ledger)} claims)")
    lines.append(f"- volume: {_fmt(rep.volume)}")
    lines.append(f"- coefficient set: {{{', '.join(_fmt(x) for x in rep.coefficient_set)}}}")
    lines.append(f"- torsion order: {_fmt(rep.torsion_order)}")
    lines.append(f"- semiample multiple: {_fmt(rep.semiample_multiple)}")
    lines.append(f"- Cartier index estimate: {_fmt(rep.cartier_index)}")
    if rep.divergence is not None:
        d = rep.divergence
        lines.append(f"- divergence witness: {_fmt(d.value)} ({d.status}, bound {d.bound})")
    lines += ["", "| claim | anchor | expected | computed | verdict |", "|---|---|---|---|---|"]
    for c in rep.ledger:
        lines.append(f"| {c.claim_id} | {c.anchor} | {_fmt(c.expected)} | {_fmt(c.computed)} | {'pass' if c.passed else 'FAIL'} |")
    lines += ["", "## Positivity", ""]
    for name, p in rep.positivity.items():
        lines.append(f"- {name}: {p.verdict.value} ({p.criterion}); subject {p.subject}")
    return "\n".join(lines) + "\n"


SWEEP_COLUMNS = ["parameter", "torsion_order", "semiample_multiple", "cartier_index", "divergence_witness", "volume", "passed"]


def sweep_rows(pairs: Iterable[tuple[Any, ScenarioReport]]) -> list[dict]:
    rows = []
    for param, rep in pairs:
        div = rep.divergence
        rows.append(
            {
                "parameter": "free" if param is None else str(param),
                "torsion_order": rep.torsion_order,
                "semiample_multiple": rep.semiample_multiple,
                "cartier_index": rep.cartier_index,
                "divergence_witness": None if div is None else div.value,
                "volume": rep.volume,
                "passed": rep.passed,
            }
        )
    return rows


def sweep_csv(rows: list[dict]) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for row in rows:
        w.writerow([row["parameter"]] + [_fmt(row[k]) for k in SWEEP_COLUMNS[1:-1]] + [str(row["passed"]).lower()])
    return out.getvalue()


def sweep_doc(family: Family, rows: list[dict]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "family": family.value,
        "rows": [
            {k: (v if k in ("parameter", "passed") else rational_doc(v)) for k, v in row.items()} for row in rows
        ],
    }
