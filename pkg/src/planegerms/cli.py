"""Command-line front end.

Exit codes: 0 when every input got a named label (or a check passed),
1 on malformed input or insufficient order, 2 when some input is out of
scope.  Batch inputs (a JSON list) are processed independently, optionally
in a process pool, and reported in input order.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable

from .errors import GermError, InputError, InsufficientOrder, NotApplicable
from .fixtures import FIXTURES, run_all
from .jets import PlaneGermJet
from .normal_forms import NORMAL_FORMS
from .normalize import SpecifiedJetClass, reduce_to_specified_jet
from .projection import (
    MongeForm,
    Viewpoint,
    central_projection_germ,
    constraint_check,
    focal_scan,
    parallel_projection_germ,
)
from .recognize import OUT_OF_SCOPE, classify, classify_specified_jet

EXIT_OK, EXIT_INPUT, EXIT_OOS = 0, 1, 2
DEFAULT_ORDER = 12


# -- input handling --------------------------------------------------------------------------

def _load(args) -> Any:
    if args.inline is not None:
        text = args.inline
    elif args.input is not None:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    else:
        raise InputError("give --input PATH or --inline JSON")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def _germ(data: Any, order: int | None) -> PlaneGermJet:
    if isinstance(data, dict) and "f" in data and "order" not in data:
        data = {**data, "order": order or DEFAULT_ORDER}
    f = PlaneGermJet.from_json(data)
    if order is not None:
        if order > f.order:
            raise InputError(f"input carries order {f.order}; cannot work at order {order}")
        f = f.truncate(order)
    return f


def _monge(data: Any, order: int | None) -> MongeForm:
    if not isinstance(data, dict):
        raise InputError("Monge form JSON must be an object")
    if "expr" in data:
        m = MongeForm.parse(str(data["expr"]), int(data.get("order", order or DEFAULT_ORDER)))
    else:
        m = MongeForm.from_json(data)
    if order is not None:
        if order > m.order:
            raise InputError(f"Monge form carries order {m.order}; cannot work at order {order}")
        m = MongeForm(m.coeffs, order)
    return m


# -- per-item workers (module level so they pickle) --------------------------------------------

def _status(label: str) -> int:
    return EXIT_OOS if label == OUT_OF_SCOPE else EXIT_OK


def _classify_item(data, order) -> tuple[int, dict]:
    f = _germ(data, order)
    r = classify(f, crosscheck=True)
    return _status(r.label), r.to_json()


def _normalize_item(data, order) -> tuple[int, dict]:
    f = _germ(data, order)
    cls = classify_specified_jet(f)
    if isinstance(cls, SpecifiedJetClass):
        n = reduce_to_specified_jet(f, cls, track=True)
        return EXIT_OK, n.to_json()
    if cls.startswith(OUT_OF_SCOPE):
        return EXIT_OOS, {"label": OUT_OF_SCOPE, "reason": cls.split(":", 1)[1]}
    return EXIT_OK, {"label": cls, "specified_jet": None}


def _project_item(data, order) -> tuple[int, dict]:
    if not isinstance(data, dict) or "monge" not in data:
        raise InputError('project input needs a "monge" object')
    m = _monge(data["monge"], order)
    out: dict = {"monge": m.to_json()}
    if "direction" in data:
        f = parallel_projection_germ(m, tuple(data["direction"]))
        out["projection"] = "parallel"
        out["direction"] = [str(t) for t in data["direction"]]
    else:
        p = Viewpoint.from_json(data.get("viewpoint", {"a": "0"}))
        f = central_projection_germ(m, p)
        out["projection"] = "central"
        out["viewpoint"] = p.to_json()
        if "row" in data:
            out["constraints"] = constraint_check(m, p, str(data["row"])).to_json()
    r = classify(f)
    out["germ"] = f.to_json()
    out["classification"] = r.to_json()
    return _status(r.label), out


def _scan_item(data, order) -> tuple[int, dict]:
    if not isinstance(data, dict) or "monge" not in data:
        raise InputError('scan input needs a "monge" object')
    m = _monge(data["monge"], order)
    try:
        s = focal_scan(m, width=data.get("width", "1/1024"))
    except NotApplicable as exc:
        return EXIT_OOS, {"monge": m.to_json(), "error": str(exc)}
    return EXIT_OK, {"monge": m.to_json(), **s.to_json()}


def _guarded(worker: Callable, data, order) -> tuple[int, dict]:
    try:
        return worker(data, order)
    except InsufficientOrder as exc:
        return EXIT_INPUT, {"error": str(exc), "needed_order": exc.needed}
    except (GermError, OSError) as exc:
        return EXIT_INPUT, {"error": str(exc)}


def _call(args: tuple) -> tuple[int, dict]:
    worker, data, order = args
    return _guarded(worker, data, order)


def _run_items(worker: Callable, payload: Any, args) -> tuple[int, Any]:
    batch = isinstance(payload, list)
    items = payload if batch else [payload]
    jobs = [(worker, item, args.order) for item in items]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_call, jobs))
    else:
        results = [_call(j) for j in jobs]
    codes = [c for c, _ in results]
    # an input error outranks out-of-scope
    code = EXIT_INPUT if EXIT_INPUT in codes else max(codes, default=EXIT_OK)
    outs = [o for _, o in results]
    return code, outs if batch else outs[0]


# -- table and fixtures --------------------------------------------------------------------------

def run_table(order: int = DEFAULT_ORDER, forms=NORMAL_FORMS) -> tuple[int, list[dict]]:
    rows = []
    for nf in forms:
        try:
            got = classify(nf.germ(order)).label
        except GermError as exc:
            got = f"error: {exc}"
        rows.append({"label": nf.label, "normal_form": f"({nf.f1}, {nf.f2})", "got": got, "pass": got == nf.label})
    return (EXIT_OK if all(r["pass"] for r in rows) else EXIT_INPUT), rows


def run_fixtures(fixtures=FIXTURES) -> tuple[int, list[dict]]:
    recs = run_all(fixtures)
    return (EXIT_OK if all(r["ok"] for r in recs) else EXIT_INPUT), recs


# -- text rendering ----------------------------------------------------------------------------

def _text_classification(d: dict) -> list[str]:
    lines = [f"label: {d['label']}" + (f"  ({d['reason']})" if d.get("reason") else "")]
    if d.get("specified_jet"):
        lines.append(f"specified jet: {d['specified_jet']}")
    for m, v in d.get("moduli", {}).items():
        lines.append(f"modulus {m}: {v}")
    for e in d.get("certificate", []):
        lines.append(f"  [{'x' if e['holds'] else ' '}] {e['predicate']}    ({e['name']} = {e['value']})")
    if d.get("flags"):
        lines.append("flags: " + ", ".join(d["flags"]))
    return lines


def _render_text(command: str, out: Any) -> str:
    items = out if isinstance(out, list) else [out]
    lines: list[str] = []
    for k, d in enumerate(items):
        if len(items) > 1 and command not in ("table", "fixtures"):
            lines.append(f"# item {k}")
        if "error" in d and command not in ("table", "fixtures"):
            lines.append(f"error: {d['error']}")
        elif command == "classify":
            lines.extend(_text_classification(d))
        elif command == "project":
            lines.append(f"{d['projection']} projection of z = {MongeForm.from_json(d['monge'])}")
            lines.extend(_text_classification(d["classification"]))
            if "constraints" in d:
                c = d["constraints"]
                lines.append(f"row {c['row']}: {'satisfied' if c['satisfied'] else 'not satisfied'}")
        elif command == "table":
            lines.append(f"{'PASS' if d['pass'] else 'FAIL'}  {d['label']:<6} {d['got']:<12} {d['normal_form']}")
        elif command == "fixtures":
            lines.append(f"{'PASS' if d['ok'] else 'FAIL'}  {d['fixture']}  {d['params']}")
        elif command == "scan":
            lines.append(f"class {d['class']}, quantity {d['quantity']}, numerator in u: {d['numerator_in_u']}")
            for r in d["roots"]:
                lo, hi = r["a_interval"]
                where = f"a = {lo}" if r["exact"] else f"a in ({lo}, {hi})"
                lines.append(f"  {where}: {r['left_label']} | {r['root_label']} | {r['right_label']}")
            if not d["roots"]:
                lines.append("  no focal points")
        else:
            lines.append(json.dumps(d, indent=2))
    if command == "table":
        n = sum(d["pass"] for d in items)
        lines.append(f"{n}/{len(items)} normal forms classified to their own labels")
    return "\n".join(lines)


# -- entry point -------------------------------------------------------------------------------

COMMANDS = ("classify", "normalize", "project", "scan", "fixtures", "table")
_WORKERS = {"classify": _classify_item, "normalize": _normalize_item,
            "project": _project_item, "scan": _scan_item}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="planegerms", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--input", metavar="PATH", help="UTF-8 JSON input file")
    src.add_argument("--inline", metavar="JSON", help="JSON input given on the command line")
    p.add_argument("--order", type=int, default=None, help="working jet order")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for batch input")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.order is not None and args.order < 1:
        parser.error("--order must be at least 1")
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    try:
        if args.command == "table":
            code, out = run_table(args.order or DEFAULT_ORDER)
        elif args.command == "fixtures":
            code, out = run_fixtures()
        else:
            payload = _load(args)
            code, out = _run_items(_WORKERS[args.command], payload, args)
    except (GermError, OSError) as exc:
        print(json.dumps({"error": str(exc)}) if args.format == "json" else f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        print(json.dumps(out, indent=2))
    else:
        print(_render_text(args.command, out))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
