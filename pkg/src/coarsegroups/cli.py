"""Command-line front end: scenario runs, ad-hoc distance and membership queries.

Exit codes: 0 all assertions pass, 1 assertion failures, 2 configuration or
parse errors, 3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bornology import Explicit, GeneratedBasis, GeometricSeed, MinimalBasis, member
from .groups import BudgetExceededError, GroupSpec
from .metrics import (
    Entry12Pseudometric,
    MaxEntryMetric,
    QuotientWordMetric,
    WordMetric,
    is_horizon,
)
from .reporting import fmt, report_to_json, report_to_tsv
from .scenarios import SCENARIOS, run_scenario


class ConfigError(ValueError):
    pass


# -- parsing ----------------------------------------------------------


def parse_group(text: str) -> GroupSpec:
    text = text.strip()
    if text in ("H", "heisenberg"):
        return GroupSpec.heisenberg()
    if text == "Z":
        return GroupSpec.free_abelian(1)
    if text.startswith("Z^"):
        try:
            return GroupSpec.free_abelian(int(text[2:]))
        except ValueError as exc:
            raise ConfigError(f"bad group {text!r}") from exc
    if text.startswith("Z/"):
        try:
            return GroupSpec.cyclic(int(text[2:]))
        except ValueError as exc:
            raise ConfigError(f"bad group {text!r}") from exc
    raise ConfigError(f"unknown group {text!r}; use Z, Z^n, Z/k, or heisenberg")


def parse_element(spec: GroupSpec, text: str):
    text = text.strip()
    try:
        if spec.kind == "cyclic":
            if "mod" in text:
                residue, modulus = (p.strip() for p in text.split("mod"))
                if int(modulus) != spec.modulus:
                    raise ConfigError(f"modulus mismatch in {text!r}")
                text = residue
            return int(text) % spec.modulus
        if text.startswith("(") and text.endswith(")"):
            parts = [p for p in text[1:-1].split(",") if p.strip()]
            payload = tuple(int(p) for p in parts)
        else:
            payload = (int(text),)
        if spec.kind == "quotient-by-lattice":
            payload = spec._reduce(payload)
        spec.check_element(payload)
        return payload
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"cannot parse element {text!r}: {exc}") from exc


def parse_metric(spec: GroupSpec, text: str):
    text = text.strip()
    if text == "word":
        return WordMetric(spec)
    if text == "maxentry":
        if spec.kind != "heisenberg":
            raise ConfigError("maxentry requires the heisenberg group")
        return MaxEntryMetric(spec)
    if text == "entry12":
        if spec.kind != "heisenberg":
            raise ConfigError("entry12 requires the heisenberg group")
        return Entry12Pseudometric(spec)
    if text.startswith("quotient:"):
        if spec.kind != "free-abelian" or spec.rank != 1:
            raise ConfigError("quotient:k requires the group Z")
        try:
            k = int(text.split(":", 1)[1])
        except ValueError as exc:
            raise ConfigError(f"bad metric {text!r}") from exc
        return QuotientWordMetric(1, [(k,)])
    raise ConfigError(f"unknown metric {text!r}; use word, maxentry, entry12, quotient:k")


def parse_int_set(text: str) -> frozenset:
    text = text.strip()
    if text.startswith("evens:"):
        lo, hi = text[len("evens:"):].split("..")
        return frozenset((i,) for i in range(int(lo), int(hi) + 1) if i % 2 == 0)
    if text.startswith("{") and text.endswith("}"):
        parts = [p for p in text[1:-1].split(",") if p.strip()]
        return frozenset((int(p),) for p in parts)
    raise ConfigError(f"cannot parse set {text!r}; use {{a,b,c}} or evens:lo..hi")


def parse_bornology(text: str):
    text = text.strip()
    zspec = GroupSpec.free_abelian(1)
    if text == "minimal":
        return MinimalBasis(zspec)
    if text.startswith("geom:"):
        try:
            base, length = (int(p) for p in text[len("geom:"):].split(","))
        except ValueError as exc:
            raise ConfigError(f"bad bornology {text!r}") from exc
        return GeneratedBasis(zspec, [GeometricSeed(base, length)])
    if text.startswith("explicit:"):
        return GeneratedBasis(zspec, [Explicit(tuple(sorted(parse_int_set(text[len("explicit:"):]))))])
    raise ConfigError(
        f"unknown bornology {text!r}; use minimal, geom:base,length, or explicit:{{...}}"
    )


# -- subcommands ------------------------------------------------------


def cmd_list(_args) -> int:
    for name in sorted(SCENARIOS):
        entry = SCENARIOS[name]
        params = ", ".join(f"{p}: {t.__name__} = {d}" for p, t, d in entry.params)
        print(f"{name}({params})")
    return 0


def cmd_run(args) -> int:
    params = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            loaded = json.load(fh)
        if not isinstance(loaded, dict):
            raise ConfigError("config file must hold a JSON object")
        params.update(loaded.pop("parameters", {}))
        scenario = loaded.pop("scenario", args.scenario)
        if loaded:
            raise ConfigError(f"unknown config keys: {sorted(loaded)}")
    else:
        scenario = args.scenario
    if scenario is None:
        raise ConfigError("no scenario given (positional argument or config file)")
    for item in args.param:
        if "=" not in item:
            raise ConfigError(f"bad --param {item!r}; expected key=value")
        key, value = item.split("=", 1)
        params[key] = value
    if scenario not in SCENARIOS:
        raise ConfigError(f"unknown scenario {scenario!r}")
    schema = {p: t for p, t, _ in SCENARIOS[scenario].params}
    typed = {}
    for key, value in params.items():
        if key not in schema:
            raise ConfigError(f"unknown parameter {key!r} for {scenario}")
        try:
            typed[key] = schema[key](value)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad value for {key!r}: {value!r}") from exc

    report = run_scenario(scenario, **typed)
    text = report_to_json(report) if args.format == "json" else report_to_tsv(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not report.all_passed:
        for a in report.assertions:
            if not a.passed:
                print(
                    f"FAIL: {a.description}: expected {fmt(a.expected)}, "
                    f"observed {fmt(a.observed)}",
                    file=sys.stderr,
                )
        return 1
    return 0


def cmd_distance(args) -> int:
    spec = parse_group(args.group)
    metric = parse_metric(spec, args.metric)
    g = parse_element(metric.spec, args.g)
    h = parse_element(metric.spec, args.h)
    print(fmt(metric.eval(g, h)))
    return 0


def cmd_member(args) -> int:
    basis = parse_bornology(args.bornology)
    query = parse_int_set(args.set)
    verdict = member(basis, query, args.depth)
    if verdict.is_member:
        if verdict.via_singleton_axiom:
            print("member (singleton axiom)")
        else:
            cover = ", ".join(str(i) for i in verdict.cover)
            print(f"member (cover indices: {cover})")
    else:
        print(f"not covered at depth {verdict.depth_examined}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coarsegroups",
        description="Exact desk-scale computations in coarse geometry on groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list registered scenarios").set_defaults(func=cmd_list)

    run = sub.add_parser("run", help="run a scenario and emit its report")
    run.add_argument("scenario", nargs="?", help="registered scenario name")
    run.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    run.add_argument("--config", help="JSON config file; flags override it")
    run.add_argument("--format", choices=("tsv", "json"), default="tsv")
    run.add_argument("--output", help="write the report to this path")
    run.set_defaults(func=cmd_run)

    dist = sub.add_parser("distance", help="evaluate a metric on two elements")
    dist.add_argument("--group", required=True, help="Z, Z^n, Z/k, or heisenberg")
    dist.add_argument("--metric", required=True, help="word, maxentry, entry12, quotient:k")
    dist.add_argument("g")
    dist.add_argument("h")
    dist.set_defaults(func=cmd_distance)

    mem = sub.add_parser("member", help="semi-decide bornology membership")
    mem.add_argument("--bornology", required=True, help="minimal, geom:base,length, explicit:{...}")
    mem.add_argument("--set", required=True, help="{a,b,c} or evens:lo..hi")
    mem.add_argument("--depth", type=int, required=True)
    mem.set_defaults(func=cmd_member)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceededError as exc:
        print(f"resource budget exceeded: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
