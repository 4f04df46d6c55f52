"""Command-line front end: ``powermindeg solve|degree|maximal-cyclic|verify|bench|edges``."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time
from importlib import resources

from .corpus import ALL_CHECKS, Check, CorpusOptions, NONABELIAN_SPECS, enumerate_abelian, verify
from .errors import CapacityError, DomainError, HypothesisError, SpecSyntaxError
from .formulas import closed_form_degree
from .grammar import parse_group_spec, spec_of
from .groups.nilpotent import NilpotentGroup, maximal_cyclic_subgroups
from .powergraph import brute_cap, degree_bruteforce, min_degree_bruteforce, write_edge_list
from .solver import Mode, solve_min_degree

log = logging.getLogger("powermindeg")

EXIT_PARSE = 2
EXIT_HYPOTHESIS = 3
EXIT_CAPACITY = 4
EXIT_VERIFY = 5


def load_schema(name: str) -> dict:
    """Published JSON schema: ``solve``, ``report`` or ``maximal_cyclic``."""
    text = resources.files("powermindeg.schemas").joinpath(f"{name}.schema.json").read_text("utf-8")
    return json.loads(text)


def _group(text: str) -> NilpotentGroup:
    return parse_group_spec(text).to_group()


def solve_payload(G: NilpotentGroup, force_brute: bool = False) -> dict:
    res = solve_min_degree(G, Mode.FORCE_BRUTE if force_brute else Mode.AUTO)
    out = {"group": G.name, "order": G.order}
    out.update(res.to_dict())
    if res.candidates_examined is not None:
        out["candidates_examined"] = [G.label(c) for c in res.candidates_examined]
    return out


def cmd_solve(args) -> int:
    payload = solve_payload(_group(args.spec), args.force_brute)
    if args.json:
        print(json.dumps(payload, indent=2))
        return 0
    for key in ("group", "order", "delta", "witness", "method"):
        print(f"{key}: {payload[key]}")
    for step in payload["hypothesis_trace"]:
        print(f"hypothesis: {step['condition']}: {'true' if step['holds'] else 'false'}")
    if payload["candidates_examined"] is not None:
        print(f"candidates: {len(payload['candidates_examined'])}")
    return 0


def cmd_degree(args) -> int:
    G = _group(args.spec)
    x = G.parse_element(args.element)
    if G.order <= brute_cap():
        print(f"brute: {degree_bruteforce(G, x)}")
    else:
        print("brute: SKIPPED (order exceeds the brute-force cap)")
    try:
        value = closed_form_degree(G, x)
    except DomainError:
        value = None
    print(f"closed_form: {'NOT_APPLICABLE' if value is None else value}")
    return 0


def cmd_maximal_cyclic(args) -> int:
    G = _group(args.spec)
    subs = maximal_cyclic_subgroups(G)
    if args.json:
        payload = {
            "group": G.name,
            "order": G.order,
            "count": len(subs),
            "subgroups": [{"generator": G.label(M.generator), "order": M.order} for M in subs],
        }
        print(json.dumps(payload, indent=2))
        return 0
    print("generator\torder")
    for M in subs:
        print(f"{G.label(M.generator)}\t{M.order}")
    print(f"count: {len(subs)}")
    return 0


def _parse_checks(text: str | None) -> tuple[Check, ...]:
    if not text:
        return ALL_CHECKS
    out = []
    for name in text.split(","):
        name = name.strip().upper()
        try:
            out.append(Check(name))
        except ValueError:
            raise DomainError(f"unknown check {name!r}; choose from {', '.join(c.value for c in Check)}") from None
    return tuple(out)


def cmd_verify(args) -> int:
    options = CorpusOptions(
        max_order=args.max_order,
        include_nonabelian=args.nonabelian,
        checks=_parse_checks(args.checks),
        workers=args.workers,
    )
    report = verify(options)
    text = report.to_json()
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    agg = report.aggregate()
    print(f"groups checked: {agg['groups_checked']}")
    print(f"failures: {agg['failures']}")
    for rec in report.records:
        if rec["failures"]:
            print(f"FAIL {rec['group']}: {rec['failures']}")
    return EXIT_VERIFY if agg["failures"] else 0


def bench_specs(text: str) -> list[str]:
    """``abelian:LO-HI``, ``nonabelian``, or specs separated by ``;``."""
    text = text.strip()
    if text == "nonabelian":
        return [str(parse_group_spec(t)) for t in NONABELIAN_SPECS]
    if text.startswith("abelian:"):
        body = text[len("abelian:"):]
        try:
            lo, hi = (int(v) for v in body.split("-"))
        except ValueError:
            raise SpecSyntaxError("expected abelian:LO-HI", text, len("abelian:")) from None
        return [str(spec_of(s)) for s in enumerate_abelian(hi) if s.order >= lo]
    return [str(parse_group_spec(part)) for part in text.split(";") if part.strip()]


def _best_time(fn, spec: str, repeat: int) -> int:
    best = None
    for _ in range(repeat):
        G = _group(spec)  # fresh group, so no cached tables carry over
        start = time.perf_counter()
        fn(G)
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return int(best * 1e6)


def cmd_bench(args) -> int:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["spec", "order", "method", "t_formula_us", "t_brute_us"])
    cap = brute_cap()
    rows = []
    for spec in bench_specs(args.spec_range):
        G = _group(spec)
        method = solve_min_degree(G).method.value
        t_formula = _best_time(solve_min_degree, spec, args.repeat)
        t_brute = _best_time(min_degree_bruteforce, spec, args.repeat) if G.order <= cap else ""
        writer.writerow([spec, G.order, method, t_formula, t_brute])
        rows.append((G.order, spec, t_formula, t_brute))
    if rows:
        order, spec, tf, tb = max(rows)
        if tb != "":
            log.info("largest group %s: formula %d us, brute force %d us", spec, tf, tb)
    return 0


def cmd_edges(args) -> int:
    G = _group(args.spec)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            write_edge_list(G, fh)
    else:
        write_edge_list(G, sys.stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="powermindeg", description="Minimum degree of power graphs of finite nilpotent groups."
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="minimum degree with witness and method")
    p.add_argument("spec")
    p.add_argument("--json", action="store_true")
    p.add_argument("--force-brute", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("degree", help="brute-force and closed-form degree of one element")
    p.add_argument("spec")
    p.add_argument("element", help="comma-separated coordinates, e.g. 1,0,0 or i,0")
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("maximal-cyclic", help="list the maximal cyclic subgroups")
    p.add_argument("spec")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_maximal_cyclic)

    p = sub.add_parser("verify", help="run the verification harness")
    p.add_argument("--max-order", type=int, default=100)
    p.add_argument("--nonabelian", action="store_true")
    p.add_argument("--checks", help="comma-separated subset of " + ",".join(c.value for c in Check))
    p.add_argument("--report", help="write the JSON report here")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time closed-form against brute-force solving")
    p.add_argument("spec_range", metavar="spec-range", help="abelian:LO-HI, nonabelian, or specs joined by ';'")
    p.add_argument("--repeat", type=int, default=3)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("edges", help="dump the power graph as an edge list")
    p.add_argument("spec")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_edges)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except SpecSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except HypothesisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
