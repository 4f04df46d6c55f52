"""Group corpus and the end-to-end verification harness.

The corpus is every abelian group up to a given order (one per isomorphism
class) plus a curated list of nonabelian nilpotent groups built from the
shipped catalog.  :func:`verify` runs the selected checks on each group and
returns a JSON-serialisable report.
"""

from __future__ import annotations

import enum
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

import numpy as np
from sympy.utilities.iterables import partitions

from .arith import factorize, two_phi_holds
from .errors import CapacityError
from .formulas import degree_lower_bounds, verify_proposition_catalog
from .grammar import parse_group_spec, spec_of
from .groups.nilpotent import AbelianSpec, NilpotentGroup, is_nilpotent, maximal_cyclic_subgroups
from .powergraph import (
    brute_cap,
    degrees_bruteforce,
    diameter_at_most_two,
    edge_connectivity_small,
    is_complete,
    min_degree_bruteforce,
)
from .solver import (
    Method,
    _candidates_unchecked,
    applicable_methods,
    argmin_structure,
    evaluate_method,
    solve_min_degree,
)


class Check(str, enum.Enum):
    SOLVER_VS_ORACLE = "SOLVER_VS_ORACLE"
    CATALOG = "CATALOG"
    EQ1_TIGHTNESS = "EQ1_TIGHTNESS"
    KAPPA_EQ_DELTA = "KAPPA_EQ_DELTA"
    CANDIDATE_CONTAINMENT = "CANDIDATE_CONTAINMENT"


ALL_CHECKS = tuple(Check)
ORACLE_CEILING = 2000
KAPPA_CEILING = 200

# Curated nonabelian groups: every combination of cyclic / noncyclic Sylow
# subgroups with cyclic or noncyclic centres that fits under the oracle ceiling.
NONABELIAN_SPECS = (
    "Q8",
    "D8",
    "M16",
    "Heis27",
    "C2 x Q8",
    "C2 x D8",
    "C2 x M16",
    "C3 x Heis27",
    "Q8 x C3",
    "D8 x C3",
    "M16 x C3",
    "Q8 x C5",
    "D8 x C5",
    "Q8 x C9",
    "D8 x C9",
    "M16 x C5",
    "Q8 x C3 x C3",
    "D8 x C3 x C3",
    "C2 x Q8 x C3",
    "C2 x D8 x C3 x C3",
    "C2 x Q8 x C3 x C3",
    "C4 x Heis27",
    "C2 x Heis27",
    "C2 x C3 x Heis27",
    "C4 x C3 x Heis27",
    "C2 x C2 x Heis27",
    "Heis27 x C5",
    "C3 x Heis27 x C5",
    "Heis27 x C7",
    "C3 x Heis27 x C7",
    "Heis27 x C5 x C5",
    "Q8 x C3 x C5",
    "Q8 x Heis27",
    "C2 x C2 x C3 x Heis27",
    "C2 x Q8 x C3 x Heis27",
    "Q8 x C5 x C5",
    "C2 x D8 x C3 x C3 x C5",
)


def _partitions(k: int) -> list[tuple[int, ...]]:
    """Partitions of ``k`` as descending tuples, in descending lexicographic order."""
    parts = [tuple(sorted((size for size, m in p.items() for _ in range(m)), reverse=True))
             for p in partitions(k)]
    return sorted(parts, reverse=True)


def abelian_class_count(n: int) -> int:
    if n == 1:
        return 1
    out = 1
    for _, e in factorize(n).factors:
        out *= len(_partitions(e))
    return out


def enumerate_abelian(max_order: int) -> list[AbelianSpec]:
    """One spec per isomorphism class of abelian groups of each order ``2..max_order``."""
    out = []
    for n in range(2, max_order + 1):
        f = factorize(n)
        choices = [[tuple(p**k for k in part) for part in _partitions(e)] for p, e in f.factors]
        for combo in product(*choices):
            out.append(AbelianSpec(tuple(q for part in combo for q in part)))
    return out


def nonabelian_catalog(max_order: int | None = None) -> list[NilpotentGroup]:
    """The curated nonabelian groups, each checked to be nilpotent."""
    out = []
    for text in NONABELIAN_SPECS:
        expr = parse_group_spec(text)
        if max_order is not None and expr.order > max_order:
            continue
        G = expr.to_group()
        if G.order <= 256 and not is_nilpotent(G.group):
            raise AssertionError(f"catalog group {text} failed the nilpotency check")
        out.append(G)
    return out


@dataclass
class CorpusOptions:
    max_order: int = 100
    include_nonabelian: bool = False
    checks: tuple[Check, ...] = ALL_CHECKS
    oracle_ceiling: int = ORACLE_CEILING
    kappa_ceiling: int = KAPPA_CEILING
    workers: int = 1

    def __post_init__(self) -> None:
        self.checks = tuple(Check(c) for c in self.checks)


def corpus_specs(options: CorpusOptions) -> list[str]:
    specs = [str(spec_of(s)) for s in enumerate_abelian(options.max_order)]
    if options.include_nonabelian:
        specs += [str(parse_group_spec(t)) for t in NONABELIAN_SPECS]
    return specs


@dataclass
class VerificationReport:
    records: list[dict] = field(default_factory=list)

    @property
    def failures(self) -> int:
        return sum(r["failures"] for r in self.records)

    def aggregate(self) -> dict:
        vacuous: dict[str, int] = {}
        instances: dict[str, int] = {}
        for rec in self.records:
            for section in ("catalog", "argmin_structure"):
                for name, res in (rec.get(section) or {}).items():
                    instances[name] = instances.get(name, 0) + res["instances"]
                    if res["instances"] == 0:
                        vacuous[name] = vacuous.get(name, 0) + 1
                    else:
                        vacuous.setdefault(name, 0)
        return {
            "groups_checked": len(self.records),
            "failures": self.failures,
            "vacuous_counts": dict(sorted(vacuous.items())),
            "instance_totals": dict(sorted(instances.items())),
            "hypotheses_fail_conclusion_holds": sum(
                1 for r in self.records if r.get("conclusion_without_hypotheses")
            ),
        }

    def to_dict(self, timing: bool = True) -> dict:
        records = self.records if timing else [
            {k: v for k, v in r.items() if k != "timing_us"} for r in self.records
        ]
        return {"records": records, "aggregate": self.aggregate()}

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=False) + "\n"


# Individual checks ------------------------------------------------------------------------


def _check_solver(G: NilpotentGroup, rec: dict, argmin: tuple[int, ...] | None) -> int:
    res = solve_min_degree(G)
    rec["method"] = res.method.value
    rec["delta_solver"] = res.delta
    rec["witness"] = res.witness_label
    rec["hypothesis_trace"] = [[c, h] for c, h in res.hypothesis_trace]
    if argmin is None:
        rec["delta_oracle"] = None
        rec["agree"] = None
        return 0
    delta = rec["delta_oracle"]
    rec["agree"] = bool(res.delta == delta and res.witness in argmin)
    fails = 0 if rec["agree"] else 1
    # every applicable closed form must give the same value
    methods = {}
    for m, _ in applicable_methods(G):
        d, w, _ = evaluate_method(G, m)
        methods[m.value] = d
        if d != delta or w not in argmin:
            fails += 1
    rec["method_deltas"] = methods
    if res.method in (Method.P_GROUP, Method.THM_MAIN3_II, Method.THM_MAIN4):
        orders = [M.order for M in maximal_cyclic_subgroups(G)]
        if int(G.orders[res.witness]) != min(orders):
            fails += 1
    sylow_witness = {Method.PROP_2_7_PPSNEW: 0, Method.THM_MAIN5: 1}
    if res.method in sylow_witness:
        s = G.sylows[sylow_witness[res.method]]
        if int(G.orders[res.witness]) != int(s.orders[s.maximal].min()):
            fails += 1
    if res.method is Method.BRUTE_FORCE and G.r >= 2 and not G.is_cyclic:
        rec["conclusion_without_hypotheses"] = _conclusions(G, delta)
    return fails


def _conclusions(G: NilpotentGroup, delta: int) -> list[str]:
    """Theorem conclusions that happen to hold although no hypothesis set does."""
    deg = degrees_bruteforce(G)
    held = []
    y = maximal_cyclic_subgroups(G)
    y_min = min(y, key=lambda M: (M.order, M.generator)).generator
    if deg[y_min] == delta:
        held.append("min_order_generator")
    powers = [int(G.group.power(y_min, p**a)) for p, a, s in zip(G.primes, G.alphas, G.sylows) if s.is_cyclic]
    if any(deg[w] == delta for w in powers):
        held.append("min_order_power")
    if any(deg[c] == delta for c in _candidates_unchecked(G)):
        held.append("candidate_set")
    return held


def _check_eq1(G: NilpotentGroup, rec: dict) -> int:
    deg = degrees_bruteforce(G)
    unique = G.containing_count_support == 1
    pairs = violations = tight = 0
    for M in maximal_cyclic_subgroups(G):
        members = np.fromiter(sorted(M.members), dtype=np.int64)
        gamma = [int(v) for v in G.beta[M.generator]]
        bound = degree_lower_bounds(G, members, gamma)
        d = deg[members]
        pairs += len(members)
        violations += int((d < bound).sum())
        violations += int(((d == bound) != unique[members]).sum())
        tight += int((d == bound).sum())
    rec["eq1"] = {"pairs": pairs, "tight": tight, "violations": violations}
    return violations


def _check_graph(G: NilpotentGroup, rec: dict, delta: int, kappa_ceiling: int) -> int:
    deg = degrees_bruteforce(G)
    facts = {
        "identity_degree": bool(deg[G.identity] == G.order - 1),
        "complete_iff_cyclic_prime_power": is_complete(G) == (G.r == 1 and G.is_cyclic),
        "diameter_at_most_two": diameter_at_most_two(G),
    }
    if G.order <= kappa_ceiling:
        kappa = edge_connectivity_small(G, cap=kappa_ceiling)
        facts["kappa_eq_delta"] = kappa == delta
    rec["graph"] = facts
    return sum(1 for ok in facts.values() if not ok)


def _check_candidates(G: NilpotentGroup, rec: dict, argmin: tuple[int, ...]) -> int:
    fails = 0
    structure = argmin_structure(G, argmin)
    rec["argmin_structure"] = structure
    fails += sum(s["failures"] for s in structure.values())
    if G.r >= 2 and not G.is_cyclic and two_phi_holds(G.primes):
        cands = _candidates_unchecked(G)
        hit = bool(set(cands) & set(argmin))
        rec["candidates"] = {
            "size": len(cands),
            "maximal_cyclic": len(maximal_cyclic_subgroups(G)),
            "meets_argmin": hit,
        }
        fails += 0 if hit else 1
    return fails


def verify_group(G: NilpotentGroup, options: CorpusOptions) -> dict:
    start = time.perf_counter()
    checks = set(options.checks)
    rec: dict = {"group": G.name, "order": G.order}
    fails = 0
    within = G.order <= options.oracle_ceiling
    argmin = None
    if within:
        delta, argmin = min_degree_bruteforce(G)
        rec["delta_oracle"] = delta
    if Check.SOLVER_VS_ORACLE in checks:
        fails += _check_solver(G, rec, argmin)
    if within:
        if Check.CATALOG in checks:
            report = verify_proposition_catalog(G)
            rec["catalog"] = report.to_dict()
            fails += report.failures
        if Check.EQ1_TIGHTNESS in checks:
            fails += _check_eq1(G, rec)
        if Check.KAPPA_EQ_DELTA in checks:
            fails += _check_graph(G, rec, rec["delta_oracle"], options.kappa_ceiling)
        if Check.CANDIDATE_CONTAINMENT in checks:
            fails += _check_candidates(G, rec, argmin)
    rec["failures"] = fails
    rec["timing_us"] = int((time.perf_counter() - start) * 1e6)
    return rec


def _verify_spec(args: tuple[str, CorpusOptions]) -> dict:
    text, options = args
    return verify_group(parse_group_spec(text).to_group(), options)


def verify(options: CorpusOptions | None = None, **kwargs) -> VerificationReport:
    """Run the selected checks on every corpus group; records follow corpus order."""
    options = options or CorpusOptions(**kwargs)
    cap = brute_cap()
    if options.max_order > cap:
        raise CapacityError(f"max_order {options.max_order} exceeds the brute-force cap {cap}")
    jobs = [(s, options) for s in corpus_specs(options)]
    if options.workers > 1:
        with ProcessPoolExecutor(options.workers) as pool:
            records = list(pool.map(_verify_spec, jobs, chunksize=8))
    else:
        records = [_verify_spec(j) for j in jobs]
    return VerificationReport(records)
