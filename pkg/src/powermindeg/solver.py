"""Minimum degree of a power graph by theorem dispatch, with a brute-force fallback.

Each method tag names a closed-form result together with its hypotheses.
:func:`applicable_methods` evaluates all of them; :func:`solve_min_degree`
picks the first applicable one in a fixed precedence order and evaluates the
prescribed witness vertex by the closed-form degree.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .arith import two_phi_holds
from .errors import CapacityError, DomainError, HypothesisError
from .formulas import closed_form_degree
from .groups.nilpotent import (
    CyclicSubgroup,
    NilpotentGroup,
    _product_subgroup,
    maximal_cyclic_subgroups,
    min_order_max_cyclic,
)
from .powergraph import brute_cap, degree_bruteforce, min_degree_bruteforce


class Method(str, enum.Enum):
    COMPLETE_PGROUP_CYCLIC = "COMPLETE_PGROUP_CYCLIC"
    P_GROUP = "P_GROUP"
    PROP_2_7_PPSNEW = "PROP_2_7_PPSNEW"
    THM_MAIN2_CANDIDATES = "THM_MAIN2_CANDIDATES"
    THM_MAIN3_I = "THM_MAIN3_I"
    THM_MAIN3_II = "THM_MAIN3_II"
    THM_MAIN4 = "THM_MAIN4"
    THM_MAIN5 = "THM_MAIN5"
    COR_ABELIAN1_I = "COR_ABELIAN1_i"
    COR_ABELIAN1_II = "COR_ABELIAN1_ii"
    COR_ABELIAN1_III = "COR_ABELIAN1_iii"
    COR_ABELIAN2 = "COR_ABELIAN2"
    BRUTE_FORCE = "BRUTE_FORCE"


class Mode(str, enum.Enum):
    AUTO = "AUTO"
    FORCE_BRUTE = "FORCE_BRUTE"


PRECEDENCE = (
    Method.COMPLETE_PGROUP_CYCLIC,
    Method.P_GROUP,
    Method.THM_MAIN3_I,
    Method.THM_MAIN3_II,
    Method.THM_MAIN4,
    Method.PROP_2_7_PPSNEW,
    Method.THM_MAIN5,
    Method.THM_MAIN2_CANDIDATES,
)

Trace = list[tuple[str, bool]]


@dataclass
class SolveResult:
    delta: int
    witness: int
    method: Method
    hypothesis_trace: Trace
    candidates_examined: list[int] | None = None
    witness_label: str = ""

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "witness": self.witness_label,
            "witness_index": self.witness,
            "method": self.method.value,
            "hypothesis_trace": [{"condition": c, "holds": h} for c, h in self.hypothesis_trace],
            "candidates_examined": self.candidates_examined,
        }


@dataclass
class _Facts:
    """Hypothesis ingredients shared by all methods."""

    r: int
    primes: tuple[int, ...]
    cyclic: list[bool]
    center_cyclic: list[bool]
    abelian: bool
    noncyclic: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        self.noncyclic = tuple(i for i, c in enumerate(self.cyclic) if not c)

    @property
    def group_cyclic(self) -> bool:
        return not self.noncyclic

    def two_phi(self, skip: int | None = None) -> bool:
        return two_phi_holds(p for i, p in enumerate(self.primes) if i != skip)


def _facts(G: NilpotentGroup) -> _Facts:
    return _Facts(
        G.r,
        tuple(G.primes),
        [s.is_cyclic for s in G.sylows],
        [s.center_is_cyclic for s in G.sylows],
        G.is_abelian,
    )


def _method_traces(G: NilpotentGroup) -> dict[Method, Trace]:
    f = _facts(G)
    r, P = f.r, f.primes
    J = set(f.noncyclic)
    prime_list = ",".join(map(str, P))
    t_r1 = (f"r = 1 ({prime_list})", r == 1)
    t_r2 = (f"r = 2 ({prime_list})", r == 2)
    t_r3 = (f"r = 3 ({prime_list})", r == 3)
    t_rge2 = (f"r >= 2 ({prime_list})", r >= 2)
    t_noncyc = ("G noncyclic", not f.group_cyclic)
    t_two_phi = (f"2*phi({'*'.join(map(str, P))}) >= {'*'.join(map(str, P))}", f.two_phi())
    t_centers = (
        "Z(P_j) noncyclic for every noncyclic P_j (J = {"
        + ",".join(str(P[j]) for j in sorted(J)) + "})",
        all(not f.center_cyclic[j] for j in J),
    )
    t_J_proper = ("J != [r]", len(J) < r)
    t_J_full = ("J = [r]", len(J) == r)
    t_abelian = ("G abelian", f.abelian)

    def cyc(i: int, want: bool) -> tuple[str, bool]:
        if i >= r:
            return (f"P_{i + 1} exists", False)
        word = "cyclic" if want else "noncyclic"
        return (f"P_{i + 1} (p={P[i]}) {word}", f.cyclic[i] == want)

    def center_noncyclic(i: int) -> tuple[str, bool]:
        if i >= r:
            return (f"P_{i + 1} exists", False)
        return (f"Z(P_{i + 1}) (p={P[i]}) noncyclic", not f.center_cyclic[i])

    drop_each = [(f"2*phi over primes without {P[l]}", f.two_phi(skip=l)) for l in range(r)]

    return {
        Method.COMPLETE_PGROUP_CYCLIC: [t_r1, ("G cyclic", f.group_cyclic)],
        Method.P_GROUP: [t_r1],
        Method.PROP_2_7_PPSNEW: [t_r2, cyc(0, False), cyc(1, True)],
        Method.THM_MAIN5: [t_r2, cyc(0, True), center_noncyclic(1)],
        Method.THM_MAIN3_I: [t_rge2, t_noncyc, t_centers, t_J_proper, t_two_phi],
        Method.THM_MAIN3_II: [t_rge2, t_noncyc, t_centers, t_J_full, *drop_each],
        Method.THM_MAIN4: [t_r3] + [center_noncyclic(i) for i in range(3)],
        Method.THM_MAIN2_CANDIDATES: [t_rge2, t_noncyc, t_two_phi],
        Method.COR_ABELIAN1_I: [t_abelian, t_r2, cyc(0, False), cyc(1, False)],
        Method.COR_ABELIAN1_II: [t_abelian, t_r2, cyc(0, False), cyc(1, True)],
        Method.COR_ABELIAN1_III: [t_abelian, t_r2, cyc(0, True), cyc(1, False)],
        Method.COR_ABELIAN2: [t_abelian, t_r3] + [cyc(i, False) for i in range(3)],
    }


def applicable_methods(G: NilpotentGroup) -> list[tuple[Method, Trace]]:
    """Every closed-form method whose hypotheses hold, with its trace."""
    return [(m, t) for m, t in _method_traces(G).items() if all(h for _, h in t)]


def method_traces(G: NilpotentGroup) -> dict[Method, Trace]:
    return _method_traces(G)


# Witness construction -------------------------------------------------------------------


def uniqueness_depth(G: NilpotentGroup, y: int, i: int) -> int:
    """Largest ``lam <= gamma_i`` such that ``<y>`` is the only maximal cyclic subgroup containing ``y^{p_i^lam}``."""
    y = int(y)
    if not G.maximal_component_mask[y].all():
        raise DomainError(f"<{G.label(y)}> is not a maximal cyclic subgroup")
    p = G.primes[i]
    gamma = int(G.beta[y, i])
    lam = 0
    for k in range(1, gamma + 1):
        if G.containing_count[int(G.group.power(y, p**k))] != 1:
            break
        lam = k
    return lam


def candidate_set(G: NilpotentGroup) -> list[int]:
    """``y^{p_i^{lambda_i}}`` over canonical generators ``y`` of all maximal cyclic subgroups and all ``i``."""
    if G.r < 2 or not two_phi_holds(G.primes):
        raise HypothesisError("candidate set needs r >= 2 and the 2-phi condition on all primes")
    return _candidates_unchecked(G)


def _candidates_unchecked(G: NilpotentGroup) -> list[int]:
    out: set[int] = set()
    for M in maximal_cyclic_subgroups(G):
        for i, p in enumerate(G.primes):
            lam = uniqueness_depth(G, M.generator, i)
            out.add(int(G.group.power(M.generator, p**lam)))
    return sorted(out)


def _sylow_min_generator(G: NilpotentGroup, k: int) -> int:
    """``y_k``: canonical generator of a least-order maximal cyclic subgroup of ``P_k``, inside ``G``."""
    return int(G.embed(k, G.sylows[k].min_order_maximal))


def _witness_degree(G: NilpotentGroup, x: int) -> int:
    if int(x) == G.identity:
        return G.order - 1
    value = closed_form_degree(G, x)
    return degree_bruteforce(G, x) if value is None else value


def evaluate_method(G: NilpotentGroup, method: Method) -> tuple[int, int, list[int] | None]:
    """``(delta, witness, candidates)`` as prescribed by ``method``; hypotheses are not re-checked."""
    if method is Method.COMPLETE_PGROUP_CYCLIC:
        gen = int(np.flatnonzero(G.orders == G.order)[0])
        return G.order - 1, gen, None
    if method in (Method.P_GROUP, Method.THM_MAIN3_II, Method.THM_MAIN4,
                  Method.COR_ABELIAN1_I, Method.COR_ABELIAN2):
        y = min_order_max_cyclic(G).generator
        return _witness_degree(G, y), y, None
    if method in (Method.PROP_2_7_PPSNEW, Method.COR_ABELIAN1_II):
        y1 = _sylow_min_generator(G, 0)
        return _witness_degree(G, y1), y1, None
    if method in (Method.THM_MAIN5, Method.COR_ABELIAN1_III):
        y2 = _sylow_min_generator(G, 1)
        return _witness_degree(G, y2), y2, None
    if method is Method.THM_MAIN3_I:
        y = min_order_max_cyclic(G).generator
        best = None
        for k, s in enumerate(G.sylows):
            if not s.is_cyclic:
                continue
            w = int(G.group.power(y, G.primes[k] ** G.alphas[k]))
            d = _witness_degree(G, w)
            if best is None or d < best[0]:
                best = (d, w)
        assert best is not None
        return best[0], best[1], None
    if method is Method.THM_MAIN2_CANDIDATES:
        cands = candidate_set(G)
        scored = [(_witness_degree(G, c), c) for c in cands]
        d, w = min(scored)
        return d, w, cands
    if method is Method.BRUTE_FORCE:
        delta, argmin = min_degree_bruteforce(G)
        return delta, argmin[0], None
    raise DomainError(f"unknown method {method}")


def solve_min_degree(G: NilpotentGroup, mode: Mode | str = Mode.AUTO) -> SolveResult:
    """Minimum degree of the power graph of ``G`` with witness, method and hypothesis trace."""
    mode = Mode(mode)
    traces = _method_traces(G)
    chosen = None
    if mode is Mode.AUTO:
        for m in PRECEDENCE:
            if all(h for _, h in traces[m]):
                chosen = m
                break
    if chosen is None:
        cap = brute_cap()
        if G.order > cap:
            raise CapacityError(
                f"no closed form applies to {G.name} and its order {G.order} exceeds the brute-force cap {cap}"
            )
        chosen = Method.BRUTE_FORCE
        trace: Trace = [(f"{m.value} applicable", False) for m in PRECEDENCE] if mode is Mode.AUTO else []
        trace.append((f"order {G.order} <= brute cap {cap}", True))
    else:
        trace = list(traces[chosen])
    delta, witness, cands = evaluate_method(G, chosen)
    return SolveResult(delta, witness, chosen, trace, cands, G.label(witness))


# Structural facts about minimum-degree vertices ------------------------------------------


def argmin_structure(G: NilpotentGroup, argmin) -> dict[str, dict]:
    """Check the structural lemmas on every minimum-degree vertex ``x != e``.

    Returns ``{name: {"instances", "failures", "witness"}}`` for ``deg_comp1``,
    ``cor2``, ``propimp``, ``propimp_2`` and ``main2_form``.
    """
    names = ("deg_comp1", "cor2", "propimp", "propimp_2", "main2_form")
    out = {k: {"instances": 0, "failures": 0, "witness": None} for k in names}

    def record(name: str, ok: bool, x: int) -> None:
        out[name]["instances"] += 1
        if not ok:
            out[name]["failures"] += 1
            if out[name]["witness"] is None:
                out[name]["witness"] = [int(x)]

    if G.r < 2:
        return out
    r = G.r
    full_two_phi = two_phi_holds(G.primes)
    cyclic = [s.is_cyclic for s in G.sylows]
    for x in argmin:
        x = int(x)
        if x == G.identity:
            continue
        unique = G.containing_count[x] == 1
        tau = [i for i in range(r) if G.tau_mask[x, i]]
        tau_two_phi = two_phi_holds(G.primes[i] for i in tau)
        if full_two_phi:
            record("deg_comp1", bool(unique), x)
        if not unique:
            continue
        outside = [k for k in range(r) if k not in tau]
        record("cor2", all(cyclic[k] for k in outside), x)
        if not tau_two_phi:
            continue
        record("propimp", len(outside) <= 1, x)
        M = _unique_maximal(G, x)
        gens = _generators(G, M)
        if len(outside) == 1:
            k = outside[0]
            powered = G.group.power(gens, G.primes[k] ** G.alphas[k])
            record("propimp_2", bool((powered == x).any()), x)
        if full_two_phi and not G.is_cyclic:
            ok = False
            for i, p in enumerate(G.primes):
                lam = uniqueness_depth(G, M.generator, i)
                if (G.group.power(gens, p**lam) == x).any():
                    ok = True
                    break
            record("main2_form", ok, x)
    return out


def _unique_maximal(G: NilpotentGroup, x: int) -> CyclicSubgroup:
    comp = G.components[x]
    return _product_subgroup(G, [int(s.first_containing[a]) for s, a in zip(G.sylows, comp)])


def _generators(G: NilpotentGroup, M: CyclicSubgroup) -> np.ndarray:
    members = np.fromiter(sorted(M.members), dtype=np.int64)
    return members[G.orders[members] == M.order]
