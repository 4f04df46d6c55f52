from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from powermindeg.arith import two_phi_holds
from powermindeg.errors import DomainError
from powermindeg.formulas import (
    CATALOG_NAMES,
    DegreeContext,
    closed_form_degree,
    closed_form_degrees,
    containing_maximal,
    degree_lower_bound,
    verify_proposition_catalog,
)
from powermindeg.grammar import parse_group_spec
from powermindeg.groups import make_group, maximal_cyclic_subgroups, sylow_decompose
from powermindeg.powergraph import degrees_bruteforce

SPECS = ["C2 x C4", "C2 x C2 x C3", "C3 x C3 x C5", "C2 x C2 x C9", "C4 x C9", "C30", "Q8 x C3",
         "Q8 x C9", "D8 x C3 x C3", "C2 x C3 x Heis27", "C9 x C25", "C2 x C2 x C3 x C3", "Heis27 x C5"]


def _group(text):
    return parse_group_spec(text).to_group()


@pytest.mark.parametrize(
    "text, element, expected",
    [
        ("Q8 x C9", "i,0", 19),
        ("C2 x C2 x C3", "1,0,0", 3),
        ("C3 x C3 x C5", "1,0,0", 10),
        ("C2 x C4", "0,2", None),
        ("C2 x C4", "0,1", 3),
    ],
)
def test_closed_form_examples(text, element, expected):
    G = _group(text)
    x = G.parse_element(element)
    assert closed_form_degree(G, x) == expected
    if expected is not None:
        assert degrees_bruteforce(G)[x] == expected


def test_closed_form_identity_is_domain_error():
    G = make_group([2, 3])
    with pytest.raises(DomainError):
        closed_form_degree(G, G.identity)


@pytest.mark.parametrize("text", SPECS)
def test_closed_form_exact_or_not_applicable(text):
    G = _group(text)
    deg = degrees_bruteforce(G)
    vector = closed_form_degrees(G)
    for x in range(G.order):
        if x == G.identity:
            assert vector[x] == -1
            continue
        value = closed_form_degree(G, x)
        assert (value is None) == (G.containing_count_support[x] != 1)
        if value is not None:
            assert value == deg[x] == vector[x]
        else:
            assert vector[x] == -1


@pytest.mark.parametrize("text", SPECS)
def test_lower_bound_every_pair(text):
    G = _group(text)
    deg = degrees_bruteforce(G)
    for M in maximal_cyclic_subgroups(G):
        for x in M.members:
            if x == G.identity:
                continue
            bound = degree_lower_bound(DegreeContext.from_element(G, x, M))
            assert deg[x] >= bound
            assert (deg[x] == bound) == (G.containing_count_support[x] == 1)


def test_context_gamma_from_intersection():
    G = _group("C2 x C4 x C3")
    M = containing_maximal(G, G.parse_element("0,2,1"))
    ctx = DegreeContext.from_element(G, G.parse_element("0,2,1"), M)
    assert ctx.tau == frozenset({0, 1})
    assert ctx.beta == (1, 1)
    assert ctx.gamma == (2, 1)
    assert ctx.element_order == 6


def test_context_validation():
    with pytest.raises(DomainError):
        DegreeContext((2, 3), (1, 1), frozenset(), (1, 1), (0, 0))
    with pytest.raises(DomainError):
        DegreeContext((2, 3), (1, 1), frozenset({0}), (2, 1), (1, 0))
    with pytest.raises(DomainError):
        DegreeContext((2, 3), (2, 1), frozenset({0}), (1, 1), (2, 0))
    with pytest.raises(DomainError):
        DegreeContext((2,), (1, 1), frozenset({0}), (1,), (1,))
    G = make_group([2, 2])
    M = maximal_cyclic_subgroups(G)[0]
    outside = next(x for x in range(4) if x not in M)
    with pytest.raises(DomainError):
        DegreeContext.from_element(G, outside, M)
    with pytest.raises(DomainError):
        DegreeContext.from_element(G, G.identity, M)


@pytest.mark.parametrize("text", SPECS)
def test_catalog_has_no_failures(text):
    report = verify_proposition_catalog(_group(text))
    assert report.failures == 0, report.to_dict()
    assert set(report.to_dict()) == set(CATALOG_NAMES)


def test_catalog_empty_for_prime_power_groups():
    report = verify_proposition_catalog(_group("Q8"))
    assert report.vacuous == list(CATALOG_NAMES)


@pytest.mark.parametrize(
    "text, name",
    [
        ("C9 x C25", "proplessthan"),
        ("C30", "lem32"),
        ("C2 x C2 x C3", "propcomp_i"),
        ("C3 x C3 x C5", "propcomp_ii"),
        ("C2 x C2 x C3 x C3", "prop_abelian"),
        ("C2 x C4 x C3", "rem2"),
        ("Q8 x C3", "mindeg_in_pi"),
    ],
)
def test_catalog_entry_is_exercised(text, name):
    report = verify_proposition_catalog(_group(text))
    assert report.results[name].instances > 0
    assert report.results[name].failures == 0


def _naive_propcomp(G):
    """Instance counts for the two partial-product comparisons, by direct iteration."""
    deg = degrees_bruteforce(G)
    r = G.r
    counts = {"propcomp_i": 0, "propcomp_ii": 0}
    failures = 0
    cyclic = [s.is_cyclic for s in G.sylows]
    for y in range(G.order):
        if G.containing_count[y] != 1 or not G.maximal_component_mask[y].all():
            continue
        dec = sylow_decompose(G, y)
        for size in range(1, r):
            for inside in combinations(range(r), size):
                x = G.identity
                for i in inside:
                    x = int(G.group.mul(x, dec.components[G.primes[i]]))
                outside = [k for k in range(r) if k not in inside]
                if all(cyclic[k] for k in outside):
                    counts["propcomp_i"] += 1
                    failures += int(not deg[y] > deg[x])
                elif two_phi_holds(G.primes[i] for i in inside):
                    counts["propcomp_ii"] += 1
                    failures += int(not deg[y] < deg[x])
    return counts, failures


def _naive_prop_abelian(G):
    deg = degrees_bruteforce(G)
    count = 0
    for k, s in enumerate(G.sylows):
        if s.center_is_cyclic:
            continue
        p = G.primes[k]
        for x in range(G.order):
            tau = [i for i in range(G.r) if G.tau_mask[x, i]]
            if k not in tau:
                continue
            if G.r != 3 and not two_phi_holds(G.primes[i] for i in tau if i != k):
                continue
            count += 1
            assert deg[x] <= deg[int(G.group.power(x, p))]
    return count


@pytest.mark.parametrize("text", ["C2 x C2 x C3", "C3 x C3 x C5", "C2 x C2 x C3 x C3", "C2 x C3 x Heis27",
                                  "C4 x C9", "D8 x C3 x C3", "C2 x C2 x C3 x C3 x C5 x C5"])
def test_catalog_counts_match_naive_enumeration(text):
    G = _group(text)
    report = verify_proposition_catalog(G)
    counts, failures = _naive_propcomp(G)
    assert failures == 0
    for name, count in counts.items():
        assert report.results[name].instances == count
    assert report.results["prop_abelian"].instances == _naive_prop_abelian(G)


@given(st.lists(st.sampled_from([2, 3, 4, 5, 7, 8, 9]), min_size=2, max_size=4).filter(
    lambda qs: np.prod(qs) <= 400))
def test_closed_form_property(qs):
    G = make_group(qs)
    deg = degrees_bruteforce(G)
    vector = closed_form_degrees(G)
    hit = vector >= 0
    assert (vector[hit] == deg[hit]).all()
    assert verify_proposition_catalog(G, deg).failures == 0
