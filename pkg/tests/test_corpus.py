from __future__ import annotations

import json

import jsonschema
import pytest

from powermindeg.cli import load_schema
from powermindeg.corpus import (
    Check,
    CorpusOptions,
    NONABELIAN_SPECS,
    abelian_class_count,
    enumerate_abelian,
    nonabelian_catalog,
    verify,
)
from powermindeg.errors import CapacityError
from powermindeg.grammar import parse_group_spec, spec_of
from powermindeg.groups import is_nilpotent


@pytest.mark.parametrize("n, count", [(16, 5), (36, 4), (7, 1), (8, 3), (72, 6), (64, 11)])
def test_abelian_counts(n, count):
    assert sum(1 for s in enumerate_abelian(n) if s.order == n) == count
    assert abelian_class_count(n) == count


def test_abelian_enumeration_is_complete_and_distinct():
    specs = enumerate_abelian(300)
    assert len(specs) == len(set(specs))
    for n in range(2, 301):
        assert sum(1 for s in specs if s.order == n) == abelian_class_count(n)
    orders = [s.order for s in specs]
    assert orders == sorted(orders)
    assert enumerate_abelian(300) == specs


def test_abelian_specs_roundtrip_through_parser():
    for s in enumerate_abelian(200):
        expr = spec_of(s)
        assert parse_group_spec(str(expr)).abelian_spec() == s


def test_nonabelian_catalog():
    groups = nonabelian_catalog()
    names = [G.name for G in groups]
    assert names == [str(parse_group_spec(t)) for t in NONABELIAN_SPECS]
    by_name = dict(zip(names, groups))
    q8 = by_name["Q8"]
    assert q8.order == 8 and q8.sylows[0].center_is_cyclic
    heis = by_name["Heis27"]
    assert len(heis.sylows[0].center) == 3 and heis.group.exponent == 3
    g = by_name["C2 x C3 x Heis27"]
    assert g.sylows[0].is_cyclic and not g.sylows[1].center_is_cyclic
    for G in groups:
        assert not G.is_abelian
        if G.order <= 200:
            assert is_nilpotent(G.group)
    assert all(G.order <= 72 for G in nonabelian_catalog(max_order=72))


def test_verify_small_examples():
    report = verify(CorpusOptions(max_order=4))
    rec = next(r for r in report.records if r["group"] == "C2 x C2")
    assert rec["method"] == "P_GROUP" and rec["delta_solver"] == 1 and rec["agree"]
    report = verify(CorpusOptions(max_order=36, checks=(Check.SOLVER_VS_ORACLE,)))
    rec = next(r for r in report.records if r["group"] == "C2 x C2 x C9")
    assert rec["method"] == "PROP_2_7_PPSNEW"
    assert rec["delta_solver"] == rec["delta_oracle"] == 9
    assert rec["agree"] is True
    assert "catalog" not in rec


def test_verify_report_schema_and_zero_failures():
    report = verify(CorpusOptions(max_order=60, include_nonabelian=True))
    payload = json.loads(report.to_json())
    jsonschema.validate(payload, load_schema("report"))
    assert payload["aggregate"]["failures"] == 0
    assert payload["aggregate"]["groups_checked"] == len(enumerate_abelian(60)) + len(NONABELIAN_SPECS)


def test_verify_is_deterministic():
    opts = CorpusOptions(max_order=40, include_nonabelian=False)
    a = verify(opts).to_json(timing=False)
    b = verify(opts).to_json(timing=False)
    assert a == b
    assert "timing_us" not in a


def test_verify_workers_merge_in_corpus_order():
    opts = CorpusOptions(max_order=30, checks=(Check.SOLVER_VS_ORACLE, Check.CATALOG))
    serial = verify(opts).to_json(timing=False)
    opts.workers = 2
    assert verify(opts).to_json(timing=False) == serial


def test_verify_respects_brute_cap(monkeypatch):
    monkeypatch.setenv("POWERGRAPH_MAX_BRUTE", "20")
    with pytest.raises(CapacityError):
        verify(CorpusOptions(max_order=30))


def test_oracle_ceiling_skips_brute_force():
    report = verify(CorpusOptions(max_order=12, oracle_ceiling=8))
    rec = next(r for r in report.records if r["group"] == "C4 x C3")
    assert rec["delta_oracle"] is None and rec["agree"] is None
    assert report.failures == 0
