from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from powermindeg.errors import SpecSyntaxError
from powermindeg.grammar import Factor, GroupSpecExpr, parse_group_spec


@pytest.mark.parametrize(
    "text, normalized, order",
    [
        ("C2 x C2 x C9", "C2 x C2 x C9", 36),
        ("C12", "C4 x C3", 12),
        ("Q8 x C9", "Q8 x C9", 72),
        ("C9 x Q8 x C2", "C2 x Q8 x C9", 144),
        ("C2 x (C3 x Heis27)", "C2 x C3 x Heis27", 162),
        ("(C3 x C3) x C5", "C3 x C3 x C5", 45),
        ("  C6   x   C10 ", "C2 x C2 x C3 x C5", 60),
        ("C2 × C3", "C2 x C3", 6),
    ],
)
def test_parse_and_normalize(text, normalized, order):
    expr = parse_group_spec(text)
    assert str(expr) == normalized
    assert expr.order == order
    assert parse_group_spec(str(expr)) == expr


def test_abelian_spec_view():
    expr = parse_group_spec("C2 x C2 x C9")
    assert expr.is_abelian
    assert expr.abelian_spec().cyclic_factors == (2, 2, 9)
    assert not parse_group_spec("Q8 x C9").is_abelian


@pytest.mark.parametrize(
    "text, position",
    [
        ("C1", 0),
        ("C0", 0),
        ("C2 x C1", 5),
        ("Q9", 0),
        ("C2 x Foo", 5),
        ("C2 x", 4),
        ("C2 x x C3", 5),
        ("C2 C3", 3),
        ("(C2 x C3", 8),
        ("C2 $ C3", 3),
        ("", 0),
    ],
)
def test_syntax_errors_carry_positions(text, position):
    with pytest.raises(SpecSyntaxError) as info:
        parse_group_spec(text)
    assert info.value.position == position
    assert f"position {position}" in str(info.value)


def test_unknown_name_is_reported():
    with pytest.raises(SpecSyntaxError, match="'Foo'"):
        parse_group_spec("C2 x Foo")


def test_factor_order_key():
    # cyclic factors come before named ones of the same prime
    assert Factor.cyclic(16) < Factor.named("Q8")
    assert Factor.named("Heis27") < Factor.cyclic(5)


terms = st.sampled_from(["C2", "C3", "C4", "C6", "C9", "C12", "C25", "Q8", "D8", "M16", "Heis27"])


@given(st.lists(terms, min_size=1, max_size=5))
def test_roundtrip_property(parts):
    expr = parse_group_spec(" x ".join(parts))
    again = parse_group_spec(str(expr))
    assert again == expr
    assert str(again) == str(expr)
    assert isinstance(expr, GroupSpecExpr)
    keys = [(f.prime, f.kind, f.size, f.name) for f in expr.factors]
    assert keys == sorted(keys)
