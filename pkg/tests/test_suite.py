from __future__ import annotations

from math import comb

import pytest

from ncgrowth.core import parse_presentation
from ncgrowth.groebner import buchberger_truncated
from ncgrowth.normal_words import count_normal, enumerate_normal
from ncgrowth.suite import (
    CaseNotCovered,
    builtin,
    c_normal_counts,
    check_C_bounds,
    expected_pattern,
    exa2_finite_series,
    growth_jump_report,
    make_algebra,
    mult_order,
    reproduce_algebra,
    reproduce_all,
)


def test_mult_order():
    assert [mult_order(-2, p) for p in (5, 7, 11, 13)] == [4, 6, 5, 12]
    assert mult_order(3, 7) == 6
    with pytest.raises(ValueError):
        mult_order(0, 5)
    with pytest.raises(ValueError):
        mult_order(2, 8)


def test_builtin_parameter_validation():
    with pytest.raises(ValueError):
        builtin("exa1", {"b": 1})
    with pytest.raises(ValueError):
        builtin("exa1", {"b": 3}, char=2)
    with pytest.raises(ValueError):
        builtin("exa1", {"b": 3, "a": 1})
    with pytest.raises(ValueError):
        builtin("exa2", {"a": 0})
    with pytest.raises(ValueError):
        builtin("A", char=4)
    with pytest.raises(ValueError):
        builtin("D")
    assert builtin("exa1", {"b": -3}) == builtin("A").with_relations(builtin("exa1", {"b": -3}).relations)


def test_expected_pattern_cases():
    with pytest.raises(CaseNotCovered):
        expected_pattern(make_algebra("A", char=2))
    with pytest.raises(CaseNotCovered):
        expected_pattern(make_algebra("A", char=3))
    assert expected_pattern(make_algebra("A", char=11)).parameter == 5
    assert expected_pattern(make_algebra("B", char=5)).parameter == 4
    assert expected_pattern(make_algebra("exa2", {"a": -1})).parameter == 1  # 1 + a = 0 over Q
    assert expected_pattern(make_algebra("B")).parameter is None


def test_exa2_closed_form_exponent_pinned_by_counts():
    for p in (2, 3, 5):
        gb = buchberger_truncated(builtin("B", char=p), 25)
        counts = list(count_normal(gb, 40).a)
        series, _ = exa2_finite_series(p - 1)
        assert counts == series.expand(40)


def test_c_counts_match_enumeration():
    gb = buchberger_truncated(builtin("C"), 10)
    assert list(c_normal_counts(10).a) == [len(enumerate_normal(gb, n)) for n in range(11)]
    assert list(c_normal_counts(6).a) == [1, 4, 9, 18, 33, 56, 91]


def test_c_bounds():
    rep = check_C_bounds(200)
    assert rep.ok and rep.first_lower_failure is None
    with pytest.raises(ValueError):
        check_C_bounds(5)


def test_jump_report_and_char2():
    rep = growth_jump_report("A", [5, 7], 14, n_growth=120)
    assert rep.verdict and rep.char2_matches_char0
    assert rep.per_prime[7].parameter == 6
    with pytest.raises(ValueError):
        growth_jump_report("A", [3], 14)
    with pytest.raises(ValueError):
        growth_jump_report("C", [5], 14)
    with pytest.raises(ValueError):
        growth_jump_report("B", [4], 14)


def test_a_mod_2_is_binomial():
    gb = buchberger_truncated(builtin("A", char=2), 12)
    assert list(count_normal(gb, 12).a) == [comb(n + 2, 2) for n in range(13)]


def test_reproduce_algebra_dispatch():
    claims = reproduce_algebra("A", 5, 20)
    assert [c.id for c in claims] == ["A.char5.finite_order"]
    assert claims[0].passed and claims[0].computed["m"] == 4
    with pytest.raises(CaseNotCovered):
        reproduce_algebra("A", 3, 20)
    with pytest.raises(ValueError):
        reproduce_algebra("A", 0, 8)


def test_reproduce_all_preconditions():
    with pytest.raises(ValueError):
        reproduce_all(8, 400)
    with pytest.raises(ValueError):
        reproduce_all(20, 50)


def test_injected_wrong_relation_fails_without_aborting():
    wrong = parse_presentation("generators: x y z\nrelations: x*y, z*y, x^2 - x*z - 2*z^2")
    claims = {c.id: c for c in reproduce_all(12, 100, overrides={"A": wrong})}
    assert not claims["A.char0.basis"].passed
    assert not claims["A.char5.finite_order"].passed
    assert claims["B.char0.basis"].passed and claims["C.basis"].passed
    assert len(claims) == 18
