from __future__ import annotations

from itertools import product

import pytest

from ncgrowth.core import GF, ParseError, contains_factor
from ncgrowth.groebner import buchberger_truncated
from ncgrowth.normal_words import (
    ClaimedFamily,
    builtin_family,
    count_normal,
    enumerate_normal,
    parse_family,
    verify_family,
)
from ncgrowth.suite import builtin


def test_enumeration_sorted_and_consistent_with_counts():
    gb = buchberger_truncated(builtin("A"), 8)
    for n in range(7):
        ws = enumerate_normal(gb, n)
        assert len(ws) == count_normal(gb, 8).a[n]
        assert ws == sorted(ws, key=lambda w: (len(w), tuple(-r for r in w)))
        brute = [w for w in product(range(3), repeat=n)
                 if not any(contains_factor(w, lw) for lw in gb.leading_words)]
        assert set(ws) == set(brute)


def test_range_checks():
    gb = buchberger_truncated(builtin("A"), 6)
    with pytest.raises(ValueError):
        count_normal(gb, 7)
    with pytest.raises(ValueError):
        enumerate_normal(gb, -1)
    complete = buchberger_truncated(builtin("B", char=2), 8)
    assert complete.complete
    assert count_normal(complete, 30).valid_to == 30


def test_verify_builtin_families():
    assert verify_family(builtin("A"), builtin_family("exa1(a=2,b=-3)"), 14).ok
    assert verify_family(builtin("A", char=7), builtin_family("exa1(b=-3)"), 16).ok
    assert verify_family(builtin("B", char=3), builtin_family("exa2(a=1)"), 14).ok
    assert verify_family(builtin("C"), builtin_family("rgbC"), 10).ok


def test_verify_reports_first_discrepancy():
    pres = builtin("B")
    al = pres.alphabet
    fam = parse_family("y y y\nx x y\ny y x y y\n", al)  # misses the longer members
    rep = verify_family(pres, fam, 12)
    assert not rep.ok
    assert rep.first_discrepancy == {"degree": 7, "claimed_only": [], "computed_only": ["y^2*x*y*x*y^2"]}


def test_verify_flags_non_member():
    pres = builtin("A")
    assert verify_family(pres, builtin_family("exa1(b=3)"), 10).ok  # b and -b give the same a
    rep = verify_family(pres, builtin_family("exa1(b=5)"), 10)  # a = 6: x^2 - xz - 6z^2 is not in the ideal
    assert not rep.members_in_ideal
    assert rep.first_discrepancy == {"degree": 2, "not_in_ideal": "x^2 - x*z - 6*z^2"}


def test_family_parsing():
    al = builtin("B").alphabet
    fam = parse_family("builtin: exa2(a=1)\ny y (x y)* x y y  # comment\n", al)
    assert fam.constructor is not None and len(fam.patterns) == 1
    with pytest.raises(ParseError):
        builtin_family("exa9")
    with pytest.raises(ParseError):
        builtin_family("exa1(a=1,b=3)")
    with pytest.raises(ParseError):
        builtin_family("exa1(a=1)")


def test_family_constructor_field_evaluation():
    fam = ClaimedFamily(constructor=builtin_family("exa1(b=-3)").constructor)
    elems = fam.elements(builtin("A", char=5), 12)
    # order of (1-b)/(1+b) = -2 mod 5 is 4: family switches to monomials z^4 (x z^3)^j y
    assert any(g.format(builtin("A").alphabet) == "z^4*x*z^3*y" for g in elems if len(g) == 1)
    assert all(g.field == GF(5) for g in elems)
