from __future__ import annotations

import re
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from ncgrowth.automaton import (
    AhoCorasick,
    FactorPattern,
    RationalSeries,
    Star,
    charpoly,
    compile_forbidden,
    count_by_degree,
    parse_pattern,
    parse_pattern_file,
    poly_mul,
    series_from_dfa,
)
from ncgrowth.core import Alphabet, ParseError, UnknownGeneratorError, contains_factor

AB = Alphabet.of("a b")
XYZ = Alphabet.of("x y z")
short_words = st.lists(st.integers(0, 1), min_size=1, max_size=4).map(tuple)


def brute_avoid(patterns, g, n):
    return sum(1 for w in product(range(g), repeat=n) if not any(contains_factor(w, p) for p in patterns))


@given(st.lists(short_words, min_size=1, max_size=4))
@settings(max_examples=80)
def test_avoidance_dfa_matches_brute_force(patterns):
    dfa = AhoCorasick(patterns, 2).avoidance_dfa(AB)
    assert list(count_by_degree(dfa, 8).a) == [brute_avoid(patterns, 2, n) for n in range(9)]


@given(st.lists(short_words, min_size=1, max_size=3), st.lists(st.integers(0, 1), max_size=10).map(tuple))
@settings(max_examples=80)
def test_iter_matches_finds_every_occurrence(patterns, word):
    ac = AhoCorasick(patterns, 2)
    found = sorted(ac.iter_matches(word))
    expected = sorted((i, k) for k, p in enumerate(patterns)
                      for i in range(len(word) - len(p) + 1) if word[i:i + len(p)] == p)
    assert found == expected
    assert ac.contains_any(word) == bool(expected)


def test_aho_corasick_rejects_bad_patterns():
    with pytest.raises(ValueError):
        AhoCorasick([()], 2)
    with pytest.raises(ValueError):
        AhoCorasick([(3,)], 2)


def _regex(pat: FactorPattern, alphabet: Alphabet) -> str:
    out = ""
    for atom in pat.atoms:
        if isinstance(atom, Star):
            out += "(?:" + "".join(alphabet.letters[a] for a in atom.word) + ")*"
        else:
            out += alphabet.letters[atom]
    return out


pattern_texts = st.sampled_from([
    "a b", "a a", "b (a b)* a", "a b* a", "(a b)* b b", "b a* b", "a (b a)* a", "b b b",
])


@given(st.lists(pattern_texts, min_size=1, max_size=3, unique=True))
@settings(max_examples=40)
def test_compile_forbidden_matches_regex_search(texts):
    pats = [parse_pattern(t, AB) for t in texts]
    rx = re.compile("|".join(_regex(p, AB) for p in pats))
    dfa = compile_forbidden(pats, AB)
    for n in range(9):
        for w in product(range(2), repeat=n):
            s = "".join(AB.letters[a] for a in w)
            assert dfa.accepts(w) == (rx.search(s) is None), s


def test_star_pattern_expand_and_format():
    pat = parse_pattern("z z (x z)* y", XYZ)
    assert not pat.is_finite
    assert pat.min_length == 3
    assert [XYZ.format_word(w, compact=True) for w in pat.expand(7)] == ["zzy", "zzxzy", "zzxzxzy"]
    assert pat.format(XYZ) == "z z (x z)* y"
    assert parse_pattern("x z* x", XYZ).expand(4) == [(0, 0), (0, 2, 0), (0, 2, 2, 0)]


@pytest.mark.parametrize("text", ["x (y", "x )", "(x (y)*)*", "* x", "x ()*", "x (y) z", "", "x ?"])
def test_pattern_syntax_errors(text):
    with pytest.raises(ParseError):
        parse_pattern(text, XYZ)


def test_pattern_file_reports_line():
    with pytest.raises(UnknownGeneratorError) as info:
        parse_pattern_file("x y\n# skip\n\nx q\n", XYZ)
    assert info.value.line == 4


def test_charpoly_and_series():
    assert charpoly([[1, 1], [1, 0]]) == [-1, -1, 1]  # Fibonacci matrix
    # words over {a, b} avoiding "aa": Fibonacci counts, series (1+t)/(1-t-t^2)
    dfa = compile_forbidden([parse_pattern("a a", AB)], AB)
    s = series_from_dfa(dfa).reduced()
    assert s.same_function(RationalSeries((1, 1), (1, -1, -1)))
    assert s.expand(6) == [1, 2, 3, 5, 8, 13, 21]


def test_rational_series_helpers():
    r = RationalSeries((1, -1), poly_mul((1, -1), (1, -1)))
    assert r.reduced() == RationalSeries((1,), (1, -1))
    assert r.format() == "(1 - t)/(1 - 2*t + t^2)"
    with pytest.raises(ValueError):
        RationalSeries((1,), (2, 1))


def test_dfa_dead_start_when_empty_word_forbidden():
    dfa = compile_forbidden([parse_pattern("a*", AB)], AB)
    assert list(count_by_degree(dfa, 3).a) == [0, 0, 0, 0]


def test_all_accepting_and_char0_b_patterns():
    dfa = compile_forbidden([], XYZ)
    assert list(count_by_degree(dfa, 5).a) == [3 ** n for n in range(6)]
    assert series_from_dfa(dfa).reduced() == RationalSeries((1,), (1, -3))
    XY = Alphabet.of("x y")
    pats = parse_pattern_file("y y y\nx x y\ny y (x y)* x y y\n", XY)
    b = RationalSeries((1,), poly_mul((1, 1), poly_mul((1, -2, 1), (1, -1))))
    assert list(count_by_degree(compile_forbidden(pats, XY), 25).a) == b.expand(25)
    a_pats = parse_pattern_file("y z\nx z* x\nx z* y\n", XYZ)
    assert list(count_by_degree(compile_forbidden(a_pats, XYZ), 6).a) == [1, 3, 6, 10, 15, 21, 28]
