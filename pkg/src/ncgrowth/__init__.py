"""Truncated noncommutative Groebner bases, normal-word counts and growth of graded algebras."""

from __future__ import annotations

__version__ = "0.1.0"

from .automaton import DFA, FactorPattern, RationalSeries, compile_forbidden, count_by_degree, series_from_dfa
from .core import (
    GF,
    QQ,
    Alphabet,
    DegLexOrder,
    ParseError,
    Polynomial,
    Presentation,
    parse_polynomial,
    parse_presentation,
    specialize_mod_p,
)
from .counts import CountTable
from .groebner import TruncatedGB, buchberger_truncated, normal_form
from .normal_words import ClaimedFamily, count_normal, enumerate_normal, verify_family
from .oracle import quotient_dimensions
from .series import dominant_root, growth_estimates, phi_series
from .suite import builtin, growth_jump_report, mult_order, reproduce_all

__all__ = [
    "DFA", "FactorPattern", "RationalSeries", "compile_forbidden", "count_by_degree", "series_from_dfa",
    "GF", "QQ", "Alphabet", "DegLexOrder", "ParseError", "Polynomial", "Presentation",
    "parse_polynomial", "parse_presentation", "specialize_mod_p", "CountTable",
    "TruncatedGB", "buchberger_truncated", "normal_form",
    "ClaimedFamily", "count_normal", "enumerate_normal", "verify_family",
    "quotient_dimensions", "dominant_root", "growth_estimates", "phi_series",
    "builtin", "growth_jump_report", "mult_order", "reproduce_all",
]
