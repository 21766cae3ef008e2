"""Normal words of a truncated Groebner basis and verification of claimed basis families."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .automaton import AhoCorasick, FactorPattern, count_by_degree, parse_pattern
from .core import Alphabet, Field, ParseError, Polynomial, Presentation, Word, asc_key
from .counts import CountTable
from .groebner import TruncatedGB, buchberger_truncated, ideal_member_up_to


def _check_range(gb: TruncatedGB, n: int) -> None:
    if n < 0:
        raise ValueError("degree must be non-negative")
    if n > gb.degree_bound and not gb.complete:
        raise ValueError(f"degree {n} exceeds the truncation bound {gb.degree_bound}")


def _avoider(gb: TruncatedGB, n: int) -> AhoCorasick:
    lws = [w for w in gb.leading_words if len(w) <= n]
    return AhoCorasick(lws, len(gb.alphabet))


def enumerate_normal(gb: TruncatedGB, n: int) -> list[Word]:
    """Degree-``n`` words avoiding every leading word, in increasing deglex order."""
    _check_range(gb, n)
    ac = _avoider(gb, n)
    delta, out = ac.delta, ac.out
    letters = range(len(gb.alphabet) - 1, -1, -1)  # smallest letter first
    words: list[Word] = []

    def rec(state: int, prefix: list[int]) -> None:
        if len(prefix) == n:
            words.append(tuple(prefix))
            return
        for a in letters:
            t = delta[state][a]
            if not out[t]:
                prefix.append(a)
                rec(t, prefix)
                prefix.pop()

    rec(0, [])
    return words


def count_normal(gb: TruncatedGB, N: int) -> CountTable:
    """Normal-word counts for degrees ``0..N`` via the factor-avoidance automaton."""
    _check_range(gb, N)
    dfa = _avoider(gb, N).avoidance_dfa(gb.alphabet)
    return count_by_degree(dfa, N)


# ---------------------------------------------------------------------------
# claimed families
# ---------------------------------------------------------------------------

Constructor = Callable[[Presentation, int], list[Polynomial]]


@dataclass
class ClaimedFamily:
    """Leading-word patterns and/or explicit basis elements claimed for an ideal."""

    patterns: list[FactorPattern] = field(default_factory=list)
    constructor: Constructor | None = None
    name: str = ""

    def elements(self, pres: Presentation, D: int) -> list[Polynomial]:
        if self.constructor is None:
            return []
        elems = self.constructor(pres, D)
        for f in elems:
            if not f:
                raise ValueError(f"family {self.name!r} produced a zero element")
            if not f.is_homogeneous():
                raise ValueError(f"family {self.name!r} produced an inhomogeneous element")
        return [f for f in elems if f.degree <= D]

    def leading_words(self, pres: Presentation, D: int) -> list[Word]:
        words: set[Word] = set()
        for pat in self.patterns:
            words.update(pat.expand(D))
        if not self.patterns:
            words.update(f.leading_word for f in self.elements(pres, D))
        return sorted(words, key=asc_key)


@dataclass
class FamilyReport:
    members_in_ideal: bool
    leading_words_match: bool
    elements_match: bool | None
    first_discrepancy: dict | None
    checked_elements: int
    degree_bound: int

    @property
    def ok(self) -> bool:
        return self.members_in_ideal and self.leading_words_match and self.elements_match is not False


def verify_family(pres: Presentation, fam: ClaimedFamily, D: int,
                  gb: TruncatedGB | None = None) -> FamilyReport:
    """Compare a claimed family with the computed truncated reduced basis up to degree ``D``.

    The report flags ideal membership of every constructed element, equality of the
    leading-word sets, and (when elements are constructed) equality with the
    computed reduced elements after normalisation.
    """
    if gb is None or gb.degree_bound < D:
        gb = buchberger_truncated(pres, D)
    alphabet = pres.alphabet
    elems = fam.elements(pres, D)
    bad_member = None
    for f in elems:
        if not ideal_member_up_to(f, gb):
            bad_member = f
            break

    claimed = fam.leading_words(pres, D)
    computed = [w for w in gb.leading_words if len(w) <= D]
    discrepancy = None
    if set(claimed) != set(computed):
        degs = sorted({len(w) for w in set(claimed) ^ set(computed)})
        d = degs[0]
        discrepancy = {
            "degree": d,
            "claimed_only": [alphabet.format_word(w) for w in sorted(set(claimed) - set(computed), key=asc_key)
                             if len(w) == d],
            "computed_only": [alphabet.format_word(w) for w in sorted(set(computed) - set(claimed), key=asc_key)
                              if len(w) == d],
        }
    if bad_member is not None and (discrepancy is None or bad_member.degree < discrepancy["degree"]):
        discrepancy = {"degree": bad_member.degree, "not_in_ideal": bad_member.format(alphabet)}

    elements_match = None
    if elems:
        mine = {f.monic().terms for f in elems}
        theirs = {g.terms for g in gb.elements if g.degree <= D}
        elements_match = mine == theirs
    return FamilyReport(
        members_in_ideal=bad_member is None,
        leading_words_match=set(claimed) == set(computed),
        elements_match=elements_match,
        first_discrepancy=discrepancy,
        checked_elements=len(elems),
        degree_bound=D,
    )


# ---------------------------------------------------------------------------
# built-in constructors
# ---------------------------------------------------------------------------


def _w(alphabet: Alphabet, text: str) -> Word:
    return alphabet.word(text)


def _poly(field: Field, terms: Sequence[tuple[Word, object]]) -> Polynomial:
    acc: dict[Word, object] = {}
    for w, c in terms:
        acc[w] = field.add(field(acc.get(w, 0)), field(c))
    return Polynomial.from_dict(acc, field)


def exa1_constructor(b) -> Constructor:
    """Elements ``yz`` and the two-parameter family built from ``p_j = (1+b)^j - (1-b)^j``.

    Coefficients are evaluated in the presentation's own field. Once ``p_{j+1}``
    vanishes (the ratio ``(1-b)/(1+b)`` has finite order ``m = j+1``) the family
    switches to ``x z^m - z^m x``, ``z^m y`` and the monomials ``z^m (x z^(m-1))^j y``.
    """

    def build(pres: Presentation, D: int) -> list[Polynomial]:
        F = pres.field
        al = pres.alphabet
        x, y, z = (al.rank(c) for c in ("x", "y", "z"))
        bb = F(b)
        a = F.mul(F.sub(F.mul(bb, bb), F.one), F.inv(F(4)))

        def pj(j: int):
            return F.sub(_pow(F, F.add(F.one, bb), j), _pow(F, F.sub(F.one, bb), j))

        half = F.inv(F(2))
        out = [Polynomial.monomial((y, z), F)]
        m = None
        for j in range(0, D - 1):
            p0, p1, p2 = pj(j), pj(j + 1), pj(j + 2)
            zj = (z,) * j
            first = _poly(F, [
                ((x,) + zj + (x,), p1),
                ((x,) + zj + (z,), F.neg(F.mul(p2, half))),
                ((z,) * (j + 1) + (x,), F.mul(F.mul(F(2), a), p0)),
                ((z,) * (j + 2), F.neg(F.mul(a, p1))),
            ])
            second = _poly(F, [
                ((x,) + zj + (y,), p1),
                ((z,) * (j + 1) + (y,), F.mul(F.mul(F(2), a), p0)),
            ])
            out += [first.monic(), second.monic()]
            if not p1:
                m = j + 1
                break
        if m is not None:
            j = 1
            while m + 1 + j * m <= D:
                w = (z,) * m + ((x,) + (z,) * (m - 1)) * j + (y,)
                out.append(Polynomial.monomial(w, F))
                j += 1
        return [f for f in out if f.degree <= D]

    return build


def exa2_constructor(a) -> Constructor:
    """``y^3``, ``x^2 y - a y x^2 - y x y`` and ``y^2 (xy)^j x y^2`` until ``1+a+...+a^(j+1)`` vanishes."""

    def build(pres: Presentation, D: int) -> list[Polynomial]:
        F = pres.field
        al = pres.alphabet
        x, y = al.rank("x"), al.rank("y")
        aa = F(a)
        out = [
            Polynomial.monomial((y, y, y), F),
            _poly(F, [((x, x, y), 1), ((y, x, x), F.neg(aa)), ((y, x, y), -1)]),
        ]
        partial = F.one  # 1 + a + ... + a^j
        power = F.one
        j = 0
        while True:
            w = (y, y) + (x, y) * j + (x, y, y)
            if len(w) > D:
                break
            out.append(Polynomial.monomial(w, F))
            power = F.mul(power, aa)
            partial = F.add(partial, power)
            if not partial:
                break
            j += 1
        return out

    return build


def rgbC_constructor() -> Constructor:
    """The reduced basis of the 4-generator intermediate-growth algebra."""

    def build(pres: Presentation, D: int) -> list[Polynomial]:
        F = pres.field
        al = pres.alphabet
        x, y, z, u = (al.rank(c) for c in ("x", "y", "z", "u"))
        out = [
            _poly(F, [((x, u), 1), ((y, z), -1)]),
            _poly(F, [((y, u), 1), ((z, x), -1)]),
            _poly(F, [((z, u), 1), ((u, z), -1)]),
            Polynomial.monomial((y, x), F),
            Polynomial.monomial((x, x), F),
        ]
        for k in range(D):
            for s in (y, x):
                out.append(Polynomial.monomial((s,) + (z,) * (k + 1) + (x,) + (z,) * k, F))
                out.append(Polynomial.monomial((s,) + (z,) * k + (y,) + (z,) * k, F))
        return [f for f in out if f.degree <= D]

    return build


def _pow(F: Field, base, e: int):
    out = F.one
    for _ in range(e):
        out = F.mul(out, base)
    return out


_BUILTIN_RE = re.compile(r"\s*(?P<name>exa1|exa2|rgbC)\s*(?:\((?P<args>[^)]*)\))?\s*\Z")


def builtin_family(spec: str) -> ClaimedFamily:
    """Parse ``exa1(a=2,b=-3)``, ``exa2(a=1)`` or ``rgbC``."""
    m = _BUILTIN_RE.match(spec)
    if not m:
        raise ParseError(f"unknown built-in family {spec!r}")
    kwargs: dict[str, Fraction] = {}
    for part in (m.group("args") or "").split(","):
        if part.strip():
            key, _, value = part.partition("=")
            try:
                kwargs[key.strip()] = Fraction(value.strip())
            except ValueError:
                raise ParseError(f"bad parameter {part.strip()!r}") from None
    name = m.group("name")
    if name == "exa1":
        if "b" not in kwargs:
            raise ParseError("exa1 needs b")
        b = kwargs["b"]
        if "a" in kwargs and kwargs["a"] != (b * b - 1) / 4:
            raise ParseError("exa1 requires a = (b^2-1)/4")
        return ClaimedFamily(constructor=exa1_constructor(b), name=spec.strip())
    if name == "exa2":
        return ClaimedFamily(constructor=exa2_constructor(kwargs.get("a", Fraction(1))), name=spec.strip())
    return ClaimedFamily(constructor=rgbC_constructor(), name="rgbC")


def parse_family(text: str, alphabet: Alphabet) -> ClaimedFamily:
    """Family file: one pattern per line, optionally ``builtin: exa1(a=2,b=-3)``."""
    patterns: list[FactorPattern] = []
    constructor = None
    name = ""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("builtin:") or _BUILTIN_RE.match(line):
            fam = builtin_family(line.split(":", 1)[1] if line.startswith("builtin:") else line)
            constructor, name = fam.constructor, fam.name
            continue
        patterns.append(parse_pattern(line, alphabet, lineno))
    return ClaimedFamily(patterns, constructor, name)
