"""Reduction, ambiguities and degree-truncated Buchberger completion in the free algebra."""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .automaton import AhoCorasick
from .core import Field, Polynomial, Presentation, Scalar, Word, asc_key, contains_factor, desc_key

log = logging.getLogger(__name__)


class RewriteSet:
    """Monic polynomials used as rewrite rules ``LW(g) -> LW(g) - g``.

    Leading words are indexed by an Aho-Corasick automaton which is rebuilt
    lazily after the set changes.
    """

    def __init__(self, elements: Iterable[Polynomial] = (), *, field: Field, size: int):
        self.field = field
        self.size = size
        self._elements: list[Polynomial] = []
        self._index: AhoCorasick | None = None
        self._rank: list[int] = []
        for g in elements:
            self.add(g)

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self):
        return iter(self._elements)

    def __getitem__(self, i: int) -> Polynomial:
        return self._elements[i]

    @property
    def elements(self) -> tuple[Polynomial, ...]:
        return tuple(self._elements)

    @property
    def leading_words(self) -> list[Word]:
        return [g.leading_word for g in self._elements]

    def add(self, g: Polynomial) -> int:
        if not g:
            raise ValueError("zero polynomial in rewrite set")
        if g.field != self.field:
            raise ValueError("field mismatch")
        if not g.is_monic():
            g = g.monic()
        self._elements.append(g)
        self._index = None
        return len(self._elements) - 1

    def replace(self, i: int, g: Polynomial) -> None:
        if g.leading_word != self._elements[i].leading_word:
            self._index = None
        self._elements[i] = g.monic()

    @property
    def index(self) -> AhoCorasick:
        if self._index is None:
            lws = self.leading_words
            self._index = AhoCorasick(lws, self.size)
            order = sorted(range(len(lws)), key=lambda i: (asc_key(lws[i]), i))
            self._rank = [0] * len(lws)
            for r, i in enumerate(order):
                self._rank[i] = r
        return self._index

    def find_reducer(self, w: Word) -> tuple[int, int] | None:
        """Smallest applicable leading word (ties by index), at its leftmost occurrence."""
        index = self.index
        rank = self._rank
        best = None
        for start, idx in index.iter_matches(w):
            key = (rank[idx], start)
            if best is None or key < best[0]:
                best = (key, idx, start)
        if best is None:
            return None
        return best[1], best[2]


def _reduce(acc: dict[Word, Scalar], rs: RewriteSet) -> dict[Word, Scalar]:
    """Normal form of a polynomial given as a dict; consumes ``acc``."""
    F = rs.field
    if not len(rs):
        return acc
    heap = [desc_key(w) for w in acc]
    heapq.heapify(heap)
    result: dict[Word, Scalar] = {}
    elements = rs._elements
    while heap:
        w = heapq.heappop(heap)[1]
        c = acc.pop(w, None)
        if c is None:
            continue
        hit = rs.find_reducer(w)
        if hit is None:
            result[w] = c
            continue
        idx, pos = hit
        g = elements[idx]
        u = w[:pos]
        v = w[pos + len(g.terms[0][0]):]
        for m, d in g.terms[1:]:
            ww = u + m + v
            old = acc.get(ww)
            if old is None:
                acc[ww] = F.neg(F.mul(c, d))
                heapq.heappush(heap, desc_key(ww))
            else:
                new = F.sub(old, F.mul(c, d))
                if new:
                    acc[ww] = new
                else:
                    del acc[ww]
    return result


def normal_form(f: Polynomial, rs: RewriteSet) -> Polynomial:
    """Fully reduce ``f``: rewrite the greatest reducible monomial until none is left."""
    if f.field != rs.field:
        raise ValueError("field mismatch")
    return Polynomial.from_dict(_reduce(dict(f.terms), rs), f.field)


# ---------------------------------------------------------------------------
# overlaps
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Overlap:
    """Ambiguity word containing ``LW(left)`` at ``left_pos`` and ``LW(right)`` at ``right_pos``."""

    left: int
    right: int
    word: Word
    left_pos: int
    right_pos: int
    inclusion: bool = False

    @property
    def degree(self) -> int:
        return len(self.word)

    def sort_key(self) -> tuple:
        return (len(self.word), asc_key(self.word), self.left, self.right, self.left_pos, self.right_pos)


def _overlaps_between(i: int, a: Word, j: int, b: Word) -> list[Overlap]:
    """Proper suffix(a)=prefix(b) overlaps with ``a`` on the left."""
    out = []
    limit = min(len(a), len(b)) - 1
    for k in range(1, limit + 1):
        if a[len(a) - k:] == b[:k]:
            out.append(Overlap(i, j, a + b[k:], 0, len(a) - k))
    return out


def _inclusions(i: int, a: Word, j: int, b: Word) -> list[Overlap]:
    """Occurrences of ``b`` inside ``a``."""
    out = []
    n = len(b)
    if n > len(a):
        return out
    for pos in range(len(a) - n + 1):
        if a[pos:pos + n] == b:
            out.append(Overlap(i, j, a, 0, pos, True))
    return out


def find_overlaps(rs: RewriteSet, new_index: int) -> list[Overlap]:
    """All ambiguities between element ``new_index`` and every element (itself included)."""
    lws = rs.leading_words
    a = lws[new_index]
    found: list[Overlap] = []
    for j, b in enumerate(lws):
        found += _overlaps_between(new_index, a, j, b)
        if j != new_index:
            found += _overlaps_between(j, b, new_index, a)
            found += _inclusions(new_index, a, j, b)
            found += _inclusions(j, b, new_index, a)
    unique = sorted(set(found), key=Overlap.sort_key)
    return unique


def s_polynomial(ov: Overlap, rs: RewriteSet) -> dict[Word, Scalar]:
    F = rs.field
    gl, gr = rs[ov.left], rs[ov.right]
    w = ov.word
    ul, vl = w[:ov.left_pos], w[ov.left_pos + gl.degree:]
    ur, vr = w[:ov.right_pos], w[ov.right_pos + gr.degree:]
    acc: dict[Word, Scalar] = {}
    for m, c in gl.terms:
        acc[ul + m + vl] = c
    for m, c in gr.terms:
        key = ur + m + vr
        new = F.sub(acc.get(key, F.zero), c)
        if new:
            acc[key] = new
        else:
            acc.pop(key, None)
    return acc


# ---------------------------------------------------------------------------
# completion
# ---------------------------------------------------------------------------


@dataclass
class TruncatedGB:
    """Reduced Groebner basis elements of degree at most ``degree_bound``.

    ``complete`` is set only when every ambiguity among the final elements,
    including those above the bound, was reduced to zero: the basis is then
    the whole reduced Groebner basis.
    """

    presentation: Presentation
    basis: RewriteSet
    degree_bound: int
    complete: bool
    leading_words: list[Word] = field(default_factory=list)

    @property
    def elements(self) -> tuple[Polynomial, ...]:
        return self.basis.elements

    @property
    def field(self) -> Field:
        return self.presentation.field

    @property
    def alphabet(self):
        return self.presentation.alphabet

    def valid_to(self, requested: int) -> int:
        return requested if self.complete else min(requested, self.degree_bound)

    def max_element_degree(self) -> int:
        return max((len(w) for w in self.leading_words), default=0)


def _tail_reduce(rs: RewriteSet, indices: Sequence[int]) -> None:
    for i in indices:
        g = rs[i]
        lead, tail = g.terms[0], dict(g.terms[1:])
        reduced = _reduce(tail, rs)
        reduced[lead[0]] = lead[1]
        rs.replace(i, Polynomial.from_dict(reduced, rs.field))


def buchberger_truncated(pres: Presentation, D: int) -> TruncatedGB:
    """All reduced Groebner basis elements of degree <= ``D`` for a homogeneous ideal.

    Works degree by degree: at degree ``d`` the defining relations of degree
    ``d`` and the S-polynomials of every degree-``d`` ambiguity are reduced
    against the basis so far. Nonzero remainders become new elements.
    """
    if D < pres.max_degree:
        raise ValueError(f"degree bound {D} below relation degree {pres.max_degree}")
    F = pres.field
    g = len(pres.alphabet)
    rs = RewriteSet(field=F, size=g)
    by_degree: dict[int, list[Polynomial]] = {}
    for f in pres.relations:
        by_degree.setdefault(f.degree, []).append(f)
    for d in by_degree:
        # relation order must not leak into intermediate states
        by_degree[d].sort(key=lambda f: tuple((desc_key(w), str(c)) for w, c in f.monic().terms))
    pending: dict[int, list[Overlap]] = {}

    def enqueue(idx: int) -> None:
        for ov in find_overlaps(rs, idx):
            if len(rs[ov.left]) == 1 and len(rs[ov.right]) == 1:
                continue  # two monomials: always resolves
            pending.setdefault(ov.degree, []).append(ov)

    for d in range(2, D + 1):
        candidates = [f.to_dict() for f in by_degree.get(d, [])]
        for ov in sorted(pending.pop(d, []), key=Overlap.sort_key):
            candidates.append(s_polynomial(ov, rs))
        new: list[int] = []
        for cand in candidates:
            r = _reduce(cand, rs)
            if r:
                idx = rs.add(Polynomial.from_dict(r, F).monic())
                new.append(idx)
        if new:
            _tail_reduce(rs, new)
            for idx in new:
                enqueue(idx)
        log.debug("degree %d: %d new elements, %d total", d, len(new), len(rs))

    complete = True
    for d in sorted(pending):
        for ov in sorted(pending[d], key=Overlap.sort_key):
            if _reduce(s_polynomial(ov, rs), rs):
                complete = False
                break
        if not complete:
            break

    final = sorted(rs.elements, key=lambda p: asc_key(p.leading_word))
    basis = RewriteSet(final, field=F, size=g)
    return TruncatedGB(pres, basis, D, complete, [p.leading_word for p in final])


def interreduce(rs: RewriteSet) -> RewriteSet:
    """Monic, pairwise reduced version of ``rs`` generating the same ideal."""
    F = rs.field
    polys = sorted((p.monic() for p in rs if p), key=lambda p: (asc_key(p.leading_word), p.terms.__repr__()))
    out = RewriteSet(field=F, size=rs.size)
    for p in polys:
        r = _reduce(dict(p.terms), out)
        if r:
            out.add(Polynomial.from_dict(r, F).monic())
    # a smaller leading word can never contain a larger one, so leading words are now
    # pairwise factor-free; finish by reducing tails
    _tail_reduce(out, range(len(out)))
    final = sorted(out.elements, key=lambda p: asc_key(p.leading_word))
    return RewriteSet(final, field=F, size=rs.size)


def ideal_member_up_to(f: Polynomial, gb: TruncatedGB) -> bool:
    if f and f.degree > gb.degree_bound and not gb.complete:
        raise ValueError(f"degree {f.degree} exceeds the truncation bound {gb.degree_bound}")
    return not normal_form(f, gb.basis)


def is_reduced(rs: RewriteSet) -> bool:
    lws = rs.leading_words
    for i, g in enumerate(rs):
        if not g.is_monic():
            return False
        for j, h in enumerate(rs):
            if i != j and any(contains_factor(w, lws[i]) for w in h.words):
                return False
    return True
