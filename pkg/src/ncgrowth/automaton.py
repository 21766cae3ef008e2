"""Forbidden-factor automata, transfer-matrix counting and rational generating functions."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

from .core import Alphabet, ParseError, UnknownGeneratorError, Word
from .counts import CountTable

# ---------------------------------------------------------------------------
# Aho-Corasick over letter ranks
# ---------------------------------------------------------------------------


class AhoCorasick:
    """Multi-pattern factor matcher with a total transition table.

    Patterns are words over ``range(size)``. ``delta[s][a]`` is the goto/failure
    transition already resolved, so scanning is one table lookup per letter.
    ``out[s]`` lists the indices of every pattern that ends at state ``s``
    (its own plus those reachable through failure links).
    """

    def __init__(self, patterns: Sequence[Word], size: int):
        self.size = size
        self.patterns = list(patterns)
        goto: list[dict[int, int]] = [{}]
        own: list[list[int]] = [[]]
        self.depth = [0]
        for idx, pat in enumerate(self.patterns):
            if not pat:
                raise ValueError("empty pattern")
            s = 0
            for a in pat:
                if not 0 <= a < size:
                    raise ValueError(f"letter {a} outside alphabet of size {size}")
                nxt = goto[s].get(a)
                if nxt is None:
                    nxt = len(goto)
                    goto[s][a] = nxt
                    goto.append({})
                    own.append([])
                    self.depth.append(self.depth[s] + 1)
                s = nxt
            own[s].append(idx)

        n = len(goto)
        fail = [0] * n
        delta = [[0] * size for _ in range(n)]
        out: list[tuple[int, ...]] = [()] * n
        queue: deque[int] = deque()
        for a in range(size):
            t = goto[0].get(a)
            if t is not None:
                delta[0][a] = t
                queue.append(t)
        out[0] = tuple(own[0])
        while queue:
            s = queue.popleft()
            out[s] = tuple(own[s]) + out[fail[s]]
            for a in range(size):
                t = goto[s].get(a)
                if t is None:
                    delta[s][a] = delta[fail[s]][a]
                else:
                    fail[t] = delta[fail[s]][a]
                    delta[s][a] = t
                    queue.append(t)
        self.fail = fail
        self.delta = delta
        self.out = out

    def __len__(self) -> int:
        return len(self.delta)

    def iter_matches(self, word: Word) -> Iterator[tuple[int, int]]:
        """Yield ``(start, pattern_index)`` for every occurrence, by end position."""
        s = 0
        delta, out, pats = self.delta, self.out, self.patterns
        for i, a in enumerate(word):
            s = delta[s][a]
            for idx in out[s]:
                yield i + 1 - len(pats[idx]), idx

    def contains_any(self, word: Word) -> bool:
        s = 0
        for a in word:
            s = self.delta[s][a]
            if self.out[s]:
                return True
        return False

    def avoidance_dfa(self, alphabet: Alphabet | None = None) -> DFA:
        """DFA accepting the words with no pattern as a factor."""
        hit = [bool(o) for o in self.out]
        # renumber the surviving states, send the rest to one dead sink
        ids: dict[int, int] = {}
        order = []
        queue = deque([0])
        ids[0] = 0
        order.append(0)
        while queue:
            s = queue.popleft()
            for a in range(self.size):
                t = self.delta[s][a]
                if not hit[t] and t not in ids:
                    ids[t] = len(order)
                    order.append(t)
                    queue.append(t)
        dead = len(order)
        trans = []
        for s in order:
            trans.append(tuple(dead if hit[self.delta[s][a]] else ids[self.delta[s][a]]
                               for a in range(self.size)))
        trans.append(tuple([dead] * self.size))
        start_ok = not hit[0]
        return DFA(
            transitions=tuple(trans),
            start=0 if start_ok else dead,
            accepting=frozenset(range(dead)),
            dead=dead,
            alphabet=alphabet,
        )


# ---------------------------------------------------------------------------
# factor patterns
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Star:
    """Zero or more repetitions of a non-empty finite word."""

    word: Word


Atom = Union[int, Star]


@dataclass(frozen=True)
class FactorPattern:
    """Concatenation of single letters and starred words, e.g. ``x z* x``."""

    atoms: tuple[Atom, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "atoms", tuple(self.atoms))
        if not self.atoms:
            raise ValueError("pattern needs at least one atom")
        for atom in self.atoms:
            if isinstance(atom, Star) and not atom.word:
                raise ValueError("starred word must be non-empty")

    @classmethod
    def word(cls, w: Word) -> FactorPattern:
        return cls(tuple(w))

    @property
    def is_finite(self) -> bool:
        return not any(isinstance(a, Star) for a in self.atoms)

    @property
    def min_length(self) -> int:
        return sum(1 for a in self.atoms if not isinstance(a, Star))

    def expand(self, max_len: int) -> list[Word]:
        """All words of the family with length at most ``max_len``."""
        results: list[Word] = []

        def rec(i: int, prefix: Word) -> None:
            if len(prefix) + sum(1 for a in self.atoms[i:] if not isinstance(a, Star)) > max_len:
                return
            if i == len(self.atoms):
                results.append(prefix)
                return
            atom = self.atoms[i]
            if isinstance(atom, Star):
                cur = prefix
                while len(cur) <= max_len:
                    rec(i + 1, cur)
                    cur = cur + atom.word
            else:
                rec(i + 1, prefix + (atom,))

        rec(0, ())
        return sorted(set(results), key=lambda w: (len(w), w))

    def format(self, alphabet: Alphabet) -> str:
        parts = []
        for atom in self.atoms:
            if isinstance(atom, Star):
                if len(atom.word) == 1:
                    parts.append(alphabet.letters[atom.word[0]] + "*")
                else:
                    parts.append("(" + " ".join(alphabet.letters[r] for r in atom.word) + ")*")
            else:
                parts.append(alphabet.letters[atom])
        return " ".join(parts)


_PATTERN_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<punct>[()*]))")


def parse_pattern(text: str, alphabet: Alphabet, line: int | None = None) -> FactorPattern:
    atoms: list[Atom] = []
    group: list[int] | None = None
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _PATTERN_TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected {text[pos:].strip()[:1]!r}", line, pos + 1)
        col = m.start(m.lastgroup) + 1
        pos = m.end()
        if m.group("name"):
            name = m.group("name")
            if name not in alphabet.letters:
                raise UnknownGeneratorError(f"unknown generator {name!r}", line, col)
            r = alphabet.rank(name)
            if group is not None:
                group.append(r)
            else:
                atoms.append(r)
            continue
        tok = m.group("punct")
        if tok == "(":
            if group is not None:
                raise ParseError("nested groups are not supported", line, col)
            group = []
        elif tok == ")":
            if group is None:
                raise ParseError("unbalanced ')'", line, col)
            star = re.compile(r"\s*\*").match(text, pos)
            if not star:
                raise ParseError("group must be followed by '*'", line, col)
            if not group:
                raise ParseError("empty group", line, col)
            atoms.append(Star(tuple(group)))
            group = None
            pos = star.end()
        else:  # "*" after a single letter
            if group is not None or not atoms or isinstance(atoms[-1], Star):
                raise ParseError("'*' must follow a letter or a group", line, col)
            atoms.append(Star((atoms.pop(),)))
    if group is not None:
        raise ParseError("unbalanced '('", line, len(text) + 1)
    if not atoms:
        raise ParseError("empty pattern", line, 1)
    return FactorPattern(tuple(atoms))


def parse_pattern_file(text: str, alphabet: Alphabet) -> list[FactorPattern]:
    patterns = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if line.strip():
            patterns.append(parse_pattern(line, alphabet, lineno))
    return patterns


# ---------------------------------------------------------------------------
# DFA
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DFA:
    transitions: tuple[tuple[int, ...], ...]
    start: int
    accepting: frozenset[int]
    dead: int | None = None
    alphabet: Alphabet | None = None

    def __post_init__(self) -> None:
        n = len(self.transitions)
        if not 0 <= self.start < n:
            raise ValueError("start state out of range")
        width = {len(row) for row in self.transitions}
        if len(width) > 1:
            raise ValueError("transition table is not total")
        for row in self.transitions:
            for t in row:
                if not 0 <= t < n:
                    raise ValueError("transition target out of range")

    @property
    def n_states(self) -> int:
        return len(self.transitions)

    @property
    def size(self) -> int:
        return len(self.transitions[0]) if self.transitions else 0

    def accepts(self, word: Word) -> bool:
        s = self.start
        for a in word:
            s = self.transitions[s][a]
        return s in self.accepting

    def transfer_matrix(self) -> list[list[int]]:
        n = self.n_states
        m = [[0] * n for _ in range(n)]
        for s, row in enumerate(self.transitions):
            for t in row:
                m[s][t] += 1
        return m

    def live_part(self) -> tuple[list[list[int]], list[int], list[int]]:
        """Transfer matrix, start vector and accept vector without the dead sink."""
        keep = [s for s in range(self.n_states) if s != self.dead]
        pos = {s: i for i, s in enumerate(keep)}
        k = len(keep)
        m = [[0] * k for _ in range(k)]
        for s in keep:
            for t in self.transitions[s]:
                if t in pos:
                    m[pos[s]][pos[t]] += 1
        start = [0] * k
        if self.start in pos:
            start[pos[self.start]] = 1
        acc = [1 if s in self.accepting else 0 for s in keep]
        return m, start, acc


def compile_forbidden(patterns: Iterable[FactorPattern], alphabet: Alphabet) -> DFA:
    """DFA for the words containing no instance of any pattern as a factor.

    Built as an NFA for "some pattern occurs" (wildcard loops before and after),
    determinized by subset construction; every subset that has reached the
    final NFA state is merged into one dead sink, and the rest accept.
    """
    g = len(alphabet)
    if g == 0:
        raise ValueError("empty alphabet")
    patterns = list(patterns)
    # NFA states: 0 = wildcard prefix loop, 1 = final (wildcard suffix loop)
    eps: list[list[int]] = [[], []]
    edges: list[dict[int, list[int]]] = [{a: [0] for a in range(g)}, {a: [1] for a in range(g)}]

    def new_state() -> int:
        eps.append([])
        edges.append({})
        return len(eps) - 1

    def add_edge(s: int, a: int, t: int) -> None:
        edges[s].setdefault(a, []).append(t)

    for pat in patterns:
        cur = new_state()
        eps[0].append(cur)
        for atom in pat.atoms:
            if isinstance(atom, Star):
                # loop: cur -w-> cur, then epsilon to a fresh state
                prev = cur
                for a in atom.word[:-1]:
                    nxt = new_state()
                    add_edge(prev, a, nxt)
                    prev = nxt
                add_edge(prev, atom.word[-1], cur)
                after = new_state()
                eps[cur].append(after)
                cur = after
            else:
                if not 0 <= atom < g:
                    raise ValueError(f"letter {atom} outside alphabet")
                nxt = new_state()
                add_edge(cur, atom, nxt)
                cur = nxt
        eps[cur].append(1)

    def closure(states: Iterable[int]) -> frozenset[int]:
        seen = set(states)
        stack = list(seen)
        while stack:
            s = stack.pop()
            for t in eps[s]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    DEAD = frozenset({1})
    start = closure([0])
    if 1 in start:
        start = DEAD
    ids = {start: 0}
    order = [start]
    queue = deque([start])
    rows: dict[int, list[int]] = {}
    while queue:
        S = queue.popleft()
        row = []
        for a in range(g):
            if S == DEAD:
                T = DEAD
            else:
                T = closure(t for s in S for t in edges[s].get(a, ()))
                if 1 in T:
                    T = DEAD
            if T not in ids:
                ids[T] = len(order)
                order.append(T)
                queue.append(T)
            row.append(ids[T])
        rows[ids[S]] = row
    transitions = tuple(tuple(rows[i]) for i in range(len(order)))
    dead = ids.get(DEAD)
    accepting = frozenset(i for i in range(len(order)) if i != dead)
    return DFA(transitions, 0, accepting, dead, alphabet)


def count_by_degree(dfa: DFA, N: int) -> CountTable:
    """Accepted words per length, by iterating the exact state-count vector."""
    n = dfa.n_states
    vec = [0] * n
    vec[dfa.start] = 1
    acc = sorted(dfa.accepting)
    out = []
    for d in range(N + 1):
        out.append(sum(vec[s] for s in acc))
        if d == N:
            break
        nxt = [0] * n
        for s, c in enumerate(vec):
            if c:
                for t in dfa.transitions[s]:
                    nxt[t] += c
        vec = nxt
    return CountTable(tuple(out), N)


# ---------------------------------------------------------------------------
# rational series
# ---------------------------------------------------------------------------


def _trim(c: Sequence[int]) -> tuple[int, ...]:
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c) if c else (0,)


def poly_mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


@dataclass(frozen=True)
class RationalSeries:
    """``numerator / denominator`` with integer coefficients in ascending degree."""

    numerator: tuple[int, ...]
    denominator: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "numerator", _trim(tuple(int(c) for c in self.numerator)))
        object.__setattr__(self, "denominator", _trim(tuple(int(c) for c in self.denominator)))
        if self.denominator[0] != 1:
            raise ValueError("denominator constant term must be 1")

    def expand(self, N: int) -> list[int]:
        num, den = self.numerator, self.denominator
        c: list[int] = []
        for n in range(N + 1):
            v = num[n] if n < len(num) else 0
            for k in range(1, min(n, len(den) - 1) + 1):
                v -= den[k] * c[n - k]
            c.append(v)
        return c

    def same_function(self, other: RationalSeries) -> bool:
        """Equality as rational functions, by cross-multiplication."""
        return poly_mul(self.numerator, other.denominator) == poly_mul(other.numerator, self.denominator)

    def reduced(self) -> RationalSeries:
        from fractions import Fraction

        def pdivmod(a, b):
            a = [Fraction(x) for x in a]
            q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
            while len(a) >= len(b) and any(a):
                shift = len(a) - len(b)
                f = a[-1] / b[-1]
                q[shift] = f
                for i, y in enumerate(b):
                    a[i + shift] -= f * y
                while a and a[-1] == 0:
                    a.pop()
            return q, a

        a = [Fraction(x) for x in self.numerator]
        b = [Fraction(x) for x in self.denominator]
        if not any(a):
            return RationalSeries((0,), (1,))
        x, y = b, a
        while y and any(y):
            _, r = pdivmod(x, y)
            x, y = y, r
        gcd = x
        if len(gcd) == 1:
            return self
        num, r1 = pdivmod(self.numerator, gcd)
        den, r2 = pdivmod(self.denominator, gcd)
        assert not any(r1) and not any(r2)
        scale = den[0]
        num = [v / scale for v in num]
        den = [v / scale for v in den]
        if any(v.denominator != 1 for v in num + den):
            return self
        return RationalSeries(tuple(int(v) for v in num), tuple(int(v) for v in den))

    def format(self, var: str = "t") -> str:
        def fmt(c):
            terms = []
            for i, v in enumerate(c):
                if not v:
                    continue
                mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
                mag = abs(v)
                body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
                sign = "-" if v < 0 else "+"
                terms.append((sign, body))
            if not terms:
                return "0"
            s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
            for sign, body in terms[1:]:
                s += f" {sign} {body}"
            return s

        return f"({fmt(self.numerator)})/({fmt(self.denominator)})"


def charpoly(m: Sequence[Sequence[int]]) -> list[int]:
    """Coefficients ``c_0..c_n`` of ``det(lambda*I - m)`` (c_n = 1), Faddeev-LeVerrier.

    Integer matrices give integer coefficients, so every division is exact.
    """
    n = len(m)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = [[0] * n for _ in range(n)]  # M_0 = 0
    for k in range(1, n + 1):
        # M_k = m @ M_{k-1} + c_{n-k+1} I
        prod = [[sum(m[i][l] * mk[l][j] for l in range(n) if m[i][l]) for j in range(n)] for i in range(n)]
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            prod[i][i] += c_prev
        mk = prod
        am = [[sum(m[i][l] * mk[l][j] for l in range(n) if m[i][l]) for j in range(n)] for i in range(n)]
        tr = sum(am[i][i] for i in range(n))
        if tr % k:
            raise ArithmeticError("non-integral trace step")
        coeffs[n - k] = -tr // k
    return coeffs


def series_from_dfa(dfa: DFA) -> RationalSeries:
    """Generating function of accepted words, unreduced, with den = det(I - tM)."""
    m, _, _ = dfa.live_part()
    n = len(m)
    chi = charpoly(m)
    # det(I - tM) = t^n chi(1/t): reverse the coefficient list
    den = [chi[n - i] for i in range(n + 1)]
    counts = list(count_by_degree(dfa, max(n, 0) + 1).a)
    num = poly_mul(den, counts)[:n] if n else (counts[0],)
    series = RationalSeries(tuple(num) or (0,), tuple(den))
    check = 2 * dfa.n_states + 5
    if series.expand(check) != list(count_by_degree(dfa, check).a):
        raise ArithmeticError("rational series disagrees with transfer-matrix counts")
    return series
