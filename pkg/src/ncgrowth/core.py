"""Words, deglex order, coefficient fields, noncommutative polynomials and presentations.

A word is a plain tuple of letter ranks. Rank 0 is the largest letter, so for
two words of the same length the lexicographically *smaller* tuple is the
*larger* word. Everything in this module is immutable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

Word = tuple[int, ...]
Scalar = Union[int, Fraction]

ONE: Word = ()

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class ParseError(ValueError):
    """Malformed presentation, pattern or family text."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class UnknownGeneratorError(ParseError):
    pass


class InhomogeneousRelationError(ParseError):
    pass


class FieldMismatchError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# alphabet and order
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Alphabet:
    """Generators listed from largest to smallest."""

    letters: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(self.letters))
        if not self.letters:
            raise ValueError("alphabet must not be empty")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError(f"duplicate generator names in {self.letters}")
        for name in self.letters:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid generator name {name!r}")

    @classmethod
    def of(cls, spec: str | Iterable[str]) -> Alphabet:
        if isinstance(spec, str):
            spec = spec.split()
        return cls(tuple(spec))

    def __len__(self) -> int:
        return len(self.letters)

    def rank(self, name: str) -> int:
        try:
            return self.letters.index(name)
        except ValueError:
            raise UnknownGeneratorError(f"unknown generator {name!r}") from None

    def word(self, text: str) -> Word:
        """Parse ``"x z^2 x"``, ``"x*z*z*x"`` or ``"xzzx"`` (single-char names only)."""
        text = text.strip()
        if text in ("", "1"):
            return ONE
        if "*" in text or " " in text or "^" in text:
            out: list[int] = []
            for tok in re.split(r"[*\s]+", text):
                if not tok:
                    continue
                name, _, power = tok.partition("^")
                out.extend([self.rank(name)] * (int(power) if power else 1))
            return tuple(out)
        if all(len(n) == 1 for n in self.letters):
            return tuple(self.rank(ch) for ch in text)
        return (self.rank(text),)

    def format_word(self, w: Word, compact: bool = False) -> str:
        """Render a word, grouping repeated letters as powers unless ``compact``."""
        if not w:
            return "1"
        if compact:
            return "".join(self.letters[r] for r in w)
        parts = []
        i = 0
        while i < len(w):
            j = i
            while j < len(w) and w[j] == w[i]:
                j += 1
            name = self.letters[w[i]]
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(parts)


@dataclass(frozen=True)
class DegLexOrder:
    """Degree first, then left-to-right comparison by letter precedence."""

    alphabet: Alphabet

    def check(self, w: Word) -> None:
        g = len(self.alphabet)
        for r in w:
            if not 0 <= r < g:
                raise ValueError(f"letter rank {r} outside alphabet of size {g}")

    def cmp(self, u: Word, v: Word) -> int:
        self.check(u)
        self.check(v)
        return cmp_words(u, v)

    @staticmethod
    def key(w: Word) -> tuple:
        """Sort key that increases with the word."""
        return (len(w), tuple(-r for r in w))


def cmp_words(u: Word, v: Word) -> int:
    if len(u) != len(v):
        return -1 if len(u) < len(v) else 1
    if u == v:
        return 0
    # smaller rank tuple means bigger word
    return 1 if u < v else -1


def cmp_deglex(u: Word, v: Word, order: DegLexOrder) -> int:
    """Return -1, 0 or 1 as ``u`` is smaller than, equal to or greater than ``v``."""
    return order.cmp(u, v)


def word_concat(u: Word, v: Word) -> Word:
    return u + v


def desc_key(w: Word) -> tuple[int, Word]:
    # ascending sort with this key lists words from the greatest down
    return (-len(w), w)


def asc_key(w: Word) -> tuple:
    return DegLexOrder.key(w)


def contains_factor(w: Word, f: Word) -> bool:
    n = len(f)
    return any(w[i:i + n] == f for i in range(len(w) - n + 1))


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------


class Field:
    characteristic: int = 0

    def __call__(self, x) -> Scalar:  # pragma: no cover - abstract
        raise NotImplementedError

    zero: Scalar
    one: Scalar


class RationalField(Field):
    """Q, with elements represented by :class:`fractions.Fraction` in lowest terms."""

    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x) -> Fraction:
        return x if type(x) is Fraction else Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("Q")

    def __repr__(self) -> str:
        return "Q"

    def format(self, c: Fraction) -> str:
        return str(c)


class PrimeField(Field):
    """GF(p) with residues stored as ints in ``[0, p)``."""

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def format(self, c: int) -> str:
        return str(c)


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_char(char: int) -> Field:
    return QQ if char == 0 else PrimeField(char)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Polynomial:
    """Sparse element of the free algebra with terms sorted from the leading word down."""

    terms: tuple[tuple[Word, Scalar], ...]
    field: Field

    @classmethod
    def from_dict(cls, coeffs: Mapping[Word, Scalar], field: Field) -> Polynomial:
        items = [(w, field(c)) for w, c in coeffs.items()]
        items = [(w, c) for w, c in items if c]
        items.sort(key=lambda t: desc_key(t[0]))
        return cls(tuple(items), field)

    @classmethod
    def monomial(cls, w: Word, field: Field, c: Scalar = 1) -> Polynomial:
        return cls.from_dict({w: c}, field)

    @classmethod
    def zero(cls, field: Field) -> Polynomial:
        return cls((), field)

    def to_dict(self) -> dict[Word, Scalar]:
        return dict(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def words(self) -> tuple[Word, ...]:
        return tuple(w for w, _ in self.terms)

    def leading_term(self) -> tuple[Word, Scalar]:
        if not self.terms:
            raise ValueError("no leading term: zero polynomial")
        return self.terms[0]

    @property
    def leading_word(self) -> Word:
        return self.leading_term()[0]

    @property
    def degree(self) -> int:
        return len(self.leading_word)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w, _ in self.terms}) <= 1

    def is_monic(self) -> bool:
        return bool(self.terms) and self.terms[0][1] == self.field.one

    def _check(self, other: Polynomial) -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other: Polynomial) -> Polynomial:
        return poly_add_scaled(self, self.field.one, ONE, other, ONE)

    def __sub__(self, other: Polynomial) -> Polynomial:
        return poly_add_scaled(self, self.field.neg(self.field.one), ONE, other, ONE)

    def __neg__(self) -> Polynomial:
        return Polynomial(tuple((w, self.field.neg(c)) for w, c in self.terms), self.field)

    def __mul__(self, other: Polynomial) -> Polynomial:
        self._check(other)
        F = self.field
        acc: dict[Word, Scalar] = {}
        for u, a in self.terms:
            for v, b in other.terms:
                w = u + v
                acc[w] = F.add(acc.get(w, F.zero), F.mul(a, b))
        return Polynomial.from_dict(acc, F)

    def scale(self, c: Scalar) -> Polynomial:
        F = self.field
        c = F(c)
        if not c:
            return Polynomial.zero(F)
        return Polynomial(tuple((w, F.mul(c, a)) for w, a in self.terms), F)

    def shift(self, u: Word = ONE, v: Word = ONE) -> Polynomial:
        """The product ``u * self * v``; order is preserved by compatibility."""
        return Polynomial(tuple((u + w + v, c) for w, c in self.terms), self.field)

    def monic(self) -> Polynomial:
        if not self.terms:
            return self
        return self.scale(self.field.inv(self.terms[0][1]))

    def format(self, alphabet: Alphabet) -> str:
        if not self.terms:
            return "0"
        out = []
        for i, (w, c) in enumerate(self.terms):
            if isinstance(self.field, PrimeField):
                sign, mag = "+", c
            else:
                sign, mag = ("-", -c) if c < 0 else ("+", c)
            body = alphabet.format_word(w)
            text = body if mag == 1 else (f"{mag}" if not w else f"{mag}*{body}")
            if i == 0:
                out.append(text if sign == "+" else f"-{text}")
            else:
                out.append(f" {sign} {text}")
        return "".join(out)


def poly_add_scaled(f: Polynomial, c: Scalar, u: Word, g: Polynomial, v: Word) -> Polynomial:
    """Return ``f + c*u*g*v`` exactly."""
    if f.field != g.field:
        raise FieldMismatchError(f"{f.field!r} vs {g.field!r}")
    F = f.field
    c = F(c)
    acc = dict(f.terms)
    if c:
        for w, a in g.terms:
            key = u + w + v
            acc[key] = F.add(acc.get(key, F.zero), F.mul(c, a))
    return Polynomial.from_dict(acc, F)


def leading_term(f: Polynomial) -> tuple[Word, Scalar]:
    return f.leading_term()


def specialize_mod_p(f: Polynomial, p: int) -> Polynomial:
    """Reduce the integer coefficients of a polynomial over Q modulo the prime ``p``."""
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    F = PrimeField(p)
    coeffs = {}
    for w, c in f.terms:
        if isinstance(c, Fraction) and c.denominator != 1:
            raise ValueError(f"non-integer coefficient {c}")
        coeffs[w] = int(c) % p
    return Polynomial.from_dict(coeffs, F)


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relations: tuple[Polynomial, ...]
    field: Field

    def __post_init__(self) -> None:
        object.__setattr__(self, "relations", tuple(self.relations))
        for f in self.relations:
            if f.field != self.field:
                raise FieldMismatchError(f"relation over {f.field!r} in presentation over {self.field!r}")
            if not f:
                raise ValueError("zero relation")
            if not f.is_homogeneous():
                raise InhomogeneousRelationError("inhomogeneous relation")
            if f.degree < 2:
                raise ValueError("relations must have degree at least 2")
            for w in f.words:
                self.order.check(w)

    @property
    def order(self) -> DegLexOrder:
        return DegLexOrder(self.alphabet)

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    @property
    def max_degree(self) -> int:
        return max((f.degree for f in self.relations), default=0)

    def specialize(self, p: int) -> Presentation:
        """Apply coefficient reduction mod ``p``; relations that vanish are dropped."""
        rels = [specialize_mod_p(f, p) for f in self.relations]
        return Presentation(self.alphabet, tuple(f for f in rels if f), PrimeField(p))

    def with_relations(self, relations: Iterable[Polynomial]) -> Presentation:
        return Presentation(self.alphabet, tuple(relations), self.field)

    def to_text(self, sort_relations: bool = False) -> str:
        rels = [f.format(self.alphabet) for f in self.relations]
        if sort_relations:
            rels.sort()
        lines = [
            "generators: " + " ".join(self.alphabet.letters),
            "field: " + repr(self.field),
            "relations:",
        ]
        lines += [f"  {r}" for r in rels]
        return "\n".join(lines) + "\n"


_TERM_RE = re.compile(
    r"\s*(?P<sign>[+\-−])?\s*(?P<coef>\d+(?:/\d+)?)?\s*(?P<star>\*)?\s*"
)
_FACTOR_RE = re.compile(r"(?P<name>[A-Za-z][A-Za-z0-9_]*)(?:\s*\^\s*(?P<pow>\d+))?")


def parse_polynomial(text: str, alphabet: Alphabet, field: Field, line: int | None = None,
                     offset: int = 0) -> Polynomial:
    """Parse a sum of integer-coefficient terms such as ``x^2 - x*z - 2*z^2``."""
    acc: dict[Word, Scalar] = {}
    pos = 0
    n = len(text)
    first = True
    if not text.strip():
        raise ParseError("empty relation", line, offset + 1)
    while pos < n:
        m = _TERM_RE.match(text, pos)
        sign, coef = m.group("sign"), m.group("coef")
        if sign is None and not first:
            raise ParseError("expected '+' or '-'", line, offset + m.start() + 1)
        pos = m.end()
        c = Fraction(coef) if coef else Fraction(1)
        if sign in ("-", "−"):
            c = -c
        letters: list[int] = []
        while True:
            fm = _FACTOR_RE.match(text, pos)
            if not fm:
                break
            name = fm.group("name")
            if name not in alphabet.letters:
                raise UnknownGeneratorError(f"unknown generator {name!r}", line, offset + fm.start() + 1)
            letters.extend([alphabet.rank(name)] * int(fm.group("pow") or 1))
            pos = fm.end()
            star = re.compile(r"\s*\*\s*").match(text, pos)
            if star and _FACTOR_RE.match(text, star.end()):
                pos = star.end()
            else:
                break
        if not letters and not coef:
            raise ParseError(f"unexpected {text[pos:pos + 1]!r}", line, offset + pos + 1)
        if m.group("star") and not letters:
            raise ParseError("dangling '*'", line, offset + pos + 1)
        w = tuple(letters)
        acc[w] = acc.get(w, 0) + c
        pos = len(text) - len(text[pos:].lstrip())
        first = False
    return Polynomial.from_dict(acc, field)


def _parse_field(value: str, line: int) -> Field:
    value = value.strip()
    if value in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"GF\(\s*(\d+)\s*\)", value)
    if not m:
        raise ParseError(f"unknown field {value!r}", line, 1)
    p = int(m.group(1))
    if not is_prime(p):
        raise ParseError(f"modulus {p} is not prime", line, 1)
    return PrimeField(p)


def parse_presentation(text: str) -> Presentation:
    alphabet: Alphabet | None = None
    field: Field = QQ
    relation_lines: list[tuple[int, int, str]] = []
    in_relations = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        head, sep, rest = line.partition(":")
        key = head.strip().lower()
        if sep and key in ("generators", "field", "relations"):
            in_relations = False
            if key == "generators":
                try:
                    alphabet = Alphabet.of(rest)
                except ValueError as exc:
                    raise ParseError(str(exc), lineno, len(head) + 2) from None
            elif key == "field":
                field = _parse_field(rest, lineno)
            else:
                in_relations = True
                if rest.strip():
                    relation_lines.append((lineno, len(head) + 2, rest))
            continue
        if not in_relations:
            raise ParseError(f"unexpected line {line.strip()!r}", lineno, 1)
        relation_lines.append((lineno, 0, line))
    if alphabet is None:
        raise ParseError("missing 'generators:' line")
    relations = []
    for lineno, offset, body in relation_lines:
        for piece in body.split(","):
            if not piece.strip():
                continue
            f = parse_polynomial(piece, alphabet, field, lineno, offset)
            if not f:
                raise ParseError("relation is zero", lineno, offset + 1)
            if not f.is_homogeneous():
                raise InhomogeneousRelationError("inhomogeneous relation", lineno, offset + 1)
            if f.degree < 2:
                raise ParseError("relations must have degree at least 2", lineno, offset + 1)
            relations.append(f)
            offset += len(piece) + 1
    return Presentation(alphabet, tuple(relations), field)


def format_presentation(pres: Presentation) -> str:
    return pres.to_text()
