"""
Words and noncommutative polynomials over a :class:`~gl2deform.scalar.ScalarField`.

Generators are ``d^{-1} < d < x(1,1) < x(1,2) < ... < x(2,1) < ...``, and in
tensor algebras every generator of slot ``k`` is smaller than every generator
of slot ``k+1``.  Words are ordered by length first, then letterwise
(degree-lex); this order is a well-order compatible with concatenation on
both sides, which is what makes oriented rewriting terminate.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .errors import ScalarParseError, ShapeMismatchError
from .scalar import Scalar, ScalarField, ScalarMatrix, _NAME, _Parser, _token_re

__all__ = [
    "Gen", "Word", "DINV", "D", "X",
    "d", "d_inv", "x", "word_key", "word_compare",
    "NCPoly", "NCMatrix", "generator_matrix", "matrix_relation_expand",
    "parse_ncpoly", "format_word", "format_ncpoly", "parse_gen",
]

DINV, D, X = 0, 1, 2


class Gen(NamedTuple):
    """A generator; tuple order *is* the generator order."""

    slot: int
    kind: int
    row: int = 0
    col: int = 0

    def in_slot(self, slot: int) -> "Gen":
        return self._replace(slot=slot)

    def __str__(self):
        return format_gen(self, show_slot=self.slot != 0)


Word = tuple  # tuple[Gen, ...]


def d(slot: int = 0) -> Gen:
    return Gen(slot, D)


def d_inv(slot: int = 0) -> Gen:
    return Gen(slot, DINV)


def x(row: int, col: int, slot: int = 0) -> Gen:
    if row < 1 or col < 1:
        raise ValueError("generator indices are 1-based")
    return Gen(slot, X, row, col)


def word_key(w: Word):
    return (len(w), w)


def word_compare(u: Word, v: Word) -> int:
    """-1, 0, 1 according to the degree-lex order."""
    ku, kv = word_key(u), word_key(v)
    return (ku > kv) - (ku < kv)


_SLOT_TAGS = {0: "L:", 1: "R:"}


def format_gen(g: Gen, show_slot: bool = False) -> str:
    if g.kind == D:
        body = "D"
    elif g.kind == DINV:
        body = "Dinv"
    elif g.row < 10 and g.col < 10:
        body = f"x{g.row}{g.col}"
    else:
        body = f"x{g.row}_{g.col}"
    if show_slot:
        return _SLOT_TAGS.get(g.slot, f"S{g.slot}:") + body
    return body


def format_word(w: Word, show_slot: bool | None = None) -> str:
    if not w:
        return "1"
    if show_slot is None:
        show_slot = any(g.slot for g in w)
    return "*".join(format_gen(g, show_slot) for g in w)


_GEN_RE = re.compile(r"(?:(L|R|S\d+):)?(Dinv|D|x(\d)(\d)|x(\d+)_(\d+))$")


def parse_gen(name: str) -> Gen | None:
    m = _GEN_RE.match(name)
    if not m:
        return None
    tag = m.group(1)
    if tag is None or tag == "L":
        slot = 0
    elif tag == "R":
        slot = 1
    else:
        slot = int(tag[1:])
    body = m.group(2)
    if body == "D":
        return Gen(slot, D)
    if body == "Dinv":
        return Gen(slot, DINV)
    r = m.group(3) or m.group(5)
    c = m.group(4) or m.group(6)
    if int(r) < 1 or int(c) < 1:
        return None
    return Gen(slot, X, int(r), int(c))


class NCPoly:
    """Finite linear combination of words; zero coefficients are never stored.

    Treat instances as immutable.  ``terms`` maps ``Word -> Scalar``.
    """

    __slots__ = ("field", "terms", "_lead")

    def __init__(self, field: ScalarField, terms: Mapping | None = None, *, _trusted: bool = False):
        self.field = field
        if _trusted:
            self.terms = terms
        else:
            self.terms = {}
            for w, c in (terms or {}).items():
                c = field(c)
                if c:
                    self.terms[tuple(w)] = c
        self._lead = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, field: ScalarField) -> "NCPoly":
        return cls(field, {}, _trusted=True)

    @classmethod
    def const(cls, field: ScalarField, c=1) -> "NCPoly":
        return cls(field, {(): c})

    @classmethod
    def one(cls, field: ScalarField) -> "NCPoly":
        return cls.const(field, 1)

    @classmethod
    def word(cls, field: ScalarField, w: Iterable[Gen], c=1) -> "NCPoly":
        return cls(field, {tuple(w): c})

    @classmethod
    def gen(cls, field: ScalarField, g: Gen) -> "NCPoly":
        return cls(field, {(g,): field.one}, _trusted=True)

    # -- queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def leading_word(self) -> Word:
        if not self.terms:
            raise ValueError("zero polynomial has no leading word")
        if self._lead is None:
            self._lead = max(self.terms, key=word_key)
        return self._lead

    def leading_coeff(self) -> Scalar:
        return self.terms[self.leading_word()]

    def words(self) -> list:
        """Words in decreasing order."""
        return sorted(self.terms, key=word_key, reverse=True)

    def items(self) -> Iterator:
        for w in self.words():
            yield w, self.terms[w]

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def letters(self) -> set:
        return {g for w in self.terms for g in w}

    def is_constant(self) -> bool:
        return all(len(w) == 0 for w in self.terms)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.terms.get((), self.field.zero)

    # -- arithmetic ---------------------------------------------------

    def _as_poly(self, other) -> "NCPoly":
        if isinstance(other, NCPoly):
            if other.field is not self.field:
                raise TypeError("polynomials over different scalar fields")
            return other
        if isinstance(other, Gen):
            return NCPoly.gen(self.field, other)
        return NCPoly.const(self.field, other)

    def __add__(self, other):
        try:
            other = self._as_poly(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w)
            v = c if v is None else v + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return NCPoly(self.field, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.field, {w: -c for w, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        try:
            other = self._as_poly(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._as_poly(other) - self

    def scale(self, c) -> "NCPoly":
        c = self.field(c)
        if not c:
            return NCPoly.zero(self.field)
        return NCPoly(self.field, {w: c * v for w, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)) and not isinstance(other, bool):
            return self.scale(other)
        try:
            other = self._as_poly(other)
        except TypeError:
            return NotImplemented
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                v = out.get(w)
                cc = c1 * c2
                v = cc if v is None else v + cc
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
        return NCPoly(self.field, out, _trusted=True)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)) and not isinstance(other, bool):
            return self.scale(other)
        return self._as_poly(other) * self

    def __truediv__(self, other):
        if isinstance(other, NCPoly):
            other = other.constant_value()
        c = self.field(other)
        return self.scale(c.inverse())

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("noncommutative polynomials only have non-negative integer powers")
        out = NCPoly.one(self.field)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.field is other.field and self.terms == other.terms
        if isinstance(other, (int, Scalar)) and not isinstance(other, bool):
            return self == self._as_poly(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- transformations ----------------------------------------------

    def map_words(self, fn) -> "NCPoly":
        """Apply a word map ``fn`` (injective or not) and recollect."""
        out: dict = {}
        for w, c in self.terms.items():
            nw = fn(w)
            v = out.get(nw)
            v = c if v is None else v + c
            if v:
                out[nw] = v
            else:
                out.pop(nw, None)
        return NCPoly(self.field, out, _trusted=True)

    def in_slot(self, slot: int) -> "NCPoly":
        return self.map_words(lambda w: tuple(g.in_slot(slot) for g in w))

    def substitute(self, images: Mapping[Gen, "NCPoly"], *, reverse: bool = False) -> "NCPoly":
        """Algebra (or, with ``reverse``, anti-algebra) map given on generators.

        Letters without an image are kept.
        """
        out = NCPoly.zero(self.field)
        cache: dict = {}
        for w, c in self.terms.items():
            letters = reversed(w) if reverse else w
            acc = NCPoly.const(self.field, c)
            for g in letters:
                img = images.get(g)
                if img is None:
                    img = cache.setdefault(g, NCPoly.gen(self.field, g))
                acc = acc * img
            out = out + acc
        return out

    def conjugate_coefficients(self) -> "NCPoly":
        return NCPoly(self.field, {w: c.conjugate() for w, c in self.terms.items()})

    # -- text ---------------------------------------------------------

    def __str__(self):
        return format_ncpoly(self)

    def __repr__(self):
        return f"NCPoly({format_ncpoly(self)!r})"


def _top_level_sum(s: str) -> bool:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0:
            return True
    return False


def format_ncpoly(p: NCPoly, show_slot: bool | None = None) -> str:
    if not p.terms:
        return "0"
    if show_slot is None:
        show_slot = any(g.slot for w in p.terms for g in w)
    parts = []
    for w, c in p.items():
        s = str(c)
        neg = s.startswith("-") and not str(-c).startswith("-")
        mag = -c if neg else c
        ms = str(mag)
        if w:
            wt = format_word(w, show_slot)
            if mag == 1:
                body = wt
            elif _top_level_sum(ms):
                body = f"({ms})*{wt}"
            else:
                body = f"{ms}*{wt}"
        else:
            body = f"({ms})" if _top_level_sum(ms) else ms
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


_NC_TOKEN = _token_re(r"(?:(?:L|R|S\d+):)?" + _NAME)


def parse_ncpoly(text: str, field: ScalarField) -> NCPoly:
    """Parse text such as ``x11*x22 - q*x21*x12 - D`` (``Dinv`` is d^-1)."""

    def atom(tok, parser):
        kind, val, _ = tok
        if kind == "int":
            return NCPoly.const(field, val)
        g = parse_gen(val)
        if g is not None:
            return NCPoly.gen(field, g)
        if val == "i":
            if not field.gaussian:
                parser.error("'i' requires the Gaussian base field", tok)
            return NCPoly.const(field, field.i)
        if val in field.params:
            return NCPoly.const(field, field.param(val))
        parser.error(f"unknown symbol {val!r}", tok)

    parser = _Parser(text, atom, _NC_TOKEN)
    try:
        return parser.parse()
    except ValueError as exc:
        if isinstance(exc, ScalarParseError):
            raise
        raise ScalarParseError(str(exc), text, 1) from exc


class NCMatrix:
    """Matrix with :class:`NCPoly` entries."""

    __slots__ = ("field", "rows")

    def __init__(self, field: ScalarField, rows: Sequence[Sequence[NCPoly]]):
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)
        if not self.rows or any(len(r) != len(self.rows[0]) for r in self.rows):
            raise ShapeMismatchError("ragged or empty NCMatrix")

    @classmethod
    def from_scalar(cls, M: ScalarMatrix, times: NCPoly | None = None) -> "NCMatrix":
        F = M.field
        t = times if times is not None else NCPoly.one(F)
        return cls(F, [[t.scale(v) for v in row] for row in M.rows])

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    @property
    def T(self) -> "NCMatrix":
        return NCMatrix(self.field, list(zip(*self.rows)))

    def _lift(self, other):
        if isinstance(other, NCMatrix):
            return other
        if isinstance(other, ScalarMatrix):
            return NCMatrix.from_scalar(other)
        raise TypeError(type(other).__name__)

    def __matmul__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ShapeMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = NCPoly.zero(self.field)
                for t in range(k):
                    a, b = self.rows[i][t], other.rows[t][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return NCMatrix(self.field, out)

    def __rmatmul__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return other @ self

    def __mul__(self, p):
        """Right multiplication of every entry by a polynomial or scalar."""
        return NCMatrix(self.field, [[e * p for e in r] for r in self.rows])

    def __rmul__(self, p):
        return NCMatrix(self.field, [[p * e for e in r] for r in self.rows])

    def __add__(self, other):
        other = self._lift(other)
        if self.shape != other.shape:
            raise ShapeMismatchError(f"{self.shape} + {other.shape}")
        return NCMatrix(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        other = self._lift(other)
        if self.shape != other.shape:
            raise ShapeMismatchError(f"{self.shape} - {other.shape}")
        return NCMatrix(self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def entries(self) -> list:
        return [e for r in self.rows for e in r]

    def __eq__(self, other):
        if not isinstance(other, NCMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __repr__(self):
        return f"NCMatrix({[[str(e) for e in r] for r in self.rows]!r})"


def generator_matrix(field: ScalarField, n_rows: int, n_cols: int, slot: int = 0) -> NCMatrix:
    return NCMatrix(field, [[NCPoly.gen(field, x(i, j, slot)) for j in range(1, n_cols + 1)]
                            for i in range(1, n_rows + 1)])


def matrix_relation_expand(lhs: NCMatrix, rhs) -> list:
    """Entrywise ``lhs_ij - rhs_ij`` in row-major order."""
    if isinstance(rhs, ScalarMatrix):
        rhs = NCMatrix.from_scalar(rhs)
    if lhs.shape != rhs.shape:
        raise ShapeMismatchError(f"relation sides have shapes {lhs.shape} and {rhs.shape}")
    return [a - b for a, b in zip(lhs.entries(), rhs.entries())]
