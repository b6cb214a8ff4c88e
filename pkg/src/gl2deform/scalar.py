"""
Exact coefficients: rational functions in formal parameters over Q or Q(i).

A :class:`ScalarField` fixes the parameter names and the base field; its
elements are :class:`Scalar` values.  Arithmetic is delegated to sympy's
sparse rational function fields, and every result is brought into one
canonical form (gcd removed, denominator with leading coefficient 1 under
lex order on the parameters) so that equality is representational.

Parameters are formal real transcendentals: complex conjugation only acts
on the Gaussian unit ``i``.

>>> F = ScalarField(["q"])
>>> q = F.param("q")
>>> q / (q**2 - 1) * (q - 1)
Scalar('q/(q+1)')
"""

from __future__ import annotations

import enum
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from sympy import QQ, QQ_I
from sympy.polys.fields import field as _sympy_field
from sympy.polys.rings import ring as _sympy_ring

from .errors import ScalarParseError, ShapeMismatchError, SingularMatrixError

__all__ = [
    "BaseField",
    "ScalarField",
    "Scalar",
    "ScalarMatrix",
    "parse_scalar", "infer_params",
]


class BaseField(enum.Enum):
    RATIONALS = "rationals"
    GAUSSIAN_RATIONALS = "gaussian"


class ScalarField:
    """The field ``K(params)`` with ``K`` either Q or Q(i).

    Instances are cached: two fields with the same parameters and base are
    the same object, so scalars from them mix freely.
    """

    _cache: dict = {}

    def __new__(cls, params: Iterable[str] = (), base: BaseField | str = BaseField.RATIONALS):
        params = tuple(params)
        base = BaseField(base)
        for name in params:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name) or name == "i":
                raise ValueError(f"invalid parameter name {name!r}")
        if len(set(params)) != len(params):
            raise ValueError("duplicate parameter names")
        key = (params, base)
        obj = cls._cache.get(key)
        if obj is None:
            obj = super().__new__(cls)
            obj.params = params
            obj.base = base
            domain = QQ_I if base is BaseField.GAUSSIAN_RATIONALS else QQ
            obj._domain = domain
            obj._K = _sympy_field(list(params), domain)[0]
            obj._gens = {name: g for name, g in zip(params, obj._K.gens)}
            cls._cache[key] = obj
        return obj

    def __reduce__(self):
        return (ScalarField, (self.params, self.base.value))

    @property
    def gaussian(self) -> bool:
        return self.base is BaseField.GAUSSIAN_RATIONALS

    def __repr__(self):
        return f"ScalarField({list(self.params)!r}, {self.base.value!r})"

    # -- constructors -------------------------------------------------

    def _raw(self, f) -> "Scalar":
        return Scalar._canonical(self, f)

    def __call__(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field is self:
                return value
            return self.parse(str(value))
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool):
            raise TypeError("bool is not a scalar")
        if isinstance(value, int):
            return self._raw(self._K(value))
        if isinstance(value, Fraction):
            return self._raw(self._K(QQ(value.numerator, value.denominator)))
        if type(value).__name__ == "mpq":
            return self._raw(self._K(value))
        raise TypeError(f"cannot convert {type(value).__name__} to Scalar")

    @property
    def zero(self) -> "Scalar":
        return self(0)

    @property
    def one(self) -> "Scalar":
        return self(1)

    @property
    def i(self) -> "Scalar":
        if not self.gaussian:
            raise ValueError("i is not available over the rationals")
        return self._raw(self._K(self._domain(0, 1)))

    def param(self, name: str) -> "Scalar":
        try:
            return self._raw(self._gens[name])
        except KeyError:
            raise KeyError(f"unknown parameter {name!r}; field has {self.params}") from None

    def params_of(self, *names: str) -> tuple:
        return tuple(self.param(n) for n in names)

    def parse(self, text: str) -> "Scalar":
        return parse_scalar(text, self)


class Scalar:
    """Immutable element of a :class:`ScalarField`."""

    __slots__ = ("field", "_f")

    def __init__(self, field: ScalarField, f):
        self.field = field
        self._f = f

    @classmethod
    def _canonical(cls, fld: ScalarField, f) -> "Scalar":
        den = f.denom
        lc = den.LC
        if lc != 1:
            K = fld._K
            f = K.raw_new(f.numer.quo_ground(lc), den.quo_ground(lc))
        return cls(fld, f)

    # -- coercion -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise TypeError(f"scalars from different fields: {self.field} vs {other.field}")
            return other._f
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field(other)._f
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar._canonical(self.field, self._f + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar._canonical(self.field, self._f - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar._canonical(self.field, o - self._f)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar._canonical(self.field, self._f * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o:
            raise ZeroDivisionError("division by zero scalar")
        return Scalar._canonical(self.field, self._f / o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self._f:
            raise ZeroDivisionError("division by zero scalar")
        return Scalar._canonical(self.field, o / self._f)

    def __neg__(self):
        return Scalar(self.field, -self._f)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers")
        if n < 0:
            if not self._f:
                raise ZeroDivisionError("zero to a negative power")
            return Scalar._canonical(self.field, (1 / self._f) ** (-n))
        return Scalar._canonical(self.field, self._f ** n)

    def inverse(self) -> "Scalar":
        return self ** -1

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field is other.field and self._f == other._f
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._f == self.field(other)._f
        return NotImplemented

    def __hash__(self):
        return hash((self._f.numer, self._f.denom))

    def __bool__(self):
        return bool(self._f)

    @property
    def is_zero(self) -> bool:
        return not self._f

    @property
    def numerator(self):
        """Numerator as a sympy ``PolyElement`` (canonical form)."""
        return self._f.numer

    @property
    def denominator(self):
        return self._f.denom

    # -- structure ----------------------------------------------------

    def is_constant(self) -> bool:
        """True when no parameter occurs."""
        return self._f.numer.is_ground and self._f.denom.is_ground

    def _constant(self):
        if not self.is_constant():
            raise ValueError(f"{self} depends on parameters")
        return self._f.numer.LC if self._f.numer else self.field._domain.zero

    def is_rational(self) -> bool:
        """Parameter-free and i-free."""
        if not self.is_constant():
            return False
        c = self._constant()
        return not self.field.gaussian or c.y == 0

    def to_fraction(self) -> Fraction:
        c = self._constant()
        if self.field.gaussian:
            if c.y != 0:
                raise ValueError(f"{self} is not rational")
            c = c.x
        return Fraction(int(c.numerator), int(c.denominator))

    def real_imag(self) -> tuple[Fraction, Fraction]:
        """Real and imaginary parts of a constant scalar."""
        c = self._constant()
        if not self.field.gaussian:
            return Fraction(int(c.numerator), int(c.denominator)), Fraction(0)
        return (Fraction(int(c.x.numerator), int(c.x.denominator)),
                Fraction(int(c.y.numerator), int(c.y.denominator)))

    def is_positive_rational(self) -> bool:
        return self.is_rational() and self.to_fraction() > 0

    def is_real(self) -> bool:
        """Invariant under conjugation (parameters count as real)."""
        return self.conjugate() == self

    def conjugate(self) -> "Scalar":
        if not self.field.gaussian:
            return self
        dom = self.field._domain

        def conj_poly(p):
            return p.ring.from_dict({m: dom(c.x, -c.y) for m, c in p.terms()})

        f = self._f
        K = self.field._K
        return Scalar._canonical(self.field, K.new(conj_poly(f.numer), conj_poly(f.denom)))

    def subs(self, values: Mapping[str, object]) -> "Scalar":
        """Specialize parameters to constants; result stays in the same field."""
        f = self._f
        for name, val in values.items():
            v = self.field(val)
            if not v.is_constant():
                raise ValueError("only constant specializations are supported")
            gen = self.field._gens[name]
            idx = self.field._K.gens.index(gen)
            c = v._constant()
            num = f.numer.subs(f.numer.ring.gens[idx], c)
            den = f.denom.subs(f.denom.ring.gens[idx], c)
            if not den:
                raise ZeroDivisionError(f"denominator vanishes at {name}={val}")
            f = self.field._K.new(num, den)
        return Scalar._canonical(self.field, f)

    def is_square_up_to_positive_constant(self) -> bool:
        """True if self = c * g^2 with c a positive rational and g a rational function.

        Uses square-free decomposition only (no factorization).
        """
        if self.is_zero:
            return False
        c = Fraction(1)
        for part in (self._f.numer, self._f.denom):
            if self.field.gaussian:
                if any(coef.y != 0 for _, coef in part.terms()):
                    return False
                part = _real_ring(self.field).from_dict({m: coef.x for m, coef in part.terms()})
            lc, factors = part.sqf_list()
            if any(k % 2 for _, k in factors):
                return False
            c *= Fraction(int(lc.numerator), int(lc.denominator))
        return c > 0

    # -- text ---------------------------------------------------------

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"


def _real_ring(fld: ScalarField):
    return _sympy_ring(list(fld.params), QQ)[0]


# ---------------------------------------------------------------------------
# printing

def _fmt_rational(c) -> str:
    num, den = int(c.numerator), int(c.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def _fmt_monomial(exps, names) -> str:
    parts = []
    for e, name in zip(exps, names):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _fmt_coeff(c, gaussian: bool) -> tuple[int, str, bool]:
    """Return (sign, magnitude text, is_one) for a coefficient."""
    if gaussian:
        re_, im = c.x, c.y
        if im == 0:
            c = re_
        elif re_ == 0:
            sign = -1 if im < 0 else 1
            mag = abs(im)
            txt = "i" if mag == 1 else f"{_fmt_rational(mag)}*i"
            return sign, txt, False
        else:
            im_txt = ("+" if im > 0 else "-") + ("i" if abs(im) == 1 else f"{_fmt_rational(abs(im))}*i")
            return 1, f"({_fmt_rational(re_)}{im_txt})", False
    sign = -1 if c < 0 else 1
    mag = abs(c)
    return sign, _fmt_rational(mag), mag == 1


def _fmt_poly(p, names, gaussian) -> str:
    if not p:
        return "0"
    out = []
    for exps, c in p.terms():
        sign, mag, is_one = _fmt_coeff(c, gaussian)
        mono = _fmt_monomial(exps, names)
        if mono:
            body = mono if is_one else f"{mag}*{mono}"
        else:
            body = mag
        if not out:
            out.append(("-" if sign < 0 else "") + body)
        else:
            out.append(("-" if sign < 0 else "+") + body)
    return "".join(out)


def format_scalar(s: Scalar) -> str:
    names = s.field.params
    g = s.field.gaussian
    num, den = s._f.numer, s._f.denom
    ntxt = _fmt_poly(num, names, g)
    if den == den.ring.one:
        return ntxt
    if len(num.terms()) > 1 or ("/" in ntxt and not ntxt.startswith("(")):
        ntxt = f"({ntxt})"
    dtxt = _fmt_poly(den, names, g)
    dterms = den.terms()
    single_factor = len(dterms) == 1 and sum(1 for e in dterms[0][0] if e) == 1
    if not single_factor:
        dtxt = f"({dtxt})"
    return f"{ntxt}/{dtxt}"


# ---------------------------------------------------------------------------
# parsing

_NAME = r"[A-Za-z_][A-Za-z_0-9]*"


def _token_re(name_re: str):
    return re.compile(r"\s*(?:(\d+)|(" + name_re + r")|(\*\*|[-+*/^()]))")


_TOKEN = _token_re(_NAME)


def _tokenize(text: str, token_re=_TOKEN):
    pos = 0
    toks = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = token_re.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ScalarParseError("unexpected character", text, col)
        start = m.start(m.lastindex) + 1
        if m.group(1):
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            toks.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    toks.append(("end", None, len(text) + 1))
    return toks


class _Parser:
    def __init__(self, text: str, atom, token_re=_TOKEN):
        self.text = text
        self.toks = _tokenize(text, token_re)
        self.i = 0
        self.atom_fn = atom

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ScalarParseError(msg, self.text, tok[2])

    def expect(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            self.error(f"expected {op!r}", t)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        v = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected token")
        return v

    def expr(self):
        v = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            tok = self.take()
            w = self.unary()
            if tok[1] == "*":
                v = v * w
            else:
                try:
                    v = v / w
                except ZeroDivisionError:
                    self.error("division by zero", tok)
        return v

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            v = self.unary()
            return -v if t[1] == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                sign = -1
            t = self.take()
            if t[0] == "int":
                e = t[1]
            elif t[0] == "op" and t[1] == "(":
                s = 1
                if self.peek()[0] == "op" and self.peek()[1] == "-":
                    self.take()
                    s = -1
                t2 = self.take()
                if t2[0] != "int":
                    self.error("exponent must be an integer", t2)
                e = s * t2[1]
                self.expect(")")
            else:
                self.error("exponent must be an integer", t)
            try:
                return base ** (sign * e)
            except ZeroDivisionError:
                self.error("zero to a negative power", t)
        return base

    def atom(self):
        t = self.take()
        if t[0] == "op" and t[1] == "(":
            v = self.expr()
            self.expect(")")
            return v
        if t[0] in ("int", "name"):
            return self.atom_fn(t, self)
        self.error("unexpected token", t)


def parse_scalar(text: str, field: ScalarField) -> Scalar:
    """Parse ``integers, i, parameter names, + - * / ^, parentheses``."""

    def atom(tok, parser):
        kind, val, _ = tok
        if kind == "int":
            return field(val)
        if val == "i":
            if not field.gaussian:
                parser.error("'i' requires the Gaussian base field", tok)
            return field.i
        if val not in field.params:
            parser.error(f"unknown parameter {val!r}", tok)
        return field.param(val)

    return _Parser(text, atom).parse()


def infer_params(texts: Iterable[str]) -> tuple[tuple[str, ...], bool]:
    """Collect parameter names (sorted) and whether ``i`` occurs."""
    names: set[str] = set()
    gaussian = False
    for text in texts:
        for m in re.finditer(r"[A-Za-z_][A-Za-z_0-9]*", str(text)):
            if m.group(0) == "i":
                gaussian = True
            else:
                names.add(m.group(0))
    return tuple(sorted(names)), gaussian


# ---------------------------------------------------------------------------
# matrices

class ScalarMatrix:
    """Immutable dense matrix of :class:`Scalar`."""

    __slots__ = ("field", "rows")

    def __init__(self, field: ScalarField, rows: Sequence[Sequence]):
        rows = tuple(tuple(field(v) for v in row) for row in rows)
        if not rows or not rows[0]:
            raise ShapeMismatchError("matrices must be non-empty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ShapeMismatchError("ragged rows")
        self.field = field
        self.rows = rows

    @classmethod
    def identity(cls, field: ScalarField, n: int) -> "ScalarMatrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, field: ScalarField, entries) -> "ScalarMatrix":
        n = len(entries)
        return cls(field, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def is_square(self) -> bool:
        r, c = self.shape
        return r == c

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def __eq__(self, other):
        if not isinstance(other, ScalarMatrix):
            return NotImplemented
        return self.field is other.field and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"ScalarMatrix({self.to_strings()!r})"

    def to_strings(self) -> list[list[str]]:
        return [[str(v) for v in row] for row in self.rows]

    @property
    def T(self) -> "ScalarMatrix":
        return ScalarMatrix(self.field, list(zip(*self.rows)))

    transpose = T

    def __add__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        if self.shape != other.shape:
            raise ShapeMismatchError(f"{self.shape} + {other.shape}")
        return ScalarMatrix(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        if self.shape != other.shape:
            raise ShapeMismatchError(f"{self.shape} - {other.shape}")
        return ScalarMatrix(self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return ScalarMatrix(self.field, [[-a for a in r] for r in self.rows])

    def __matmul__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        if not isinstance(other, ScalarMatrix):
            return NotImplemented
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ShapeMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.field.zero
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return ScalarMatrix(self.field, out)

    def scale(self, s) -> "ScalarMatrix":
        s = self.field(s)
        return ScalarMatrix(self.field, [[s * a for a in r] for r in self.rows])

    def __mul__(self, s):
        if isinstance(s, ScalarMatrix):
            return NotImplemented
        return self.scale(s)

    __rmul__ = __mul__

    def trace(self) -> Scalar:
        if not self.is_square:
            raise ShapeMismatchError("trace of a non-square matrix")
        acc = self.field.zero
        for i in range(self.shape[0]):
            acc = acc + self.rows[i][i]
        return acc

    def conj(self) -> "ScalarMatrix":
        return ScalarMatrix(self.field, [[a.conjugate() for a in r] for r in self.rows])

    def _row_reduce(self):
        """Gauss-Jordan on [M | I]; returns (det, inverse or None)."""
        n = self.shape[0]
        F = self.field
        aug = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(self.rows)]
        det = F.one
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col]), None)
            if piv is None:
                return F.zero, None
            if piv != col:
                aug[col], aug[piv] = aug[piv], aug[col]
                det = -det
            p = aug[col][col]
            det = det * p
            inv_p = p.inverse()
            aug[col] = [v * inv_p for v in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
        return det, ScalarMatrix(F, [row[n:] for row in aug])

    def det(self) -> Scalar:
        if not self.is_square:
            raise ShapeMismatchError("determinant of a non-square matrix")
        return self._row_reduce()[0]

    def inverse(self) -> "ScalarMatrix":
        if not self.is_square:
            raise SingularMatrixError("non-square matrix has no inverse")
        det, inv = self._row_reduce()
        if inv is None:
            raise SingularMatrixError("matrix is singular")
        return inv

    def is_invertible(self) -> bool:
        return self.is_square and bool(self.det())

    def scalar_multiple_of_identity(self) -> Scalar | None:
        """Return ``c`` if the matrix equals ``c*I``, otherwise None."""
        if not self.is_square:
            return None
        c = self.rows[0][0]
        n = self.shape[0]
        for i in range(n):
            for j in range(n):
                want = c if i == j else self.field.zero
                if self.rows[i][j] != want:
                    return None
        return c

    def subs(self, values: Mapping[str, object]) -> "ScalarMatrix":
        return ScalarMatrix(self.field, [[a.subs(values) for a in r] for r in self.rows])
