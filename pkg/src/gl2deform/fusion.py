"""
The corepresentation semiring of GL_q(2).

Generic ``q``: the simples are ``U(n,e) = U_n (x) D^e`` and

    U(n,e) (x) U(m,f) = sum_{i=0}^{min(n,m)} U(n+m-2i, e+f+i).

``q`` a root of unity of order ``N >= 3``: with ``N0 = N`` (odd) or ``N/2``
(even) the simples are ``V_n (x) U_m (x) D^e`` with ``0 <= m < N0``, and
only products with ``V_1``, ``U_1`` or a power of ``D`` are determined:

    V_n (x) V_1 = V_{n+1} + V_{n-1} (x) D^N0
    U_m (x) U_1 = U_{m+1} + U_{m-1} (x) D          (m < N0 - 1)

while ``U_{N0-1} (x) U_1`` is not semisimple.  Anything else raises
:class:`~gl2deform.errors.UndeterminedError`.

Examples
========

>>> str(tensor_generic(GenericLabel(1, 0), GenericLabel(1, 0)))
'U(2,0) + U(0,1)'
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import UndeterminedError

__all__ = [
    "GenericCase", "RootOfUnityCase", "GenericLabel", "RootLabel", "SemiringElement",
    "NotSemisimple", "tensor_generic", "tensor_root_partial", "relabel_automorphism",
    "semiring_product", "parse_label", "parse_element",
]


@dataclass(frozen=True)
class GenericCase:
    pass


@dataclass(frozen=True)
class RootOfUnityCase:
    N: int

    def __post_init__(self):
        if self.N < 3:
            raise ValueError("a non-generic root of unity has order N >= 3")

    @property
    def N0(self) -> int:
        return self.N if self.N % 2 else self.N // 2


class GenericLabel(NamedTuple):
    n: int
    e: int = 0

    @property
    def dim(self) -> int:
        return self.n + 1

    def __str__(self):
        return f"U({self.n},{self.e})"


class RootLabel(NamedTuple):
    n: int
    m: int = 0
    e: int = 0

    @property
    def dim(self) -> int:
        return (self.n + 1) * (self.m + 1)

    def __str__(self):
        parts = []
        if self.n:
            parts.append(f"V({self.n})")
        if self.m:
            parts.append(f"U({self.m})")
        if self.e or not parts:
            parts.append("D" if self.e == 1 else f"D^{self.e}")
        return "*".join(parts)


class SemiringElement:
    """Finite multiset of simple labels."""

    __slots__ = ("counts",)

    def __init__(self, labels: Iterable | Counter = ()):
        if isinstance(labels, Counter):
            self.counts = Counter({k: v for k, v in labels.items() if v > 0})
        else:
            self.counts = Counter(labels)

    @classmethod
    def of(cls, *labels) -> "SemiringElement":
        return cls(labels)

    @property
    def dim(self) -> int:
        return sum(k.dim * v for k, v in self.counts.items())

    def labels(self) -> list:
        """Labels with multiplicity, largest first."""
        out = []
        for k in sorted(self.counts, reverse=True):
            out += [k] * self.counts[k]
        return out

    def __add__(self, other: "SemiringElement") -> "SemiringElement":
        return SemiringElement(self.counts + other.counts)

    def __mul__(self, other: "SemiringElement") -> "SemiringElement":
        return semiring_product(self, other)

    def __eq__(self, other):
        if not isinstance(other, SemiringElement):
            return NotImplemented
        return self.counts == other.counts

    def __hash__(self):
        return hash(frozenset(self.counts.items()))

    def __len__(self):
        return sum(self.counts.values())

    def __str__(self):
        if not self.counts:
            return "0"
        parts = []
        for k in sorted(self.counts, reverse=True):
            c = self.counts[k]
            parts.append(str(k) if c == 1 else f"{c}*{k}")
        return " + ".join(parts)

    def __repr__(self):
        return f"SemiringElement({str(self)!r})"


@dataclass(frozen=True)
class NotSemisimple:
    """A non-semisimple product, described by its composition factors."""

    factors: tuple

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    def __str__(self):
        return "NotSemisimple[" + ", ".join(str(f) for f in self.factors) + "]"


def tensor_generic(a: GenericLabel, b: GenericLabel) -> SemiringElement:
    if a.n < 0 or b.n < 0:
        raise ValueError("labels need n >= 0")
    return SemiringElement(GenericLabel(a.n + b.n - 2 * i, a.e + b.e + i)
                           for i in range(min(a.n, b.n) + 1))


def semiring_product(x: SemiringElement, y: SemiringElement) -> SemiringElement:
    out: Counter = Counter()
    for a, ca in x.counts.items():
        for b, cb in y.counts.items():
            for lab, c in tensor_generic(a, b).counts.items():
                out[lab] += ca * cb * c
    return SemiringElement(out)


def relabel_automorphism(s: int, x: SemiringElement) -> SemiringElement:
    """``s = -1`` sends ``U(n,e)`` to ``U(n,-n-e)``; ``s = 1`` is the identity."""
    if s == 1:
        return SemiringElement(Counter(x.counts))
    if s != -1:
        raise ValueError("s must be +1 or -1")
    out: Counter = Counter()
    for k, c in x.counts.items():
        out[GenericLabel(k.n, -k.n - k.e)] += c
    return SemiringElement(out)


def _check_root(a: RootLabel, N0: int):
    if a.n < 0 or not 0 <= a.m < N0:
        raise ValueError(f"{a} is not a simple label for N0 = {N0}")


def tensor_root_partial(a: RootLabel, b: RootLabel, case: RootOfUnityCase):
    """Products at a root of unity that the recursion rules determine."""
    N0 = case.N0
    _check_root(a, N0)
    _check_root(b, N0)
    # powers of D are invertible and one-dimensional
    if b.n == 0 and b.m == 0:
        return SemiringElement.of(RootLabel(a.n, a.m, a.e + b.e))
    if a.n == 0 and a.m == 0:
        return SemiringElement.of(RootLabel(b.n, b.m, a.e + b.e))
    if (b.n, b.m) not in ((1, 0), (0, 1)):
        if (a.n, a.m) in ((1, 0), (0, 1)):
            a, b = b, a
        else:
            raise UndeterminedError(f"{a} (x) {b} is not determined by the recursion rules")
    e = a.e + b.e
    if (b.n, b.m) == (1, 0):
        out = [RootLabel(a.n + 1, a.m, e)]
        if a.n >= 1:
            out.append(RootLabel(a.n - 1, a.m, e + N0))
        return SemiringElement(out)
    # b = U_1 twisted by D^f
    if a.m == N0 - 1:
        factors = [RootLabel(a.n, N0 - 2, e + 1)]
        # the middle factor V_n (x) V_1 splits further
        factors.append(RootLabel(a.n + 1, 0, e))
        if a.n >= 1:
            factors.append(RootLabel(a.n - 1, 0, e + N0))
        factors.append(RootLabel(a.n, N0 - 2, e + 1))
        return NotSemisimple(tuple(factors))
    out = [RootLabel(a.n, a.m + 1, e)]
    if a.m >= 1:
        out.append(RootLabel(a.n, a.m - 1, e + 1))
    return SemiringElement(out)


# -- text ----------------------------------------------------------------

_FACTOR = re.compile(r"\s*(?:U\(\s*(-?\d+)\s*(?:,\s*(-?\d+)\s*)?\)|V\(\s*(-?\d+)\s*\)|D(?:\^\s*\(?\s*(-?\d+)\s*\)?)?)\s*")


def parse_label(text: str, root: bool = False):
    """``U(n,e)`` in the generic case; products of ``V(n)``, ``U(m)``, ``D^e`` at a root."""
    pieces = [p for p in re.split(r"\*|⊗", text)]
    n = m = e = 0
    saw_v = saw_u = False
    for p in pieces:
        mt = _FACTOR.fullmatch(p)
        if not mt:
            raise ValueError(f"cannot parse label factor {p.strip()!r} in {text!r}")
        un, ue, vn, de = mt.groups()
        if un is not None:
            if saw_u:
                raise ValueError(f"two U factors in {text!r}")
            saw_u = True
            m = int(un)
            e += int(ue) if ue is not None else 0
        elif vn is not None:
            if not root:
                raise ValueError("V(n) labels only exist at a root of unity")
            if saw_v:
                raise ValueError(f"two V factors in {text!r}")
            saw_v = True
            n = int(vn)
        else:
            e += int(de) if de is not None else 1
    if m < 0 or n < 0:
        raise ValueError(f"negative index in {text!r}")
    return RootLabel(n, m, e) if root else GenericLabel(m, e)


def parse_element(text: str, root: bool = False) -> SemiringElement:
    out: Counter = Counter()
    for term in text.split("+"):
        term = term.strip()
        mt = re.match(r"(\d+)\s*\*\s*(?=[UVD])", term)
        c = 1
        if mt:
            c = int(mt.group(1))
            term = term[mt.end():]
        out[parse_label(term, root)] += c
    return SemiringElement(out)
