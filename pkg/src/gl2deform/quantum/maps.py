"""
Algebra maps between presentations and their verification.

A map is given on generators.  ``op=True`` makes it an anti-homomorphism
(``f(ab) = f(b) f(a)``), which is how maps into an opposite algebra are
realized; ``antilinear=True`` conjugates scalars.  A map is well defined
when the image of every defining relation lies in the target ideal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Mapping

from ..ncpoly import Gen, NCMatrix, NCPoly, d, d_inv, format_ncpoly, x
from ..rewrite import VERIFIED_ZERO, UNKNOWN
from .presentation import Presentation, build_gabcd, ground_presentation, tensor_presentation

__all__ = [
    "AlgebraMap", "CheckEntry", "Certificate",
    "comultiplication", "counit", "antipode",
    "verify_structural_map", "verify_hopf_identities",
]

COMULTIPLICATION = "Comultiplication"
COUNIT = "Counit"
ANTIPODE = "Antipode"


@dataclass
class AlgebraMap:
    kind: str
    source: Presentation
    target: Presentation
    images: dict
    op: bool = False
    antilinear: bool = False

    def apply(self, p: NCPoly) -> NCPoly:
        if self.antilinear:
            p = p.conjugate_coefficients()
        return p.substitute(self.images, reverse=self.op)

    def __call__(self, p):
        if isinstance(p, Gen):
            p = NCPoly.gen(self.source.field, p)
        return self.apply(p)

    def matrix_image(self) -> NCMatrix:
        S = self.source
        return NCMatrix(S.field, [[self.images[x(i, j)] for j in range(1, S.n_cols + 1)]
                                  for i in range(1, S.n_rows + 1)])


@dataclass
class CheckEntry:
    label: str
    verdict: str
    image: str = ""
    residue: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == VERIFIED_ZERO

    def to_json(self) -> dict:
        return {"label": self.label, "verdict": self.verdict,
                "image": self.image, "residue": self.residue}


@dataclass
class Certificate:
    name: str
    entries: list = dc_field(default_factory=list)
    info: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list:
        return [e for e in self.entries if not e.passed]

    def add(self, entry: CheckEntry):
        self.entries.append(entry)

    def merge(self, other: "Certificate", prefix: str = ""):
        for e in other.entries:
            self.entries.append(CheckEntry(prefix + e.label, e.verdict, e.image, e.residue))

    def summary(self) -> str:
        ok = sum(e.passed for e in self.entries)
        return f"{self.name}: {ok}/{len(self.entries)} checks passed" + \
            ("" if self.passed else " (FAILED)")

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "info": self.info,
                "checks": [e.to_json() for e in self.entries]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _check(target: Presentation, label: str, p: NCPoly, bound: int, exact: bool = False) -> CheckEntry:
    if exact or not target.relations:
        verdict = VERIFIED_ZERO if not p else UNKNOWN
        return CheckEntry(label, verdict, format_ncpoly(p), format_ncpoly(p))
    res = target.membership(p, bound)
    return CheckEntry(label, res.verdict, format_ncpoly(p), format_ncpoly(res.residue))


# -- the structural maps -------------------------------------------------

def comultiplication(source: Presentation, middle: tuple | None = None,
                     target: Presentation | None = None) -> AlgebraMap:
    """``G(A,B|C,D) -> G(A,B|X,Y) (x) G(X,Y|C,D)`` with ``x_ij -> sum_k x_ik (x) x_kj``."""
    g = source.data
    F = source.field
    if target is None:
        Xm, Ym = middle if middle is not None else (g.A, g.B)
        left = build_gabcd(g.A, g.B, Xm, Ym, source.with_d_inv, name="G(A,B|X,Y)")
        right = build_gabcd(Xm, Ym, g.C, g.D, source.with_d_inv, name="G(X,Y|C,D)")
        target = tensor_presentation(left, right)
    p = target.factors[0].n_cols
    images = {}
    for i in range(1, g.n + 1):
        for j in range(1, g.m + 1):
            acc = NCPoly.zero(F)
            for k in range(1, p + 1):
                acc = acc + NCPoly.word(F, (x(i, k, 0), x(k, j, 1)))
            images[x(i, j)] = acc
    images[d()] = NCPoly.word(F, (d(0), d(1)))
    if source.with_d_inv:
        images[d_inv()] = NCPoly.word(F, (d_inv(0), d_inv(1)))
    return AlgebraMap(COMULTIPLICATION, source, target, images)


def counit(source: Presentation) -> AlgebraMap:
    """``x_ij -> delta_ij``, ``d^{+-1} -> 1`` on a square ``G(A,B)``."""
    F = source.field
    images = {}
    for i in range(1, source.n_rows + 1):
        for j in range(1, source.n_cols + 1):
            images[x(i, j)] = NCPoly.const(F, 1 if i == j else 0)
    images[d()] = NCPoly.one(F)
    images[d_inv()] = NCPoly.one(F)
    return AlgebraMap(COUNIT, source, ground_presentation(F), images)


def antipode(source: Presentation, target: Presentation | None = None) -> AlgebraMap:
    """``S(x) = A^-1 d^-1 x^t C`` into ``G(C,D|A,B)`` as an anti-homomorphism."""
    g = source.data
    F = source.field
    if target is None:
        target = build_gabcd(g.C, g.D, g.A, g.B, True, name="G(C,D|A,B)")
    Ai = g.A.inverse()
    images = {}
    di = d_inv()
    for i in range(1, g.n + 1):
        for j in range(1, g.m + 1):
            acc = NCPoly.zero(F)
            for a in range(1, g.n + 1):
                if not Ai[i - 1, a - 1]:
                    continue
                for b in range(1, g.m + 1):
                    c = Ai[i - 1, a - 1] * g.C[b - 1, j - 1]
                    if c:
                        acc = acc + NCPoly.word(F, (di, x(b, a)), c)
            images[x(i, j)] = acc
    images[d()] = NCPoly.gen(F, di)
    images[di] = NCPoly.gen(F, d())
    return AlgebraMap(ANTIPODE, source, target, images, op=True)


def verify_structural_map(f: AlgebraMap, bound: int = 8) -> Certificate:
    """Every source relation must map into the target ideal."""
    cert = Certificate(f"{f.kind}: {f.source.name} -> {f.target.name}")
    for lab, r in zip(f.source.labels, f.source.relations):
        cert.add(_check(f.target, lab, f.apply(r), bound))
    cert.info["target_system"] = f.target.system_kind if f.target.relations else "ground field"
    return cert


# -- Hopf identities on generators --------------------------------------

def _slot_sort(p: NCPoly) -> NCPoly:
    """Move letters to slot order (legal in a tensor product)."""
    return p.map_words(lambda w: tuple(sorted(w, key=lambda g: g.slot)))


def _apply_on_slot(p: NCPoly, slot: int, images: Mapping, shift_after: int) -> NCPoly:
    """Apply ``images`` to letters in ``slot``; shift later slots by ``shift_after``."""
    F = p.field
    out = NCPoly.zero(F)
    for w, c in p.terms.items():
        acc = NCPoly.const(F, c)
        for g in w:
            if g.slot == slot:
                img = images[g._replace(slot=0)]
                if slot:
                    img = img.map_words(lambda u: tuple(l._replace(slot=l.slot + slot) for l in u))
                acc = acc * img
            elif g.slot > slot:
                acc = acc * NCPoly.gen(F, g._replace(slot=g.slot + shift_after))
            else:
                acc = acc * NCPoly.gen(F, g)
        out = out + acc
    return out


def verify_hopf_identities(P: Presentation, bound: int = 8) -> Certificate:
    """Coassociativity, counit and antipode axioms on the generators of ``G(A,B)``."""
    if not P.is_square:
        raise ValueError("Hopf identities need a square presentation G(A,B)")
    g = P.data
    if g.A != g.C or g.B != g.D:
        raise ValueError("Hopf identities need G(A,B) = G(A,B|A,B)")
    F = P.field
    cert = Certificate(f"Hopf identities of {P.name}")
    delta = comultiplication(P)
    eps = counit(P)
    S = antipode(P, P)
    n = g.n
    gens = [x(i, j) for i in range(1, n + 1) for j in range(1, n + 1)] + [d()]
    if P.with_d_inv:
        gens.append(d_inv())
    dimg = {h: delta.images[h] for h in gens}
    for h in gens:
        once = dimg[h]
        left = _slot_sort(_apply_on_slot(once, 0, dimg, 1))
        right = _slot_sort(_apply_on_slot(once, 1, dimg, 0))
        cert.add(_check(P, f"coassociativity {h}", left - right, bound, exact=True))
    epsimg = {h: eps.images[h] for h in gens}
    for h in gens:
        base = NCPoly.gen(F, h)
        once = dimg[h]
        r1 = _apply_on_slot(once, 1, epsimg, 0)
        r2 = _apply_on_slot(once, 0, epsimg, 0).map_words(
            lambda w: tuple(l._replace(slot=0) for l in w))
        cert.add(_check(P, f"(id x eps) Delta {h}", r1 - base, bound, exact=True))
        cert.add(_check(P, f"(eps x id) Delta {h}", r2 - base, bound, exact=True))
    # m (id x S) Delta = u eps = m (S x id) Delta
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            delta_ij = NCPoly.const(F, 1 if i == j else 0)
            a = NCPoly.zero(F)
            b = NCPoly.zero(F)
            for k in range(1, n + 1):
                a = a + NCPoly.gen(F, x(i, k)) * S(x(k, j))
                b = b + S(x(i, k)) * NCPoly.gen(F, x(k, j))
            cert.add(_check(P, f"x S(x) [{i},{j}]", a - delta_ij, bound))
            cert.add(_check(P, f"S(x) x [{i},{j}]", b - delta_ij, bound))
    if P.with_d_inv:
        one = NCPoly.one(F)
        for h in (d(), d_inv()):
            hp = NCPoly.gen(F, h)
            cert.add(_check(P, f"{h} S({h})", hp * S(h) - one, bound))
            cert.add(_check(P, f"S({h}) {h}", S(h) * hp - one, bound))
    cert.info["system"] = P.system_kind
    return cert
