"""
Presented algebras G(A,B|C,D) and their tensor products.

``G(A,B|C,D)`` has generators ``d, d^-1`` and an ``n x m`` matrix ``x``
(``A, B`` are ``n x n``, ``C, D`` are ``m x m``) subject to

    x^t A x = C d,    x D x^t = B d,    d d^-1 = 1 = d^-1 d.

``G(A,B)`` is the square case ``G(A,B|A,B)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import ShapeMismatchError, SingularMatrixError
from ..ncpoly import (Gen, NCMatrix, NCPoly, d, d_inv, generator_matrix,
                      matrix_relation_expand, x)
from ..rewrite import (ReductionSystem, RewriteRule, ideal_membership_search,
                       normal_form, MembershipResult, VERIFIED_ZERO)
from ..scalar import ScalarField, ScalarMatrix, infer_params, BaseField

__all__ = [
    "GData", "Presentation", "build_gabcd", "build_gab", "a_q", "jordanian_pair",
    "tensor_presentation", "ground_presentation", "a_q_scale",
    "bundle_from_json", "bundle_to_json", "presentation_from_bundle",
]


def a_q(field: ScalarField, q) -> ScalarMatrix:
    """The matrix ``[[0, 1], [-q, 0]]``."""
    q = field(q)
    return ScalarMatrix(field, [[0, 1], [-q, 0]])


def jordanian_pair(field: ScalarField, h, h2) -> tuple:
    """``([[0,1],[-1,h]], [[-h',1],[-1,0]])``."""
    h, h2 = field(h), field(h2)
    return (ScalarMatrix(field, [[0, 1], [-1, h]]),
            ScalarMatrix(field, [[-h2, 1], [-1, 0]]))


def a_q_scale(M: ScalarMatrix):
    """If ``M = alpha * A_q`` return ``(alpha, q)``, else None."""
    if M.shape != (2, 2):
        return None
    if M[0, 0] or M[1, 1] or not M[0, 1]:
        return None
    alpha = M[0, 1]
    q = -M[1, 0] / alpha
    if not q:
        return None
    return alpha, q


@dataclass(frozen=True)
class GData:
    A: ScalarMatrix
    B: ScalarMatrix
    C: ScalarMatrix
    D: ScalarMatrix

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.C.shape[0]


class Presentation:
    """Generators, relation polynomials, and a lazily built reduction system.

    ``slots`` records, for tensor presentations, the factor presentation
    living in each slot.  Membership queries go through :meth:`membership`,
    which remembers any saturated system it found so later queries reuse it.
    """

    def __init__(self, field: ScalarField, generators: Sequence[Gen], relations: Sequence[NCPoly],
                 labels: Sequence[str] | None = None, *, data: GData | None = None,
                 with_d_inv: bool = True, factors: Sequence["Presentation"] = (),
                 name: str = ""):
        self.field = field
        self.generators = tuple(sorted(generators))
        self.relations = list(relations)
        self.labels = list(labels) if labels else [f"r{k}" for k in range(len(relations))]
        self.data = data
        self.with_d_inv = with_d_inv
        self.factors = tuple(factors)
        self.name = name
        self._system: ReductionSystem | None = None
        self._best: ReductionSystem | None = None
        self.system_kind = ""

    # -- shape --------------------------------------------------------

    @property
    def n_rows(self) -> int:
        return self.data.n if self.data else 0

    @property
    def n_cols(self) -> int:
        return self.data.m if self.data else 0

    @property
    def is_square(self) -> bool:
        return self.data is not None and self.n_rows == self.n_cols

    def x_matrix(self, slot: int = 0) -> NCMatrix:
        return generator_matrix(self.field, self.n_rows, self.n_cols, slot)

    def gen(self, g: Gen) -> NCPoly:
        return NCPoly.gen(self.field, g)

    # -- rewriting ----------------------------------------------------

    def reduction_system(self) -> ReductionSystem:
        if self._system is None:
            from .appendix import system_for
            self._system, self.system_kind = system_for(self)
        return self._system

    def nf(self, p: NCPoly) -> NCPoly:
        return (self._best or self.reduction_system()).nf(p)

    def membership(self, p: NCPoly, bound: int = 8) -> MembershipResult:
        sys = self._best or self.reduction_system()
        red = normal_form(p, sys)
        if not red.poly:
            return MembershipResult(VERIFIED_ZERO, red.poly, sys, 0, red.trace)
        res = ideal_membership_search(p, sys, bound)
        if len(res.system.rules) > len(sys.rules) or res.rounds:
            self._best = res.system
        return res

    def __repr__(self):
        return f"Presentation({self.name or 'anonymous'}, {len(self.generators)} generators, " \
               f"{len(self.relations)} relations)"


def _check_invertible(M: ScalarMatrix, name: str):
    if not M.is_square:
        raise ShapeMismatchError(f"{name} must be square, got {M.shape}")
    if not M.is_invertible():
        raise SingularMatrixError(f"{name} is singular")


def build_gabcd(A: ScalarMatrix, B: ScalarMatrix, C: ScalarMatrix, D: ScalarMatrix,
                with_d_inv: bool = True, name: str = "") -> Presentation:
    """The presentation of ``G(A,B|C,D)`` with relations expanded entrywise."""
    for M, nm in ((A, "A"), (B, "B"), (C, "C"), (D, "D")):
        _check_invertible(M, nm)
    if A.shape != B.shape or C.shape != D.shape:
        raise ShapeMismatchError("A, B and C, D must have matching sizes")
    F = A.field
    n, m = A.shape[0], C.shape[0]
    X = generator_matrix(F, n, m)
    dp = NCPoly.gen(F, d())
    rels, labels = [], []
    for k, r in enumerate(matrix_relation_expand(X.T @ A @ X, NCMatrix.from_scalar(C, dp))):
        rels.append(r)
        labels.append(f"xtAx[{k // m + 1},{k % m + 1}]")
    for k, r in enumerate(matrix_relation_expand(X @ D @ X.T, NCMatrix.from_scalar(B, dp))):
        rels.append(r)
        labels.append(f"xDxt[{k // n + 1},{k % n + 1}]")
    gens = [d()] + [x(i, j) for i in range(1, n + 1) for j in range(1, m + 1)]
    if with_d_inv:
        gens.append(d_inv())
        one = NCPoly.one(F)
        di = NCPoly.gen(F, d_inv())
        rels += [dp * di - one, di * dp - one]
        labels += ["d*dinv", "dinv*d"]
    return Presentation(F, gens, rels, labels, data=GData(A, B, C, D),
                        with_d_inv=with_d_inv, name=name or "G(A,B|C,D)")


def build_gab(A: ScalarMatrix, B: ScalarMatrix, with_d_inv: bool = True, name: str = "") -> Presentation:
    return build_gabcd(A, B, A, B, with_d_inv, name=name or "G(A,B)")


def ground_presentation(field: ScalarField) -> Presentation:
    """The ground field as a presentation with no generators."""
    return Presentation(field, [], [], name="k")


def _shift(p: NCPoly, slot: int) -> NCPoly:
    return p.map_words(lambda w: tuple(g._replace(slot=g.slot + slot) for g in w))


def tensor_presentation(*factors: Presentation) -> Presentation:
    """Tensor product: slot-tagged copies plus commutation across slots."""
    if not factors:
        raise ValueError("need at least one factor")
    F = factors[0].field
    gens, rels, labels = [], [], []
    flat = []
    offset = 0
    for P in factors:
        if P.field is not F:
            raise TypeError("tensor factors over different scalar fields")
        width = 1 + max((g.slot for g in P.generators), default=0)
        gens += [g._replace(slot=g.slot + offset) for g in P.generators]
        rels += [_shift(r, offset) for r in P.relations]
        labels += [f"S{offset}:{lab}" for lab in P.labels]
        flat.append((P, offset))
        offset += width
    for a in gens:
        for b in gens:
            if b.slot < a.slot:
                # a b - b a with a in the later slot
                rels.append(NCPoly.word(F, (a, b)) - NCPoly.word(F, (b, a)))
                labels.append("swap")
    out = Presentation(F, gens, rels, labels, factors=factors,
                       with_d_inv=all(P.with_d_inv for P in factors),
                       name=" (x) ".join(P.name for P in factors))
    out._flat = flat
    return out


def tensor_system(T: Presentation) -> ReductionSystem:
    """Union of slot-shifted factor systems plus swap rules; confluent if factors are."""
    F = T.field
    rules = []
    for P, off in T._flat:
        for r in P.reduction_system().rules:
            rules.append(RewriteRule(tuple(g._replace(slot=g.slot + off) for g in r.lhs),
                                     _shift(r.rhs, off), f"S{off}:{r.label}"))
    for a in T.generators:
        for b in T.generators:
            if b.slot < a.slot:
                rules.append(RewriteRule((a, b), NCPoly.word(F, (b, a)), "swap"))
    return ReductionSystem(rules, F, T.generators)


# -- JSON bundles --------------------------------------------------------

def _matrix_texts(obj, name):
    M = obj.get(name)
    if M is None:
        return None
    if not isinstance(M, list) or not all(isinstance(r, list) for r in M):
        raise ValueError(f"field {name!r} must be a list of rows")
    return [[str(v) for v in r] for r in M]


def bundle_from_json(obj: dict, names: Sequence[str] = ("A", "B", "C", "D"),
                     params: Sequence[str] | None = None, gaussian: bool | None = None) -> tuple:
    """Parse matrices from a bundle; returns ``(field, {name: ScalarMatrix}, obj)``.

    The scalar field is inferred from every matrix string in the bundle
    unless ``params`` is given.
    """
    texts = {}
    for nm in obj:
        if isinstance(obj[nm], list):
            t = _matrix_texts(obj, nm)
            if t is not None:
                texts[nm] = t
    allt = [s for t in texts.values() for r in t for s in r]
    found, g = infer_params(allt)
    if params is None:
        params = found
    if gaussian is None:
        gaussian = g
    F = ScalarField(params, BaseField.GAUSSIAN_RATIONALS if gaussian else BaseField.RATIONALS)
    mats = {nm: ScalarMatrix(F, [[F.parse(s) for s in r] for r in t]) for nm, t in texts.items()}
    return F, mats, obj


def bundle_to_json(n: int, m: int, A, B, C, D, with_d_inv: bool = True) -> dict:
    return {"n": n, "m": m, "A": A.to_strings(), "B": B.to_strings(),
            "C": C.to_strings(), "D": D.to_strings(), "with_d_inv": with_d_inv}


def presentation_from_bundle(obj: dict) -> Presentation:
    F, mats, _ = bundle_from_json(obj)
    try:
        A, B = mats["A"], mats["B"]
    except KeyError as exc:
        raise ValueError(f"bundle is missing matrix {exc.args[0]}") from None
    C, D_ = mats.get("C", A), mats.get("D", B)
    name = "G(A,B)" if "C" not in mats and "D" not in mats else ""
    P = build_gabcd(A, B, C, D_, bool(obj.get("with_d_inv", True)), name=name)
    n, m = obj.get("n"), obj.get("m")
    if n is not None and n != P.n_rows or m is not None and m != P.n_cols:
        raise ShapeMismatchError(f"declared size {n}x{m} does not match the matrices")
    return P
