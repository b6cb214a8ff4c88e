"""
Matrix invariants of a pair ``(A, B)`` and witness checks.

For ``B^t A^t B A = lambda I`` put ``mu = tr(A B^t)`` and
``kappa = mu^2 / lambda``.  If ``q`` solves ``q^2 - sqrt(1/lambda) mu q + 1 = 0``
then ``kappa = (q + 1/q)^2``, so every decision about ``q`` can be phrased
in terms of ``kappa`` without taking square roots.

Examples
========

>>> from gl2deform.scalar import ScalarField
>>> from gl2deform.quantum import a_q
>>> F = ScalarField(["p", "q"])
>>> r = invariant_report(a_q(F, "p"), a_q(F, "q"))
>>> str(r.lam), str(r.mu)
('p*q', 'p*q+1')
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import ConditionFailedError, PreconditionFailedError, ShapeMismatchError, SingularMatrixError
from .scalar import Scalar, ScalarMatrix

__all__ = [
    "GENERIC", "ROOT_OF_UNITY", "UNDECIDED", "Genericity", "InvariantReport",
    "invariant_report", "genericity_of_kappa", "monoidal_equivalent",
    "WitnessVerdict", "verify_iso_witness", "GaloisVerdict", "verify_galois_pair",
    "verify_galois_iso_witness", "IsotropicResult", "isotropic_normalize",
    "CQGResult", "cqg_condition", "KAPPA_ORDERS",
]

GENERIC = "Generic"
ROOT_OF_UNITY = "RootOfUnity"
UNDECIDED = "UndecidedParametric"

# (q + 1/q)^2 = 2 + 2cos(2 theta) for q = exp(i theta); it is rational only
# when 2cos(2 theta) is in {-2, -1, 0, 1, 2}, which leaves these orders.
KAPPA_ORDERS = {
    Fraction(0): (4,),
    Fraction(1): (3, 6),
    Fraction(2): (8,),
    Fraction(3): (12,),
}


@dataclass(frozen=True)
class Genericity:
    kind: str
    orders: tuple = ()

    @property
    def is_generic(self) -> bool:
        return self.kind == GENERIC

    def __str__(self):
        if self.kind == ROOT_OF_UNITY:
            return f"{ROOT_OF_UNITY}(order {' or '.join(map(str, self.orders))})"
        return self.kind


def genericity_of_kappa(kappa: Scalar) -> Genericity:
    """Whether the ``q`` with ``(q + 1/q)^2 = kappa`` is generic.

    ``q = +-1`` (``kappa = 4``) counts as generic.
    """
    if not kappa.is_constant():
        return Genericity(UNDECIDED)
    re, im = kappa.real_imag()
    if im:
        return Genericity(GENERIC)
    orders = KAPPA_ORDERS.get(re)
    if orders is None:
        return Genericity(GENERIC)
    return Genericity(ROOT_OF_UNITY, orders)


@dataclass
class InvariantReport:
    lam: Scalar | None
    mu: Scalar
    kappa: Scalar | None
    condition_ok: bool
    genericity: Genericity | None

    def to_json(self) -> dict:
        return {
            "lambda": None if self.lam is None else str(self.lam),
            "mu": str(self.mu),
            "kappa": None if self.kappa is None else str(self.kappa),
            "condition_ok": self.condition_ok,
            "genericity": None if self.genericity is None else str(self.genericity),
        }


def _require_pair(A: ScalarMatrix, B: ScalarMatrix):
    if not A.is_square or A.shape != B.shape:
        raise ShapeMismatchError(f"A and B must be square of the same size, got {A.shape}, {B.shape}")
    if not A.is_invertible():
        raise SingularMatrixError("A is singular")
    if not B.is_invertible():
        raise SingularMatrixError("B is singular")


def invariant_report(A: ScalarMatrix, B: ScalarMatrix) -> InvariantReport:
    _require_pair(A, B)
    M = B.T @ A.T @ B @ A
    lam = M.scalar_multiple_of_identity()
    mu = (A @ B.T).trace()
    if lam is None:
        return InvariantReport(None, mu, None, False, None)
    kappa = mu * mu / lam
    return InvariantReport(lam, mu, kappa, True, genericity_of_kappa(kappa))


def monoidal_equivalent(A, B, C, D) -> tuple:
    """``(equal kappas, report(A,B), report(C,D))``."""
    r1, r2 = invariant_report(A, B), invariant_report(C, D)
    for r, nm in ((r1, "(A,B)"), (r2, "(C,D)")):
        if not r.condition_ok:
            raise ConditionFailedError(f"{nm} does not satisfy B^t A^t B A = lambda I")
    return r1.kappa == r2.kappa, r1, r2


# -- witnesses -------------------------------------------------------------

def _mismatches(M: ScalarMatrix, N: ScalarMatrix) -> list:
    r, c = M.shape
    return [(i + 1, j + 1) for i in range(r) for j in range(c) if M[i, j] != N[i, j]]


def _ratio(M: ScalarMatrix, N: ScalarMatrix):
    """``alpha`` with ``M = alpha N`` and ``alpha != 0``, or None."""
    r, c = N.shape
    for i in range(r):
        for j in range(c):
            if N[i, j]:
                alpha = M[i, j] / N[i, j]
                if alpha and M == N.scale(alpha):
                    return alpha
                return None
    return None


@dataclass
class WitnessVerdict:
    passed: bool
    alpha: Scalar | None = None
    beta: Scalar | None = None
    residuals: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "alpha": None if self.alpha is None else str(self.alpha),
            "beta": None if self.beta is None else str(self.beta),
            "residuals": {k: [list(e) for e in v] for k, v in self.residuals.items()},
        }


DIRECT = "direct"
INVERSE = "inverse"


def verify_iso_witness(A, B, C, D, P: ScalarMatrix, orientation: str = DIRECT) -> WitnessVerdict:
    """``(C, D) = (alpha P^t A P, beta P^-1 B P^-t)`` or the ``B^-1, A^-1`` form."""
    for M in (A, B, C, D, P):
        if M.shape != A.shape:
            raise ShapeMismatchError("all matrices must have the same size")
    if not P.is_invertible():
        raise SingularMatrixError("P is singular")
    Pi = P.inverse()
    if orientation == DIRECT:
        C0, D0 = P.T @ A @ P, Pi @ B @ Pi.T
    elif orientation == INVERSE:
        C0, D0 = P.T @ B.inverse() @ P, Pi @ A.inverse() @ Pi.T
    else:
        raise ValueError(f"orientation must be {DIRECT!r} or {INVERSE!r}")
    alpha, beta = _ratio(C, C0), _ratio(D, D0)
    res = {}
    if alpha is None:
        res["C"] = _mismatches(C, C0.scale(C[0, 0] / C0[0, 0]) if C0[0, 0] and C[0, 0] else C0)
    if beta is None:
        res["D"] = _mismatches(D, D0.scale(D[0, 0] / D0[0, 0]) if D0[0, 0] and D[0, 0] else D0)
    return WitnessVerdict(not res, alpha, beta, res)


@dataclass
class GaloisVerdict:
    passed: bool
    lam_ab: Scalar | None
    lam_cd: Scalar | None
    trace_ab: Scalar
    trace_cd: Scalar
    failures: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        s = lambda v: None if v is None else str(v)  # noqa: E731
        return {"pass": self.passed, "lambda_AB": s(self.lam_ab), "lambda_CD": s(self.lam_cd),
                "trace_AB": str(self.trace_ab), "trace_CD": str(self.trace_cd),
                "failures": self.failures}


def verify_galois_pair(A, B, C, D) -> GaloisVerdict:
    """``D^t C^t D C = lambda I`` with the same ``lambda`` as ``(A,B)``, and equal traces."""
    lam = (B.T @ A.T @ B @ A).scalar_multiple_of_identity()
    lam2 = (D.T @ C.T @ D @ C).scalar_multiple_of_identity()
    t1, t2 = (A @ B.T).trace(), (C @ D.T).trace()
    fails = []
    if lam is None:
        fails.append("B^t A^t B A is not a scalar matrix")
    if lam2 is None:
        fails.append("D^t C^t D C is not a scalar matrix")
    elif lam is not None and lam != lam2:
        fails.append(f"lambda mismatch: {lam} vs {lam2}")
    if t1 != t2:
        fails.append(f"trace mismatch: tr(AB^t) = {t1}, tr(CD^t) = {t2}")
    return GaloisVerdict(not fails, lam, lam2, t1, t2, fails)


def verify_galois_iso_witness(C1, D1, C2, D2, M: ScalarMatrix) -> WitnessVerdict:
    """``(C2, D2) = (M^-t C1 M^-1, M D1 M^t)`` exactly."""
    for N in (D1, C2, D2, M):
        if N.shape != C1.shape:
            raise ShapeMismatchError("all matrices must have the same size")
    if not M.is_invertible():
        raise SingularMatrixError("M is singular")
    Mi = M.inverse()
    res = {}
    bad = _mismatches(C2, Mi.T @ C1 @ Mi)
    if bad:
        res["C"] = bad
    bad = _mismatches(D2, M @ D1 @ M.T)
    if bad:
        res["D"] = bad
    return WitnessVerdict(not res, residuals=res)


# -- isotropic vectors -----------------------------------------------------

@dataclass
class IsotropicResult:
    found: bool
    P: ScalarMatrix | None = None
    vector: tuple = ()

    def __str__(self):
        return f"Found({self.P.to_strings()})" if self.found else "NotFoundOverBaseField"


def _rational_sqrt(x: Fraction):
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = _isqrt_exact(n), _isqrt_exact(d)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def _isqrt_exact(n: int):
    import math
    r = math.isqrt(n)
    return r if r * r == n else None


def _exact_sqrt(s: Scalar):
    """A square root of a constant scalar inside its own field, or None."""
    F = s.field
    a, b = s.real_imag()
    if not b:
        r = _rational_sqrt(a)
        if r is not None:
            return F(r)
        if F.gaussian:
            r = _rational_sqrt(-a)
            if r is not None:
                return F(r) * F.i
        return None
    # (u + iv)^2 = a + ib  with  u^2 = (a + |s|)/2
    mod = _rational_sqrt(a * a + b * b)
    if mod is None:
        return None
    u = _rational_sqrt((a + mod) / 2)
    if not u:
        return None
    v = b / (2 * u)
    return F(u) + F(v) * F.i


def _quad(M, v):
    n = M.shape[0]
    F = M.field
    acc = F.zero
    for i in range(n):
        if v[i]:
            for j in range(n):
                if v[j]:
                    acc += v[i] * M[i, j] * v[j]
    return acc


def _basis_with_last(F, v) -> ScalarMatrix:
    n = len(v)
    pivot = next(k for k in range(n) if v[k])
    cols = [[F.one if r == k else F.zero for r in range(n)] for k in range(n) if k != pivot]
    cols.append(list(v))
    return ScalarMatrix(F, [[cols[c][r] for c in range(n)] for r in range(n)])


def isotropic_normalize(M: ScalarMatrix, search_radius: int = 2) -> IsotropicResult:
    """Find invertible ``P`` with ``(P^t M P)[n,n] = 0`` over the base field.

    Tries ``e_i``, then ``e_i + t e_j`` with ``t`` a root of a quadratic
    over the base field, then small integer vectors.
    """
    if not M.is_square or M.shape[0] < 2:
        raise ShapeMismatchError("M must be square with n >= 2")
    if any(not v.is_constant() for r in M.rows for v in r):
        raise PreconditionFailedError("parameter-free entries")
    if not M.is_invertible():
        raise SingularMatrixError("M is singular")
    F = M.field
    n = M.shape[0]

    def done(v):
        P = _basis_with_last(F, v)
        assert (P.T @ M @ P)[n - 1, n - 1] == 0
        return IsotropicResult(True, P, tuple(v))

    for i in range(n):
        if not M[i, i]:
            return done([F.one if k == i else F.zero for k in range(n)])
    for i in range(n):
        for j in range(i + 1, n):
            a, b, c = M[j, j], M[i, j] + M[j, i], M[i, i]
            roots = []
            if not a:
                if b:
                    roots.append(-c / b)
            else:
                r = _exact_sqrt(b * b - 4 * a * c)
                if r is not None:
                    roots += [(-b + r) / (2 * a), (-b - r) / (2 * a)]
                    # prefer t > 0, so a hyperbolic plane gives e_i + e_j
                    roots.sort(key=lambda t: not t.is_positive_rational())
            for t in roots:
                v = [F.zero] * n
                v[i], v[j] = F.one, t
                if not _quad(M, v):
                    return done(v)
    if n > 2:
        rng = range(-search_radius, search_radius + 1)
        for coords in itertools.product(rng, repeat=n):
            if any(coords):
                v = [F(c) for c in coords]
                if not _quad(M, v):
                    return done(v)
    return IsotropicResult(False)


# -- CQG condition ---------------------------------------------------------

POSITIVE = "positive"
CONDITIONALLY_POSITIVE = "conditionally positive"
NOT_POSITIVE = "not positive"
NOT_SCALAR = "not scalar"


@dataclass
class CQGResult:
    lam: Scalar | None
    passed: bool
    status: str

    def to_json(self) -> dict:
        return {"lambda": None if self.lam is None else str(self.lam),
                "pass": self.passed, "status": self.status}


def cqg_condition(E: ScalarMatrix) -> CQGResult:
    """``conj(E)^t E^t conj(E) E = lambda I`` with ``lambda > 0``.

    Parameters are real; a parametric ``lambda`` passes as conditionally
    positive when it is a positive constant times a square.
    """
    if not E.is_square:
        raise ShapeMismatchError("E must be square")
    if not E.is_invertible():
        raise SingularMatrixError("E is singular")
    Eb = E.conj()
    lam = (Eb.T @ E.T @ Eb @ E).scalar_multiple_of_identity()
    if lam is None:
        return CQGResult(None, False, NOT_SCALAR)
    if lam.is_constant():
        ok = lam.is_positive_rational()
        return CQGResult(lam, ok, POSITIVE if ok else NOT_POSITIVE)
    if lam.is_real() and lam.is_square_up_to_positive_constant():
        return CQGResult(lam, True, CONDITIONALLY_POSITIVE)
    return CQGResult(lam, False, NOT_POSITIVE)
