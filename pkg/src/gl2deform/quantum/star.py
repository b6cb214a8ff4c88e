"""
The *-structure on G(E, conj(E)).

``*`` is the antilinear anti-homomorphism with ``d* = d^-1``,
``(d^-1)* = d`` and ``conj(x) = E^t d^-1 x E^-t``, where ``conj(x)`` is the
matrix of the ``x_ij*``.  Parameters are treated as real, so conjugation
only sends ``i`` to ``-i``.
"""

from __future__ import annotations

from ..errors import PreconditionFailedError
from ..ncpoly import NCPoly, d, d_inv, x
from ..scalar import ScalarMatrix
from .maps import AlgebraMap, Certificate, _check
from .presentation import Presentation, build_gab

__all__ = ["star_map", "verify_star_structure"]


def star_map(P: Presentation, E: ScalarMatrix) -> AlgebraMap:
    F = P.field
    n = E.shape[0]
    Ei = E.inverse()
    di = d_inv()
    images = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            acc = NCPoly.zero(F)
            for a in range(1, n + 1):
                for b in range(1, n + 1):
                    c = E[a - 1, i - 1] * Ei[j - 1, b - 1]
                    if c:
                        acc = acc + NCPoly.word(F, (di, x(a, b)), c)
            images[x(i, j)] = acc
    images[d()] = NCPoly.gen(F, di)
    images[di] = NCPoly.gen(F, d())
    return AlgebraMap("star", P, P, images, op=True, antilinear=True)


def verify_star_structure(E: ScalarMatrix, bound: int = 8) -> Certificate:
    """Well-definedness, involutivity and unitarity of ``x`` in ``G(E, conj(E))``."""
    from ..invariants import cqg_condition
    cond = cqg_condition(E)
    if cond.lam is None:
        raise PreconditionFailedError("conj(E)^t E^t conj(E) E = lambda I",
                                      "the product is not a scalar matrix")
    if not cond.passed:
        raise PreconditionFailedError("lambda > 0", f"lambda = {cond.lam}")
    F = E.field
    P = build_gab(E, E.conj(), True, name="G(E,conj(E))")
    star = star_map(P, E)
    cert = Certificate("star structure on G(E,conj(E))")
    cert.info["lambda"] = str(cond.lam)
    cert.info["lambda_status"] = cond.status
    for lab, r in zip(P.labels, P.relations):
        cert.add(_check(P, f"star({lab})", star.apply(r), bound))
    for g in P.generators:
        p = NCPoly.gen(F, g)
        cert.add(_check(P, f"star(star({g}))", star.apply(star.apply(p)) - p, bound))
    n = E.shape[0]
    X = [[NCPoly.gen(F, x(i, j)) for j in range(1, n + 1)] for i in range(1, n + 1)]
    # x* is the transpose of the matrix of starred entries
    Xs = [[star.images[x(j, i)] for j in range(1, n + 1)] for i in range(1, n + 1)]
    for i in range(n):
        for j in range(n):
            e = NCPoly.const(F, 1 if i == j else 0)
            a = NCPoly.zero(F)
            b = NCPoly.zero(F)
            for k in range(n):
                a = a + Xs[i][k] * X[k][j]
                b = b + X[i][k] * Xs[k][j]
            cert.add(_check(P, f"(x* x - I)[{i + 1},{j + 1}]", a - e, bound))
            cert.add(_check(P, f"(x x* - I)[{i + 1},{j + 1}]", b - e, bound))
    one = NCPoly.one(F)
    dp = NCPoly.gen(F, d())
    ds = star.images[d()]
    cert.add(_check(P, "d* d - 1", ds * dp - one, bound))
    cert.add(_check(P, "d d* - 1", dp * ds - one, bound))
    cert.info["system"] = P.system_kind
    return cert
