"""
The oriented presentation of G(A_q, A_q | C, D) used for the diamond lemma.

With ``x`` a ``2 x m`` matrix and ``(m, v)`` the lexicographically largest
index with ``D[m,v] != 0``, the relations are oriented as

    (1) x2i x1j -> q^-1 (x1i x2j - C_ij d)
    (2) x1m x2v -> D_mv^-1 (d - sum_{(k,l)<(m,v)} D_kl x1k x2l)
    (3) x1m x1v -> -D_mv^-1 sum_{(k,l)<(m,v)} D_kl x1k x1l
    (4) x2m x2v -> -D_mv^-1 sum_{(k,l)<(m,v)} D_kl x2k x2l
    (5) x1j d   -> -q sum_k (C^-1 D^-1)_kj d x1k
    (6) x2j d   -> -q^-1 sum_k (CD)_jk d x2k

The hypotheses are ``D_mm = 0``, ``tr(C D^t) = 1 + q^2`` and
``D^t C^t D C = q^2 I``.
"""

from __future__ import annotations

from ..errors import PreconditionFailedError, ShapeMismatchError
from ..ncpoly import NCPoly, d, d_inv, x
from ..rewrite import ReductionSystem, RewriteRule, autoreduce
from ..scalar import ScalarMatrix

__all__ = [
    "pivot_index", "check_appendix_preconditions", "appendix_identities",
    "build_appendix_system", "extend_with_localization", "system_for",
]


def pivot_index(D: ScalarMatrix) -> tuple:
    """Lexicographically largest 1-based ``(u, v)`` with ``D[u,v] != 0``."""
    m = D.shape[0]
    for u in range(m, 0, -1):
        for v in range(m, 0, -1):
            if D[u - 1, v - 1]:
                return u, v
    raise PreconditionFailedError("D invertible", "D is zero")


def check_appendix_preconditions(q, C: ScalarMatrix, D: ScalarMatrix) -> tuple:
    """Validate the hypotheses; returns the pivot ``(m, v)``."""
    F = C.field
    q = F(q)
    if not C.is_square or not D.is_square or C.shape != D.shape:
        raise ShapeMismatchError(f"C and D must be square of equal size, got {C.shape}, {D.shape}")
    m = C.shape[0]
    if m < 2:
        raise PreconditionFailedError("m >= 2", f"m = {m}")
    if not q:
        raise PreconditionFailedError("q != 0")
    if not C.is_invertible():
        raise PreconditionFailedError("C invertible", "det(C) = 0")
    if not D.is_invertible():
        raise PreconditionFailedError("D invertible", "det(D) = 0")
    if D[m - 1, m - 1]:
        raise PreconditionFailedError("D_mm = 0", f"D_mm = {D[m - 1, m - 1]}")
    t = (C @ D.T).trace()
    if t != 1 + q * q:
        raise PreconditionFailedError("tr(C D^t) = 1 + q^2", f"tr(C D^t) = {t}")
    M = D.T @ C.T @ D @ C
    lam = M.scalar_multiple_of_identity()
    if lam is None or lam != q * q:
        raise PreconditionFailedError("D^t C^t D C = q^2 I", f"D^t C^t D C = {M.to_strings()}")
    u, v = pivot_index(D)
    if u != m or v >= m:
        raise PreconditionFailedError("pivot (m, v) with v < m", f"pivot = ({u}, {v})")
    return u, v


def _before(k: int, l: int, m: int, v: int) -> bool:
    return (k, l) < (m, v)


def appendix_identities(q, C: ScalarMatrix, D: ScalarMatrix) -> dict:
    """The four scalar identities the resolution computations rely on."""
    F = C.field
    q = F(q)
    m = C.shape[0]
    mm, v = pivot_index(D)
    CD = C @ D
    CiDi = C.inverse() @ D.inverse()
    r = range(1, m + 1)
    out = {}
    out["(CD)_ij = q^2 (C^-1 D^-1)_ji"] = all(
        CD[i - 1, j - 1] == q * q * CiDi[j - 1, i - 1] for i in r for j in r)
    s = F.zero
    for k in r:
        for l in r:
            if _before(k, l, mm, v):
                s += C[k - 1, l - 1] * D[k - 1, l - 1]
    out["sum_{(kl)<(mv)} C_kl D_kl = 1 + q^2 - C_mv D_mv"] = (
        s == 1 + q * q - C[mm - 1, v - 1] * D[mm - 1, v - 1])
    ok = True
    for i in r:
        for l in r:
            lhs = F.zero
            for k in r:
                if _before(k, l, mm, v):
                    lhs += D[k - 1, l - 1] * C[i - 1, k - 1]
            rhs = CD[i - 1, l - 1] - (C[i - 1, mm - 1] * D[mm - 1, v - 1] if l == v else 0)
            ok &= lhs == rhs
    out["sum_{k:(kl)<(mv)} C_ik D_kl = (CD)_il - [l=v] C_im D_mv"] = ok
    ok = True
    for i in r:
        for j in r:
            lhs = F.zero
            for k in r:
                for l in r:
                    if _before(k, l, mm, v):
                        lhs += CiDi[j - 1, k - 1] * D[k - 1, l - 1] * CD[l - 1, i - 1]
            rhs = D[j - 1, i - 1] - CiDi[j - 1, mm - 1] * D[mm - 1, v - 1] * CD[v - 1, i - 1]
            ok &= lhs == rhs
    out["sum_{(kl)<(mv)} (C^-1D^-1)_jk D_kl (CD)_li = D_ji - (C^-1D^-1)_jm D_mv (CD)_vi"] = ok
    return out


def build_appendix_system(q, C: ScalarMatrix, D: ScalarMatrix) -> ReductionSystem:
    """Rules (1)-(6) in that order; rule (1) runs over ``i, j`` row-major."""
    F = C.field
    q = F(q)
    m, v = check_appendix_preconditions(q, C, D)
    qi = q.inverse()
    P = lambda *w: NCPoly.word(F, w)  # noqa: E731
    dd = d()
    X = lambda i, j: x(i, j)  # noqa: E731
    r = range(1, m + 1)
    rules = []
    for i in r:
        for j in r:
            rhs = (P(X(1, i), X(2, j)) - P(dd).scale(C[i - 1, j - 1])).scale(qi)
            rules.append(RewriteRule((X(2, i), X(1, j)), rhs, f"(1) i={i} j={j}"))
    Dmv_inv = D[m - 1, v - 1].inverse()
    lower = [(k, l) for k in r for l in r if (k, l) < (m, v) and D[k - 1, l - 1]]
    s12 = NCPoly.zero(F)
    s11 = NCPoly.zero(F)
    s22 = NCPoly.zero(F)
    for k, l in lower:
        c = D[k - 1, l - 1]
        s12 = s12 + P(X(1, k), X(2, l)).scale(c)
        s11 = s11 + P(X(1, k), X(1, l)).scale(c)
        s22 = s22 + P(X(2, k), X(2, l)).scale(c)
    rules.append(RewriteRule((X(1, m), X(2, v)), (P(dd) - s12).scale(Dmv_inv), "(2)"))
    rules.append(RewriteRule((X(1, m), X(1, v)), (-s11).scale(Dmv_inv), "(3)"))
    rules.append(RewriteRule((X(2, m), X(2, v)), (-s22).scale(Dmv_inv), "(4)"))
    CiDi = C.inverse() @ D.inverse()
    CD = C @ D
    for j in r:
        rhs = NCPoly.zero(F)
        for k in r:
            rhs = rhs + P(dd, X(1, k)).scale(-q * CiDi[k - 1, j - 1])
        rules.append(RewriteRule((X(1, j), dd), rhs, f"(5) j={j}"))
    for j in r:
        rhs = NCPoly.zero(F)
        for k in r:
            rhs = rhs + P(dd, X(2, k)).scale(-qi * CD[j - 1, k - 1])
        rules.append(RewriteRule((X(2, j), dd), rhs, f"(6) j={j}"))
    alphabet = [dd] + [X(i, j) for i in (1, 2) for j in r]
    return ReductionSystem(rules, F, alphabet)


def extend_with_localization(sys: ReductionSystem, q, C: ScalarMatrix, D: ScalarMatrix,
                             *, check: bool = False) -> ReductionSystem:
    """Adjoin ``d^-1`` with its inverse and commutation rules.

    With ``check=True`` the extended system is run through the diamond
    lemma and :class:`NotConfluentError` is raised on failure.
    """
    F = C.field
    q = F(q)
    qi = q.inverse()
    m = C.shape[0]
    r = range(1, m + 1)
    P = lambda *w: NCPoly.word(F, w)  # noqa: E731
    dd, di = d(), d_inv()
    rules = [
        RewriteRule((dd, di), NCPoly.one(F), "d*dinv"),
        RewriteRule((di, dd), NCPoly.one(F), "dinv*d"),
    ]
    DC = D @ C
    DiCi = D.inverse() @ C.inverse()
    for j in r:
        rhs = NCPoly.zero(F)
        for k in r:
            rhs = rhs + P(di, x(1, k)).scale(-qi * DC[k - 1, j - 1])
        rules.append(RewriteRule((x(1, j), di), rhs, f"(5inv) j={j}"))
    for j in r:
        rhs = NCPoly.zero(F)
        for k in r:
            rhs = rhs + P(di, x(2, k)).scale(-q * DiCi[j - 1, k - 1])
        rules.append(RewriteRule((x(2, j), di), rhs, f"(6inv) j={j}"))
    out = sys.extend(rules, [di])
    if check:
        from ..errors import NotConfluentError
        from ..rewrite import check_diamond
        rep = check_diamond(out)
        if not rep.confluent:
            raise NotConfluentError(
                f"localized system has {len(rep.failures)} unresolvable ambiguities", rep)
    return out


def system_for(P) -> tuple:
    """Pick a reduction system for a presentation; returns ``(system, kind)``.

    ``kind`` is ``"normal"`` when the appendix presentation applies (after
    rescaling ``A = alpha A_q``, ``B = beta A_q``), ``"tensor"`` for tensor
    products and ``"autoreduced"`` otherwise.
    """
    from .presentation import a_q_scale, tensor_system
    if P.factors:
        return tensor_system(P), "tensor"
    F = P.field
    if P.data is None:
        return autoreduce(P.relations, F, P.generators), "autoreduced"
    g = P.data
    sa, sb = a_q_scale(g.A), a_q_scale(g.B)
    if sa and sb and sa[1] == sb[1] and g.n == 2:
        alpha, q = sa
        beta = sb[0]
        C = g.C.scale(alpha.inverse())
        D = g.D.scale(beta.inverse())
        try:
            sys = build_appendix_system(q, C, D)
        except PreconditionFailedError:
            sys = None
        if sys is not None:
            if P.with_d_inv:
                sys = extend_with_localization(sys, q, C, D)
            return sys, "normal"
    return autoreduce(P.relations, F, P.generators, P.labels), "autoreduced"
