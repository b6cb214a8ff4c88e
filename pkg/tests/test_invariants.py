from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from oracles import cyclotomic_kappas

from gl2deform.errors import ConditionFailedError, SingularMatrixError
from gl2deform.invariants import (GENERIC, ROOT_OF_UNITY, UNDECIDED, cqg_condition,
                                  genericity_of_kappa, invariant_report, isotropic_normalize,
                                  monoidal_equivalent, verify_galois_iso_witness,
                                  verify_galois_pair, verify_iso_witness)
from gl2deform.quantum import a_q, jordanian_pair
from gl2deform.scalar import BaseField, ScalarField, ScalarMatrix

Q = ScalarField(())
G = ScalarField((), BaseField.GAUSSIAN_RATIONALS)


def mat(F, rows):
    return ScalarMatrix(F, [[F(v) for v in r] for r in rows])


def mutate(M, i, j, delta=1):
    rows = [list(r) for r in M.rows]
    rows[i][j] += delta
    return ScalarMatrix(M.field, rows)


def random_invertible(F, rng, lo=-4, hi=4):
    while True:
        M = mat(F, [[Fraction(rng.randint(lo, hi), rng.randint(1, 3)) for _ in range(2)]
                    for _ in range(2)])
        if M.is_invertible():
            return M


def test_report_examples():
    F = ScalarField(("p", "q"))
    p, q = F.param("p"), F.param("q")
    r = invariant_report(a_q(F, p), a_q(F, q))
    assert r.lam == p * q and r.mu == 1 + p * q
    assert r.genericity.kind == UNDECIDED
    J = ScalarField(("h", "h2"))
    r = invariant_report(*jordanian_pair(J, J.param("h"), J.param("h2")))
    assert (r.lam, r.mu, r.kappa) == (J(1), J(2), J(4))
    assert r.genericity.kind == GENERIC


def test_condition_gate():
    A = mat(Q, [[1, 2], [0, 1]])
    r = invariant_report(A, mat(Q, [[1, 0], [0, 1]]))
    assert not r.condition_ok and r.kappa is None
    with pytest.raises(ConditionFailedError):
        monoidal_equivalent(A, mat(Q, [[1, 0], [0, 1]]), A, A)
    with pytest.raises(SingularMatrixError):
        invariant_report(mat(Q, [[1, 1], [1, 1]]), A)


def test_genericity_table_matches_cyclotomic_oracle():
    oracle = cyclotomic_kappas(12)
    assert set(oracle) == {0, 1, 2, 3}
    for k in (0, 1, 2, 3, 4, 5, Fraction(9, 2), Fraction(-1, 3), 16):
        g = genericity_of_kappa(Q(k))
        expected = oracle.get(sympy.Rational(k.numerator, k.denominator) if isinstance(k, Fraction) else k)
        if expected is None:
            assert g.kind == GENERIC
        else:
            assert g.kind == ROOT_OF_UNITY and set(g.orders) == expected


def test_genericity_parametric_and_complex():
    F = ScalarField(("q",))
    q = F.param("q")
    assert genericity_of_kappa((1 + q * q) ** 2 / (q * q)).kind == UNDECIDED
    assert genericity_of_kappa(G.i).kind == GENERIC


def test_monoidal_equivalence_examples():
    def pair(p, q):
        return mat(Q, [[0, 1], [-p, 0]]), mat(Q, [[0, 1], [-q, 0]])
    assert monoidal_equivalent(*pair(2, 3), *pair(1, 6))[0]
    assert monoidal_equivalent(*pair(2, 3), *pair(Fraction(1, 2), Fraction(1, 3)))[0]
    J = jordanian_pair(Q, Q(1), Q(2))
    k92 = pair(1, 2)
    assert invariant_report(*k92).kappa == Q(Fraction(9, 2))
    assert not monoidal_equivalent(*J, *k92)[0]


def test_iso_witness_examples():
    rng = random.Random(1)
    A, B = mat(Q, [[0, 1], [-2, 0]]), mat(Q, [[0, 1], [-3, 0]])
    P = random_invertible(Q, rng)
    Pi = P.inverse()
    C, D = P.T @ A @ P, Pi @ B @ Pi.T
    v = verify_iso_witness(A, B, C, D, P)
    assert v.passed and v.alpha == 1 and v.beta == 1
    v = verify_iso_witness(A, B, C.scale(Q(3)), D.scale(Q(5)), P)
    assert v.passed and (v.alpha, v.beta) == (Q(3), Q(5))
    C2, D2 = P.T @ B.inverse() @ P, Pi @ A.inverse() @ Pi.T
    assert verify_iso_witness(A, B, C2, D2, P, "inverse").passed
    v = verify_iso_witness(A, B, C, mutate(D, 0, 0), P)
    assert not v.passed and "D" in v.residuals


def test_galois_examples():
    F = ScalarField(("p1", "q"))
    q, p1 = F.param("q"), F.param("p1")
    A = a_q(F, q)
    v = verify_galois_pair(A, A, a_q(F, p1), a_q(F, q * q / p1))
    assert v.passed and v.lam_ab == q * q and v.trace_cd == 1 + q * q
    assert verify_galois_pair(A, A, A, A).passed
    v = verify_galois_pair(A, A, a_q(F, p1), a_q(F, q))
    assert not v.passed and v.failures


def test_galois_iso_witness_examples():
    rng = random.Random(2)
    C1, D1 = mat(Q, [[0, 1], [-2, 0]]), mat(Q, [[0, 1], [-3, 0]])
    M = random_invertible(Q, rng)
    Mi = M.inverse()
    C2, D2 = Mi.T @ C1 @ Mi, M @ D1 @ M.T
    assert verify_galois_iso_witness(C1, D1, C2, D2, M).passed
    I2 = ScalarMatrix.identity(Q, 2)
    assert verify_galois_iso_witness(C1, D1, C1, D1, I2).passed
    assert not verify_galois_iso_witness(C1, D1, C2, D1, I2).passed
    v = verify_galois_iso_witness(C1, D1, C2, mutate(D2, 1, 0), M)
    assert not v.passed and v.residuals["D"] == [(2, 1)]


def test_kappa_invariance_under_transformations():
    rng = random.Random(9)
    A = mat(Q, [[0, 1], [-2, 0]])
    k = invariant_report(A, A).kappa
    for _ in range(50):
        P, R = random_invertible(Q, rng), random_invertible(Q, rng)
        Pi, Ri = P.inverse(), R.inverse()
        assert invariant_report(P.T @ A @ P, Pi @ A @ Pi.T).kappa == k
        assert invariant_report(R.T @ A.inverse() @ R, Ri @ A.inverse() @ Ri.T).kappa == k


def test_isotropic_examples():
    r = isotropic_normalize(mat(Q, [[0, 1], [-2, 0]]))
    assert r.found and r.vector == (Q(1), Q(0))
    assert not isotropic_normalize(ScalarMatrix.identity(Q, 2)).found
    assert str(isotropic_normalize(ScalarMatrix.identity(Q, 2))) == "NotFoundOverBaseField"
    r = isotropic_normalize(mat(Q, [[1, 0], [0, -1]]))
    assert r.vector == (Q(1), Q(1))
    M = mat(Q, [[1, 0, 0], [0, 1, 0], [0, 0, -2]])
    r = isotropic_normalize(M)
    assert r.found and (r.P.T @ M @ r.P)[2, 2] == 0
    r = isotropic_normalize(ScalarMatrix.identity(G, 2))
    assert r.found


def test_cqg_examples():
    F = ScalarField(("q",), BaseField.GAUSSIAN_RATIONALS)
    c = cqg_condition(a_q(F, F.param("q")))
    assert c.passed and c.lam == F.param("q") ** 2 and c.status == "conditionally positive"
    assert cqg_condition(ScalarMatrix.identity(G, 2)).lam == G(1)
    c = cqg_condition(ScalarMatrix.diag(G, [G.one, G.i]))
    assert c.passed and c.lam == G(1)
    assert not cqg_condition(mat(G, [[1, 1], [0, 1]])).passed
