from __future__ import annotations

import random

import pytest

from gl2deform.errors import PreconditionFailedError, SingularMatrixError
from gl2deform.ncpoly import NCPoly, d, d_inv, parse_ncpoly, x
from gl2deform.quantum import (Presentation, a_q, antipode, appendix_identities,
                               build_appendix_system, build_gab, build_gabcd,
                               check_appendix_preconditions, comultiplication,
                               congruence_morphism, counit, hopf_congruence_morphism,
                               hopf_inversion_morphism, identity_morphism, inversion_morphism,
                               jordanian_pair, presentation_from_bundle, star_map,
                               tensor_presentation, verify_hopf_identities, verify_morphism,
                               verify_star_structure, verify_structural_map)
from gl2deform.rewrite import VERIFIED_ZERO, check_diamond, ideal_membership_search, normal_form
from gl2deform.scalar import BaseField, ScalarField, ScalarMatrix


def random_invertible(F, rng):
    while True:
        M = ScalarMatrix(F, [[F(rng.randint(-3, 3)) for _ in range(2)] for _ in range(2)])
        if M.is_invertible():
            return M


@pytest.fixture(scope="module")
def glq2(Fq):
    A = a_q(Fq, Fq.param("q"))
    return build_gab(A, A)


def test_build_gabcd_relations(glq2, Fq):
    assert len(glq2.relations) == 10
    assert parse_ncpoly("x11*x21 - q*x21*x11", Fq) in glq2.relations
    assert glq2.labels[-2:] == ["d*dinv", "dinv*d"]


def test_build_gabcd_singular(Fq):
    A = a_q(Fq, Fq.param("q"))
    Z = ScalarMatrix(Fq, [[Fq(1), Fq(1)], [Fq(1), Fq(1)]])
    with pytest.raises(SingularMatrixError):
        build_gabcd(A, Z, A, A)


def test_other_presentations_build():
    F = ScalarField(("p", "q"))
    P = build_gab(a_q(F, F.param("q")), a_q(F, F.param("p")))
    assert P.reduction_system() is not None
    J = ScalarField(("h", "h2"))
    A, B = jordanian_pair(J, J.param("h"), J.param("h2"))
    assert len(build_gab(A, B, with_d_inv=False).relations) == 8


def test_bundle_round_trip():
    P = presentation_from_bundle({"A": [["0", "1"], ["-q", "0"]], "B": [["0", "1"], ["-q", "0"]],
                                  "with_d_inv": False})
    assert P.field.params == ("q",)
    assert len(P.relations) == 8


def test_appendix_preconditions(Fqp, appendix_instance):
    q, C, D, _ = appendix_instance
    assert check_appendix_preconditions(q, C, D) == (2, 1)
    assert all(appendix_identities(q, C, D).values())
    bad = ScalarMatrix(Fqp, [[Fqp(0), Fqp(1)], [-q * q / Fqp.param("p1"), Fqp(1)]])
    with pytest.raises(PreconditionFailedError) as exc:
        build_appendix_system(q, C, bad)
    assert exc.value.condition == "D_mm = 0"
    with pytest.raises(PreconditionFailedError) as exc:
        build_appendix_system(q, C, a_q(Fqp, Fqp.param("p1")))
    assert "tr(C D^t)" in exc.value.condition


def test_appendix_rules_decrease(appendix_instance):
    *_, sys_ = appendix_instance
    labels = [r.label for r in sys_.rules]
    assert len(labels) == 11
    assert labels[:4] == ["(1) i=1 j=1", "(1) i=1 j=2", "(1) i=2 j=1", "(1) i=2 j=2"]


def test_cross_membership(Fqp, appendix_instance):
    """The raw relations and the oriented rules generate the same ideal."""
    q, C, D, sys_ = appendix_instance
    raw = build_gabcd(a_q(Fqp, q), a_q(Fqp, q), C, D, with_d_inv=False)
    for r in raw.relations:
        assert not normal_form(r, sys_).poly
    for rule in sys_.rules:
        assert ideal_membership_search(rule.relation(), raw.relations).verdict == VERIFIED_ZERO


def test_localized_system_confluent(glq2):
    sys_ = glq2.reduction_system()
    assert glq2.system_kind == "normal"
    assert check_diamond(sys_).confluent


def test_tensor_presentation_examples(Fq, glq2):
    free = Presentation(Fq, [x(1, 1)], [], [])
    T = tensor_presentation(free, free)
    assert T.labels.count("swap") == 1
    T2 = tensor_presentation(glq2, glq2)
    w = NCPoly.word(Fq, (x(1, 1, 1), d(0)))
    assert T2.nf(w) == NCPoly.word(Fq, (d(0), x(1, 1, 1)))


def test_comultiplication_relation_image(glq2):
    delta = comultiplication(glq2)
    img = delta.apply(glq2.relations[0])
    assert delta.target.membership(img).verdict == VERIFIED_ZERO


def test_structural_maps(glq2, Fqp):
    assert verify_structural_map(comultiplication(glq2)).passed
    assert verify_structural_map(counit(glq2)).passed
    assert verify_structural_map(antipode(glq2)).passed
    q, p1 = Fqp.param("q"), Fqp.param("p1")
    P = build_gab(a_q(Fqp, q), a_q(Fqp, q))
    mid = (a_q(Fqp, p1), a_q(Fqp, q * q / p1))
    cert = verify_structural_map(comultiplication(P, middle=mid))
    assert cert.passed, cert.failures()


def test_counit_symbolic():
    F = ScalarField(("a", "b", "c", "e"))
    A = ScalarMatrix(F, [[F.param("a"), F.param("b")], [F.param("c"), F.param("e")]])
    B = A.inverse().T
    P = build_gab(A, B, with_d_inv=False)
    eps = counit(P)
    for r in P.relations:
        assert not eps.apply(r)


def test_antipode_to_other_object(Fqp, appendix_instance):
    q, C, D, _ = appendix_instance
    P = build_gabcd(a_q(Fqp, q), a_q(Fqp, q), C, D)
    assert verify_structural_map(antipode(P)).passed


def test_hopf_identities(glq2):
    cert = verify_hopf_identities(glq2)
    assert cert.passed, cert.failures()
    labels = [e.label for e in cert.entries]
    assert "x S(x) [1,1]" in labels and "S(x) x [1,1]" in labels


def test_morphisms(glq2, Fq):
    rng = random.Random(3)
    P, Q = random_invertible(Fq, rng), random_invertible(Fq, rng)
    for spec in (identity_morphism(glq2), congruence_morphism(glq2, P, Q),
                 inversion_morphism(glq2), hopf_congruence_morphism(glq2, P)):
        cert = verify_morphism(spec)
        assert cert.passed, (cert.name, cert.failures())


def test_hopf_inversion_morphism(glq2, Fq):
    Q = ScalarMatrix(Fq, [[Fq(1), Fq(2)], [Fq(1), Fq(3)]])
    cert = verify_morphism(hopf_inversion_morphism(glq2, Q))
    assert cert.passed, cert.failures()


def test_wrong_morphism_fails(glq2, Fq):
    spec = identity_morphism(glq2)
    spec.map.images[x(1, 1)] = NCPoly.gen(Fq, x(2, 2))
    assert not verify_morphism(spec, bound=2, check_inverse=False).passed


def test_star_structure(Fiq):
    q = Fiq.param("q")
    cert = verify_star_structure(a_q(Fiq, q))
    assert cert.passed and cert.info["lambda"] == "q^2"
    G = ScalarField((), BaseField.GAUSSIAN_RATIONALS)
    assert verify_star_structure(ScalarMatrix.identity(G, 2)).passed
    assert verify_star_structure(ScalarMatrix.diag(G, [G.one, G.i])).passed
    with pytest.raises(PreconditionFailedError):
        verify_star_structure(ScalarMatrix(G, [[G(1), G(1)], [G(0), G(1)]]))


def test_star_is_antilinear(Fiq):
    G = ScalarField((), BaseField.GAUSSIAN_RATIONALS)
    P = build_gab(ScalarMatrix.identity(G, 2), ScalarMatrix.identity(G, 2))
    star = star_map(P, ScalarMatrix.identity(G, 2))
    assert star.apply(NCPoly.gen(G, d()) * G.i) == NCPoly.gen(G, d_inv()) * (-G.i)


def test_5prime_sign(Fqp, appendix_instance):
    """sum D_kl x2k x1l equals -q d; with +q d the difference is 2 q d, not in the ideal."""
    q, C, D, sys_ = appendix_instance
    lhs = NCPoly.zero(Fqp)
    for k in range(2):
        for l in range(2):
            if D[k, l]:
                lhs = lhs + NCPoly.word(Fqp, (x(2, k + 1), x(1, l + 1)), D[k, l])
    dq = NCPoly.gen(Fqp, d()) * q
    assert not normal_form(lhs + dq, sys_).poly
    assert normal_form(lhs - dq, sys_).poly == dq * (-2)
