from __future__ import annotations

import json
import random

import pytest

from gl2deform.errors import FuelExhaustedError
from gl2deform.ncpoly import NCPoly, d, x
from gl2deform.quantum import build_gabcd, extend_with_localization, a_q
from gl2deform.rewrite import (INCLUSION, OVERLAP, UNKNOWN, VERIFIED_ZERO, ReductionSystem,
                               RewriteRule, check_diamond, find_ambiguities,
                               ideal_membership_search, irreducible_words, normal_form,
                               normal_form_random, replay, resolve_ambiguity)
from gl2deform.scalar import ScalarField

FREE = ScalarField(())
a, b, c = x(1, 1), x(1, 2), x(2, 1)


def _random_poly(rng, F, letters, max_len=4, n_terms=4):
    terms = {}
    for _ in range(n_terms):
        w = tuple(rng.choice(letters) for _ in range(rng.randint(0, max_len)))
        terms[w] = F(rng.randint(-3, 3))
    return NCPoly(F, terms)


@pytest.fixture(scope="module")
def glq2(Fq):
    q = Fq.param("q")
    A = a_q(Fq, q)
    P = build_gabcd(A, A, A, A, with_d_inv=False)
    return q, P.reduction_system()


def test_glq2_rule_examples(glq2, Fq):
    q, sys_ = glq2
    x21x11 = NCPoly.word(Fq, (x(2, 1), x(1, 1)))
    assert normal_form(x21x11, sys_).poly == NCPoly.word(Fq, (x(1, 1), x(2, 1)), 1 / q)
    x21x12 = NCPoly.word(Fq, (x(2, 1), x(1, 2)))
    expect = NCPoly.word(Fq, (x(1, 1), x(2, 2)), 1 / q) - NCPoly.gen(Fq, d()) * (1 / q)
    assert normal_form(x21x12, sys_).poly == expect


def test_irreducible_input_is_fixed(glq2, Fq):
    _, sys_ = glq2
    p = NCPoly.word(Fq, (x(1, 1), x(2, 1)))
    red = normal_form(p, sys_)
    assert red.poly == p and red.trace == []


def test_rule_must_decrease():
    with pytest.raises(ValueError):
        RewriteRule((a,), NCPoly.word(FREE, (a, a)))


def test_duplicate_lhs_rejected():
    r1 = RewriteRule((b, a), NCPoly.word(FREE, (a, b)))
    r2 = RewriteRule((b, a), NCPoly.zero(FREE))
    with pytest.raises(ValueError):
        ReductionSystem([r1, r2], FREE)


def test_overlap_and_no_self_overlap():
    single = ReductionSystem([RewriteRule((a, b), NCPoly.zero(FREE))], FREE)
    assert find_ambiguities(single) == []
    # lhs "ab" and "bc" overlap on b
    sys_ = ReductionSystem([RewriteRule((c, b), NCPoly.zero(FREE)),
                            RewriteRule((b, a), NCPoly.zero(FREE))], FREE)
    ambs = find_ambiguities(sys_)
    assert len(ambs) == 1
    assert ambs[0].kind == OVERLAP and ambs[0].witness == (c, b, a)


def test_inclusion_is_detected():
    sys_ = ReductionSystem([RewriteRule((c, b, a), NCPoly.zero(FREE)),
                            RewriteRule((b,), NCPoly.word(FREE, (a,)))], FREE)
    kinds = [amb.kind for amb in find_ambiguities(sys_)]
    assert INCLUSION in kinds


def test_empty_system_is_confluent():
    assert check_diamond(ReductionSystem([], FREE)).confluent


def test_appendix_has_no_inclusions(appendix_instance):
    *_, sys_ = appendix_instance
    ambs = find_ambiguities(sys_)
    assert len(ambs) == 15
    assert all(amb.kind == OVERLAP for amb in ambs)


def test_certificates_replay(appendix_instance):
    *_, sys_ = appendix_instance
    for amb in find_ambiguities(sys_):
        cert = resolve_ambiguity(amb, sys_)
        assert cert.resolvable
        assert cert.check_replay(sys_)


def test_x2i_x1j_d_ambiguity(appendix_instance):
    *_, sys_ = appendix_instance
    w = (x(2, 1), x(1, 1), d())
    amb = next(m for m in find_ambiguities(sys_) if m.witness == w)
    cert = resolve_ambiguity(amb, sys_)
    assert cert.left_normal_form == cert.right_normal_form


def test_mutated_rule_breaks_confluence(appendix_instance, Fqp):
    q, C, D, sys_ = appendix_instance
    rules = list(sys_.rules)
    k = next(i for i, r in enumerate(rules) if r.label == "(2)")
    r = rules[k]
    dterm = r.rhs.terms[(d(),)]
    # replace d by 2d in rule (2)
    rules[k] = RewriteRule(r.lhs, r.rhs + NCPoly.gen(Fqp, d()) * dterm, r.label)
    report = check_diamond(ReductionSystem(rules, Fqp, sys_.alphabet))
    assert not report.confluent
    assert report.failures


def test_report_json_is_stable(appendix_instance):
    *_, sys_ = appendix_instance
    report = check_diamond(sys_)
    s1, s2 = report.dumps(), check_diamond(sys_).dumps()
    assert s1 == s2
    obj = json.loads(s1)
    assert list(obj) == ["rules", "ambiguities", "counts", "verdict", "irreducible_words_form_basis"]
    assert report.summary() == "ambiguities: 15, resolved: 15 (confluent)"


def test_irreducible_words_counts(appendix_instance):
    *_, sys_ = appendix_instance
    assert irreducible_words(sys_, 0) == [()]
    ws = irreducible_words(sys_, 2)
    assert [sum(len(w) == k for w in ws) for k in range(3)] == [1, 5, 14]
    with pytest.raises(ValueError):
        irreducible_words(sys_, -1)


def test_fuel_exhaustion(appendix_instance, Fqp):
    *_, sys_ = appendix_instance
    p = NCPoly.word(Fqp, (x(2, 2), x(2, 1), x(1, 2), x(1, 1), d()))
    with pytest.raises(FuelExhaustedError):
        normal_form(p, sys_, fuel=2)


def test_randomized_strategies_agree(appendix_instance, Fqp):
    *_, sys_ = appendix_instance
    rng = random.Random(7)
    letters = sorted(sys_.alphabet)
    for _ in range(5):
        p = _random_poly(rng, Fqp, letters)
        red = normal_form(p, sys_)
        assert replay(p, red.trace, sys_) == red.poly
        for _ in range(100):
            assert normal_form_random(p, sys_, rng) == red.poly


def test_normal_form_idempotent_and_multiplicative(appendix_instance, Fqp):
    *_, sys_ = appendix_instance
    rng = random.Random(11)
    letters = sorted(sys_.alphabet)
    nf = lambda p: normal_form(p, sys_).poly  # noqa: E731
    for _ in range(20):
        p = _random_poly(rng, Fqp, letters, max_len=3)
        r = _random_poly(rng, Fqp, letters, max_len=3)
        assert nf(nf(p)) == nf(p)
        assert nf(p * r) == nf(nf(p) * nf(r))
        assert all(sys_.is_irreducible(w) for w in nf(p).terms)


def test_zero_divisor_property(appendix_instance):
    q, C, D, sys_ = appendix_instance
    for w in irreducible_words(sys_, 3):
        assert sys_.is_irreducible((d(),) + w)


def test_localization_examples(appendix_instance, Fqp):
    q, C, D, sys_ = appendix_instance
    loc = extend_with_localization(sys_, q, C, D, check=True)
    from gl2deform.ncpoly import d_inv
    dd = NCPoly.word(Fqp, (d(), d_inv()))
    assert normal_form(dd, loc).poly == NCPoly.one(Fqp)
    w = NCPoly.word(Fqp, (x(1, 1), d(), d_inv()))
    assert normal_form(w, loc).poly == NCPoly.gen(Fqp, x(1, 1))


def test_membership_examples(glq2, Fq):
    q, sys_ = glq2
    rels = sys_.relations()
    res = ideal_membership_search(rels[0], rels, bound=1)
    assert res.verdict == VERIFIED_ZERO
    assert ideal_membership_search(NCPoly.one(Fq), rels, bound=2).verdict == UNKNOWN
    assert ideal_membership_search(NCPoly.gen(Fq, x(1, 1)), rels, bound=2).verdict == UNKNOWN
