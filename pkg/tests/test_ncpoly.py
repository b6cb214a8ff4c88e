from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gl2deform.errors import ScalarParseError, ShapeMismatchError
from gl2deform.ncpoly import (NCMatrix, NCPoly, d, d_inv, format_ncpoly, format_word,
                              generator_matrix, matrix_relation_expand, parse_ncpoly,
                              word_compare, x)
from gl2deform.scalar import ScalarField, ScalarMatrix

F = ScalarField(("q",))
q = F.param("q")
LETTERS = [d_inv(), d(), x(1, 1), x(1, 2), x(2, 1), x(2, 2)]

words = st.lists(st.sampled_from(LETTERS), max_size=4).map(tuple)


@st.composite
def polys(draw, max_terms=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        terms[draw(words)] = F(draw(st.integers(-3, 3))) + F(draw(st.integers(-1, 1))) * q
    return NCPoly(F, terms)


def test_generator_order():
    assert d_inv() < d() < x(1, 1) < x(1, 2) < x(2, 1) < x(2, 2)
    assert x(2, 2, slot=0) < d(slot=1)


def test_word_compare_examples():
    assert word_compare((d(), x(1, 1)), (x(1, 1), d())) == -1
    assert word_compare((x(1, 2),), (x(1, 1), d())) == -1
    u = (x(2, 1), d())
    assert word_compare(u, u) == 0


@settings(max_examples=200, deadline=None)
@given(words, words, words, words)
def test_order_is_compatible_with_concatenation(u, v, w, w2):
    c = word_compare(u, v)
    assert word_compare(w + u + w2, w + v + w2) == c


def test_arithmetic_examples():
    a = NCPoly.gen(F, x(2, 1)) * NCPoly.gen(F, x(1, 1))
    assert a.terms == {(x(2, 1), x(1, 1)): F.one}
    p = parse_ncpoly("x11*x22 - q*x21*x12 - D", F)
    assert not (p + (-1) * p)
    b = parse_ncpoly("x11*x22 + D*D", F)
    assert b.leading_word() == (x(1, 1), x(2, 2))


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + (b + c) == (a + b) + c
    assert a * (b * c) == (a * b) * c
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert a * NCPoly.one(F) == a == NCPoly.one(F) * a
    assert not (a - a)


def test_matrix_relation_expand_aq():
    Aq = ScalarMatrix(F, [[F(0), F(1)], [-q, F(0)]])
    X = generator_matrix(F, 2, 2)
    rels = matrix_relation_expand(X.T @ Aq @ X, NCMatrix.from_scalar(Aq, NCPoly.gen(F, d())))
    assert format_ncpoly(rels[0]) == "-q*x21*x11 + x11*x21"
    assert rels[1] == parse_ncpoly("x11*x22 - q*x21*x12 - D", F)
    assert all(not r for r in matrix_relation_expand(X.T @ Aq @ X, X.T @ Aq @ X))


def test_matrix_relation_shape_mismatch():
    X = generator_matrix(F, 2, 3)
    with pytest.raises(ShapeMismatchError):
        matrix_relation_expand(X, generator_matrix(F, 2, 2))


@pytest.mark.parametrize("text", ["x11*x22 - q*x21*x12 - D", "Dinv*x12 + (q+1)/2", "L:x11*R:D - 3*R:x21"])
def test_parse_format_round_trip(text):
    p = parse_ncpoly(text, F)
    assert parse_ncpoly(format_ncpoly(p), F) == p


def test_parse_unknown_symbol():
    with pytest.raises(ScalarParseError) as exc:
        parse_ncpoly("x11 + y", F)
    assert exc.value.column == 7


def test_format_word_slots():
    assert format_word(()) == "1"
    assert format_word((d(0), x(1, 1, 1))) == "L:D*R:x11"


def test_substitute_reverse_is_anti_homomorphic():
    a, b = NCPoly.gen(F, x(1, 1)), NCPoly.gen(F, x(2, 2))
    images = {x(1, 1): a * b, x(2, 2): NCPoly.gen(F, d())}
    w = a * b
    assert w.substitute(images) == a * b * NCPoly.gen(F, d())
    assert w.substitute(images, reverse=True) == NCPoly.gen(F, d()) * a * b
