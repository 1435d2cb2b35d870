"""Coefficient ring, the expansion bridge, bracket and operator algebra."""

from fractions import Fraction

import pytest

from conftest import random_lie_poly, seeded_rng
from lieomega.cli import parse_poly, parse_word
from lieomega.liepoly import (
    LAMBDA,
    ONE,
    ZERO,
    AssocPoly,
    LambdaPoly,
    LiePoly,
    NonConstantLeadingCoefficient,
    NotLieElement,
    ZeroPolynomial,
    apply_op,
    bracket,
    expand,
    from_tree,
    normalize_monic,
    specialize,
    to_nlsw,
)
from lieomega.lyndon import alsw_by_degree, std_bracket
from lieomega.words import OmegaWord


class TestLambdaPoly:
    def test_canonical_form(self):
        assert LambdaPoly((1, 0, 0)).coeffs == (Fraction(1),)
        assert LambdaPoly((0, 0)).is_zero()

    def test_ring_laws(self):
        rng = seeded_rng(11)
        for _ in range(300):
            a, b, c = (
                LambdaPoly([Fraction(rng.randint(-5, 5), rng.randint(1, 5))
                            for _ in range(rng.randint(0, 4))])
                for _ in range(3)
            )
            assert (a + b) + c == a + (b + c)
            assert a + b == b + a
            assert (a * b) * c == a * (b * c)
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c
            assert (a - a).is_zero()

    def test_evaluate(self):
        p = LambdaPoly((1, 2, 3))  # 1 + 2l + 3l^2
        assert p.evaluate(Fraction(1, 2)) == Fraction(1) + 1 + Fraction(3, 4)

    def test_constant_accessors(self):
        assert LambdaPoly.const(Fraction(3, 2)).constant() == Fraction(3, 2)
        assert ZERO.constant() == 0
        with pytest.raises(ValueError):
            LAMBDA.constant()

    def test_division_by_constant(self):
        assert LambdaPoly((2, 4)) / 2 == LambdaPoly((1, 2))

    def test_exactness(self):
        # one third, added three times, is exactly one
        third = ONE / 3
        assert third + third + third == ONE
        for c in (third + LAMBDA * Fraction(1, 7)).coeffs:
            assert isinstance(c, Fraction)


class TestExpand:
    def test_single_bracket(self, ab2):
        p = parse_poly("(x2 x1)", ab2)
        e = expand(p)
        u = parse_word("x2 x1", ab2)
        v = parse_word("x1 x2", ab2)
        assert e.terms == {u: ONE, v: -ONE}

    def test_letter(self, ab2):
        p = parse_poly("x2", ab2)
        assert expand(p).terms == {parse_word("x2", ab2): ONE}

    def test_left_normed_cube(self, ab2):
        # ((x2 x1) x1) = x2x1x1 - 2 x1x2x1 + x1x1x2, by direct multiplication
        p = LiePoly.basis(parse_word("x2 x1 x1", ab2))
        e = expand(p)
        assert e.terms == {
            parse_word("x2 x1 x1", ab2): ONE,
            parse_word("x1 x2 x1", ab2): LambdaPoly.const(-2),
            parse_word("x1 x1 x2", ab2): ONE,
        }

    def test_leading_compatibility(self, ab2):
        rng = seeded_rng(12)
        pool = [u for b in alsw_by_degree(ab2, 6)[1:] for u in b]
        for _ in range(200):
            p = random_lie_poly(rng, pool)
            if p.is_zero():
                continue
            assert expand(p).leading() == p.leading()


class TestToNlsw:
    def test_single_peel(self, ab2):
        u = parse_word("x2 x1", ab2)
        v = parse_word("x1 x2", ab2)
        q = AssocPoly({u: ONE, v: -ONE})
        assert to_nlsw(q) == LiePoly.basis(u)

    def test_roundtrip_random(self, ab2):
        rng = seeded_rng(13)
        pool = [u for b in alsw_by_degree(ab2, 6)[1:] for u in b]
        for _ in range(300):
            p = random_lie_poly(rng, pool)
            assert to_nlsw(expand(p)) == p

    def test_not_lie_element(self, ab2):
        q = AssocPoly({parse_word("x1 x2", ab2): ONE})
        with pytest.raises(NotLieElement):
            to_nlsw(q)


class TestBracket:
    def test_basic(self, ab2):
        b2 = LiePoly.basis(parse_word("x2", ab2))
        b1 = LiePoly.basis(parse_word("x1", ab2))
        assert bracket(b2, b1) == LiePoly.basis(parse_word("x2 x1", ab2))
        assert bracket(b1, b2) == LiePoly.basis(parse_word("x2 x1", ab2)).scale(-1)

    def test_self_bracket_vanishes(self, ab2):
        rng = seeded_rng(14)
        pool = [u for b in alsw_by_degree(ab2, 5)[1:] for u in b]
        for _ in range(50):
            p = random_lie_poly(rng, pool)
            assert bracket(p, p).is_zero()

    def test_antisymmetry_and_jacobi(self, ab2):
        rng = seeded_rng(15)
        pool = [u for b in alsw_by_degree(ab2, 4)[1:] for u in b]
        for _ in range(40):
            p = random_lie_poly(rng, pool)
            q = random_lie_poly(rng, pool)
            r = random_lie_poly(rng, pool)
            assert (bracket(p, q) + bracket(q, p)).is_zero()
            lhs = bracket(bracket(p, q), r)
            rhs = bracket(bracket(p, r), q) + bracket(p, bracket(q, r))
            assert lhs == rhs

    def test_bilinearity(self, ab2):
        rng = seeded_rng(16)
        pool = [u for b in alsw_by_degree(ab2, 4)[1:] for u in b]
        for _ in range(30):
            p = random_lie_poly(rng, pool)
            q = random_lie_poly(rng, pool)
            r = random_lie_poly(rng, pool)
            assert bracket(p + q, r) == bracket(p, r) + bracket(q, r)
            assert bracket(p.scale(LAMBDA), q) == bracket(p, q).scale(LAMBDA)


class TestApplyOp:
    def test_basis_image(self, ab1):
        P = ab1.operator("P")
        x = LiePoly.basis(parse_word("x", ab1))
        assert apply_op(P, [x]) == LiePoly.basis(parse_word("P(x)", ab1))

    def test_linearity(self, ab2):
        P = ab2.operator("P")
        p = parse_poly("2*(x2 x1) + x1", ab2)
        image = apply_op(P, [p])
        assert image == parse_poly("2*P((x2 x1)) + P(x1)", ab2)

    def test_zero_slot_kills_term(self, abw):
        w3 = abw.operator("w3")
        x = LiePoly.basis(parse_word("x2", abw))
        assert apply_op(w3, [x, LiePoly.zero(), x]).is_zero()

    def test_multilinear_expansion(self, abw):
        w3 = abw.operator("w3")
        a = parse_poly("x2 + x1", abw)
        x = LiePoly.basis(parse_word("x1", abw))
        image = apply_op(w3, [a, x, a])
        assert len(image.terms) == 4
        assert image == parse_poly(
            "w3(x2, x1, x2) + w3(x2, x1, x1) + w3(x1, x1, x2) + w3(x1, x1, x1)", abw
        )

    def test_arity_mismatch(self, abw):
        from lieomega.words import ArityMismatch

        with pytest.raises(ArityMismatch):
            apply_op(abw.operator("w3"), [LiePoly.basis(parse_word("x2", abw))])


class TestFromTree:
    def test_reversed_bracket(self, ab2):
        p = parse_poly("(x1 x2)", ab2)
        assert p == LiePoly.basis(parse_word("x2 x1", ab2)).scale(-1)

    def test_standard_tree(self, ab2):
        p = parse_poly("((x2 x1) x1)", ab2)
        assert p == LiePoly.basis(parse_word("x2 x1 x1", ab2))

    def test_inner_zero(self, ab1):
        assert parse_poly("P((x x))", ab1).is_zero()

    def test_rejects_non_tree(self):
        with pytest.raises(TypeError):
            from_tree("nope")


class TestLeadingAndMonic:
    def test_degree_dominates(self, ab2):
        p = parse_poly("(x2 x1) + 5*x1", ab2)
        w, c = p.leading()
        assert w == parse_word("x2 x1", ab2)
        assert c == ONE

    def test_lambda_coefficient(self, ab1):
        p = parse_poly("l*P(x)", ab1)
        assert p.leading() == (parse_word("P(x)", ab1), LAMBDA)

    def test_zero_raises(self):
        with pytest.raises(ZeroPolynomial):
            LiePoly.zero().leading()

    def test_normalize(self, ab1):
        p = parse_poly("3*x", ab1)
        assert normalize_monic(p) == parse_poly("x", ab1)
        q = parse_poly("(P(x) x) + 2*P(x)", ab1)
        assert normalize_monic(q) == q

    def test_normalize_rejects_weight_lead(self, ab1):
        with pytest.raises(NonConstantLeadingCoefficient):
            normalize_monic(parse_poly("l*P(x)", ab1))

    def test_specialize(self, ab1):
        p = parse_poly("l*P(x) + x", ab1)
        assert specialize(p, Fraction(2, 3)) == parse_poly("2/3*P(x) + x", ab1)
        assert specialize(p, 0) == parse_poly("x", ab1)

    def test_no_floats_anywhere(self, ab2):
        p = bracket(parse_poly("1/3*(x2 x1)", ab2), parse_poly("3/7*x1", ab2))
        for c in p.terms.values():
            assert all(type(f) is Fraction for f in c.coeffs)

    def test_keys_are_validated(self, ab2):
        with pytest.raises(NotLieElement):
            LiePoly({parse_word("x1 x2", ab2): ONE})

    def test_iteration_order_descending(self, ab2):
        p = parse_poly("x1 + (x2 x1) + P(x2)", ab2)
        keys = [w for w, _ in p.items_desc()]
        assert keys == sorted(keys, key=OmegaWord.dl_key, reverse=True)
