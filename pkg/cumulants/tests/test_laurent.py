from fractions import Fraction

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from cumulants.laurent import (
    DIVERGENT,
    ONE,
    ZERO,
    LaurentPoly,
    laurent_add,
    laurent_eval,
    laurent_limit,
    laurent_mul,
    laurent_neg,
    laurent_sub,
    rational_str,
)

coefficients = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.dictionaries(st.integers(-6, 3), coefficients, max_size=4).map(LaurentPoly)
decaying_polys = st.dictionaries(st.integers(-6, 0), coefficients, max_size=4).map(LaurentPoly)


def n_power(exponent, coefficient=1):
    return LaurentPoly.monomial(coefficient, exponent)


class LaurentArithmeticTests(SimpleTestCase):
    def test_add(self):
        self.assertEqual(laurent_add(n_power(-1), n_power(-1, -1)), ZERO)
        self.assertEqual(laurent_add(ONE, n_power(-1)).terms, {0: 1, -1: 1})
        self.assertEqual(laurent_add(n_power(-5, 2), n_power(-5, 2)), n_power(-5, 4))

    def test_zero_sum_prunes_terms(self):
        self.assertEqual(dict(laurent_add(n_power(-1), n_power(-1, -1)).terms), {})

    def test_mul(self):
        self.assertEqual(laurent_mul(n_power(-1), n_power(-1)), n_power(-2))
        self.assertEqual(laurent_mul(n_power(-3, -1), n_power(-5, 2)), n_power(-8, -2))
        self.assertEqual(laurent_mul(LaurentPoly({0: 3, -2: Fraction(1, 2)}), ZERO), ZERO)

    def test_neg_and_sub(self):
        self.assertEqual(laurent_neg(n_power(-2, 3)), n_power(-2, -3))
        self.assertEqual(laurent_sub(ONE, ONE), ZERO)
        self.assertEqual(laurent_sub(ONE, n_power(-1)).terms, {0: 1, -1: -1})

    def test_constants_hash_like_their_scalar(self):
        self.assertEqual(hash(ONE), hash(1))
        self.assertEqual(hash(ZERO), hash(0))
        half = LaurentPoly.constant(Fraction(1, 2))
        self.assertEqual(hash(half), hash(Fraction(1, 2)))
        self.assertEqual(len({ONE, 1}), 1)
        self.assertEqual({half: "x"}[Fraction(1, 2)], "x")

    def test_eval(self):
        self.assertEqual(laurent_eval(n_power(-1), 2), Fraction(1, 2))
        self.assertEqual(laurent_eval(LaurentPoly({0: 1, -2: 1}), 3), Fraction(10, 9))
        self.assertEqual(laurent_eval(ZERO, 5), 0)

    def test_eval_rejects_zero(self):
        with self.assertRaises(ValidationError):
            laurent_eval(n_power(-1), 0)

    def test_limit(self):
        self.assertEqual(laurent_limit(LaurentPoly({0: 1, -1: 3})), 1)
        self.assertEqual(laurent_limit(n_power(-2)), 0)
        self.assertIs(laurent_limit(n_power(1)), DIVERGENT)

    def test_rejects_floats(self):
        with self.assertRaises(TypeError):
            LaurentPoly({0: 0.5})

    def test_json_keys_sorted_ascending(self):
        poly = LaurentPoly({0: 2, -3: -1})
        self.assertEqual(list(poly.to_json().items()), [('-3', '-1/1'), ('0', '2/1')])
        self.assertEqual(LaurentPoly.from_json({'-3': '-1/1', '0': '2/1'}), poly)

    def test_from_json_rejects_garbage(self):
        with self.assertRaises(ValidationError):
            LaurentPoly.from_json({'x': '1/1'})
        with self.assertRaises(ValidationError):
            LaurentPoly.from_json({'0': '1/0'})

    def test_rational_str(self):
        self.assertEqual(rational_str(0), '0/1')
        self.assertEqual(rational_str(Fraction(-6, 4)), '-3/2')

    def test_shape_queries(self):
        poly = LaurentPoly({-2: 5})
        self.assertTrue(poly.is_monomial())
        self.assertEqual(poly.support, (-2,))
        self.assertEqual(poly.degree(), -2)
        self.assertIsNone(ZERO.degree())
        self.assertEqual(str(LaurentPoly({0: 1, -2: -1})), '1 + -1*n^-2')


class LaurentPropertyTests(SimpleTestCase):
    @given(polys, polys, polys)
    def test_ring_axioms(self, a, b, c):
        self.assertEqual((a + b) + c, a + (b + c))
        self.assertEqual((a * b) * c, a * (b * c))
        self.assertEqual(a * (b + c), a * b + a * c)
        self.assertEqual(a + b, b + a)
        self.assertEqual(a * b, b * a)
        self.assertEqual(a - a, ZERO)

    @given(polys, polys, st.sampled_from([1, 2, 3, 5]))
    def test_eval_is_a_ring_homomorphism(self, a, b, n):
        self.assertEqual((a * b).evaluate(n), a.evaluate(n) * b.evaluate(n))
        self.assertEqual((a + b).evaluate(n), a.evaluate(n) + b.evaluate(n))

    @settings(max_examples=50)
    @given(decaying_polys, st.integers(1, 40))
    def test_evaluations_approach_the_limit(self, a, n):
        bound = sum(abs(c) for c in a.terms.values()) / Fraction(n)
        self.assertLessEqual(abs(a.evaluate(n) - a.limit()), bound)
