from fractions import Fraction

import pytest
from hypothesis import given

from algebra.autgroup import anick
from algebra.errors import ExpressionSyntaxError, RingMismatchError
from algebra.expr import parse_comm, parse_tensor
from algebra.fox import j2
from algebra.ncpoly import NCPoly
from algebra.uenv import (
    RING_A,
    RING_UA,
    RING_UV,
    CommPoly,
    TensorPoly,
    lambda_eval,
    tensor_action,
    universal_derivation,
)
from tests.strategies import comm_polys, nc_polys, tensor_polys

x, y, z = (NCPoly.generator(i) for i in (1, 2, 3))


class TestTensorPoly:
    def test_left_factors_multiply_in_reverse(self):
        z_left = TensorPoly.pure((3,), ())
        assert z_left * z_left == TensorPoly.pure((3, 3), ())
        assert TensorPoly.pure((1,), ()) * TensorPoly.pure((2,), ()) == TensorPoly.pure((2, 1), ())

    def test_legs_commute(self):
        assert TensorPoly.pure((), (3,)) * TensorPoly.pure((3,), ()) == TensorPoly.pure((3,), (3,))

    @given(tensor_polys(), tensor_polys(), tensor_polys())
    def test_associative(self, a, b, c):
        assert (a * b) * c == a * (b * c)

    @given(nc_polys(max_length=3), tensor_polys(), tensor_polys())
    def test_right_module_law(self, f, a, b):
        assert tensor_action(tensor_action(f, a), b) == tensor_action(f, a * b)


class TestTensorExpressions:
    def test_printed_terms(self):
        assert parse_tensor("z'⊗z") == TensorPoly.pure((3,), (3,))
        assert parse_tensor("1⊗z^2") == TensorPoly.pure((), (3, 3))
        assert parse_tensor("-(z^2)'⊗1") == TensorPoly.pure((3, 3), (), -1)
        assert parse_tensor("3*(x*y)'⊗z") == TensorPoly.pure((1, 2), (3,), 3)
        assert parse_tensor("x' + 1/2") == TensorPoly.pure((1,), ()) + TensorPoly.constant(Fraction(1, 2))

    def test_j2_entries_read_back(self):
        for row in j2(anick()).to_strings():
            for text in row:
                assert str(parse_tensor(text)) == text

    @given(tensor_polys())
    def test_printed_form_parses_back(self, a):
        assert parse_tensor(str(a)) == a

    @pytest.mark.parametrize("text", ["x⊗y", "x", "z'⊗", "1 + y"])
    def test_syntax_errors(self, text):
        with pytest.raises(ExpressionSyntaxError):
            parse_tensor(text)


class TestLambda:
    def test_concatenates_legs(self):
        assert lambda_eval(TensorPoly.pure((1,), (2,))) == x * y
        assert lambda_eval(TensorPoly.pure((3, 3), (3,))) == z * z * z

    @given(nc_polys())
    def test_kills_universal_derivation(self, f):
        assert lambda_eval(universal_derivation(f)).is_zero()


class TestUniversalDerivation:
    def test_generator_and_constant(self):
        assert universal_derivation(x) == TensorPoly.pure((1,), ()) - TensorPoly.pure((), (1,))
        assert universal_derivation(NCPoly.one()).is_zero()

    def test_product_rule_instance(self):
        lhs = universal_derivation(x * y)
        rhs = (universal_derivation(x) * TensorPoly.right_of(y)
               + universal_derivation(y) * TensorPoly.left_of(x))
        assert lhs == rhs


class TestCommPoly:
    def test_determinant_of_anick_block(self):
        p = parse_comm("(1 + u*v)*(1 - u*v) + u^2*v^2", RING_UV)
        assert p == CommPoly.one(RING_UV)

    def test_total_degree(self):
        assert CommPoly.zero(RING_UV).total_degree() == float("-inf")
        assert parse_comm("u^2*v + v", RING_UV).total_degree() == 3

    def test_distributes(self):
        p = parse_comm("(l1 - r1)*r2", RING_UA)
        assert p == parse_comm("l1*r2 - r1*r2", RING_UA)

    def test_rings_do_not_mix(self):
        with pytest.raises(RingMismatchError):
            CommPoly.one(RING_UV) + CommPoly.one(RING_A)

    @given(comm_polys(), comm_polys())
    def test_commutative(self, p, q):
        assert p * q == q * p
        assert p + q == q + p

    @given(comm_polys())
    def test_printed_form_parses_back(self, p):
        assert parse_comm(str(p), RING_UV) == p

    def test_homogeneous_part(self):
        p = parse_comm("1 + u + u*v - v^2", RING_UV)
        assert p.homogeneous_part(2) == parse_comm("u*v - v^2", RING_UV)

    def test_substitute(self):
        p = parse_comm("x1*x2 + x3", RING_A)
        images = {"x1": parse_comm("u", RING_UV), "x2": parse_comm("v", RING_UV),
                  "x3": parse_comm("1", RING_UV)}
        assert p.substitute(images, RING_UV) == parse_comm("u*v + 1", RING_UV)
