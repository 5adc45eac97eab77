from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given

from algebra.e2decide import (
    IN,
    NOT_IN,
    E2Certificate,
    ElementaryFactor,
    certificate_product,
    decide_e2,
    decide_ge2f,
    elementary2,
    find_reducing_move,
    graded_quotient,
    identity2,
    measure,
    verify_certificate,
    whitehead_factor,
)
from algebra.errors import RingMismatchError
from algebra.expr import parse_comm
from algebra.matrix import Matrix
from algebra.uenv import RING_A, RING_UV, CommPoly
from tests.strategies import comm_polys


def uv(text):
    return parse_comm(text, RING_UV)


def matrix(*entries):
    a, b, c, d = (uv(entry) for entry in entries)
    return Matrix([[a, b], [c, d]])


ANICK = matrix("1 + u*v", "v^2", "-u^2", "1 - u*v")


def e12(text):
    return elementary2((1, 2), uv(text))


def e21(text):
    return elementary2((2, 1), uv(text))


class TestDecideE2:
    def test_identity(self):
        certificate = decide_e2(identity2(RING_UV))
        assert certificate.verdict == IN
        assert certificate.factors == []

    def test_constructed_product(self):
        m = e12("u^2*v") * e21("3") * e12("-v")
        certificate = decide_e2(m)
        assert certificate.is_in
        assert certificate.product() == m
        assert verify_certificate(certificate)

    def test_anick_matrix_is_stuck(self):
        certificate = decide_e2(ANICK)
        assert certificate.verdict == NOT_IN
        assert certificate.witness == ANICK
        assert certificate.log == []
        assert verify_certificate(certificate)

    def test_determinant_must_be_one(self):
        certificate = decide_e2(matrix("u", "0", "0", "1"))
        assert certificate.verdict == NOT_IN
        assert certificate.reason == "det != 1"
        assert verify_certificate(certificate)

    def test_entries_share_one_ring(self):
        mixed = Matrix([[CommPoly.one(RING_UV), CommPoly.zero(RING_A)],
                        [CommPoly.zero(RING_UV), CommPoly.one(RING_UV)]])
        with pytest.raises(RingMismatchError):
            decide_e2(mixed)

    def test_other_variable_names(self):
        ring = ("s", "t")
        m = (elementary2((2, 1), parse_comm("s*t^2 - 1", ring))
             * elementary2((1, 2), parse_comm("s + 2", ring)))
        certificate = decide_e2(m)
        assert certificate.is_in
        assert certificate.product() == m

    @given(comm_polys(), comm_polys())
    def test_two_factor_products(self, p, q):
        m = elementary2((1, 2), p) * elementary2((2, 1), q)
        certificate = decide_e2(m)
        assert certificate.is_in
        assert verify_certificate(certificate)


class TestDecideGE2F:
    def test_permutation_matrix(self):
        m = matrix("0", "1", "1", "0")
        certificate = decide_ge2f(m)
        assert certificate.is_in
        assert certificate.scalar == -1
        assert certificate.product() == m

    def test_scaled_elementary(self):
        m = matrix("5", "0", "0", "1") * e12("u*v")
        certificate = decide_ge2f(m)
        assert certificate.is_in
        assert certificate.scalar == 5
        assert verify_certificate(certificate)

    def test_anick_matrix(self):
        assert decide_ge2f(ANICK).verdict == NOT_IN

    def test_nonconstant_determinant(self):
        certificate = decide_ge2f(matrix("u", "0", "0", "v"))
        assert certificate.verdict == NOT_IN
        assert certificate.reason == "det is not a nonzero constant"


class TestWhitehead:
    def test_unit(self):
        assert whitehead_factor(1, RING_UV) == []

    @pytest.mark.parametrize("alpha", [2, -1, Fraction(3, 7)])
    def test_diagonal(self, alpha):
        expected = Matrix([[CommPoly.constant(alpha, RING_UV), CommPoly.zero(RING_UV)],
                           [CommPoly.zero(RING_UV), CommPoly.constant(1 / Fraction(alpha), RING_UV)]])
        assert certificate_product(RING_UV, whitehead_factor(alpha, RING_UV)) == expected

    def test_zero(self):
        with pytest.raises(ValueError):
            whitehead_factor(0, RING_UV)


class TestReduction:
    def test_measure(self):
        assert measure(ANICK) == 12
        assert measure(identity2(RING_UV)) == 2

    def test_graded_quotient(self):
        assert graded_quotient(uv("u^2*v + u"), uv("u*v")) == uv("u")
        assert graded_quotient(uv("u^2"), uv("u*v")).is_zero()
        assert graded_quotient(uv("u^2 + 2*u*v + v^2"), uv("u + v")) == uv("u + v")

    def test_no_move_on_anick_matrix(self):
        assert find_reducing_move(ANICK) is None

    def test_move_decreases_measure(self):
        m = e12("u^2") * e21("v")
        step, moved = find_reducing_move(m)
        assert step.measure_after == measure(moved) < measure(m)
        assert step.apply(m) == moved


class TestVerification:
    def test_serialized_certificates_verify(self):
        for m in (ANICK, e12("u") * e21("v^2") * e12("1 - u")):
            certificate = E2Certificate.from_dict(decide_e2(m).to_dict())
            assert verify_certificate(certificate)

    def test_tampered_factorization(self):
        certificate = decide_e2(e12("u") * e21("v"))
        broken = replace(certificate, factors=certificate.factors[1:])
        assert not verify_certificate(broken)

    def test_tampered_witness(self):
        certificate = decide_e2(ANICK)
        assert not verify_certificate(replace(certificate, witness=identity2(RING_UV)))

    def test_false_not_in_claim(self):
        m = e12("u") * e21("v")
        claim = E2Certificate(NOT_IN, RING_UV, m, witness=m)
        assert not verify_certificate(claim)

    def test_factor_inverse(self):
        factor = ElementaryFactor((1, 2), uv("u - v"))
        assert factor.matrix() * factor.inverse().matrix() == identity2(RING_UV)
