import pytest
from hypothesis import given

from algebra.autgroup import anick
from algebra.expr import parse_comm, parse_nc
from algebra.fox import j2
from algebra.matrix import Matrix
from algebra.metabelian import straighten
from algebra.morphisms import (
    MORPHISMS,
    NU,
    PI,
    apply_morphism,
    epsilon_u,
    eta_a,
    eta_u,
    nu_b,
    nu_u,
    pi_b,
    pi_u,
    rho_rename,
    tau_c,
)
from algebra.errors import RingMismatchError
from algebra.uenv import RING_A, RING_UA, RING_UV, RING_UX3, RING_X3, RING_Y3, CommPoly, TensorPoly
from tests.strategies import nc_polys, tensor_polys


def a(text):
    return parse_comm(text, RING_A)


def uv(text):
    return parse_comm(text, RING_UV)


class TestPi:
    def test_abelianizes(self):
        assert pi_b(parse_nc("x*z - z*y")) == a("x1*x3 - x2*x3")

    @given(nc_polys(max_length=3), nc_polys(max_length=3))
    def test_commutators_vanish(self, f, g):
        assert pi_b(f * g - g * f).is_zero()

    def test_normalized_anick_is_identity(self, delta, sigma):
        normalized = delta.compose(sigma.evaluate())
        assert [pi_b(image) for image in normalized.images] == [a("x1"), a("x2"), a("x3")]

    def test_on_enveloping_algebra(self):
        assert pi_u(TensorPoly.pure((1, 2), (3,))) == parse_comm("l1*l2*r3", RING_UA)


class TestNu:
    def test_kills_x_and_y(self):
        assert nu_b(parse_nc("x*z^3 + z^2")) == parse_comm("y3^2", RING_Y3)

    def test_tensor_image(self):
        assert nu_u(TensorPoly.pure((3,), (3,))) == uv("u*v")

    def test_anick_block(self):
        image = j2(anick()).map(nu_u)
        assert image == Matrix([[uv("1 + u*v"), uv("v^2")], [uv("-u^2"), uv("1 - u*v")]])

    @given(tensor_polys(), tensor_polys())
    def test_multiplicative(self, p, q):
        assert nu_u(p * q) == nu_u(p) * nu_u(q)


class TestEta:
    def test_keeps_only_third_variable(self):
        assert eta_u(parse_comm("l1*r2 + 3*l3", RING_UA)) == parse_comm("3*l3", RING_UX3)
        assert eta_a(a("x1 + x3^2")) == parse_comm("x3^2", RING_X3)

    def test_ring_is_checked(self):
        with pytest.raises(RingMismatchError):
            eta_u(uv("u"))


class TestRho:
    def test_renames(self):
        assert rho_rename(parse_comm("y3^2 + 1", RING_Y3)) == parse_comm("x3^2 + 1", RING_X3)
        assert rho_rename(uv("u*v^2")) == parse_comm("l3*r3^2", RING_UX3)

    @given(tensor_polys())
    def test_nu_then_rho_is_eta_after_pi(self, p):
        assert rho_rename(nu_u(p)) == eta_u(pi_u(p))


def test_tau_ignores_commutator_correction():
    assert tau_c(straighten(parse_nc("y*x"))) == a("x1*x2")


@given(tensor_polys())
def test_epsilon_agrees_with_pi_on_envelope(p):
    assert epsilon_u(p) == pi_u(p)


def test_registry():
    assert apply_morphism("pi", parse_nc("y*x")) == a("x1*x2")
    assert MORPHISMS["nu"][0].target == "F[y3]"
    with pytest.raises(KeyError):
        apply_morphism("omega", parse_nc("x"))


def test_images_compose_with_endomorphisms(delta):
    assert NU.after(delta) == NU
    assert PI.after(delta).images[2] == a("x3")
    assert CommPoly.one(RING_UV) == uv("1")
