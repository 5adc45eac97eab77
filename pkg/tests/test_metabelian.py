import random

import pytest
from hypothesis import given, settings

from algebra.autgroup import (
    ElementaryAutoC,
    TameWord,
    parse_tame_word,
    random_ideal_element,
    sample_ker_tame,
    sample_kernel_conjugates,
    tame_jacobian_c,
)
from algebra.errors import SideConditionError
from algebra.expr import parse_comm, parse_nc
from algebra.matrix import Matrix
from algebra.metabelian import (
    MetabelianElem,
    delta_a,
    epsilon_endo,
    fox_c,
    identity_ua,
    jacobian_c,
    kernel_conjugate,
    lift,
    straighten,
)
from algebra.morphisms import eta_u, pi_u
from algebra.fox import fox_derive
from algebra.uenv import RING_A, RING_UA, CommPoly
from tests.strategies import nc_polys, tame_words


def ua(text):
    return parse_comm(text, RING_UA)


ZERO = CommPoly.zero(RING_UA)
ONE = CommPoly.one(RING_UA)


class TestStraighten:
    def test_single_swap(self):
        element = straighten(parse_nc("y*x"))
        assert element.abelian == parse_comm("x1*x2", RING_A)
        assert element.triple == (ua("-1"), ZERO, ZERO)

    def test_ordered_word_is_unchanged(self):
        element = straighten(parse_nc("x*y"))
        assert element.triple == (ZERO, ZERO, ZERO)

    def test_two_swaps_carry_context(self):
        element = straighten(parse_nc("z*x*y"))
        assert element.abelian == parse_comm("x1*x2*x3", RING_A)
        assert element.triple == (ZERO, ua("-r2"), ua("-l1"))

    def test_jacobi_relation_is_zero(self):
        relation = MetabelianElem(CommPoly.zero(RING_A), [ua("l3 - r3"), ua("-(l2 - r2)"), ua("l1 - r1")])
        assert relation.is_zero()

    def test_commutator_ideal_squares_to_zero(self):
        product = MetabelianElem.commutator(1, 2) * MetabelianElem.commutator(1, 3)
        assert product.is_zero()

    @given(nc_polys(max_length=3), nc_polys(max_length=3))
    def test_multiplicative(self, f, g):
        assert straighten(f * g) == straighten(f) * straighten(g)

    @given(nc_polys())
    def test_lift_is_a_section(self, f):
        element = straighten(f)
        assert straighten(lift(element)) == element

    def test_module_action_needs_ideal(self):
        with pytest.raises(ValueError):
            MetabelianElem.generator(1).module_action(ONE)


class TestFoxDerivatives:
    def test_generator(self):
        assert fox_c(MetabelianElem.generator(1), 1) == ONE

    def test_commutator(self):
        assert fox_c(MetabelianElem.commutator(1, 3), 3) == delta_a(1)

    @given(nc_polys(max_length=4))
    def test_well_defined_through_straightening(self, f):
        for i in (1, 2, 3):
            assert fox_c(straighten(f), i) == pi_u(fox_derive(f, i))

    def test_ideal_elements_follow_the_module_formula(self):
        rng = random.Random(3)
        for _ in range(20):
            avoid = rng.randint(1, 3)
            element = random_ideal_element(rng, avoid) + random_ideal_element(rng, rng.randint(1, 3))
            f12, f13, f23 = element.triple
            d1, d2, d3 = delta_a(1), delta_a(2), delta_a(3)
            assert fox_c(element, 1) == -(d2 * f12) - d3 * f13
            assert fox_c(element, 2) == d1 * f12 - d3 * f23
            assert fox_c(element, 3) == d1 * f13 + d2 * f23


class TestEndomorphisms:
    def test_jacobian_of_kernel_generator(self):
        generator = ElementaryAutoC(1, 1, MetabelianElem.commutator(2, 3))
        expected = Matrix([[ONE, ZERO, ZERO],
                           [ua("r3 - l3"), ONE, ZERO],
                           [ua("l2 - r2"), ZERO, ONE]])
        assert jacobian_c(generator.to_endomorphism()) == expected

    @given(tame_words(max_size=2))
    @settings(max_examples=20)
    def test_epsilon_is_compatible_with_evaluation(self, word):
        phi = word.evaluate()
        f = parse_nc("x*y*z - z*y + 2")
        assert epsilon_endo(phi)(straighten(f)) == straighten(phi(f))
        assert epsilon_endo(phi) == word.epsilon().evaluate()

    @given(tame_words(max_size=2))
    @settings(max_examples=20)
    def test_chain_rule_over_c(self, word):
        jacobian, induced = tame_jacobian_c(word)
        evaluated = word.epsilon().evaluate()
        assert jacobian == jacobian_c(evaluated)
        assert induced == evaluated.induced()

    def test_identity(self):
        assert jacobian_c(TameWord((), "C").evaluate()) == identity_ua()

    def test_kernel_conjugate_acts_trivially_on_a(self):
        psi = parse_tame_word("s(2, 1, z^2)", over="C")
        generator = ElementaryAutoC(1, 1, MetabelianElem.commutator(2, 3))
        theta = kernel_conjugate(psi, generator)
        assert theta.induced().is_identity()

    def test_kernel_conjugate_side_conditions(self):
        psi = TameWord((), "C")
        with pytest.raises(SideConditionError):
            kernel_conjugate(psi, ElementaryAutoC(1, 2, MetabelianElem.commutator(2, 3)))
        with pytest.raises(SideConditionError):
            kernel_conjugate(psi, ElementaryAutoC(1, 1, MetabelianElem.generator(2)))


class TestKernelConjugates:
    @pytest.fixture
    def conjugates(self):
        return [kernel_conjugate(psi, gen) for psi, gen in sample_kernel_conjugates(11, 6, over="C")]

    def test_rank_one_perturbation(self, conjugates):
        for theta in conjugates:
            difference = jacobian_c(theta) - identity_ua()
            assert all(minor.is_zero() for minor in difference.minors2())

    def test_eta_image_is_block_triangular(self):
        word = sample_ker_tame(5, 3, over="C")
        jacobian, induced = tame_jacobian_c(word)
        assert induced.is_identity()
        eta = jacobian.map(eta_u)
        zero, one = eta_u(ZERO), eta_u(ONE)
        assert (eta[2, 0], eta[2, 1], eta[2, 2]) == (zero, zero, one)
