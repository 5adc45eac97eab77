from functools import reduce
from operator import add

from hypothesis import given

from algebra.autgroup import ElementaryAuto, TameWord, anick
from algebra.expr import parse_nc
from algebra.fox import endo_on_matrix, endo_on_tensor, fox_derive, gradient, identity_u, j2, jacobian
from algebra.matrix import Matrix
from algebra.ncpoly import Endomorphism, NCPoly
from algebra.uenv import TensorPoly, universal_derivation
from pipelines import anick_j2_display
from tests.strategies import nc_polys, tame_words

x, y, z = (NCPoly.generator(i) for i in (1, 2, 3))
ONE = TensorPoly.one()
ZERO = TensorPoly.zero()


def test_derivative_of_generator_is_unit():
    assert fox_derive(x, 1) == ONE
    assert fox_derive(x, 2) == ZERO


def test_product_rule():
    assert fox_derive(x * y, 2) == TensorPoly.pure((1,), ())
    assert fox_derive(z * x * z, 1) == TensorPoly.pure((3,), (3,))


def test_gradients():
    assert gradient(z) == [ZERO, ZERO, ONE]
    assert gradient(NCPoly.one()) == [ZERO, ZERO, ZERO]
    assert gradient(parse_nc("[y, z]")) == [
        ZERO,
        TensorPoly.pure((), (3,)) - TensorPoly.pure((3,), ()),
        TensorPoly.pure((2,), ()) - TensorPoly.pure((), (2,)),
    ]


@given(nc_polys(max_length=5))
def test_fundamental_identity(f):
    rhs = reduce(add, (universal_derivation(NCPoly.generator(i)) * fox_derive(f, i) for i in (1, 2, 3)))
    assert universal_derivation(f) == rhs


def test_j2_of_identity():
    assert j2(Endomorphism.identity()) == identity_u(2)


def test_j2_of_anick_matches_closed_form():
    assert j2(anick()) == anick_j2_display()


def test_jacobian_of_elementary_is_rank_one_update():
    f = parse_nc("[y, z]")
    matrix = jacobian(ElementaryAuto(1, 1, f).to_endomorphism())
    column = gradient(f)
    expected = Matrix([[ONE + column[0], ZERO, ZERO],
                       [column[1], ONE, ZERO],
                       [column[2], ZERO, ONE]])
    assert matrix == expected


def test_endomorphism_on_tensors():
    swap = Endomorphism([y, x, z])
    assert endo_on_tensor(swap, TensorPoly.pure((1,), (2,))) == TensorPoly.pure((2,), (1,))
    assert endo_on_tensor(anick(), TensorPoly.pure((3,), ())) == TensorPoly.pure((3,), ())
    a = TensorPoly.pure((1, 3), (2,), 5)
    assert endo_on_tensor(Endomorphism.identity(), a) == a


@given(tame_words(max_size=2), tame_words(max_size=1))
def test_chain_rule(first, second):
    phi, psi = first.evaluate(), second.evaluate()
    assert jacobian(phi.compose(psi)) == jacobian(phi) * endo_on_matrix(phi, jacobian(psi))


def test_chain_rule_on_anick_normalizer(delta, sigma):
    s = sigma.evaluate()
    assert jacobian(delta.compose(s)) == jacobian(delta) * endo_on_matrix(delta, jacobian(s))


def test_elementary_jacobian_inverse():
    factor = ElementaryAuto(2, 3, parse_nc("x*z - z^2"))
    word = TameWord((factor, factor.inverse()))
    assert jacobian(word.evaluate()) == identity_u(3)
