"""
Fox calculus on the free associative algebra.

For a word w the derivative along y_i collects one term per occurrence of y_i:

    ∂w/∂y_i = Σ_{k : w[k] = i} (w[:k])'⊗(w[k+1:])

which is the closed form of the recursion ∂(y_j w)/∂y_i = δ_ij (1⊗w) + ∂w/∂y_i (y_j'⊗1)
and satisfies Δ(f) = Σ_i Δ(y_i)·∂f/∂y_i.

Jacobians put the gradient of the j-th image in column j, so rows are indexed by
the derivative variable. With composition (φψ)(w) = φ(ψ(w)) the chain rule reads

    J(φψ) = J(φ) · φ(J(ψ))

where φ acts on U(B) leg by leg.
"""

from fractions import Fraction
from typing import Dict, List
import logging

from algebra.errors import GeneratorCountError
from algebra.matrix import Matrix
from algebra.ncpoly import DEFAULT_GENERATORS, Endomorphism, NCPoly, ScalarLike, accumulate
from algebra.uenv import Pair, TensorPoly

# Configure logging
logger = logging.getLogger(__name__)


def fox_derive(poly: NCPoly, i: int) -> TensorPoly:
    """
    Fox derivative ∂poly/∂y_i as an element of U(B).

    Args:
        poly: element of B_n
        i: 1-based generator index

    Returns:
        TensorPoly with one term per occurrence of y_i in each support word
    """
    if not 1 <= i <= poly.n:
        raise GeneratorCountError(f"generator {i} outside 1..{poly.n}")
    terms: Dict[Pair, Fraction] = {}
    for word, coef in poly.items():
        for k, letter in enumerate(word):
            if letter == i:
                accumulate(terms, (word[:k], word[k + 1:]), coef)
    return TensorPoly._raw(terms, poly.n)


def gradient(poly: NCPoly) -> List[TensorPoly]:
    """Column (∂f/∂y_1, ..., ∂f/∂y_n)."""
    return [fox_derive(poly, i) for i in range(1, poly.n + 1)]


def jacobian(endo: Endomorphism) -> Matrix:
    """J(φ): entry (i, j) is ∂φ(y_j)/∂y_i."""
    columns = [gradient(image) for image in endo.images]
    n = endo.n
    return Matrix([[columns[j][i] for j in range(n)] for i in range(n)])


def j2(endo: Endomorphism) -> Matrix:
    """Upper-left 2×2 block of J(φ)."""
    if endo.n < 2:
        raise GeneratorCountError("J2 needs at least two generators")
    return Matrix([[fox_derive(endo.images[j], i + 1) for j in range(2)] for i in range(2)])


def endo_on_tensor(endo: Endomorphism, value: TensorPoly) -> TensorPoly:
    """φ(f'⊗g) = φ(f)'⊗φ(g), extended linearly."""
    if endo.n != value.n:
        raise GeneratorCountError("endomorphism and tensor live over different free algebras")
    images: Dict[tuple, NCPoly] = {}

    def image_of(word) -> NCPoly:
        cached = images.get(word)
        if cached is None:
            cached = endo(NCPoly._raw({word: Fraction(1)}, endo.n))
            images[word] = cached
        return cached

    terms: Dict[Pair, Fraction] = {}
    for (w, v), coef in value.items():
        for (left, right), c in TensorPoly.tensor(image_of(w), image_of(v)).items():
            accumulate(terms, (left, right), coef * c)
    return TensorPoly._raw(terms, endo.n)


def endo_on_matrix(endo: Endomorphism, matrix: Matrix) -> Matrix:
    return matrix.map(lambda entry: endo_on_tensor(endo, entry))


# ===== MATRIX CONSTRUCTORS OVER U(B) =====

def identity_u(dim: int, n: int = DEFAULT_GENERATORS) -> Matrix:
    return Matrix.identity(dim, TensorPoly.one(n), TensorPoly.zero(n))


def unit_matrix_u(dim: int, i: int, j: int, n: int = DEFAULT_GENERATORS) -> Matrix:
    """Standard matrix unit e_ij (1-based)."""
    zero = TensorPoly.zero(n)
    rows = [[zero] * dim for _ in range(dim)]
    rows[i - 1][j - 1] = TensorPoly.one(n)
    return Matrix(rows)


def elementary_u(dim: int, i: int, j: int, parameter: TensorPoly) -> Matrix:
    """E_ij(d) = E + d e_ij over U(B)."""
    return Matrix.elementary(dim, i, j, parameter, TensorPoly.one(parameter.n), TensorPoly.zero(parameter.n))


def scalar_u(value: ScalarLike, n: int = DEFAULT_GENERATORS) -> TensorPoly:
    return TensorPoly.constant(value, n)
