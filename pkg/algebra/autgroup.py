"""
Elementary and tame automorphisms of B and of C.

    σ(i, α, f) = (y1, ..., α y_i + f, ..., yn),   α != 0, f free of y_i

Tame words are kept symbolic as sequences of elementary factors and evaluated
on demand, left to right, under (φψ)(w) = φ(ψ(w)). Under this convention

    σ(i, α, f) σ(i, β, g) = σ(i, αβ, βf + g)

which is one of the relations checked by relation_check.

Textual syntax for words: `s(i, alpha, expr)` factors joined by `;`, e.g.
`s(1,1,-y); s(2,1,-x*z^2); s(1,1,y)`. An empty text or `id` is the empty word.
"""

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union
import logging

from algebra.errors import ExpressionSyntaxError, SideConditionError
from algebra.expr import parse_nc
from algebra.fox import jacobian
from algebra.matrix import Matrix
from algebra.metabelian import (
    PAIRS,
    AbelianMap,
    MetabelianElem,
    MetabelianEndo,
    identity_ua,
    jacobian_c,
    straighten,
)
from algebra.morphisms import CommutativeImage
from algebra.ncpoly import DEFAULT_GENERATORS, Endomorphism, NCPoly, ScalarLike, to_scalar
from algebra.uenv import RING_UA, CommPoly, envelope_ring

# Configure logging
logger = logging.getLogger(__name__)


COEFFICIENT_POOL = (-3, -2, -1, 1, 2, 3)


# ===== ELEMENTARY AUTOMORPHISMS =====

@dataclass(frozen=True)
class ElementaryAuto:
    """σ(i, α, f) on B_n."""
    i: int
    alpha: Fraction
    f: NCPoly

    def __post_init__(self):
        object.__setattr__(self, "alpha", to_scalar(self.alpha))
        if not self.alpha:
            raise SideConditionError("elementary automorphisms need alpha != 0")
        if not 1 <= self.i <= self.f.n:
            raise SideConditionError(f"index {self.i} outside 1..{self.f.n}")
        if self.i in self.f.letters():
            raise SideConditionError(f"f = {self.f} contains the generator it modifies (y{self.i})")

    over = "B"

    @property
    def n(self) -> int:
        return self.f.n

    def to_endomorphism(self) -> Endomorphism:
        images = [NCPoly.generator(k, self.n) for k in range(1, self.n + 1)]
        images[self.i - 1] = images[self.i - 1].scale(self.alpha) + self.f
        return Endomorphism(images)

    def inverse(self) -> "ElementaryAuto":
        return invert_elementary(self)

    def jacobian(self) -> Matrix:
        return jacobian(self.to_endomorphism())

    def __str__(self) -> str:
        return f"s({self.i}, {self.alpha}, {self.f})"


@dataclass(frozen=True)
class ElementaryAutoC:
    """σ(i, α, f) on C; f may not involve z_i in its canonical lift."""
    i: int
    alpha: Fraction
    f: MetabelianElem

    def __post_init__(self):
        object.__setattr__(self, "alpha", to_scalar(self.alpha))
        if not self.alpha:
            raise SideConditionError("elementary automorphisms need alpha != 0")
        if not 1 <= self.i <= DEFAULT_GENERATORS:
            raise SideConditionError(f"index {self.i} outside 1..{DEFAULT_GENERATORS}")
        if self.i in self.f.letters():
            raise SideConditionError(f"f = {self.f} involves z{self.i}")

    over = "C"

    @property
    def n(self) -> int:
        return DEFAULT_GENERATORS

    def to_endomorphism(self) -> MetabelianEndo:
        images = [MetabelianElem.generator(k) for k in range(1, DEFAULT_GENERATORS + 1)]
        images[self.i - 1] = images[self.i - 1].scale(self.alpha) + self.f
        return MetabelianEndo(images)

    def inverse(self) -> "ElementaryAutoC":
        return invert_elementary(self)

    def jacobian(self) -> Matrix:
        return jacobian_c(self.to_endomorphism())

    def __str__(self) -> str:
        return f"s({self.i}, {self.alpha}, {self.f})"


Elementary = Union[ElementaryAuto, ElementaryAutoC]


def invert_elementary(factor: Elementary) -> Elementary:
    """σ(i, α, f)⁻¹ = σ(i, α⁻¹, -α⁻¹ f)."""
    inverse_alpha = Fraction(1) / factor.alpha
    return type(factor)(factor.i, inverse_alpha, factor.f.scale(-inverse_alpha))


def triangular(i: int, j: int, beta: ScalarLike, over: str = "B") -> Elementary:
    """X_ij(β) = σ(j, 1, β y_i)."""
    if i == j:
        raise SideConditionError("triangular automorphisms need i != j")
    f = NCPoly.generator(i).scale(beta)
    if over == "C":
        return ElementaryAutoC(j, 1, straighten(f))
    return ElementaryAuto(j, 1, f)


# ===== TAME WORDS =====

@dataclass(frozen=True)
class TameWord:
    """Symbolic product of elementary automorphisms, all over the same algebra."""
    factors: Tuple[Elementary, ...] = ()
    over: str = "B"

    def __post_init__(self):
        factors = tuple(self.factors)
        object.__setattr__(self, "factors", factors)
        if factors:
            object.__setattr__(self, "over", factors[0].over)
        if self.over not in ("B", "C"):
            raise ValueError(f"tame words live over B or C, not {self.over!r}")
        if any(factor.over != self.over for factor in factors):
            raise ValueError("a tame word cannot mix factors over B and over C")

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self) -> Iterator[Elementary]:
        return iter(self.factors)

    def __add__(self, other: "TameWord") -> "TameWord":
        if self.factors and other.factors and self.over != other.over:
            raise ValueError("cannot concatenate words over different algebras")
        over = self.over if self.factors else other.over
        return TameWord(self.factors + other.factors, over)

    def evaluate(self) -> Union[Endomorphism, MetabelianEndo]:
        return eval_tame(self)

    def inverse(self) -> "TameWord":
        return invert_tame(self)

    def epsilon(self) -> "TameWord":
        """ε*(word): the same word over C."""
        if self.over == "C":
            return self
        return TameWord(tuple(ElementaryAutoC(f.i, f.alpha, straighten(f.f)) for f in self.factors), "C")

    def __str__(self) -> str:
        if not self.factors:
            return "id"
        return "; ".join(str(factor) for factor in self.factors)


def eval_tame(word: TameWord) -> Union[Endomorphism, MetabelianEndo]:
    """Left-to-right product of the factors."""
    result = MetabelianEndo.identity() if word.over == "C" else Endomorphism.identity()
    for factor in word.factors:
        result = result.compose(factor.to_endomorphism())
    return result


def invert_tame(word: TameWord) -> TameWord:
    return TameWord(tuple(invert_elementary(factor) for factor in reversed(word.factors)), word.over)


def transposition(k: int, s: int, over: str = "B") -> TameWord:
    """(ks) = σ(s, -1, y_k) σ(k, 1, -y_s) σ(s, 1, y_k)."""
    if k == s:
        raise SideConditionError("a transposition needs two distinct generators")
    y_k, y_s = NCPoly.generator(k), NCPoly.generator(s)
    factors = [(s, -1, y_k), (k, 1, -y_s), (s, 1, y_k)]
    if over == "C":
        return TameWord(tuple(ElementaryAutoC(i, a, straighten(f)) for i, a, f in factors), "C")
    return TameWord(tuple(ElementaryAuto(i, a, f) for i, a, f in factors), "B")


_FACTOR_RE = re.compile(r"^\s*s\s*\(\s*(\d+)\s*,\s*([-+]?\s*\d+(?:\s*/\s*\d+)?)\s*,(.*)\)\s*$", re.DOTALL)


def parse_tame_word(text: str, over: str = "B") -> TameWord:
    """Parse `s(i, alpha, expr); ...` into a TameWord over B or C."""
    stripped = text.strip()
    if not stripped or stripped == "id":
        return TameWord((), over)
    factors = []
    for chunk in stripped.split(";"):
        if not chunk.strip():
            continue
        match = _FACTOR_RE.match(chunk)
        if not match:
            raise ExpressionSyntaxError(f"expected s(i, alpha, expr), got {chunk.strip()!r}")
        i = int(match.group(1))
        alpha = to_scalar(match.group(2).replace(" ", ""))
        f = parse_nc(match.group(3))
        if over == "C":
            factors.append(ElementaryAutoC(i, alpha, straighten(f)))
        else:
            factors.append(ElementaryAuto(i, alpha, f))
    return TameWord(tuple(factors), over)


# ===== JACOBIANS OF WORDS WITHOUT EXPANSION =====

def commutative_jacobian(word: TameWord, start: CommutativeImage) -> Tuple[Matrix, CommutativeImage]:
    """
    χ(J(θ1⋯θm)) for a commutative image χ of B, computed factor by factor:

        χ(J(θ1⋯θm)) = Π_k (χ∘θ1⋯θ_{k-1})(J(θ_k))

    Returns:
        the 3×3 matrix over the enveloping ring of χ, and χ∘θ1⋯θm
    """
    if word.over != "B":
        raise ValueError("commutative images are taken of words over B")
    ring = envelope_ring(start.ring)
    result = Matrix.identity(DEFAULT_GENERATORS, CommPoly.one(ring), CommPoly.zero(ring))
    chi = start
    for factor in word.factors:
        result = result * chi.apply_matrix(factor.jacobian())
        chi = chi.after_elementary(factor.i, factor.alpha, factor.f)
    return result, chi


def tame_jacobian_c(word: TameWord) -> Tuple[Matrix, AbelianMap]:
    """
    J(θ1⋯θm) over U(A) by the chain rule J(φψ) = J(φ)·φ̄(J(ψ)).

    Returns:
        the Jacobian and the induced endomorphism of A
    """
    word = word.epsilon()
    induced = AbelianMap.identity()
    result = identity_ua()
    for factor in word.factors:
        result = result * factor.jacobian().map(induced.bar)
        induced = induced.after_elementary(factor.i, factor.alpha, factor.f.abelian)
    return result, induced


# ===== RELATIONS =====

def _other_generators(*indices: int) -> List[int]:
    return [k for k in range(1, DEFAULT_GENERATORS + 1) if k not in indices]


def relation_check(which: str, **params: Any) -> bool:
    """
    Evaluate both sides of a defining relation between elementary automorphisms.

    Args:
        which: "f32" σ(i,α,f)σ(i,β,g) = σ(i,αβ,βf+g)          params i, alpha, f, beta, g
               "f33" σ(i,α,f)⁻¹σ(j,β,g)σ(i,α,f) = σ(j,β,σ(i,α,f)⁻¹(g)),
                     f free of y_i and y_j                       params i, alpha, f, j, beta, g
               "f34" (ks)⁻¹σ(i,α,f)(ks) = σ(j,α,(ks)(f))        params i, alpha, f, k, s

    Returns:
        True iff both sides evaluate to the same endomorphism

    Raises:
        SideConditionError: the instance violates the relation's side conditions
    """
    if which == "f32":
        first = ElementaryAuto(params["i"], params["alpha"], params["f"])
        second = ElementaryAuto(params["i"], params["beta"], params["g"])
        lhs = TameWord((first, second)).evaluate()
        rhs = ElementaryAuto(
            first.i, first.alpha * second.alpha, first.f.scale(second.alpha) + second.f
        ).to_endomorphism()
        return lhs == rhs

    if which == "f33":
        i, j = params["i"], params["j"]
        if i == j:
            raise SideConditionError("relation f33 needs i != j")
        outer = ElementaryAuto(i, params["alpha"], params["f"])
        if j in outer.f.letters():
            raise SideConditionError(f"relation f33 needs f free of y{j}")
        inner = ElementaryAuto(j, params["beta"], params["g"])
        lhs = TameWord((outer.inverse(), inner, outer)).evaluate()
        rhs = ElementaryAuto(j, inner.alpha, outer.inverse().to_endomorphism()(inner.f)).to_endomorphism()
        return lhs == rhs

    if which == "f34":
        k, s = params["k"], params["s"]
        swap = transposition(k, s)
        factor = ElementaryAuto(params["i"], params["alpha"], params["f"])
        lhs = (swap.inverse() + TameWord((factor,)) + swap).evaluate()
        j = {k: s, s: k}.get(factor.i, factor.i)
        rhs = ElementaryAuto(j, factor.alpha, swap.evaluate()(factor.f)).to_endomorphism()
        return lhs == rhs

    raise ValueError(f"unknown relation {which!r}; expected f32, f33 or f34")


# ===== THE ANICK AUTOMORPHISM =====

ANICK_IMAGES = ("x + z*(x*z - z*y)", "y + (x*z - z*y)*z", "z")
ANICK_NORMALIZER = "s(1,1,-y); s(2,1,-x*z^2); s(1,1,y)"
CORRUPTED_NORMALIZER = "s(1,1,-y); s(2,1,-x*z^2); s(1,1,2*y)"


def anick() -> Endomorphism:
    """δ = (x + z(xz - zy), y + (xz - zy)z, z)."""
    return Endomorphism([parse_nc(text) for text in ANICK_IMAGES])


def anick_normalizer() -> TameWord:
    """σ = σ(1,1,-y) σ(2,1,-xz²) σ(1,1,y), with π(δσ) = id."""
    return parse_tame_word(ANICK_NORMALIZER)


def corrupted_normalizer() -> TameWord:
    """A near miss of the normalizer whose π-image is not the identity."""
    return parse_tame_word(CORRUPTED_NORMALIZER)


# ===== SAMPLERS =====

@dataclass(frozen=True)
class SamplerSizes:
    """Size limits for random instances."""
    max_degree: int = 2
    max_terms: int = 2
    word_length: int = 4
    conjugator_length: int = 2
    conjugator_degree: int = 1


def random_coefficient(rng: random.Random) -> int:
    return rng.choice(COEFFICIENT_POOL)


def random_nc(rng: random.Random, letters: Sequence[int], max_degree: int = 2, max_terms: int = 2,
              min_degree: int = 0) -> NCPoly:
    """Random polynomial over the given generators; never zero when letters allow it."""
    letters = list(letters)
    terms: Dict[tuple, int] = {}
    for _ in range(rng.randint(1, max_terms)):
        top = max_degree if letters else 0
        length = rng.randint(min(min_degree, top), top)
        word = tuple(rng.choice(letters) for _ in range(length))
        terms[word] = terms.get(word, 0) + random_coefficient(rng)
    poly = NCPoly(terms)
    if poly.is_zero():
        return random_nc(rng, letters, max_degree, max_terms, min_degree)
    return poly


def random_elementary(rng: random.Random, max_degree: int = 2, max_terms: int = 2) -> ElementaryAuto:
    i = rng.randint(1, DEFAULT_GENERATORS)
    alpha = rng.choice((-2, -1, 1, 1, 2, 3))
    return ElementaryAuto(i, alpha, random_nc(rng, _other_generators(i), max_degree, max_terms))


def random_tame(rng: random.Random, length: int, max_degree: int = 2, max_terms: int = 2) -> TameWord:
    return TameWord(tuple(random_elementary(rng, max_degree, max_terms) for _ in range(length)))


def random_elementary_c(rng: random.Random, max_degree: int = 2, max_terms: int = 2) -> ElementaryAutoC:
    factor = random_elementary(rng, max_degree, max_terms)
    return ElementaryAutoC(factor.i, factor.alpha, straighten(factor.f))


def random_ideal_element(rng: random.Random, avoid: int) -> MetabelianElem:
    """[z_a, z_b]·p with {a, b} the generators other than `avoid` and p of degree ≤ 1 in them."""
    a, b = _other_generators(avoid)
    names = [f"l{a}", f"l{b}", f"r{a}", f"r{b}"]
    p = CommPoly.constant(random_coefficient(rng), RING_UA)
    for name in rng.sample(names, rng.randint(0, 2)):
        p = p + CommPoly.variable(name, RING_UA).scale(random_coefficient(rng))
    return MetabelianElem.commutator(a, b).module_action(p)


def random_commutator_poly(rng: random.Random, avoid: int) -> NCPoly:
    """c·w1 [y_a, y_b] w2 in B with short words w1, w2 over {a, b}."""
    a, b = _other_generators(avoid)
    y_a, y_b = NCPoly.generator(a), NCPoly.generator(b)
    left = NCPoly.monomial(tuple(rng.choice((a, b)) for _ in range(rng.randint(0, 1))))
    right = NCPoly.monomial(tuple(rng.choice((a, b)) for _ in range(rng.randint(0, 1))))
    return (left * (y_a * y_b - y_b * y_a) * right).scale(random_coefficient(rng))


def _random_conjugator(rng: random.Random, over: str, sizes: SamplerSizes) -> TameWord:
    factors = []
    for _ in range(rng.randint(0, sizes.conjugator_length)):
        if rng.random() < 0.5:
            i, j = rng.sample(range(1, DEFAULT_GENERATORS + 1), 2)
            factors.append(triangular(i, j, random_coefficient(rng), over))
        elif over == "C":
            factors.append(random_elementary_c(rng, sizes.conjugator_degree, 2))
        else:
            factors.append(random_elementary(rng, sizes.conjugator_degree, 2))
    return TameWord(tuple(factors), over)


def sample_kernel_conjugates(seed: Union[int, str, random.Random], length: int, over: str = "C",
                             sizes: Optional[SamplerSizes] = None) -> List[Tuple[TameWord, Elementary]]:
    """
    Reproducible list of (ψ, σ(j, 1, f)) pairs with f in the commutator ideal and free of y_j.

    Args:
        seed: integer/string seed or an explicit generator
        length: number of conjugates
        over: "C" (f in I) or "B" (f in the commutator ideal R)
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    sizes = sizes or SamplerSizes()
    pairs = []
    for _ in range(length):
        psi = _random_conjugator(rng, over, sizes)
        j = rng.randint(1, DEFAULT_GENERATORS)
        if over == "C":
            generator: Elementary = ElementaryAutoC(j, 1, random_ideal_element(rng, j))
        else:
            generator = ElementaryAuto(j, 1, random_commutator_poly(rng, j))
        pairs.append((psi, generator))
    return pairs


def conjugate_word(psi: TameWord, generator: Elementary) -> TameWord:
    """ψ·generator·ψ⁻¹ as a word."""
    return psi + TameWord((generator,), psi.over) + psi.inverse()


def sample_ker_tame(seed: Union[int, str, random.Random], length: int, over: str = "C",
                    sizes: Optional[SamplerSizes] = None) -> TameWord:
    """Product of `length` kernel conjugates; its induced automorphism of A is the identity."""
    word = TameWord((), over)
    for psi, generator in sample_kernel_conjugates(seed, length, over, sizes):
        word = word + conjugate_word(psi, generator)
    logger.debug("sampled kernel word with %d factors over %s", len(word), over)
    return word


def sample_relation_instance(rng: random.Random, which: str, max_degree: int = 2,
                             max_terms: int = 2) -> Dict[str, Any]:
    """Random parameters satisfying the side conditions of the named relation."""
    if which == "f32":
        i = rng.randint(1, DEFAULT_GENERATORS)
        others = _other_generators(i)
        return {
            "i": i,
            "alpha": random_coefficient(rng),
            "f": random_nc(rng, others, max_degree, max_terms),
            "beta": random_coefficient(rng),
            "g": random_nc(rng, others, max_degree, max_terms),
        }
    if which == "f33":
        i, j = rng.sample(range(1, DEFAULT_GENERATORS + 1), 2)
        (k,) = _other_generators(i, j)
        return {
            "i": i,
            "alpha": random_coefficient(rng),
            "f": random_nc(rng, [k], max_degree + 1, max_terms),
            "j": j,
            "beta": random_coefficient(rng),
            "g": random_nc(rng, _other_generators(j), max_degree, max_terms),
        }
    if which == "f34":
        k, s = rng.sample(range(1, DEFAULT_GENERATORS + 1), 2)
        i = rng.randint(1, DEFAULT_GENERATORS)
        return {
            "i": i,
            "alpha": random_coefficient(rng),
            "f": random_nc(rng, _other_generators(i), max_degree, max_terms),
            "k": k,
            "s": s,
        }
    raise ValueError(f"unknown relation {which!r}")
