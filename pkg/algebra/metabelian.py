"""
The free metabelian associative algebra C = B/R² on z1, z2, z3.

An element f = f0 + f1 is stored as its abelian part f0 (a polynomial over A,
standing for the ordered-monomial lift) and a triple (f12, f13, f23) over U(A)
with

    f1 = [z1,z2]·f12 + [z1,z3]·f13 + [z2,z3]·f23

under the right action m·(f'⊗g) = f m g of U(A) on the commutator ideal I.
The three commutators are not free generators of I: by the Jacobi identity

    [z1,z2]·(l3 - r3) - [z1,z3]·(l2 - r2) + [z2,z3]·(l1 - r1) = 0

and this relation generates all others. The stored triple is the unique
representative whose f12 does not involve l3.
"""

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple
import logging

from algebra.errors import GeneratorCountError, RingMismatchError, SideConditionError
from algebra.fox import fox_derive
from algebra.matrix import Matrix
from algebra.morphisms import pi_u
from algebra.ncpoly import DEFAULT_GENERATORS, Endomorphism, NCPoly, ScalarLike, Word, accumulate, to_scalar
from algebra.uenv import RING_A, RING_UA, CommPoly, Exponents

# Configure logging
logger = logging.getLogger(__name__)


PAIRS: Tuple[Tuple[int, int], ...] = ((1, 2), (1, 3), (2, 3))
PAIR_LABELS = ("f12", "f13", "f23")
TO_LEFT = {"x1": "l1", "x2": "l2", "x3": "l3"}
TO_RIGHT = {"x1": "r1", "x2": "r2", "x3": "r3"}

_L3 = RING_UA.index("l3")
_R3 = RING_UA.index("r3")


def delta_a(i: int) -> CommPoly:
    """Δ(x_i) = l_i - r_i in U(A)."""
    return CommPoly.variable(f"l{i}", RING_UA) - CommPoly.variable(f"r{i}", RING_UA)


def _split_off_l3(poly: CommPoly) -> Tuple[CommPoly, CommPoly]:
    """
    Write poly = q·(l3 - r3) + rest with rest free of l3.

    Uses l3^e = (l3 - r3)·Σ_{k<e} l3^(e-1-k) r3^k + r3^e on every monomial.
    """
    quotient: Dict[Exponents, Fraction] = {}
    rest: Dict[Exponents, Fraction] = {}
    for exps, coef in poly.items():
        power = exps[_L3]
        if not power:
            accumulate(rest, exps, coef)
            continue
        base = list(exps)
        base[_L3] = 0
        reduced = list(base)
        reduced[_R3] += power
        accumulate(rest, tuple(reduced), coef)
        for k in range(power):
            term = list(base)
            term[_L3] = power - 1 - k
            term[_R3] += k
            accumulate(quotient, tuple(term), coef)
    return CommPoly._raw(RING_UA, quotient), CommPoly._raw(RING_UA, rest)


def canonical_triple(triple: Sequence[CommPoly]) -> Tuple[CommPoly, CommPoly, CommPoly]:
    """Reduce a commutator triple to its canonical representative."""
    f12, f13, f23 = triple
    quotient, f12 = _split_off_l3(f12)
    if quotient:
        f13 = f13 + quotient * delta_a(2)
        f23 = f23 - quotient * delta_a(1)
    return (f12, f13, f23)


def _sorted_word(exps: Sequence[int]) -> Word:
    word: List[int] = []
    for index, e in enumerate(exps, start=1):
        word.extend([index] * e)
    return tuple(word)


def _counts(letters: Sequence[int]) -> Tuple[int, int, int]:
    return (letters.count(1), letters.count(2), letters.count(3))


# ===== ELEMENTS OF C =====

class MetabelianElem:
    """
    Canonical element of C.

    Args:
        abelian: abelian part over A
        triple: (f12, f13, f23) over U(A); reduced to canonical form on construction
    """

    __slots__ = ("abelian", "triple", "_hash")

    def __init__(self, abelian: CommPoly, triple: Optional[Sequence[CommPoly]] = None):
        if abelian.ring != RING_A:
            raise RingMismatchError(f"abelian part must live over {RING_A}, got {abelian.ring}")
        if triple is None:
            triple = [CommPoly.zero(RING_UA)] * 3
        if len(triple) != 3:
            raise ValueError("a commutator triple has three components")
        for component in triple:
            if component.ring != RING_UA:
                raise RingMismatchError(f"triple components must live over {RING_UA}")
        self.abelian = abelian
        self.triple: Tuple[CommPoly, CommPoly, CommPoly] = canonical_triple(triple)
        self._hash: Optional[int] = None

    # ----- constructors -----

    @classmethod
    def zero(cls) -> "MetabelianElem":
        return cls(CommPoly.zero(RING_A))

    @classmethod
    def one(cls) -> "MetabelianElem":
        return cls(CommPoly.one(RING_A))

    @classmethod
    def constant(cls, value: ScalarLike) -> "MetabelianElem":
        return cls(CommPoly.constant(value, RING_A))

    @classmethod
    def generator(cls, i: int) -> "MetabelianElem":
        return cls(CommPoly.variable(f"x{i}", RING_A))

    @classmethod
    def commutator(cls, a: int, b: int) -> "MetabelianElem":
        """[z_a, z_b]."""
        if a == b:
            return cls.zero()
        sign = 1 if a < b else -1
        index = PAIRS.index((min(a, b), max(a, b)))
        triple = [CommPoly.zero(RING_UA)] * 3
        triple[index] = CommPoly.constant(sign, RING_UA)
        return cls(CommPoly.zero(RING_A), triple)

    # ----- inspection -----

    def is_zero(self) -> bool:
        return not self.abelian and not any(self.triple)

    def in_ideal(self) -> bool:
        """True iff the element lies in the commutator ideal I."""
        return not self.abelian

    def letters(self) -> set:
        """Generators occurring in the canonical lift."""
        used = {int(name[1]) for name in self.abelian.variables_used()}
        for (a, b), component in zip(PAIRS, self.triple):
            if component:
                used.update((a, b))
                used.update(int(name[1]) for name in component.variables_used())
        return used

    def total_degree(self):
        degrees = [self.abelian.total_degree()]
        degrees.extend(component.total_degree() + 2 for component in self.triple)
        return max(degrees)

    # ----- arithmetic -----

    def __add__(self, other: "MetabelianElem") -> "MetabelianElem":
        return MetabelianElem(self.abelian + other.abelian,
                              [a + b for a, b in zip(self.triple, other.triple)])

    def __neg__(self) -> "MetabelianElem":
        return MetabelianElem(-self.abelian, [-a for a in self.triple])

    def __sub__(self, other: "MetabelianElem") -> "MetabelianElem":
        return self + (-other)

    def scale(self, factor: ScalarLike) -> "MetabelianElem":
        factor = to_scalar(factor)
        return MetabelianElem(self.abelian.scale(factor), [a.scale(factor) for a in self.triple])

    def __mul__(self, other) -> "MetabelianElem":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return mb_mul(self, other)

    def __rmul__(self, other) -> "MetabelianElem":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> "MetabelianElem":
        result = MetabelianElem.one()
        for _ in range(exponent):
            result = result * self
        return result

    def module_action(self, value: CommPoly) -> "MetabelianElem":
        """m·value for m in I and value in U(A)."""
        if not self.in_ideal():
            raise ValueError("U(A) acts only on the commutator ideal")
        return MetabelianElem(self.abelian, [component * value for component in self.triple])

    # ----- comparison and display -----

    def __eq__(self, other) -> bool:
        if not isinstance(other, MetabelianElem):
            return NotImplemented
        return self.abelian == other.abelian and self.triple == other.triple

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.abelian, self.triple))
        return self._hash

    def to_dict(self) -> Dict[str, str]:
        result = {"abelian": str(self.abelian)}
        for label, component in zip(PAIR_LABELS, self.triple):
            result[label] = str(component)
        return result

    def __str__(self) -> str:
        parts = [str(self.abelian)]
        for (a, b), component in zip(PAIRS, self.triple):
            if component:
                parts.append(f"[z{a},z{b}]·({component})")
        if len(parts) > 1 and not self.abelian:
            parts = parts[1:]
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MetabelianElem({self.to_dict()})"


# ===== STRAIGHTENING (ε: B -> C) =====

@lru_cache(maxsize=None)
def _straighten_word(word: Word) -> Tuple[Tuple[int, int, int], Tuple[Tuple[int, Exponents, int], ...]]:
    """
    Bubble-sort a word modulo R².

    Each swap P a b S -> P b a S with a > b leaves behind P[a,b]S, which is
    -[z_b,z_a]·(π(P)'⊗π(S)).
    """
    letters = list(word)
    corrections: Dict[Tuple[int, Exponents], int] = {}
    swapped = True
    while swapped:
        swapped = False
        for k in range(len(letters) - 1):
            a, b = letters[k], letters[k + 1]
            if a > b:
                key = (PAIRS.index((b, a)), _counts(letters[:k]) + _counts(letters[k + 2:]))
                corrections[key] = corrections.get(key, 0) - 1
                letters[k], letters[k + 1] = b, a
                swapped = True
    terms = tuple((index, exps, coef) for (index, exps), coef in corrections.items() if coef)
    return _counts(letters), terms


def straighten(poly: NCPoly) -> MetabelianElem:
    """ε(poly): canonical form of the image of poly in C."""
    if poly.n != DEFAULT_GENERATORS:
        raise GeneratorCountError("the metabelian quotient is implemented for three generators")
    abelian: Dict[Exponents, Fraction] = {}
    triple: List[Dict[Exponents, Fraction]] = [{}, {}, {}]
    for word, coef in poly.items():
        exps, corrections = _straighten_word(word)
        accumulate(abelian, exps, coef)
        for index, ua_exps, sign in corrections:
            accumulate(triple[index], ua_exps, coef * sign)
    return MetabelianElem(
        CommPoly._raw(RING_A, abelian),
        [CommPoly._raw(RING_UA, component) for component in triple],
    )


def lift_abelian(poly: CommPoly) -> NCPoly:
    """Ordered-monomial lift of a polynomial over A."""
    terms: Dict[Word, Fraction] = {}
    for exps, coef in poly.items():
        accumulate(terms, _sorted_word(exps), coef)
    return NCPoly._raw(terms, DEFAULT_GENERATORS)


def lift(element: MetabelianElem) -> NCPoly:
    """A preimage in B: ordered monomials plus z^α [z_a,z_b] z^β for each triple term."""
    terms: Dict[Word, Fraction] = {}
    for exps, coef in element.abelian.items():
        accumulate(terms, _sorted_word(exps), coef)
    for (a, b), component in zip(PAIRS, element.triple):
        for exps, coef in component.items():
            left, right = _sorted_word(exps[:3]), _sorted_word(exps[3:])
            accumulate(terms, left + (a, b) + right, coef)
            accumulate(terms, left + (b, a) + right, -coef)
    return NCPoly._raw(terms, DEFAULT_GENERATORS)


def mb_add(a: MetabelianElem, b: MetabelianElem) -> MetabelianElem:
    return a + b


def mb_mul(a: MetabelianElem, b: MetabelianElem) -> MetabelianElem:
    """
    (a0 + a1)(b0 + b1) = ε(lift(a0) lift(b0)) + a1·(1⊗b0) + b1·(a0'⊗1); I·I = 0.
    """
    product = straighten(lift_abelian(a.abelian) * lift_abelian(b.abelian))
    right_b = b.abelian.rename(TO_RIGHT, RING_UA)
    left_a = a.abelian.rename(TO_LEFT, RING_UA)
    triple = [
        p + x * right_b + y * left_a
        for p, x, y in zip(product.triple, a.triple, b.triple)
    ]
    return MetabelianElem(product.abelian, triple)


def fox_c(element: MetabelianElem, i: int) -> CommPoly:
    """∂f/∂z_i = π(∂g/∂y_i) for any lift g of f."""
    return pi_u(fox_derive(lift(element), i))


# ===== ENDOMORPHISMS OF C =====

class AbelianMap:
    """
    Endomorphism of A given by images of x1, x2, x3, with its action φ̄ on U(A)
    (both variable banks).
    """

    def __init__(self, images: Sequence[CommPoly]):
        images = tuple(images)
        if len(images) != DEFAULT_GENERATORS or any(image.ring != RING_A for image in images):
            raise RingMismatchError(f"an endomorphism of A needs three images over {RING_A}")
        self.images: Tuple[CommPoly, ...] = images
        self._bank_images: Optional[Dict[str, CommPoly]] = None

    @classmethod
    def identity(cls) -> "AbelianMap":
        return cls([CommPoly.variable(name, RING_A) for name in RING_A])

    def apply(self, poly: CommPoly) -> CommPoly:
        return poly.substitute(dict(zip(RING_A, self.images)), RING_A)

    def bar(self, poly: CommPoly) -> CommPoly:
        """φ̄ on U(A): l_k -> φ(x_k) in the l-bank, r_k -> φ(x_k) in the r-bank."""
        if self._bank_images is None:
            banks = {}
            for k, image in enumerate(self.images, start=1):
                banks[f"l{k}"] = image.rename(TO_LEFT, RING_UA)
                banks[f"r{k}"] = image.rename(TO_RIGHT, RING_UA)
            self._bank_images = banks
        return poly.substitute(self._bank_images, RING_UA)

    def after_elementary(self, i: int, alpha: ScalarLike, f: CommPoly) -> "AbelianMap":
        """φ∘σ̄(i, α, f)."""
        images = list(self.images)
        images[i - 1] = images[i - 1].scale(alpha) + self.apply(f)
        return AbelianMap(images)

    def is_identity(self) -> bool:
        return self == AbelianMap.identity()

    def __eq__(self, other) -> bool:
        if not isinstance(other, AbelianMap):
            return NotImplemented
        return self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __str__(self) -> str:
        return "(" + ", ".join(str(image) for image in self.images) + ")"


class MetabelianEndo:
    """Endomorphism of C given by the images of z1, z2, z3; (φψ)(w) = φ(ψ(w))."""

    def __init__(self, images: Sequence[MetabelianElem]):
        images = tuple(images)
        if len(images) != DEFAULT_GENERATORS:
            raise GeneratorCountError(f"expected {DEFAULT_GENERATORS} images, got {len(images)}")
        self.images: Tuple[MetabelianElem, ...] = images
        self._induced: Optional[AbelianMap] = None
        self._commutators: Optional[List[MetabelianElem]] = None

    @classmethod
    def identity(cls) -> "MetabelianEndo":
        return cls([MetabelianElem.generator(i) for i in range(1, DEFAULT_GENERATORS + 1)])

    def image(self, index: int) -> MetabelianElem:
        return self.images[index - 1]

    def induced(self) -> AbelianMap:
        """τ*(φ), the induced endomorphism of A."""
        if self._induced is None:
            self._induced = AbelianMap([image.abelian for image in self.images])
        return self._induced

    def bar(self, poly: CommPoly) -> CommPoly:
        return self.induced().bar(poly)

    def _image_commutators(self) -> List[MetabelianElem]:
        if self._commutators is None:
            self._commutators = [
                self.images[a - 1] * self.images[b - 1] - self.images[b - 1] * self.images[a - 1]
                for a, b in PAIRS
            ]
        return self._commutators

    def __call__(self, element: MetabelianElem) -> MetabelianElem:
        powers: List[List[MetabelianElem]] = [[MetabelianElem.one()] for _ in self.images]

        def power(k: int, e: int) -> MetabelianElem:
            cache = powers[k]
            while len(cache) <= e:
                cache.append(cache[-1] * self.images[k])
            return cache[e]

        result = MetabelianElem.zero()
        for exps, coef in element.abelian.items():
            term = MetabelianElem.constant(coef)
            for k, e in enumerate(exps):
                if e:
                    term = term * power(k, e)
            result = result + term
        for commutator, component in zip(self._image_commutators(), element.triple):
            if component:
                result = result + commutator.module_action(self.bar(component))
        return result

    def compose(self, other: "MetabelianEndo") -> "MetabelianEndo":
        """self∘other."""
        return MetabelianEndo([self(image) for image in other.images])

    def is_identity(self) -> bool:
        return self == MetabelianEndo.identity()

    def __eq__(self, other) -> bool:
        if not isinstance(other, MetabelianEndo):
            return NotImplemented
        return self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __str__(self) -> str:
        return "(" + ", ".join(str(image) for image in self.images) + ")"


def epsilon_endo(endo: Endomorphism) -> MetabelianEndo:
    """ε*(φ): the endomorphism of C induced by an endomorphism of B."""
    return MetabelianEndo([straighten(image) for image in endo.images])


def jacobian_c(endo: MetabelianEndo) -> Matrix:
    """J(φ) over U(A): entry (i, j) is ∂φ(z_j)/∂z_i."""
    columns = [[fox_c(image, i) for i in range(1, 4)] for image in endo.images]
    return Matrix([[columns[j][i] for j in range(3)] for i in range(3)])


def j2_c(endo: MetabelianEndo) -> Matrix:
    return Matrix([[fox_c(endo.images[j], i + 1) for j in range(2)] for i in range(2)])


def identity_ua(dim: int = 3) -> Matrix:
    return Matrix.identity(dim, CommPoly.one(RING_UA), CommPoly.zero(RING_UA))


def kernel_conjugate(psi, gen) -> MetabelianEndo:
    """
    Evaluate ψ·gen·ψ⁻¹ for a tame word ψ over C and a kernel generator gen.

    Args:
        psi: TameWord over C
        gen: ElementaryAutoC with alpha = 1 and f in the commutator ideal

    Raises:
        SideConditionError: gen is not of the form σ(i, 1, f) with f in I
    """
    if gen.alpha != 1:
        raise SideConditionError(f"kernel generators have alpha = 1, got {gen.alpha}")
    if not gen.f.in_ideal():
        raise SideConditionError("kernel generators need f in the commutator ideal")
    outer = psi.evaluate()
    inner = psi.inverse().evaluate()
    conjugate = outer.compose(gen.to_endomorphism()).compose(inner)
    logger.debug("kernel conjugate of %s by %d factors", gen, len(psi))
    return conjugate
