"""
Ring homomorphisms between the engine's algebras.

    pi    B -> A = F[x1,x2,x3]         y_i -> x_i
    nu    B -> F[y3]                   y1, y2 -> 0, y3 -> y3
    eps   B -> C                       canonical projection (see algebra.metabelian)
    tau   C -> A                       abelian part
    eta   A -> F[x3]                   x1, x2 -> 0
    rho   F[y3] -> F[x3]               renaming

Homomorphisms from B to a commutative ring extend to the enveloping algebras by
acting leg by leg: w'⊗v maps to χ(w) in the left variables times χ(v) in the
right variables. CommutativeImage implements this for any such χ and composes
with endomorphisms of B, which is how π- and ν-images of long tame words are
computed without expanding the words in B.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Any, Callable, Dict, Sequence, Tuple
import logging

from algebra.errors import GeneratorCountError, RingMismatchError
from algebra.matrix import Matrix
from algebra.ncpoly import DEFAULT_GENERATORS, Endomorphism, NCPoly, ScalarLike, Word, accumulate, to_scalar
from algebra.uenv import (
    ENVELOPES,
    RING_A,
    RING_UA,
    RING_UV,
    RING_UX3,
    RING_X3,
    RING_Y3,
    CommPoly,
    Ring,
    TensorPoly,
    envelope_ring,
)

if TYPE_CHECKING:
    from algebra.metabelian import MetabelianElem

# Configure logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RingMorphismTag:
    """Name and source/target descriptors of a registered homomorphism."""
    name: str
    source: str
    target: str
    description: str

    def to_dict(self) -> Dict[str, str]:
        return {
            "name": self.name,
            "source": self.source,
            "target": self.target,
            "description": self.description,
        }


# ===== COMMUTATIVE IMAGES OF B =====

class CommutativeImage:
    """
    Homomorphism χ: B_3 -> ring given by the images of y1, y2, y3.

    Args:
        ring: target ring; must have a registered enveloping ring for tensor inputs
        images: one CommPoly per generator
    """

    def __init__(self, ring: Ring, images: Sequence[CommPoly]):
        ring = tuple(ring)
        images = tuple(images)
        if len(images) != DEFAULT_GENERATORS:
            raise GeneratorCountError(f"expected {DEFAULT_GENERATORS} generator images, got {len(images)}")
        for image in images:
            if image.ring != ring:
                raise RingMismatchError(f"image {image} is not in ring {ring}")
        self.ring = ring
        self.images: Tuple[CommPoly, ...] = images
        self._word_cache: Dict[Word, CommPoly] = {(): CommPoly.one(ring)}
        self._pair_images = None
        self._pair_cache: Dict[Tuple[Word, Word], CommPoly] = {}

    @classmethod
    def pi(cls) -> "CommutativeImage":
        return cls(RING_A, [CommPoly.variable(name, RING_A) for name in RING_A])

    @classmethod
    def nu(cls) -> "CommutativeImage":
        zero = CommPoly.zero(RING_Y3)
        return cls(RING_Y3, [zero, zero, CommPoly.variable("y3", RING_Y3)])

    @property
    def envelope(self) -> Ring:
        return envelope_ring(self.ring)

    # ----- evaluation -----

    def word_image(self, word: Word) -> CommPoly:
        cached = self._word_cache.get(word)
        if cached is None:
            cached = self.word_image(word[:-1]) * self.images[word[-1] - 1]
            self._word_cache[word] = cached
        return cached

    def apply(self, poly: NCPoly) -> CommPoly:
        if poly.n != DEFAULT_GENERATORS:
            raise GeneratorCountError("commutative images are defined on B_3")
        terms: Dict[Tuple[int, ...], Fraction] = {}
        for word, coef in poly.items():
            for exps, c in self.word_image(word)._terms.items():
                accumulate(terms, exps, coef * c)
        return CommPoly._raw(self.ring, terms)

    def _banks(self):
        if self._pair_images is None:
            left, right = ENVELOPES[self.ring]
            target = self.envelope
            to_left = dict(zip(self.ring, left))
            to_right = dict(zip(self.ring, right))
            self._pair_images = (to_left, to_right, target)
        return self._pair_images

    def pair_image(self, left: Word, right: Word) -> CommPoly:
        key = (left, right)
        cached = self._pair_cache.get(key)
        if cached is None:
            to_left, to_right, target = self._banks()
            cached = (self.word_image(left).rename(to_left, target)
                      * self.word_image(right).rename(to_right, target))
            self._pair_cache[key] = cached
        return cached

    def apply_tensor(self, value: TensorPoly) -> CommPoly:
        """χ on U(B): w'⊗v -> χ(w)(left bank) · χ(v)(right bank)."""
        if self.ring not in ENVELOPES:
            raise RingMismatchError(f"no enveloping ring registered for {self.ring}")
        terms: Dict[Tuple[int, ...], Fraction] = {}
        for (w, v), coef in value.items():
            for exps, c in self.pair_image(w, v)._terms.items():
                accumulate(terms, exps, coef * c)
        return CommPoly._raw(self.envelope, terms)

    def apply_matrix(self, matrix: Matrix) -> Matrix:
        """Entrywise image of a matrix over B or over U(B)."""
        def convert(entry):
            if isinstance(entry, TensorPoly):
                return self.apply_tensor(entry)
            return self.apply(entry)
        return matrix.map(convert)

    # ----- composition -----

    def after(self, endo: Endomorphism) -> "CommutativeImage":
        """χ∘φ."""
        return CommutativeImage(self.ring, [self.apply(image) for image in endo.images])

    def after_elementary(self, i: int, alpha: ScalarLike, f: NCPoly) -> "CommutativeImage":
        """χ∘σ(i, α, f): only the i-th image changes, to α χ(y_i) + χ(f)."""
        images = list(self.images)
        images[i - 1] = images[i - 1].scale(to_scalar(alpha)) + self.apply(f)
        return CommutativeImage(self.ring, images)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CommutativeImage):
            return NotImplemented
        return self.ring == other.ring and self.images == other.images

    def __hash__(self) -> int:
        return hash((self.ring, self.images))

    def __str__(self) -> str:
        return "(" + ", ".join(str(image) for image in self.images) + ")"


PI = CommutativeImage.pi()
NU = CommutativeImage.nu()


# ===== NAMED MORPHISMS =====

def pi_b(poly: NCPoly) -> CommPoly:
    """Abelianization B -> A."""
    return PI.apply(poly)


def pi_u(value: TensorPoly) -> CommPoly:
    """π on U(B) -> U(A) in the l/r variables."""
    return PI.apply_tensor(value)


def nu_b(poly: NCPoly) -> CommPoly:
    """ν: kill y1, y2."""
    return NU.apply(poly)


def nu_u(value: TensorPoly) -> CommPoly:
    """ν on U(B) -> F[u, v]."""
    return NU.apply_tensor(value)


def eta_a(poly: CommPoly) -> CommPoly:
    """η on A: x1, x2 -> 0."""
    if poly.ring != RING_A:
        raise RingMismatchError(f"eta_a expects a polynomial over {RING_A}, got {poly.ring}")
    return poly.restrict(RING_X3)


def eta_u(poly: CommPoly) -> CommPoly:
    """η on U(A): l1, l2, r1, r2 -> 0, landing in U(F[x3]) = F[l3, r3]."""
    if poly.ring != RING_UA:
        raise RingMismatchError(f"eta_u expects a polynomial over {RING_UA}, got {poly.ring}")
    return poly.restrict(RING_UX3)


def rho_rename(poly: CommPoly) -> CommPoly:
    """ρ: F[y3] -> F[x3] and, on enveloping rings, F[u, v] -> F[l3, r3]."""
    if poly.ring == RING_Y3:
        return poly.rename({"y3": "x3"}, RING_X3)
    if poly.ring == RING_UV:
        return poly.rename({"u": "l3", "v": "r3"}, RING_UX3)
    raise RingMismatchError(f"rho is defined on {RING_Y3} and {RING_UV}, got {poly.ring}")


def tau_c(element: "MetabelianElem") -> CommPoly:
    """τ: C -> A, the abelian part."""
    return element.abelian


def epsilon_b(poly: NCPoly) -> "MetabelianElem":
    """ε: B -> C."""
    from algebra.metabelian import straighten
    return straighten(poly)


def epsilon_u(value: TensorPoly) -> CommPoly:
    """ε on U(B) followed by the identification U(C/I) = U(A); agrees with π on U(B)."""
    return pi_u(value)


def map_matrix(fn: Callable[[Any], Any], matrix: Matrix) -> Matrix:
    """Entrywise lift of any ring map."""
    return matrix.map(fn)


MORPHISMS: Dict[str, Tuple[RingMorphismTag, Callable[[Any], Any]]] = {
    "pi": (RingMorphismTag("pi", "B", "A", "y_i -> x_i"), pi_b),
    "pi_u": (RingMorphismTag("pi", "U(B)", "U(A)", "leg-wise abelianization"), pi_u),
    "nu": (RingMorphismTag("nu", "B", "F[y3]", "y1, y2 -> 0"), nu_b),
    "nu_u": (RingMorphismTag("nu", "U(B)", "F[u,v]", "y1, y2 -> 0 in both legs"), nu_u),
    "epsilon": (RingMorphismTag("epsilon", "B", "C", "y_i -> z_i"), epsilon_b),
    "epsilon_u": (RingMorphismTag("epsilon", "U(B)", "U(A)", "leg-wise projection"), epsilon_u),
    "tau": (RingMorphismTag("tau", "C", "A", "z_i -> x_i"), tau_c),
    "eta": (RingMorphismTag("eta", "A", "F[x3]", "x1, x2 -> 0"), eta_a),
    "eta_u": (RingMorphismTag("eta", "U(A)", "F[l3,r3]", "l1, l2, r1, r2 -> 0"), eta_u),
    "rho": (RingMorphismTag("rho", "F[y3]", "F[x3]", "y3 -> x3"), rho_rename),
    "rho_u": (RingMorphismTag("rho", "F[u,v]", "F[l3,r3]", "u -> l3, v -> r3"), rho_rename),
}


def apply_morphism(name: str, value: Any) -> Any:
    """Apply a registered morphism by name."""
    if name not in MORPHISMS:
        raise KeyError(f"unknown morphism {name!r}; known: {', '.join(MORPHISMS)}")
    return MORPHISMS[name][1](value)
