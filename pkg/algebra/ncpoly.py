"""
Noncommutative polynomials over the rationals.

Elements of the free associative algebra B_n = Q<y1,...,yn> are stored as sparse
maps from words (tuples of 1-based generator indices) to Fractions. Values are
immutable after construction; all operations return new objects.

For n = 3 the generators print as x, y, z, otherwise as y1, ..., yn.
"""

from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union
import logging

from algebra.errors import GeneratorCountError

# Configure logging
logger = logging.getLogger(__name__)


Word = Tuple[int, ...]
ScalarLike = Union[int, Fraction, str]

NEG_INF = float("-inf")
DEFAULT_GENERATORS = 3
LETTER_NAMES = {1: "x", 2: "y", 3: "z"}


# ===== SCALARS AND WORDS =====

def to_scalar(value: ScalarLike) -> Fraction:
    """
    Convert an int, Fraction or rational literal such as "-2/3" to a Fraction.

    Raises:
        TypeError: for floats and other inexact inputs
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"not an exact scalar: {value!r}")


def word_key(word: Word) -> Tuple[int, Word]:
    """Sort key for the graded lexicographic order on words (y1 < y2 < ...)."""
    return (len(word), word)


def generator_name(index: int, n: int = DEFAULT_GENERATORS) -> str:
    if n == DEFAULT_GENERATORS:
        return LETTER_NAMES[index]
    return f"y{index}"


def format_word(word: Word, n: int = DEFAULT_GENERATORS) -> str:
    """Format a word as a '*'-joined product with runs collapsed to powers, '1' if empty."""
    if not word:
        return "1"
    pieces = []
    run_letter, run_length = word[0], 0
    for letter in word + (0,):
        if letter == run_letter:
            run_length += 1
            continue
        name = generator_name(run_letter, n)
        pieces.append(name if run_length == 1 else f"{name}^{run_length}")
        run_letter, run_length = letter, 1
    return "*".join(pieces)


def format_linear_combination(terms: Sequence[Tuple[str, Fraction]]) -> str:
    """
    Format (body, coefficient) pairs as a signed sum.

    A body of "1" marks the constant term. The output is accepted back by the
    expression parser whenever the bodies are.
    """
    if not terms:
        return "0"
    parts: List[str] = []
    for index, (body, coef) in enumerate(terms):
        magnitude = abs(coef)
        if body == "1":
            text = str(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f"{magnitude}*{body}"
        if index == 0:
            parts.append(f"-{text}" if coef < 0 else text)
        else:
            parts.append(f" - {text}" if coef < 0 else f" + {text}")
    return "".join(parts)


def accumulate(terms: Dict, key, value: Fraction) -> None:
    """Add `value` to `terms[key]` in place, dropping the key when the sum vanishes."""
    total = terms.get(key, 0) + value
    if total:
        terms[key] = total
    else:
        terms.pop(key, None)


# ===== NONCOMMUTATIVE POLYNOMIALS =====

class NCPoly:
    """
    Exact element of Q<y1,...,yn>.

    Args:
        terms: mapping from words to coefficients; zero coefficients are dropped
        n: number of generators of the ambient free algebra
    """

    __slots__ = ("_n", "_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Word, ScalarLike]] = None, n: int = DEFAULT_GENERATORS):
        if n < 1:
            raise GeneratorCountError(f"a free algebra needs at least one generator, got {n}")
        cleaned: Dict[Word, Fraction] = {}
        for word, coef in (terms or {}).items():
            word = tuple(word)
            for letter in word:
                if not 1 <= letter <= n:
                    raise GeneratorCountError(f"generator {letter} outside 1..{n}")
            accumulate(cleaned, word, to_scalar(coef))
        self._n = n
        self._terms = cleaned
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, terms: Dict[Word, Fraction], n: int) -> "NCPoly":
        poly = cls.__new__(cls)
        poly._n = n
        poly._terms = terms
        poly._hash = None
        return poly

    # ----- constructors -----

    @classmethod
    def zero(cls, n: int = DEFAULT_GENERATORS) -> "NCPoly":
        return cls._raw({}, n)

    @classmethod
    def one(cls, n: int = DEFAULT_GENERATORS) -> "NCPoly":
        return cls._raw({(): Fraction(1)}, n)

    @classmethod
    def constant(cls, value: ScalarLike, n: int = DEFAULT_GENERATORS) -> "NCPoly":
        value = to_scalar(value)
        return cls._raw({(): value} if value else {}, n)

    @classmethod
    def generator(cls, index: int, n: int = DEFAULT_GENERATORS) -> "NCPoly":
        if not 1 <= index <= n:
            raise GeneratorCountError(f"generator {index} outside 1..{n}")
        return cls._raw({(index,): Fraction(1)}, n)

    @classmethod
    def monomial(cls, word: Sequence[int], coef: ScalarLike = 1, n: int = DEFAULT_GENERATORS) -> "NCPoly":
        return cls({tuple(word): coef}, n)

    # ----- inspection -----

    @property
    def n(self) -> int:
        return self._n

    def items(self) -> List[Tuple[Word, Fraction]]:
        """Terms in graded lexicographic order."""
        return sorted(self._terms.items(), key=lambda item: word_key(item[0]))

    def words(self) -> Iterable[Word]:
        return self._terms.keys()

    def coefficient(self, word: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(word), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> Union[int, float]:
        """Total degree; -inf for the zero polynomial."""
        if not self._terms:
            return NEG_INF
        return max(len(word) for word in self._terms)

    def degree_in(self, variables: Iterable[int]) -> Union[int, float]:
        """Maximum number of letters from `variables` in a support word; -inf for zero."""
        chosen: FrozenSet[int] = frozenset(variables)
        if not self._terms:
            return NEG_INF
        return max(sum(1 for letter in word if letter in chosen) for word in self._terms)

    def letters(self) -> Set[int]:
        """Generators that occur in some support word."""
        return {letter for word in self._terms for letter in word}

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    # ----- arithmetic -----

    def _coerce(self, other) -> "NCPoly":
        if isinstance(other, NCPoly):
            if other._n != self._n:
                raise GeneratorCountError(
                    f"cannot combine polynomials in {self._n} and {other._n} generators"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return NCPoly.constant(other, self._n)
        return NotImplemented

    def __add__(self, other) -> "NCPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for word, coef in other._terms.items():
            accumulate(terms, word, coef)
        return NCPoly._raw(terms, self._n)

    __radd__ = __add__

    def __neg__(self) -> "NCPoly":
        return NCPoly._raw({word: -coef for word, coef in self._terms.items()}, self._n)

    def __sub__(self, other) -> "NCPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "NCPoly":
        return (-self) + other

    def scale(self, factor: ScalarLike) -> "NCPoly":
        factor = to_scalar(factor)
        if not factor:
            return NCPoly.zero(self._n)
        return NCPoly._raw({word: coef * factor for word, coef in self._terms.items()}, self._n)

    def __mul__(self, other) -> "NCPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: Dict[Word, Fraction] = {}
        for left, a in self._terms.items():
            for right, b in other._terms.items():
                accumulate(terms, left + right, a * b)
        return NCPoly._raw(terms, self._n)

    def __rmul__(self, other) -> "NCPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other) -> "NCPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(Fraction(1) / to_scalar(other))
        return NotImplemented

    def __pow__(self, exponent: int) -> "NCPoly":
        if exponent < 0:
            raise ValueError("negative powers are not defined in a free algebra")
        result = NCPoly.one(self._n)
        for _ in range(exponent):
            result = result * self
        return result

    # ----- comparison and display -----

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = NCPoly.constant(other, self._n)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self._n == other._n and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, frozenset(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_linear_combination(
            [(format_word(word, self._n), coef) for word, coef in self.items()]
        )

    def __repr__(self) -> str:
        return f"NCPoly({str(self)!r}, n={self._n})"


# ===== ENDOMORPHISMS =====

class Endomorphism:
    """
    Endomorphism of B_n given by the images of the generators.

    Composition follows (phi psi)(w) = phi(psi(w)).
    """

    __slots__ = ("images",)

    def __init__(self, images: Sequence[NCPoly]):
        images = tuple(images)
        if not images:
            raise GeneratorCountError("an endomorphism needs at least one image")
        n = len(images)
        for image in images:
            if image.n != n:
                raise GeneratorCountError(
                    f"image {image} lives in {image.n} generators, expected {n}"
                )
        self.images: Tuple[NCPoly, ...] = images

    @classmethod
    def identity(cls, n: int = DEFAULT_GENERATORS) -> "Endomorphism":
        return cls([NCPoly.generator(i, n) for i in range(1, n + 1)])

    @property
    def n(self) -> int:
        return len(self.images)

    def image(self, index: int) -> NCPoly:
        """Image of the generator with 1-based `index`."""
        return self.images[index - 1]

    def __call__(self, poly: NCPoly) -> NCPoly:
        return nc_substitute(self, poly)

    def compose(self, other: "Endomorphism") -> "Endomorphism":
        """Return self∘other, the map w -> self(other(w))."""
        if other.n != self.n:
            raise GeneratorCountError(f"cannot compose endomorphisms of B_{self.n} and B_{other.n}")
        return Endomorphism([self(image) for image in other.images])

    def is_identity(self) -> bool:
        return self == Endomorphism.identity(self.n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Endomorphism):
            return NotImplemented
        return self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __str__(self) -> str:
        return "(" + ", ".join(str(image) for image in self.images) + ")"

    def __repr__(self) -> str:
        return f"Endomorphism{str(self)}"


# ===== MODULE-LEVEL OPERATIONS =====

def nc_add(a: NCPoly, b: NCPoly) -> NCPoly:
    return a + b


def nc_mul(a: NCPoly, b: NCPoly) -> NCPoly:
    return a * b


def nc_substitute(endo: Endomorphism, poly: NCPoly) -> NCPoly:
    """
    Apply the algebra homomorphism y_i -> endo.images[i] to `poly`.

    Word images are built from cached prefix products, so polynomials sharing
    prefixes pay for each product once.
    """
    if endo.n != poly.n:
        raise GeneratorCountError(f"endomorphism of B_{endo.n} applied to element of B_{poly.n}")
    n = endo.n
    cache: Dict[Word, NCPoly] = {(): NCPoly.one(n)}

    def word_image(word: Word) -> NCPoly:
        cached = cache.get(word)
        if cached is None:
            cached = word_image(word[:-1]) * endo.images[word[-1] - 1]
            cache[word] = cached
        return cached

    terms: Dict[Word, Fraction] = {}
    for word, coef in poly.items():
        for image_word, image_coef in word_image(word)._terms.items():
            accumulate(terms, image_word, coef * image_coef)
    return NCPoly._raw(terms, n)


def nc_degree_in(poly: NCPoly, variables: Iterable[int]) -> Union[int, float]:
    return poly.degree_in(variables)
