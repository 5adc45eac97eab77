"""
Enveloping algebras and commutative polynomial rings.

TensorPoly models U(B) = B'⊗B: a term (w, v) stands for w'⊗v, where B' is the
opposite algebra, so left factors multiply in reversed order:

    (w1'⊗v1)(w2'⊗v2) = (w2 w1)'⊗(v1 v2)

CommPoly is a sparse commutative polynomial over an explicitly named ring. The
rings used across the engine are registered here together with their
enveloping rings: U(A) uses l1..l3 for x_i'⊗1 and r1..r3 for 1⊗x_i, U(F[y3])
uses u = y3'⊗1 and v = 1⊗y3, U(F[x3]) uses l3, r3.
"""

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union
import logging

from algebra.errors import GeneratorCountError, RingMismatchError
from algebra.ncpoly import (
    DEFAULT_GENERATORS,
    NEG_INF,
    NCPoly,
    ScalarLike,
    Word,
    accumulate,
    format_linear_combination,
    format_word,
    generator_name,
    to_scalar,
)

# Configure logging
logger = logging.getLogger(__name__)


Ring = Tuple[str, ...]
Exponents = Tuple[int, ...]

RING_A: Ring = ("x1", "x2", "x3")
RING_UA: Ring = ("l1", "l2", "l3", "r1", "r2", "r3")
RING_Y3: Ring = ("y3",)
RING_UV: Ring = ("u", "v")
RING_X3: Ring = ("x3",)
RING_UX3: Ring = ("l3", "r3")

# ring -> (left names, right names) of its enveloping algebra
ENVELOPES: Dict[Ring, Tuple[Ring, Ring]] = {
    RING_A: (("l1", "l2", "l3"), ("r1", "r2", "r3")),
    RING_Y3: (("u",), ("v",)),
    RING_X3: (("l3",), ("r3",)),
}


def envelope_ring(ring: Ring) -> Ring:
    """Variable names of U(ring), left bank first."""
    if ring not in ENVELOPES:
        raise RingMismatchError(f"no enveloping ring registered for {ring}")
    left, right = ENVELOPES[ring]
    return left + right


def monomials_of_degree(degree: int, nvars: int) -> List[Exponents]:
    """All exponent vectors of the given total degree, in a fixed order."""
    result = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for index in combo:
            exps[index] += 1
        result.append(tuple(exps))
    return result


# ===== COMMUTATIVE POLYNOMIALS =====

class CommPoly:
    """
    Exact sparse polynomial over a named commutative ring.

    Args:
        ring: ordered variable names; operations between different rings raise
        terms: mapping exponent vector -> coefficient
    """

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Sequence[str], terms: Optional[Mapping[Exponents, ScalarLike]] = None):
        ring = tuple(ring)
        cleaned: Dict[Exponents, Fraction] = {}
        for exps, coef in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(ring) or any(e < 0 for e in exps):
                raise RingMismatchError(f"exponent vector {exps} does not fit ring {ring}")
            accumulate(cleaned, exps, to_scalar(coef))
        self.ring: Ring = ring
        self._terms = cleaned
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, ring: Ring, terms: Dict[Exponents, Fraction]) -> "CommPoly":
        poly = cls.__new__(cls)
        poly.ring = ring
        poly._terms = terms
        poly._hash = None
        return poly

    # ----- constructors -----

    @classmethod
    def zero(cls, ring: Ring) -> "CommPoly":
        return cls._raw(tuple(ring), {})

    @classmethod
    def one(cls, ring: Ring) -> "CommPoly":
        return cls.constant(1, ring)

    @classmethod
    def constant(cls, value: ScalarLike, ring: Ring) -> "CommPoly":
        ring = tuple(ring)
        value = to_scalar(value)
        return cls._raw(ring, {(0,) * len(ring): value} if value else {})

    @classmethod
    def variable(cls, name: str, ring: Ring) -> "CommPoly":
        ring = tuple(ring)
        if name not in ring:
            raise RingMismatchError(f"variable {name!r} is not in ring {ring}")
        exps = tuple(1 if var == name else 0 for var in ring)
        return cls._raw(ring, {exps: Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], coef: ScalarLike, ring: Ring) -> "CommPoly":
        return cls(ring, {tuple(exps): coef})

    # ----- inspection -----

    def items(self) -> List[Tuple[Exponents, Fraction]]:
        """Terms by ascending total degree, lexicographically largest first within a degree."""
        return sorted(self._terms.items(), key=lambda item: (sum(item[0]), tuple(-e for e in item[0])))

    def exponents(self) -> Iterator[Exponents]:
        return iter(self._terms)

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def total_degree(self) -> Union[int, float]:
        if not self._terms:
            return NEG_INF
        return max(sum(exps) for exps in self._terms)

    def degree_in(self, name: str) -> Union[int, float]:
        index = self._index(name)
        if not self._terms:
            return NEG_INF
        return max(exps[index] for exps in self._terms)

    def is_constant(self) -> bool:
        return all(not any(exps) for exps in self._terms)

    def constant_value(self) -> Fraction:
        return self._terms.get((0,) * len(self.ring), Fraction(0))

    def homogeneous_part(self, degree: int) -> "CommPoly":
        return CommPoly._raw(self.ring, {e: c for e, c in self._terms.items() if sum(e) == degree})

    def leading_exponent(self) -> Exponents:
        """Lexicographically largest exponent vector among the top-degree terms."""
        top = self.total_degree()
        return max(e for e in self._terms if sum(e) == top)

    def variables_used(self) -> List[str]:
        return [name for i, name in enumerate(self.ring) if any(e[i] for e in self._terms)]

    def _index(self, name: str) -> int:
        try:
            return self.ring.index(name)
        except ValueError:
            raise RingMismatchError(f"variable {name!r} is not in ring {self.ring}") from None

    # ----- arithmetic -----

    def _coerce(self, other) -> "CommPoly":
        if isinstance(other, CommPoly):
            if other.ring != self.ring:
                raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return CommPoly.constant(other, self.ring)
        return NotImplemented

    def __add__(self, other) -> "CommPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for exps, coef in other._terms.items():
            accumulate(terms, exps, coef)
        return CommPoly._raw(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "CommPoly":
        return CommPoly._raw(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "CommPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "CommPoly":
        return (-self) + other

    def scale(self, factor: ScalarLike) -> "CommPoly":
        factor = to_scalar(factor)
        if not factor:
            return CommPoly.zero(self.ring)
        return CommPoly._raw(self.ring, {e: c * factor for e, c in self._terms.items()})

    def __mul__(self, other) -> "CommPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: Dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                accumulate(terms, tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
        return CommPoly._raw(self.ring, terms)

    def __rmul__(self, other) -> "CommPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other) -> "CommPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(Fraction(1) / to_scalar(other))
        return NotImplemented

    def __pow__(self, exponent: int) -> "CommPoly":
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = CommPoly.one(self.ring)
        for _ in range(exponent):
            result = result * self
        return result

    # ----- ring maps -----

    def substitute(self, images: Mapping[str, "CommPoly"], target: Ring) -> "CommPoly":
        """
        Ring homomorphism sending each variable to images[name] in `target`.

        Variables without an image must also be variables of `target` and are
        kept; every image must live in `target`.
        """
        target = tuple(target)
        columns = []
        for name in self.ring:
            image = images.get(name)
            if image is None:
                image = CommPoly.variable(name, target)
            elif image.ring != target:
                raise RingMismatchError(f"image of {name} lives in {image.ring}, expected {target}")
            columns.append(image)
        powers: List[List[CommPoly]] = [[CommPoly.one(target)] for _ in columns]

        def power(index: int, exponent: int) -> CommPoly:
            cache = powers[index]
            while len(cache) <= exponent:
                cache.append(cache[-1] * columns[index])
            return cache[exponent]

        terms: Dict[Exponents, Fraction] = {}
        for exps, coef in self._terms.items():
            product = CommPoly.constant(coef, target)
            for index, e in enumerate(exps):
                if e:
                    product = product * power(index, e)
            for out_exps, out_coef in product._terms.items():
                accumulate(terms, out_exps, out_coef)
        return CommPoly._raw(target, terms)

    def rename(self, mapping: Mapping[str, str], target: Ring) -> "CommPoly":
        """Relabel variables into `target`; unmapped variables keep their names."""
        target = tuple(target)
        positions = []
        for name in self.ring:
            new_name = mapping.get(name, name)
            if new_name not in target:
                raise RingMismatchError(f"variable {new_name!r} is not in ring {target}")
            positions.append(target.index(new_name))
        terms: Dict[Exponents, Fraction] = {}
        for exps, coef in self._terms.items():
            out = [0] * len(target)
            for index, e in zip(positions, exps):
                out[index] += e
            accumulate(terms, tuple(out), coef)
        return CommPoly._raw(target, terms)

    def restrict(self, target: Ring) -> "CommPoly":
        """Set every variable outside `target` to zero and re-home the result in `target`."""
        target = tuple(target)
        kept = [self._index(name) for name in target]
        dropped = [i for i in range(len(self.ring)) if i not in kept]
        terms: Dict[Exponents, Fraction] = {}
        for exps, coef in self._terms.items():
            if any(exps[i] for i in dropped):
                continue
            accumulate(terms, tuple(exps[i] for i in kept), coef)
        return CommPoly._raw(target, terms)

    # ----- comparison and display -----

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = CommPoly.constant(other, self.ring)
        if not isinstance(other, CommPoly):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def format_monomial(self, exps: Exponents) -> str:
        pieces = []
        for name, e in zip(self.ring, exps):
            if e == 1:
                pieces.append(name)
            elif e > 1:
                pieces.append(f"{name}^{e}")
        return "*".join(pieces) or "1"

    def __str__(self) -> str:
        return format_linear_combination([(self.format_monomial(e), c) for e, c in self.items()])

    def __repr__(self) -> str:
        return f"CommPoly({str(self)!r}, ring={self.ring})"


def comm_add(a: CommPoly, b: CommPoly) -> CommPoly:
    return a + b


def comm_mul(a: CommPoly, b: CommPoly) -> CommPoly:
    return a * b


def comm_scale(a: CommPoly, factor: ScalarLike) -> CommPoly:
    return a.scale(factor)


def total_degree(a: CommPoly) -> Union[int, float]:
    return a.total_degree()


# ===== THE ENVELOPING ALGEBRA U(B) =====

Pair = Tuple[Word, Word]


class TensorPoly:
    """
    Element of U(B_n) as a sparse map (left word, right word) -> coefficient.

    The left word is stored in its natural reading; the reversal of B' is
    applied inside multiplication.
    """

    __slots__ = ("_n", "_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Pair, ScalarLike]] = None, n: int = DEFAULT_GENERATORS):
        cleaned: Dict[Pair, Fraction] = {}
        for (left, right), coef in (terms or {}).items():
            left, right = tuple(left), tuple(right)
            for letter in left + right:
                if not 1 <= letter <= n:
                    raise GeneratorCountError(f"generator {letter} outside 1..{n}")
            accumulate(cleaned, (left, right), to_scalar(coef))
        self._n = n
        self._terms = cleaned
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, terms: Dict[Pair, Fraction], n: int) -> "TensorPoly":
        poly = cls.__new__(cls)
        poly._n = n
        poly._terms = terms
        poly._hash = None
        return poly

    # ----- constructors -----

    @classmethod
    def zero(cls, n: int = DEFAULT_GENERATORS) -> "TensorPoly":
        return cls._raw({}, n)

    @classmethod
    def one(cls, n: int = DEFAULT_GENERATORS) -> "TensorPoly":
        return cls._raw({((), ()): Fraction(1)}, n)

    @classmethod
    def constant(cls, value: ScalarLike, n: int = DEFAULT_GENERATORS) -> "TensorPoly":
        value = to_scalar(value)
        return cls._raw({((), ()): value} if value else {}, n)

    @classmethod
    def pure(cls, left: Sequence[int], right: Sequence[int], coef: ScalarLike = 1,
             n: int = DEFAULT_GENERATORS) -> "TensorPoly":
        """The single term coef * (left)'⊗(right)."""
        return cls({(tuple(left), tuple(right)): coef}, n)

    @classmethod
    def tensor(cls, left: NCPoly, right: NCPoly) -> "TensorPoly":
        """left'⊗right, expanded bilinearly."""
        if left.n != right.n:
            raise GeneratorCountError("tensor legs live in different free algebras")
        terms: Dict[Pair, Fraction] = {}
        for w, a in left.items():
            for v, b in right.items():
                accumulate(terms, (w, v), a * b)
        return cls._raw(terms, left.n)

    @classmethod
    def left_of(cls, poly: NCPoly) -> "TensorPoly":
        """poly'⊗1"""
        return cls._raw({(w, ()): c for w, c in poly.items()}, poly.n)

    @classmethod
    def right_of(cls, poly: NCPoly) -> "TensorPoly":
        """1⊗poly"""
        return cls._raw({((), v): c for v, c in poly.items()}, poly.n)

    # ----- inspection -----

    @property
    def n(self) -> int:
        return self._n

    def items(self) -> List[Tuple[Pair, Fraction]]:
        return sorted(
            self._terms.items(),
            key=lambda item: (len(item[0][0]) + len(item[0][1]), item[0][0], item[0][1]),
        )

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def letters(self):
        return {letter for (w, v) in self._terms for letter in w + v}

    # ----- arithmetic -----

    def _coerce(self, other) -> "TensorPoly":
        if isinstance(other, TensorPoly):
            if other._n != self._n:
                raise GeneratorCountError(f"cannot combine U(B_{self._n}) and U(B_{other._n})")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return TensorPoly.constant(other, self._n)
        return NotImplemented

    def __add__(self, other) -> "TensorPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for pair, coef in other._terms.items():
            accumulate(terms, pair, coef)
        return TensorPoly._raw(terms, self._n)

    __radd__ = __add__

    def __neg__(self) -> "TensorPoly":
        return TensorPoly._raw({p: -c for p, c in self._terms.items()}, self._n)

    def __sub__(self, other) -> "TensorPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "TensorPoly":
        return (-self) + other

    def scale(self, factor: ScalarLike) -> "TensorPoly":
        factor = to_scalar(factor)
        if not factor:
            return TensorPoly.zero(self._n)
        return TensorPoly._raw({p: c * factor for p, c in self._terms.items()}, self._n)

    def __mul__(self, other) -> "TensorPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: Dict[Pair, Fraction] = {}
        for (w1, v1), a in self._terms.items():
            for (w2, v2), b in other._terms.items():
                accumulate(terms, (w2 + w1, v1 + v2), a * b)
        return TensorPoly._raw(terms, self._n)

    def __rmul__(self, other) -> "TensorPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> "TensorPoly":
        result = TensorPoly.one(self._n)
        for _ in range(exponent):
            result = result * self
        return result

    # ----- comparison and display -----

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = TensorPoly.constant(other, self._n)
        if not isinstance(other, TensorPoly):
            return NotImplemented
        return self._n == other._n and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, frozenset(self._terms.items())))
        return self._hash

    def _format_pair(self, left: Word, right: Word) -> str:
        if not left and not right:
            return "1"
        if not left:
            left_text = "1"
        elif len(left) == 1:
            left_text = generator_name(left[0], self._n) + "'"
        else:
            left_text = f"({format_word(left, self._n)})'"
        right_text = format_word(right, self._n) if len(set(right)) <= 1 else f"({format_word(right, self._n)})"
        return f"{left_text}⊗{right_text}"

    def __str__(self) -> str:
        return format_linear_combination([(self._format_pair(w, v), c) for (w, v), c in self.items()])

    def __repr__(self) -> str:
        return f"TensorPoly({str(self)!r}, n={self._n})"


# ===== OPERATIONS =====

def tensor_mul(a: TensorPoly, b: TensorPoly) -> TensorPoly:
    return a * b


def tensor_action(poly: NCPoly, a: TensorPoly) -> NCPoly:
    """Right action of U(B) on B: poly·(w'⊗v) = w poly v."""
    if poly.n != a.n:
        raise GeneratorCountError("action across different free algebras")
    terms: Dict[Word, Fraction] = {}
    for (w, v), c in a._terms.items():
        for word, coef in poly.items():
            accumulate(terms, w + word + v, c * coef)
    return NCPoly._raw(terms, poly.n)


def lambda_eval(a: TensorPoly) -> NCPoly:
    """λ(Σ c w'⊗v) = Σ c wv."""
    terms: Dict[Word, Fraction] = {}
    for (w, v), c in a._terms.items():
        accumulate(terms, w + v, c)
    return NCPoly._raw(terms, a.n)


def universal_derivation(poly: NCPoly) -> TensorPoly:
    """Δ(f) = f'⊗1 - 1⊗f."""
    return TensorPoly.left_of(poly) - TensorPoly.right_of(poly)
