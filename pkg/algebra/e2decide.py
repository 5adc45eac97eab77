"""
Membership in E2 and GL2(F)·E2 over a bivariate polynomial ring.

The decider reduces a unimodular 2×2 matrix by elementary row and column moves.
Each move is chosen to strictly decrease

    measure(m) = Σ over nonzero entries of (total degree + 1)

and the parameter of a move comes from graded division of one entry by another
in the same row or column, solved top degree first by exact linear algebra
(sympy DomainMatrix over QQ). Once an entry is a nonzero constant the matrix is
finished off explicitly, ending in diag(α, 1/α), whose Whitehead factorization
closes the certificate.

An IN certificate lists elementary factors whose product is the input, and is
re-multiplied before it is returned. A NOT-IN certificate carries the matrix
at which no move decreases the measure, together with the moves that led there.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple
import logging

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from algebra.errors import CertificateError, RingMismatchError
from algebra.expr import parse_comm
from algebra.matrix import Matrix
from algebra.ncpoly import ScalarLike, to_scalar
from algebra.uenv import CommPoly, Ring, monomials_of_degree

# Configure logging
logger = logging.getLogger(__name__)


IN = "IN"
NOT_IN = "NOT-IN"
LEFT = "left"
RIGHT = "right"
POSITIONS = ((1, 2), (2, 1))

Position = Tuple[int, int]


# ===== DATA TYPES =====

def elementary2(position: Position, parameter: CommPoly) -> Matrix:
    """E_12(p) or E_21(p) over the ring of `parameter`."""
    ring = parameter.ring
    return Matrix.elementary(2, position[0], position[1], parameter, CommPoly.one(ring), CommPoly.zero(ring))


@dataclass(frozen=True)
class ElementaryFactor:
    position: Position
    parameter: CommPoly

    def matrix(self) -> Matrix:
        return elementary2(self.position, self.parameter)

    def inverse(self) -> "ElementaryFactor":
        return ElementaryFactor(self.position, -self.parameter)

    def to_dict(self) -> Dict[str, Any]:
        return {"position": list(self.position), "parameter": str(self.parameter)}

    def __str__(self) -> str:
        return f"E{self.position[0]}{self.position[1]}({self.parameter})"


@dataclass(frozen=True)
class ReductionStep:
    """One applied move: left multiplies rows, right multiplies columns."""
    side: str
    position: Position
    parameter: CommPoly
    measure_before: int
    measure_after: int

    def apply(self, m: Matrix) -> Matrix:
        return apply_move(m, self.side, self.position, self.parameter)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "side": self.side,
            "position": list(self.position),
            "parameter": str(self.parameter),
            "measure_before": self.measure_before,
            "measure_after": self.measure_after,
        }


@dataclass
class E2Certificate:
    """
    Outcome of an E2 or GL2(F)·E2 decision.

    For IN, `scalar` (GL2(F)·E2 only) stands for a leading diag(scalar, 1) and
    the product of `factors` after it equals `matrix`. For NOT-IN, `witness` is
    the stuck matrix reached from `matrix` by the moves in `log`.
    """
    verdict: str
    ring: Ring
    matrix: Matrix
    factors: List[ElementaryFactor] = field(default_factory=list)
    scalar: Optional[Fraction] = None
    witness: Optional[Matrix] = None
    reason: str = ""
    log: List[ReductionStep] = field(default_factory=list)

    @property
    def is_in(self) -> bool:
        return self.verdict == IN

    def product(self) -> Matrix:
        return certificate_product(self.ring, self.factors, self.scalar)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict,
            "ring": list(self.ring),
            "matrix": self.matrix.to_strings(),
            "factors": [factor.to_dict() for factor in self.factors],
            "scalar": None if self.scalar is None else str(self.scalar),
            "witness": None if self.witness is None else self.witness.to_strings(),
            "reason": self.reason,
            "log": [step.to_dict() for step in self.log],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "E2Certificate":
        """Rebuild a certificate from its serialized form."""
        ring = tuple(data["ring"])

        def matrix(rows):
            return Matrix([[parse_comm(entry, ring) for entry in row] for row in rows])

        return cls(
            verdict=data["verdict"],
            ring=ring,
            matrix=matrix(data["matrix"]),
            factors=[
                ElementaryFactor(tuple(item["position"]), parse_comm(item["parameter"], ring))
                for item in data.get("factors", [])
            ],
            scalar=None if data.get("scalar") is None else to_scalar(data["scalar"]),
            witness=None if data.get("witness") is None else matrix(data["witness"]),
            reason=data.get("reason", ""),
            log=[
                ReductionStep(
                    item["side"],
                    tuple(item["position"]),
                    parse_comm(item["parameter"], ring),
                    item["measure_before"],
                    item["measure_after"],
                )
                for item in data.get("log", [])
            ],
        )


# ===== MATRIX HELPERS =====

def matrix_ring(m: Matrix) -> Ring:
    """Common ring of a 2×2 matrix of CommPoly entries."""
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2×2 matrix, got shape {m.shape}")
    entries = m.entries()
    if not all(isinstance(entry, CommPoly) for entry in entries):
        raise RingMismatchError("matrix entries must be commutative polynomials")
    ring = entries[0].ring
    if any(entry.ring != ring for entry in entries):
        raise RingMismatchError("matrix entries live in different rings")
    return ring


def det2(m: Matrix) -> CommPoly:
    matrix_ring(m)
    return m.det2()


def measure(m: Matrix) -> int:
    return sum(int(entry.total_degree()) + 1 for entry in m.entries() if entry)


def identity2(ring: Ring) -> Matrix:
    return Matrix.identity(2, CommPoly.one(ring), CommPoly.zero(ring))


def is_identity(m: Matrix) -> bool:
    return m == identity2(m[0, 0].ring)


def apply_move(m: Matrix, side: str, position: Position, parameter: CommPoly) -> Matrix:
    if side == LEFT:
        return elementary2(position, parameter) * m
    return m * elementary2(position, parameter)


def certificate_product(ring: Ring, factors: Sequence[ElementaryFactor],
                        scalar: Optional[ScalarLike] = None) -> Matrix:
    result = identity2(ring)
    if scalar is not None:
        result = Matrix.diagonal([CommPoly.constant(scalar, ring), CommPoly.one(ring)], CommPoly.zero(ring))
    for factor in factors:
        result = result * factor.matrix()
    return result


def _constant_entries(m: Matrix) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(2) for j in range(2) if m[i, j] and m[i, j].is_constant()]


# ===== GRADED DIVISION =====

def _solve_homogeneous(target: CommPoly, pivot_top: CommPoly, degree: int) -> Optional[CommPoly]:
    """Homogeneous h of the given degree with h·pivot_top = target, or None."""
    nvars = len(target.ring)
    lead_target, lead_pivot = target.leading_exponent(), pivot_top.leading_exponent()
    if any(a < b for a, b in zip(lead_target, lead_pivot)):
        return None
    unknowns = monomials_of_degree(degree, nvars)
    rows = monomials_of_degree(target.total_degree(), nvars)
    row_index = {exps: r for r, exps in enumerate(rows)}
    width = len(unknowns) + 1
    system = [[QQ(0)] * width for _ in rows]
    for column, exps in enumerate(unknowns):
        for pivot_exps, coef in pivot_top.items():
            product = tuple(a + b for a, b in zip(exps, pivot_exps))
            system[row_index[product]][column] += QQ(coef.numerator, coef.denominator)
    for exps, coef in target.items():
        system[row_index[exps]][-1] = QQ(coef.numerator, coef.denominator)

    reduced, pivots = DomainMatrix(system, (len(rows), width), QQ).rref()
    if len(unknowns) in pivots:
        return None
    values = reduced.to_Matrix()
    terms = {}
    for r, column in enumerate(pivots):
        value = values[r, width - 1]
        if value:
            terms[unknowns[column]] = Fraction(int(value.p), int(value.q))
    return CommPoly(target.ring, terms)


def graded_quotient(a: CommPoly, c: CommPoly) -> CommPoly:
    """
    q with deg(a - q·c) as small as top-degree-first division allows.

    Returns zero when not even the top-degree part of `a` is divisible.
    """
    quotient = CommPoly.zero(a.ring)
    if not c:
        return quotient
    pivot_degree = c.total_degree()
    pivot_top = c.homogeneous_part(pivot_degree)
    remainder = a
    while remainder and remainder.total_degree() >= pivot_degree:
        top = remainder.total_degree()
        h = _solve_homogeneous(remainder.homogeneous_part(top), pivot_top, top - pivot_degree)
        if h is None:
            break
        quotient = quotient + h
        remainder = remainder - h * c
    return quotient


# ===== MOVE SEARCH =====

def _candidates() -> List[Tuple[str, Position, Tuple[int, int], Tuple[int, int]]]:
    """(side, position, target, pivot) for every move family, 0-based entries."""
    moves = []
    for k in (0, 1):
        moves.append((LEFT, (1, 2), (0, k), (1, k)))
        moves.append((LEFT, (2, 1), (1, k), (0, k)))
        moves.append((RIGHT, (1, 2), (k, 1), (k, 0)))
        moves.append((RIGHT, (2, 1), (k, 0), (k, 1)))
    return moves


MOVE_FAMILIES = _candidates()


def find_reducing_move(m: Matrix) -> Optional[Tuple[ReductionStep, Matrix]]:
    """Best measure-decreasing move, first enumerated on ties; None if stuck."""
    current = measure(m)
    best: Optional[Tuple[ReductionStep, Matrix]] = None
    for side, position, target, pivot in MOVE_FAMILIES:
        a, c = m[target], m[pivot]
        if not a or not c:
            continue
        q = graded_quotient(a, c)
        if not q:
            continue
        moved = apply_move(m, side, position, -q)
        after = measure(moved)
        if after < current and (best is None or after < best[0].measure_after):
            best = (ReductionStep(side, position, -q, current, after), moved)
    return best


# ===== WHITEHEAD FACTORIZATION =====

def whitehead_factor(alpha: ScalarLike, ring: Ring) -> List[ElementaryFactor]:
    """
    Elementary factors of diag(α, 1/α):

        E12(α) E21(-1/α) E12(α) · E12(-1) E21(1) E12(-1)

    Raises:
        ValueError: alpha = 0
    """
    alpha = to_scalar(alpha)
    if not alpha:
        raise ValueError("diag(alpha, 1/alpha) needs alpha != 0")
    if alpha == 1:
        return []
    params = [(POSITIONS[0], alpha), (POSITIONS[1], -1 / alpha), (POSITIONS[0], alpha),
              (POSITIONS[0], Fraction(-1)), (POSITIONS[1], Fraction(1)), (POSITIONS[0], Fraction(-1))]
    factors = [ElementaryFactor(position, CommPoly.constant(value, ring)) for position, value in params]
    expected = Matrix.diagonal([CommPoly.constant(alpha, ring), CommPoly.constant(1 / alpha, ring)],
                               CommPoly.zero(ring))
    if certificate_product(ring, factors) != expected:
        raise CertificateError(f"Whitehead factorization of diag({alpha}, {1 / alpha}) does not multiply back")
    return factors


# ===== DECIDERS =====

def _record(m: Matrix, side: str, position: Position, parameter: CommPoly,
            log: List[ReductionStep]) -> Matrix:
    if not parameter:
        return m
    moved = apply_move(m, side, position, parameter)
    log.append(ReductionStep(side, position, parameter, measure(m), measure(moved)))
    return moved


def _finish(m: Matrix, log: List[ReductionStep]) -> Tuple[Matrix, Fraction]:
    """Clear a matrix with a nonzero constant entry down to diag(α, 1/α)."""
    ring = m[0, 0].ring
    one = CommPoly.one(ring)
    n11, n12, n21, n22 = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    if not (n11 and n11.is_constant()):
        if n12 and n12.is_constant():
            m = _record(m, RIGHT, (2, 1), (one - n11) / n12.constant_value(), log)
        elif n21 and n21.is_constant():
            m = _record(m, LEFT, (1, 2), (one - n11) / n21.constant_value(), log)
        else:
            m = _record(m, LEFT, (1, 2), (one - n12) / n22.constant_value(), log)
            m = _record(m, RIGHT, (2, 1), one - m[0, 0], log)
    alpha = m[0, 0].constant_value()
    m = _record(m, LEFT, (2, 1), -m[1, 0] / alpha, log)
    m = _record(m, RIGHT, (1, 2), -m[0, 1] / alpha, log)
    return m, alpha


def _assemble(ring: Ring, log: List[ReductionStep], alpha: Fraction) -> List[ElementaryFactor]:
    """Invert the recorded moves around the Whitehead factors of the final diagonal."""
    left = [ElementaryFactor(step.position, -step.parameter) for step in log if step.side == LEFT]
    right = [ElementaryFactor(step.position, -step.parameter) for step in log if step.side == RIGHT]
    return left + whitehead_factor(alpha, ring) + list(reversed(right))


def decide_e2(m: Matrix) -> E2Certificate:
    """
    Decide whether a 2×2 matrix over a bivariate ring is a product of elementary matrices.

    Args:
        m: matrix of CommPoly entries over one ring

    Returns:
        E2Certificate; IN certificates are re-multiplied before being returned

    Raises:
        RingMismatchError: entries from different rings
        CertificateError: an IN certificate failed its own product check
    """
    ring = matrix_ring(m)
    if m.det2() != CommPoly.one(ring):
        logger.warning("E2 decision: det = %s is not 1", m.det2())
        return E2Certificate(NOT_IN, ring, m, witness=m, reason="det != 1")

    log: List[ReductionStep] = []
    current = m
    while not _constant_entries(current):
        found = find_reducing_move(current)
        if found is None:
            logger.warning("E2 decision: NOT-IN, stuck at measure %d after %d moves", measure(current), len(log))
            return E2Certificate(NOT_IN, ring, m, witness=current,
                                 reason="no elementary move decreases the degree measure", log=log)
        step, current = found
        logger.info("E2 move %s E%d%d(%s): measure %d -> %d", step.side, step.position[0], step.position[1],
                    step.parameter, step.measure_before, step.measure_after)
        log.append(step)

    current, alpha = _finish(current, log)
    factors = _assemble(ring, log, alpha)
    certificate = E2Certificate(IN, ring, m, factors=factors, log=log)
    if certificate.product() != m:
        raise CertificateError(f"elementary factors do not multiply back to {m}")
    logger.info("E2 decision: IN with %d factors", len(factors))
    return certificate


def decide_ge2f(m: Matrix) -> E2Certificate:
    """GL2(F)·E2 membership: det must be a nonzero constant d, then decide diag(1/d, 1)·m."""
    ring = matrix_ring(m)
    det = m.det2()
    if not det or not det.is_constant():
        logger.warning("GL2(F)E2 decision: det = %s is not a nonzero constant", det)
        return E2Certificate(NOT_IN, ring, m, witness=m, reason="det is not a nonzero constant")
    d = det.constant_value()
    inner = decide_e2(Matrix([[entry / d for entry in m.rows[0]], list(m.rows[1])]))
    certificate = E2Certificate(inner.verdict, ring, m, factors=inner.factors, scalar=d,
                                witness=inner.witness, reason=inner.reason, log=inner.log)
    if certificate.is_in and certificate.product() != m:
        raise CertificateError(f"GL2(F)E2 factors do not multiply back to {m}")
    return certificate


def verify_certificate(certificate: E2Certificate) -> bool:
    """
    Independent check of a certificate.

    IN: the factors (after the optional scalar) multiply to the matrix.
    NOT-IN: either det rules membership out, or the logged moves lead from the
    matrix to the witness, the witness has determinant 1, no nonzero constant
    entry, and no measure-decreasing move.
    """
    ring = certificate.ring
    if certificate.is_in:
        return certificate.product() == certificate.matrix
    if certificate.verdict != NOT_IN or certificate.witness is None:
        return False

    start = certificate.matrix
    if certificate.scalar is not None:
        start = Matrix([[entry / certificate.scalar for entry in start.rows[0]], list(start.rows[1])])
    if start.det2() != CommPoly.one(ring):
        return not certificate.log and certificate.witness == certificate.matrix

    current = start
    for step in certificate.log:
        current = step.apply(current)
    if current != certificate.witness:
        return False
    if current.det2() != CommPoly.one(ring) or _constant_entries(current):
        return False
    return find_reducing_move(current) is None
