"""
End-to-end wildness certification.

    certify_theorem1    ν(J2(φσ)) ∉ E2  =>  φ is wild (IN is inconclusive)
    certify_corollary2  φ = (f, g, z) with f, g of degree ≤ 1 in x, y:
                        φ tame  <=>  J2(φ) ∈ GL2(F)·E2
    demo_anick          the five checks that make the Anick automorphism wild
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Union
import logging

from algebra.autgroup import (
    ElementaryAuto,
    TameWord,
    anick,
    anick_normalizer,
    commutative_jacobian,
    corrupted_normalizer,
)
from algebra.e2decide import E2Certificate, decide_e2, decide_ge2f, verify_certificate
from algebra.errors import CertificateError, PreconditionError
from algebra.fox import endo_on_matrix, j2
from algebra.matrix import Matrix
from algebra.morphisms import NU, PI, nu_u
from algebra.ncpoly import DEFAULT_GENERATORS, Endomorphism, NCPoly
from algebra.uenv import RING_UV, CommPoly, TensorPoly

# Configure logging
logger = logging.getLogger(__name__)


CERTIFIED_WILD = "CertifiedWild"
TAME_WITH_DECOMPOSITION = "TameWithDecomposition"
INCONCLUSIVE = "Inconclusive"


@dataclass
class WildnessVerdict:
    """Outcome of a certification pipeline."""
    status: str
    input_echo: str
    certificate: Optional[E2Certificate] = None
    decomposition: Optional[TameWord] = None
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status,
            "input": self.input_echo,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "decomposition": str(self.decomposition) if self.decomposition is not None else None,
            "notes": list(self.notes),
        }


# ===== NORMALIZED JACOBIAN TEST =====

def _check_normalized(images: List[CommPoly]) -> None:
    for i, image in enumerate(images, start=1):
        expected = CommPoly.variable(f"x{i}", image.ring)
        if image != expected:
            raise PreconditionError(
                f"normalization failed: pi sends y{i} to {image}, expected x{i}"
            )


def _nu_j2(phi: Union[Endomorphism, TameWord], normalizer: Optional[TameWord]) -> Matrix:
    """ν(J2(φσ)) after checking π(φσ) = id."""
    normalizer = normalizer or TameWord()
    if isinstance(phi, TameWord):
        word = phi + normalizer
        _, chi = commutative_jacobian(word, PI)
        _check_normalized(list(chi.images))
        nu_jacobian, _ = commutative_jacobian(word, NU)
        return nu_jacobian.block(2)

    psi = phi.compose(normalizer.evaluate()) if len(normalizer) else phi
    _check_normalized([PI.apply(image) for image in psi.images])
    return j2(psi).map(nu_u)


def certify_theorem1(phi: Union[Endomorphism, TameWord],
                     normalizer: Optional[TameWord] = None) -> WildnessVerdict:
    """
    Wildness test for an automorphism of F<x, y, z>.

    Args:
        phi: an automorphism, given explicitly or as a tame word over B
        normalizer: tame word σ with π(φσ) = id; identity when omitted

    Returns:
        CertifiedWild when ν(J2(φσ)) is not in E2, otherwise Inconclusive

    Raises:
        PreconditionError: π(φσ) is not the identity
    """
    echo = str(phi)
    logger.info("normalized Jacobian test for %s", echo)
    matrix = _nu_j2(phi, normalizer)
    certificate = decide_e2(matrix)
    if certificate.is_in:
        return WildnessVerdict(INCONCLUSIVE, echo, certificate,
                               notes=["nu(J2) is in E2; the test gives no conclusion"])
    if not verify_certificate(certificate):
        raise CertificateError("NOT-IN certificate failed independent verification")
    logger.warning("%s is wild: nu(J2) not in E2", echo)
    return WildnessVerdict(CERTIFIED_WILD, echo, certificate, notes=[certificate.reason])


# ===== RESTRICTED SHAPE (f, g, z) =====

def _check_corollary2_shape(phi: Endomorphism) -> None:
    if phi.n != DEFAULT_GENERATORS:
        raise PreconditionError("the restricted-shape test applies to automorphisms of F<x, y, z>")
    if phi.image(3) != NCPoly.generator(3):
        raise PreconditionError(f"third coordinate must be z, got {phi.image(3)}")
    for i in (1, 2):
        if phi.image(i).degree_in((1, 2)) > 1:
            raise PreconditionError(f"coordinate {i} has degree > 1 in x, y: {phi.image(i)}")


def tensor_to_uv(entry: TensorPoly) -> CommPoly:
    """Identify an element of U(F[z]) inside U(B) with a polynomial in u, v."""
    if entry.letters() - {3}:
        raise PreconditionError(f"J2 entry {entry} does not lie in F[z'⊗1, 1⊗z]")
    return nu_u(entry)


def _sandwich(parameter: CommPoly, middle: int) -> NCPoly:
    """Σ H_ab z^a y_middle z^b for H = Σ H_ab u^a v^b."""
    terms = {}
    for (a, b), coef in parameter.items():
        terms[(3,) * a + (middle,) + (3,) * b] = coef
    return NCPoly(terms)


def _z_part(poly: NCPoly) -> NCPoly:
    return NCPoly({word: coef for word, coef in poly.items() if set(word) <= {3}})


def decomposition_from_certificate(phi: Endomorphism, certificate: E2Certificate) -> TameWord:
    """
    Tame word for φ from a GL2(F)·E2 certificate of J2(φ).

    diag(d, 1) becomes σ(1, d, 0), right E21(H) becomes σ(1, 1, Σ H_ab z^a y z^b)
    and right E12(H) becomes σ(2, 1, Σ H_ab z^a x z^b). The remaining factor
    (x + a(z), y + b(z), z) is read off θ⁻¹φ.
    """
    factors = []
    if certificate.scalar is not None and certificate.scalar != 1:
        factors.append(ElementaryAuto(1, certificate.scalar, NCPoly.zero()))
    for factor in certificate.factors:
        if factor.position == (2, 1):
            factors.append(ElementaryAuto(1, 1, _sandwich(factor.parameter, 2)))
        else:
            factors.append(ElementaryAuto(2, 1, _sandwich(factor.parameter, 1)))
    theta = TameWord(tuple(factors))
    residual = theta.inverse().evaluate().compose(phi)
    a = residual.image(1) - NCPoly.generator(1)
    b = residual.image(2) - NCPoly.generator(2)
    if a != _z_part(a) or b != _z_part(b) or residual.image(3) != NCPoly.generator(3):
        raise CertificateError(f"residual {residual} is not of the form (x + a(z), y + b(z), z)")
    tail = [ElementaryAuto(i, 1, part) for i, part in ((1, a), (2, b)) if part]
    return theta + TameWord(tuple(tail))


def certify_corollary2(phi: Endomorphism) -> WildnessVerdict:
    """
    Decide tameness of φ = (f, g, z) with f, g of degree ≤ 1 in x, y.

    Returns:
        TameWithDecomposition with a word that re-evaluates to φ, or CertifiedWild

    Raises:
        PreconditionError: φ does not have the required shape
        CertificateError: the decomposition failed to re-evaluate to φ
    """
    _check_corollary2_shape(phi)
    echo = str(phi)
    logger.info("restricted-shape test for %s", echo)
    matrix = j2(phi).map(tensor_to_uv)
    certificate = decide_ge2f(matrix)
    if not certificate.is_in:
        logger.warning("%s is wild: J2 not in GL2(F)E2", echo)
        return WildnessVerdict(CERTIFIED_WILD, echo, certificate, notes=[certificate.reason])

    word = decomposition_from_certificate(phi, certificate)
    if word.evaluate() != phi:
        raise CertificateError(f"decomposition {word} does not evaluate to {echo}")
    return WildnessVerdict(TAME_WITH_DECOMPOSITION, echo, certificate, decomposition=word)


# ===== ANICK DEMONSTRATION =====

def anick_j2_display() -> Matrix:
    """[[1 + z'⊗z, 1⊗z²], [-(z'⊗1)², 1 - z'⊗z]]."""
    one = TensorPoly.one()
    zz = TensorPoly.pure((3,), (3,))
    return Matrix([
        [one + zz, TensorPoly.pure((), (3, 3))],
        [-TensorPoly.pure((3, 3), ()), one - zz],
    ])


@dataclass
class DemoStep:
    name: str
    passed: bool
    detail: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class DemoReport:
    steps: List[DemoStep] = field(default_factory=list)
    verdict: Optional[WildnessVerdict] = None

    @property
    def passed(self) -> bool:
        return bool(self.steps) and all(step.passed for step in self.steps) and self.verdict is not None

    @property
    def failed_step(self) -> Optional[str]:
        for step in self.steps:
            if not step.passed:
                return step.name
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "failed_step": self.failed_step,
            "steps": [step.to_dict() for step in self.steps],
            "verdict": self.verdict.to_dict() if self.verdict else None,
        }


def demo_anick(corrupt_normalizer: bool = False) -> DemoReport:
    """
    Certify that the Anick automorphism δ is wild.

    Checks, in order: J2(δ) against its closed form; det ν(J2(δ)) = 1;
    π(δσ) = id together with ν(δ(J2(σ))) ∈ E2; ν(J2(δσ)) NOT-IN; the final verdict.
    Stops at the first failing check.
    """
    report = DemoReport()
    delta = anick()
    sigma = corrupted_normalizer() if corrupt_normalizer else anick_normalizer()

    def record(name: str, passed: bool, **detail) -> bool:
        report.steps.append(DemoStep(name, passed, detail))
        log = logger.info if passed else logger.warning
        log("demo step %s: %s", name, "ok" if passed else "FAILED")
        return passed

    jacobian_delta = j2(delta)
    if not record("j2_display", jacobian_delta == anick_j2_display(), j2=jacobian_delta.to_strings()):
        return report

    nu_delta = jacobian_delta.map(nu_u)
    det = nu_delta.det2()
    if not record("det_one", det == CommPoly.one(RING_UV), det=str(det)):
        return report

    sigma_map = sigma.evaluate()
    normalized = delta.compose(sigma_map)
    pi_images = [PI.apply(image) for image in normalized.images]
    pi_identity = all(image == CommPoly.variable(f"x{i}", image.ring) for i, image in enumerate(pi_images, 1))
    sigma_part = endo_on_matrix(delta, j2(sigma_map)).map(nu_u)
    sigma_certificate = decide_e2(sigma_part)
    if not record("normalization", pi_identity and sigma_certificate.is_in,
                  normalizer=str(sigma), pi=[str(image) for image in pi_images],
                  sigma_factor=sigma_certificate.to_dict()):
        return report

    obstruction = decide_e2(j2(normalized).map(nu_u))
    if not record("nu_j2_not_in_e2", not obstruction.is_in and verify_certificate(obstruction),
                  certificate=obstruction.to_dict()):
        return report

    verdict = certify_theorem1(delta, sigma)
    report.verdict = verdict
    record("verdict", verdict.status == CERTIFIED_WILD, status=verdict.status)
    return report
