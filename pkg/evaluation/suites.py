"""
Property suites behind `selftest`.

Each suite draws its instances from random.Random(f"{seed}:{suite_id}") and
checks one law of the engine per instance. Sample counts and instance sizes
depend on the profile: `small` for everyday runs and tests, `full` for the
acceptance-scale counts.
"""

from dataclasses import dataclass, field
import random
import time
from typing import Callable, Dict, List, Optional
import logging

from algebra.autgroup import (
    ElementaryAuto,
    TameWord,
    conjugate_word,
    random_elementary_c,
    random_nc,
    random_tame,
    relation_check,
    sample_kernel_conjugates,
    sample_ker_tame,
    sample_relation_instance,
    commutative_jacobian,
    tame_jacobian_c,
)
from algebra.e2decide import ElementaryFactor, certificate_product, decide_e2, verify_certificate
from algebra.fox import endo_on_matrix, fox_derive, jacobian
from algebra.metabelian import MetabelianElem, delta_a, fox_c, identity_ua, jacobian_c, straighten
from algebra.morphisms import NU, eta_u, rho_rename
from algebra.ncpoly import DEFAULT_GENERATORS, NCPoly
from algebra.uenv import RING_A, RING_UA, RING_UV, CommPoly, TensorPoly, universal_derivation
from pipelines import INCONCLUSIVE, TAME_WITH_DECOMPOSITION, certify_corollary2, certify_theorem1

from evaluation.report import SelftestReport, SuiteResult

# Configure logging
logger = logging.getLogger(__name__)


# Instance sizes per profile
PROFILES: Dict[str, Dict[str, int]] = {
    "small": {
        "fox_degree": 4,
        "word_length": 2,
        "param_degree": 2,
        "eps_degree": 3,
        "kernel_length": 2,
        "square_length": 3,
        "e2_factors": 6,
        "e2_degree": 2,
    },
    "full": {
        "fox_degree": 5,
        "word_length": 4,
        "param_degree": 2,
        "eps_degree": 4,
        "kernel_length": 4,
        "square_length": 3,
        "e2_factors": 12,
        "e2_degree": 3,
    },
}

Check = Callable[[random.Random, Dict[str, int]], Optional[str]]


@dataclass
class PropertySuite:
    """A law checked on random instances; `check` returns None or a failure message."""
    suite_id: str
    name: str
    description: str
    tags: List[str]
    samples: Dict[str, int]
    check: Check = field(repr=False)

    def sample_count(self, profile: str) -> int:
        return self.samples[profile]


# ===== RANDOM HELPERS =====

def random_comm(rng: random.Random, ring, max_degree: int, max_terms: int = 3,
                min_degree: int = 0) -> CommPoly:
    """Random nonzero polynomial over `ring` with coefficients in {-3..3} minus 0."""
    terms: Dict[tuple, int] = {}
    for _ in range(rng.randint(1, max_terms)):
        degree = rng.randint(min_degree, max_degree)
        exps = [0] * len(ring)
        for _ in range(degree):
            exps[rng.randrange(len(ring))] += 1
        terms[tuple(exps)] = terms.get(tuple(exps), 0) + rng.choice((-3, -2, -1, 1, 2, 3))
    poly = CommPoly(ring, terms)
    return poly if poly else random_comm(rng, ring, max_degree, max_terms, min_degree)


def _elementary_product(rng: random.Random, sizes: Dict[str, int]) -> List[ElementaryFactor]:
    factors = []
    position = rng.choice(((1, 2), (2, 1)))
    for _ in range(rng.randint(1, sizes["e2_factors"])):
        factors.append(ElementaryFactor(position, random_comm(rng, RING_UV, sizes["e2_degree"], 2)))
        position = (2, 1) if position == (1, 2) else (1, 2)
    return factors


# ===== CHECKS =====

def check_fox_identity(rng, sizes):
    f = random_nc(rng, range(1, DEFAULT_GENERATORS + 1), sizes["fox_degree"], 4)
    total = sum(
        (universal_derivation(NCPoly.generator(i)) * fox_derive(f, i) for i in range(1, DEFAULT_GENERATORS + 1)),
        TensorPoly.zero(),
    )
    if total != universal_derivation(f):
        return f"Delta(f) != sum Delta(y_i) df/dy_i for f = {f}"
    return None


def check_chain_b(rng, sizes):
    phi = random_tame(rng, rng.randint(1, sizes["word_length"]), sizes["param_degree"]).evaluate()
    psi = random_tame(rng, rng.randint(1, sizes["word_length"]), sizes["param_degree"]).evaluate()
    if jacobian(phi.compose(psi)) != jacobian(phi) * endo_on_matrix(phi, jacobian(psi)):
        return f"chain rule fails for phi = {phi}, psi = {psi}"
    return None


def _random_word_c(rng, sizes) -> TameWord:
    length = rng.randint(1, sizes["word_length"])
    return TameWord(tuple(random_elementary_c(rng, sizes["param_degree"]) for _ in range(length)), "C")


def check_chain_c(rng, sizes):
    phi = _random_word_c(rng, sizes).evaluate()
    psi = _random_word_c(rng, sizes).evaluate()
    if jacobian_c(phi.compose(psi)) != jacobian_c(phi) * jacobian_c(psi).map(phi.bar):
        return f"metabelian chain rule fails for phi = {phi}, psi = {psi}"
    return None


def _relation_suite_check(which: str) -> Check:
    def check(rng, sizes):
        params = sample_relation_instance(rng, which, sizes["param_degree"])
        if not relation_check(which, **params):
            rendered = ", ".join(f"{key}={value}" for key, value in params.items())
            return f"relation {which} fails for {rendered}"
        return None
    return check


def check_epsilon(rng, sizes):
    letters = range(1, DEFAULT_GENERATORS + 1)
    f = random_nc(rng, letters, sizes["eps_degree"], 3)
    g = random_nc(rng, letters, sizes["eps_degree"], 3)
    if straighten(f * g) != straighten(f) * straighten(g):
        return f"eps(fg) != eps(f)eps(g) for f = {f}, g = {g}"
    return None


def check_ideal_derivative(rng, sizes):
    triple = [random_comm(rng, RING_UA, 2, 2) for _ in range(3)]
    element = MetabelianElem(CommPoly.zero(RING_A), triple)
    _, f13, f23 = element.triple
    expected = delta_a(1) * f13 + delta_a(2) * f23
    if fox_c(element, 3) != expected:
        return f"d/dz3 of {element} != Delta(x1) f13 + Delta(x2) f23"
    return None


def check_rank_one(rng, sizes):
    (psi, generator), = sample_kernel_conjugates(rng, 1, "C")
    shifted = jacobian_c(conjugate_word(psi, generator).evaluate()) - identity_ua()
    if any(minor for minor in shifted.minors2()):
        return f"J - E has a nonzero 2x2 minor for psi = {psi}, generator = {generator}"
    return None


def check_eta_shape(rng, sizes):
    word = sample_ker_tame(rng, rng.randint(1, sizes["kernel_length"]), "C")
    matrix, induced = tame_jacobian_c(word)
    if not induced.is_identity():
        return f"kernel word {word} induces {induced} on A"
    eta = matrix.map(eta_u)
    zero, one = CommPoly.zero(eta[0, 0].ring), CommPoly.one(eta[0, 0].ring)
    if eta[2, 0] != zero or eta[2, 1] != zero or eta[2, 2] != one:
        return f"eta(J) is not block triangular for {word}: {eta}"
    return None


def check_kernel_b(rng, sizes):
    word = sample_ker_tame(rng, rng.randint(1, sizes["kernel_length"]), "B")
    verdict = certify_theorem1(word)
    if verdict.status != INCONCLUSIVE or not verify_certificate(verdict.certificate):
        return f"nu(J2) of kernel word {word} was not certified in E2"
    return None


def check_kernel_c(rng, sizes):
    word = sample_ker_tame(rng, rng.randint(1, sizes["kernel_length"]), "C")
    matrix, _ = tame_jacobian_c(word)
    certificate = decide_e2(matrix.block(2).map(eta_u))
    if not certificate.is_in or not verify_certificate(certificate):
        return f"eta(J2) of kernel word {word} was not certified in E2"
    return None


def check_e2_roundtrip(rng, sizes):
    factors = _elementary_product(rng, sizes)
    matrix = certificate_product(RING_UV, factors)
    certificate = decide_e2(matrix)
    if not certificate.is_in or not verify_certificate(certificate):
        return f"product {' '.join(str(f) for f in factors)} was not certified IN"
    return None


def _corollary2_word(rng, sizes) -> TameWord:
    factors = []
    for factor in _elementary_product(rng, {**sizes, "e2_factors": 4, "e2_degree": 2}):
        middle, target = (2, 1) if factor.position == (2, 1) else (1, 2)
        terms = {(3,) * a + (middle,) + (3,) * b: c for (a, b), c in factor.parameter.items()}
        factors.append(ElementaryAuto(target, 1, NCPoly(terms)))
    if rng.random() < 0.5:
        factors.insert(0, ElementaryAuto(1, rng.choice((-2, -1, 2, 3)), NCPoly.zero()))
    for i in (1, 2):
        if rng.random() < 0.5:
            factors.append(ElementaryAuto(i, 1, random_nc(rng, [3], 2, 2)))
    return TameWord(tuple(factors))


def check_corollary2(rng, sizes):
    word = _corollary2_word(rng, sizes)
    phi = word.evaluate()
    verdict = certify_corollary2(phi)
    if verdict.status != TAME_WITH_DECOMPOSITION or verdict.decomposition.evaluate() != phi:
        return f"tame {phi} (from {word}) returned {verdict.status}"
    return None


def check_rho_nu_square(rng, sizes):
    word = random_tame(rng, rng.randint(1, sizes["square_length"]), sizes["param_degree"])
    nu_side = commutative_jacobian(word, NU)[0].block(2).map(rho_rename)
    eta_side = tame_jacobian_c(word)[0].block(2).map(eta_u)
    if nu_side != eta_side:
        return f"rho(nu(J2)) != eta(J2(eps*)) for {word}"
    return None


# ===== SUITE REGISTRY =====

def _suite(suite_id, name, description, tags, small, full, check) -> PropertySuite:
    return PropertySuite(suite_id, name, description, tags, {"small": small, "full": full}, check)


ALL_SUITES: List[PropertySuite] = [
    _suite("fox_identity", "Fundamental Fox identity", "Delta(f) = sum Delta(y_i) df/dy_i",
           ["fox", "B"], 40, 200, check_fox_identity),
    _suite("chain_b", "Chain rule over B", "J(phi psi) = J(phi) phi(J(psi))",
           ["fox", "tame", "B"], 10, 100, check_chain_b),
    _suite("chain_c", "Chain rule over C", "J(phi psi) = J(phi) phi-bar(J(psi))",
           ["metabelian", "tame", "C"], 10, 100, check_chain_c),
    _suite("relation_f32", "Relation f32", "s(i,a,f) s(i,b,g) = s(i,ab,bf+g)",
           ["relations", "tame", "B"], 40, 200, _relation_suite_check("f32")),
    _suite("relation_f33", "Relation f33", "conjugation of s(j,b,g) by s(i,a,f)",
           ["relations", "tame", "B"], 40, 200, _relation_suite_check("f33")),
    _suite("relation_f34", "Relation f34", "conjugation by transpositions",
           ["relations", "tame", "B"], 40, 200, _relation_suite_check("f34")),
    _suite("epsilon", "Metabelianization is multiplicative", "eps(fg) = eps(f) eps(g)",
           ["metabelian", "C"], 40, 200, check_epsilon),
    _suite("ideal_derivative", "Derivative along z3 on the ideal", "d/dz3 f = Delta(x1) f13 + Delta(x2) f23",
           ["metabelian", "fox", "C"], 30, 100, check_ideal_derivative),
    _suite("rank_one", "Rank one perturbation", "J(conjugate) - E has vanishing 2x2 minors",
           ["metabelian", "kernel", "C"], 10, 50, check_rank_one),
    _suite("eta_shape", "Triangular eta shape", "eta(J) = [[eta(J2), *], [0, 1]]",
           ["metabelian", "kernel", "C"], 10, 50, check_eta_shape),
    _suite("kernel_b", "Kernel words over B", "nu(J2) in E2 with a verified certificate",
           ["kernel", "e2", "B"], 10, 100, check_kernel_b),
    _suite("kernel_c", "Kernel words over C", "eta(J2) in E2 with a verified certificate",
           ["kernel", "e2", "C"], 10, 100, check_kernel_c),
    _suite("e2_roundtrip", "E2 round trip", "elementary products are certified IN",
           ["e2"], 60, 500, check_e2_roundtrip),
    _suite("corollary2", "Constructive tameness", "restricted-shape tame words decompose",
           ["e2", "tame", "B"], 10, 50, check_corollary2),
    _suite("rho_nu_square", "Commuting square", "rho(nu(J2)) = eta(J2) of the induced word over C",
           ["morphisms", "tame", "B", "C"], 10, 50, check_rho_nu_square),
]


def get_suite_by_id(suite_id: str) -> Optional[PropertySuite]:
    for suite in ALL_SUITES:
        if suite.suite_id == suite_id:
            return suite
    return None


def get_suites_by_tag(tag: str) -> List[PropertySuite]:
    return [suite for suite in ALL_SUITES if tag in suite.tags]


# ===== RUNNERS =====

def run_suite(suite: PropertySuite, seed: int = 42, profile: str = "small",
              samples: Optional[int] = None) -> SuiteResult:
    """
    Run one suite.

    Args:
        suite: the suite to run
        seed: base seed; the suite draws from random.Random(f"{seed}:{suite_id}")
        profile: "small" or "full"
        samples: override of the profile's sample count

    Returns:
        SuiteResult with pass/fail counts and the first failure messages
    """
    sizes = PROFILES[profile]
    count = suite.sample_count(profile) if samples is None else samples
    rng = random.Random(f"{seed}:{suite.suite_id}")
    passed, failures = 0, []
    start_time = time.time()

    for index in range(count):
        try:
            message = suite.check(rng, sizes)
        except Exception as e:
            message = f"{type(e).__name__}: {e}"
        if message is None:
            passed += 1
        else:
            logger.warning("suite %s sample %d failed: %s", suite.suite_id, index, message)
            failures.append(f"sample {index}: {message}")

    logger.info("suite %s: %d/%d passed in %.2fs", suite.suite_id, passed, count, time.time() - start_time)
    return SuiteResult(
        suite_id=suite.suite_id,
        name=suite.name,
        tags=list(suite.tags),
        samples=count,
        passed=passed,
        failed=count - passed,
        failures=failures[:5],
    )


def run_all_suites(seed: int = 42, profile: str = "small", suites: Optional[List[PropertySuite]] = None,
                   verbose: bool = False) -> SelftestReport:
    """Run every suite (or the given ones) and collect a SelftestReport."""
    if suites is None:
        suites = ALL_SUITES

    if verbose:
        print(f"\n{'#'*80}")
        print(f"# RUNNING {len(suites)} PROPERTY SUITES (seed {seed}, profile {profile})")
        print(f"{'#'*80}\n")

    results = []
    for i, suite in enumerate(suites, 1):
        result = run_suite(suite, seed, profile)
        results.append(result)
        if verbose:
            status = "PASS" if result.ok else "FAIL"
            print(f"[{i}/{len(suites)}] {status}: {suite.name} ({result.passed}/{result.samples})")

    report = SelftestReport(seed=seed, profile=profile, results=results)
    if verbose:
        print(f"\n{'#'*80}")
        print("# SELFTEST SUMMARY")
        print(f"{'#'*80}")
        print(report.summary_frame().to_string(index=False))
    return report
