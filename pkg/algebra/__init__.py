"""
Exact algebra engine for certifying wildness of automorphisms of F<x, y, z>.

Modules:
    - ncpoly: noncommutative polynomials and endomorphisms of the free algebra B
    - uenv: commutative polynomial rings and the enveloping algebra U(B)
    - fox: Fox derivatives and Jacobian matrices over U(B)
    - morphisms: abelianization, the y3-specialization and related ring maps
    - metabelian: the free metabelian algebra C and its Jacobians over U(A)
    - autgroup: elementary automorphisms, tame words, relations and samplers
    - e2decide: E2 and GL2(F)·E2 membership with verifiable certificates

Usage Example:
    ```python
    from algebra import anick, j2, nu_u, decide_e2

    certificate = decide_e2(j2(anick()).map(nu_u))
    print(certificate.verdict)   # NOT-IN
    ```
"""

from .errors import (
    AlgebraError,
    CertificateError,
    ExpressionSyntaxError,
    GeneratorCountError,
    PreconditionError,
    RingMismatchError,
    SideConditionError,
)
from .ncpoly import Endomorphism, NCPoly, to_scalar
from .uenv import RING_A, RING_UA, RING_UV, RING_UX3, CommPoly, TensorPoly, lambda_eval, universal_derivation
from .matrix import Matrix
from .expr import parse_comm, parse_nc, parse_tensor
from .fox import fox_derive, gradient, j2, jacobian
from .morphisms import (
    MORPHISMS,
    CommutativeImage,
    apply_morphism,
    epsilon_b,
    eta_u,
    nu_b,
    nu_u,
    pi_b,
    pi_u,
    rho_rename,
)
from .metabelian import (
    AbelianMap,
    MetabelianElem,
    MetabelianEndo,
    epsilon_endo,
    fox_c,
    j2_c,
    jacobian_c,
    kernel_conjugate,
    straighten,
)
from .autgroup import (
    ElementaryAuto,
    ElementaryAutoC,
    TameWord,
    anick,
    anick_normalizer,
    commutative_jacobian,
    corrupted_normalizer,
    eval_tame,
    invert_elementary,
    invert_tame,
    parse_tame_word,
    relation_check,
    sample_ker_tame,
    sample_kernel_conjugates,
    tame_jacobian_c,
    transposition,
    triangular,
)
from .e2decide import (
    IN,
    NOT_IN,
    E2Certificate,
    ElementaryFactor,
    decide_e2,
    decide_ge2f,
    det2,
    verify_certificate,
    whitehead_factor,
)


__version__ = "1.0.0"
__author__ = "wildcert developers"


__all__ = [
    # Errors
    "AlgebraError",
    "CertificateError",
    "ExpressionSyntaxError",
    "GeneratorCountError",
    "PreconditionError",
    "RingMismatchError",
    "SideConditionError",

    # Polynomials and matrices
    "NCPoly",
    "Endomorphism",
    "to_scalar",
    "CommPoly",
    "TensorPoly",
    "RING_A",
    "RING_UA",
    "RING_UV",
    "RING_UX3",
    "lambda_eval",
    "universal_derivation",
    "Matrix",
    "parse_nc",
    "parse_tensor",
    "parse_comm",

    # Fox calculus and ring maps
    "fox_derive",
    "gradient",
    "jacobian",
    "j2",
    "MORPHISMS",
    "CommutativeImage",
    "apply_morphism",
    "pi_b",
    "pi_u",
    "nu_b",
    "nu_u",
    "epsilon_b",
    "eta_u",
    "rho_rename",

    # Metabelian quotient
    "MetabelianElem",
    "MetabelianEndo",
    "AbelianMap",
    "straighten",
    "fox_c",
    "jacobian_c",
    "j2_c",
    "epsilon_endo",
    "kernel_conjugate",

    # Automorphisms
    "ElementaryAuto",
    "ElementaryAutoC",
    "TameWord",
    "eval_tame",
    "invert_elementary",
    "invert_tame",
    "transposition",
    "triangular",
    "relation_check",
    "parse_tame_word",
    "commutative_jacobian",
    "tame_jacobian_c",
    "sample_kernel_conjugates",
    "sample_ker_tame",
    "anick",
    "anick_normalizer",
    "corrupted_normalizer",

    # E2 membership
    "IN",
    "NOT_IN",
    "E2Certificate",
    "ElementaryFactor",
    "decide_e2",
    "decide_ge2f",
    "det2",
    "whitehead_factor",
    "verify_certificate",
]
