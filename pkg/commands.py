"""
Command registry and handlers for the wildcert command line.

Every handler returns a dictionary with "success" and a human-readable "text";
execute_command dispatches by name and turns exceptions into failure results
carrying the process exit code:

    0  success or a verdict was produced
    1  precondition or input error
    2  internal check failure (certificate mismatch, failed demo or self-test)

Endomorphisms are written as three images separated by ';', for example
"x + z*(x*z - z*y); y + (x*z - z*y)*z; z", or given as a JSON document.
Tame words use `s(i, alpha, expr)` factors joined by ';'.
"""

import logging
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from algebra.autgroup import TameWord, anick_normalizer, parse_tame_word
from algebra.e2decide import decide_e2, decide_ge2f, verify_certificate
from algebra.errors import AlgebraError, CertificateError, ExpressionSyntaxError, PreconditionError
from algebra.expr import generator_aliases, parse_comm, parse_nc, parse_tensor
from algebra.fox import fox_derive, j2, jacobian
from algebra.matrix import Matrix
from algebra.metabelian import straighten
from algebra.morphisms import MORPHISMS, apply_morphism, map_matrix, nu_b, nu_u, pi_b
from algebra.ncpoly import DEFAULT_GENERATORS, Endomorphism
from algebra.uenv import RING_A, RING_UA, RING_UV, RING_Y3
from documents import CertificateDocument, EndomorphismDocument, MatrixDocument, load_document, parse_document
from evaluation.report import export_report_to_json
from evaluation.suites import ALL_SUITES, get_suite_by_id, run_all_suites
from pipelines import certify_corollary2, certify_theorem1, demo_anick

# Configure logging
logger = logging.getLogger(__name__)


# ===== INPUT HELPERS =====

def parse_endomorphism(text: Optional[str] = None, file: Optional[str] = None) -> Endomorphism:
    """Endomorphism from "f1; f2; f3" text or an EndomorphismDocument file."""
    if file:
        return load_document(file, EndomorphismDocument).to_endomorphism()
    if not text:
        raise PreconditionError("an endomorphism is required (images separated by ';' or --file)")
    parts = text.split(";")
    if len(parts) != DEFAULT_GENERATORS:
        raise PreconditionError(f"expected {DEFAULT_GENERATORS} images separated by ';', got {len(parts)}")
    return Endomorphism([parse_nc(part) for part in parts])


def is_tame_word_text(text: str) -> bool:
    stripped = text.strip()
    return stripped == "id" or stripped.startswith("s(") or stripped.startswith("s (")


def parse_matrix(entries: Optional[List[str]] = None, ring: str = "u,v", file: Optional[str] = None) -> Matrix:
    if file:
        matrix = load_document(file, MatrixDocument).to_matrix()
        if matrix.shape != (2, 2):
            raise PreconditionError(f"{file}: expected a 2×2 matrix, got shape {matrix.shape}")
        return matrix
    if not entries or len(entries) != 4:
        raise PreconditionError("a 2×2 matrix needs four entries in row-major order (or --file)")
    names = [name.strip() for name in ring.split(",")]
    return parse_document({"ring": names, "rows": [entries[:2], entries[2:]]}, MatrixDocument).to_matrix()


# source descriptor of a registered morphism -> reader for its serialized elements
SOURCE_PARSERS: Dict[str, Callable[[str], Any]] = {
    "B": parse_nc,
    "U(B)": parse_tensor,
    "C": lambda text: straighten(parse_nc(text)),
    "A": lambda text: parse_comm(text, RING_A),
    "U(A)": lambda text: parse_comm(text, RING_UA),
    "F[y3]": lambda text: parse_comm(text, RING_Y3),
    "F[u,v]": lambda text: parse_comm(text, RING_UV),
}


def _matrix_text(matrix: Matrix) -> str:
    return "\n".join("[" + ", ".join(row) + "]" for row in matrix.to_strings())


# ===== HANDLERS =====

def fox(expr: str, var: str) -> Dict[str, Any]:
    """∂expr/∂var in U(B)."""
    aliases = generator_aliases()
    if var not in aliases:
        raise ExpressionSyntaxError(f"unknown generator {var!r}")
    derivative = fox_derive(parse_nc(expr), aliases[var])
    return {"success": True, "derivative": str(derivative), "text": str(derivative)}


def jacobian_command(endo: Optional[str] = None, file: Optional[str] = None) -> Dict[str, Any]:
    matrix = jacobian(parse_endomorphism(endo, file))
    return {"success": True, "matrix": matrix.to_strings(), "text": _matrix_text(matrix)}


def j2_command(endo: Optional[str] = None, file: Optional[str] = None) -> Dict[str, Any]:
    matrix = j2(parse_endomorphism(endo, file))
    return {"success": True, "matrix": matrix.to_strings(), "text": _matrix_text(matrix)}


def abelianize(expr: str) -> Dict[str, Any]:
    image = pi_b(parse_nc(expr))
    return {"success": True, "image": str(image), "text": str(image)}


def nu(expr: Optional[str] = None, endo: Optional[str] = None, file: Optional[str] = None) -> Dict[str, Any]:
    """ν of a polynomial, or ν(J2(φ)) of an endomorphism."""
    if expr:
        image = nu_b(parse_nc(expr))
        return {"success": True, "image": str(image), "text": str(image)}
    matrix = j2(parse_endomorphism(endo, file)).map(nu_u)
    return {"success": True, "matrix": matrix.to_strings(), "text": _matrix_text(matrix)}


def eps(expr: str) -> Dict[str, Any]:
    element = straighten(parse_nc(expr))
    return {"success": True, "element": element.to_dict(), "text": str(element)}


def morph(name: str, expr: Optional[str] = None, matrix: Optional[str] = None) -> Dict[str, Any]:
    """A registered ring map applied to one element, or entrywise to a matrix document."""
    if name not in MORPHISMS:
        raise PreconditionError(f"unknown morphism {name!r}; known: {', '.join(MORPHISMS)}")
    tag = MORPHISMS[name][0]
    parse = SOURCE_PARSERS[tag.source]
    if matrix:
        image = map_matrix(lambda value: apply_morphism(name, value),
                           load_document(matrix, MatrixDocument).parse_with(parse))
        return {"success": True, "morphism": tag.to_dict(), "matrix": image.to_strings(),
                "text": _matrix_text(image)}
    if not expr:
        raise PreconditionError(f"{name} needs an element of {tag.source} or --matrix FILE")
    image = apply_morphism(name, parse(expr))
    return {"success": True, "morphism": tag.to_dict(), "image": str(image), "text": str(image)}


def compose(first: str, second: str) -> Dict[str, Any]:
    """first∘second for endomorphisms, or the concatenation when both are tame words."""
    if is_tame_word_text(first) and is_tame_word_text(second):
        word = parse_tame_word(first) + parse_tame_word(second)
        result = word.evaluate()
        return {"success": True, "word": str(word), "endomorphism": str(result), "text": str(result)}
    phi = parse_tame_word(first).evaluate() if is_tame_word_text(first) else parse_endomorphism(first)
    psi = parse_tame_word(second).evaluate() if is_tame_word_text(second) else parse_endomorphism(second)
    result = phi.compose(psi)
    return {"success": True, "endomorphism": str(result), "text": str(result)}


def invert(word: str) -> Dict[str, Any]:
    inverse = parse_tame_word(word).inverse()
    result = inverse.evaluate()
    return {
        "success": True,
        "word": str(inverse),
        "endomorphism": str(result),
        "text": f"{inverse}\n= {result}",
    }


def e2_decide(entries: Optional[List[str]] = None, ring: str = "u,v", file: Optional[str] = None,
              ge2f: bool = False) -> Dict[str, Any]:
    matrix = parse_matrix(entries, ring, file)
    certificate = decide_ge2f(matrix) if ge2f else decide_e2(matrix)
    lines = [f"verdict: {certificate.verdict}"]
    if certificate.is_in:
        if certificate.scalar is not None:
            lines.append(f"scalar: diag({certificate.scalar}, 1)")
        lines.append("factors: " + (" ".join(str(f) for f in certificate.factors) or "(none)"))
    else:
        lines.append(f"reason: {certificate.reason}")
        lines.append("witness:\n" + _matrix_text(certificate.witness))
    return {"success": True, "verdict": certificate.verdict, "certificate": certificate.to_dict(),
            "text": "\n".join(lines)}


def _load_normalizer(normalizer: Optional[str]) -> Optional[TameWord]:
    if not normalizer:
        return None
    if normalizer == "anick":
        return anick_normalizer()
    path = Path(normalizer)
    if not path.exists():
        raise PreconditionError(f"no such normalizer file: {normalizer}")
    return parse_tame_word(path.read_text())


def certify(mode: str, endo: Optional[str] = None, file: Optional[str] = None,
            normalizer: Optional[str] = None) -> Dict[str, Any]:
    """Wildness certification (normalized or restricted-shape) of an endomorphism or tame word."""
    if mode == "theorem1":
        phi = parse_tame_word(endo) if endo and is_tame_word_text(endo) else parse_endomorphism(endo, file)
        verdict = certify_theorem1(phi, _load_normalizer(normalizer))
    elif mode == "corollary2":
        verdict = certify_corollary2(parse_endomorphism(endo, file))
    else:
        raise PreconditionError(f"unknown mode {mode!r}; expected theorem1 or corollary2")
    lines = [f"status: {verdict.status}"]
    if verdict.decomposition is not None:
        lines.append(f"decomposition: {verdict.decomposition}")
    if verdict.certificate is not None and not verdict.certificate.is_in:
        lines.append("witness:\n" + _matrix_text(verdict.certificate.witness))
    return {"success": True, "status": verdict.status, "verdict": verdict.to_dict(), "text": "\n".join(lines)}


def demo_anick_command(corrupt_normalizer: bool = False, report_dir: Optional[str] = None) -> Dict[str, Any]:
    report = demo_anick(corrupt_normalizer)
    if report_dir:
        export_report_to_json(report, str(Path(report_dir) / "demo-anick.json"))
    lines = [f"[{'ok' if step.passed else 'FAILED'}] {step.name}" for step in report.steps]
    if report.verdict is not None:
        lines.append(f"verdict: {report.verdict.status}")
    result = {"success": report.passed, "report": report.to_dict(), "text": "\n".join(lines)}
    if not report.passed:
        result["error"] = f"demo step failed: {report.failed_step}"
        result["exit_code"] = 2
    return result


def selftest(seed: int = 42, profile: str = "small", suites: Optional[List[str]] = None,
             report_dir: Optional[str] = None) -> Dict[str, Any]:
    selected = ALL_SUITES
    if suites:
        selected = []
        for suite_id in suites:
            suite = get_suite_by_id(suite_id)
            if suite is None:
                raise PreconditionError(f"unknown suite {suite_id!r}")
            selected.append(suite)
    report = run_all_suites(seed, profile, selected)
    if report_dir:
        export_report_to_json(report, str(Path(report_dir) / "selftest.json"))
    result = {
        "success": report.all_passed,
        "report": report.to_dict(),
        "text": report.summary_frame().to_string(index=False),
    }
    if not report.all_passed:
        result["error"] = f"{report.total_failed} of {report.total_samples} samples failed"
        result["exit_code"] = 2
    return result


def verify(path: str) -> Dict[str, Any]:
    certificate = load_document(path, CertificateDocument).to_certificate()
    valid = verify_certificate(certificate)
    result = {
        "success": valid,
        "verdict": certificate.verdict,
        "valid": valid,
        "text": f"{certificate.verdict} certificate {'verified' if valid else 'REJECTED'}",
    }
    if not valid:
        result["error"] = "certificate does not verify"
        result["exit_code"] = 2
    return result


# ===== REGISTRY =====

_ENDO_ARGS = {
    "endo": {"type": "string", "positional": True, "optional": True,
             "description": "Three images separated by ';'"},
    "file": {"type": "string", "description": "JSON document {\"images\": [f1, f2, f3]}"},
}

COMMAND_DEFINITIONS = [
    {
        "name": "fox",
        "description": "Fox derivative of a polynomial with respect to one generator.",
        "parameters": {
            "expr": {"type": "string", "positional": True, "description": "Polynomial in x, y, z"},
            "var": {"type": "string", "positional": True, "description": "Generator (x, y, z or y1..y3)"},
        },
    },
    {
        "name": "jacobian",
        "description": "Full Jacobian matrix of an endomorphism over U(B).",
        "parameters": _ENDO_ARGS,
    },
    {
        "name": "j2",
        "description": "Upper-left 2×2 block of the Jacobian matrix.",
        "parameters": _ENDO_ARGS,
    },
    {
        "name": "abelianize",
        "description": "Image of a polynomial in F[x1, x2, x3].",
        "parameters": {"expr": {"type": "string", "positional": True, "description": "Polynomial in x, y, z"}},
    },
    {
        "name": "nu",
        "description": "Set x, y to zero: a polynomial (--expr) or J2 of an endomorphism, landing in F[u, v].",
        "parameters": {
            "expr": {"type": "string", "description": "Polynomial to map to F[y3]"},
            **_ENDO_ARGS,
        },
    },
    {
        "name": "eps",
        "description": "Canonical form of a polynomial in the free metabelian algebra.",
        "parameters": {"expr": {"type": "string", "positional": True, "description": "Polynomial in x, y, z"}},
    },
    {
        "name": "morph",
        "description": "Apply a named ring map (pi, nu, epsilon, tau, eta, rho and their U(-) forms).",
        "parameters": {
            "name": {"type": "string", "positional": True, "description": "Registered morphism name"},
            "expr": {"type": "string", "positional": True, "optional": True,
                     "description": "Element of the morphism's source ring"},
            "matrix": {"type": "string", "description": "JSON matrix document to map entrywise"},
        },
    },
    {
        "name": "compose",
        "description": "Composition first∘second of endomorphisms or tame words.",
        "parameters": {
            "first": {"type": "string", "positional": True, "description": "Endomorphism or tame word"},
            "second": {"type": "string", "positional": True, "description": "Endomorphism or tame word"},
        },
    },
    {
        "name": "invert",
        "description": "Inverse of a tame word and its evaluation.",
        "parameters": {"word": {"type": "string", "positional": True, "description": "s(i, alpha, expr); ..."}},
    },
    {
        "name": "e2-decide",
        "description": "Decide membership of a 2×2 matrix in E2 (or GL2(F)·E2 with --ge2f).",
        "parameters": {
            "entries": {"type": "list", "positional": True, "optional": True,
                        "description": "Four entries in row-major order"},
            "ring": {"type": "string", "default": "u,v", "description": "Comma-separated variable names"},
            "file": {"type": "string", "description": "JSON document {\"ring\": [...], \"rows\": [[..],[..]]}"},
            "ge2f": {"type": "flag", "description": "Allow a leading constant diagonal factor"},
        },
    },
    {
        "name": "certify",
        "description": "Wildness certification of an endomorphism or tame word.",
        "parameters": {
            "mode": {"type": "string", "enum": ["theorem1", "corollary2"], "default": "theorem1",
                     "description": "Certification route"},
            **_ENDO_ARGS,
            "normalizer": {"type": "string",
                           "description": "File holding a tame word σ with π(φσ) = id, or 'anick'"},
        },
    },
    {
        "name": "demo-anick",
        "description": "Certify that the Anick automorphism is wild, step by step.",
        "settings": ["report_dir"],
        "parameters": {
            "corrupt_normalizer": {"type": "flag", "description": "Use a wrong normalizer (negative control)"},
        },
    },
    {
        "name": "selftest",
        "description": "Run the property suites.",
        "settings": ["seed", "profile", "report_dir"],
        "parameters": {
            "suites": {"type": "list", "positional": True, "optional": True,
                       "description": "Suite ids (default: all)"},
        },
    },
    {
        "name": "verify",
        "description": "Independently check a serialized E2 certificate.",
        "parameters": {"path": {"type": "string", "positional": True, "description": "Certificate JSON file"}},
    },
]


def execute_command(command_name: str, command_arguments: Dict[str, Any]) -> Dict[str, Any]:
    """
    Execute a command by name with the provided arguments.

    Args:
        command_name: Name of the command
        command_arguments: Keyword arguments for its handler

    Returns:
        Result dictionary from the handler, always including "exit_code"
    """
    command_map = {
        "fox": fox,
        "jacobian": jacobian_command,
        "j2": j2_command,
        "abelianize": abelianize,
        "nu": nu,
        "eps": eps,
        "morph": morph,
        "compose": compose,
        "invert": invert,
        "e2-decide": e2_decide,
        "certify": certify,
        "demo-anick": demo_anick_command,
        "selftest": selftest,
        "verify": verify,
    }

    if command_name not in command_map:
        return {
            "success": False,
            "error": f"Unknown command: {command_name}",
            "available_commands": list(command_map.keys()),
            "exit_code": 1,
        }

    try:
        result = command_map[command_name](**command_arguments)
    except CertificateError as e:
        logger.error("%s: internal check failed: %s", command_name, e)
        return {"success": False, "error": f"Internal check failed: {e}", "exit_code": 2}
    except (AlgebraError, ValueError) as e:
        return {"success": False, "error": f"{type(e).__name__}: {e}", "exit_code": 1}
    except TypeError as e:
        return {
            "success": False,
            "error": f"Invalid arguments for {command_name}: {e}",
            "provided_arguments": {key: str(value) for key, value in command_arguments.items()},
            "exit_code": 1,
        }

    result.setdefault("exit_code", 0 if result.get("success") else 2)
    return result
