"""
JSON documents accepted by the command line.

    {"images": ["x + z*(x*z - z*y)", "y + (x*z - z*y)*z", "z"]}            endomorphism
    {"ring": ["u", "v"], "rows": [["1 + u*v", "v^2"], ["-u^2", "1 - u*v"]]} matrix ("matrix" also accepted)
    the output of E2Certificate.to_dict()                                   certificate
"""

from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Type, TypeVar

from pydantic import AliasChoices, BaseModel, Field, ValidationError, field_validator

from algebra.e2decide import E2Certificate
from algebra.errors import PreconditionError
from algebra.expr import parse_comm, parse_nc
from algebra.matrix import Matrix
from algebra.ncpoly import DEFAULT_GENERATORS, Endomorphism

Document = TypeVar("Document", bound=BaseModel)


class EndomorphismDocument(BaseModel):
    images: List[str]

    @field_validator("images")
    @classmethod
    def three_images(cls, value: List[str]) -> List[str]:
        if len(value) != DEFAULT_GENERATORS:
            raise ValueError(f"expected {DEFAULT_GENERATORS} images, got {len(value)}")
        return value

    def to_endomorphism(self) -> Endomorphism:
        return Endomorphism([parse_nc(text) for text in self.images])


class MatrixDocument(BaseModel):
    ring: List[str] = ["u", "v"]
    rows: List[List[str]] = Field(validation_alias=AliasChoices("rows", "matrix"))

    @field_validator("rows")
    @classmethod
    def square(cls, value: List[List[str]]) -> List[List[str]]:
        if len(value) not in (2, 3) or any(len(row) != len(value) for row in value):
            raise ValueError("expected a square 2×2 or 3×3 matrix")
        return value

    def to_matrix(self) -> Matrix:
        return self.parse_with(lambda entry: parse_comm(entry, self.ring))

    def parse_with(self, parse: Callable[[str], Any]) -> Matrix:
        """Entries read by `parse`, e.g. parse_tensor for Jacobians over U(B)."""
        return Matrix([[parse(entry) for entry in row] for row in self.rows])


class FactorRecord(BaseModel):
    position: List[int]
    parameter: str


class StepRecord(BaseModel):
    side: str
    position: List[int]
    parameter: str
    measure_before: int
    measure_after: int


class CertificateDocument(BaseModel):
    verdict: str
    ring: List[str]
    matrix: List[List[str]]
    factors: List[FactorRecord] = []
    scalar: Optional[str] = None
    witness: Optional[List[List[str]]] = None
    reason: str = ""
    log: List[StepRecord] = []

    @field_validator("verdict")
    @classmethod
    def known_verdict(cls, value: str) -> str:
        if value not in ("IN", "NOT-IN"):
            raise ValueError("verdict must be IN or NOT-IN")
        return value

    def to_certificate(self) -> E2Certificate:
        return E2Certificate.from_dict(self.model_dump())


def load_document(path: str, model: Type[Document]) -> Document:
    """
    Read and validate a JSON document.

    Raises:
        PreconditionError: the file is missing or does not validate
    """
    try:
        return model.model_validate_json(Path(path).read_text())
    except FileNotFoundError:
        raise PreconditionError(f"no such file: {path}") from None
    except ValidationError as e:
        raise PreconditionError(f"{path}: {e.errors()[0]['msg']}") from None


def parse_document(data: Dict[str, Any], model: Type[Document]) -> Document:
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise PreconditionError(e.errors()[0]["msg"]) from None
