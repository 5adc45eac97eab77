"""
Small dense matrices over the engine's ring types.

Entries may be TensorPoly (noncommutative), CommPoly or NCPoly values; products
keep the order of factors, so the same class serves U(B), U(A) and F[u,v].
"""

from functools import reduce
from operator import add
from typing import Any, Callable, List, Sequence, Tuple


class Matrix:
    """Immutable rectangular matrix with 0-based indexing."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[Any]]):
        rows = tuple(tuple(row) for row in rows)
        if not rows or any(len(row) != len(rows[0]) for row in rows):
            raise ValueError("matrix rows must be non-empty and of equal length")
        self.rows: Tuple[Tuple[Any, ...], ...] = rows

    # ----- constructors -----

    @classmethod
    def identity(cls, dim: int, one: Any, zero: Any) -> "Matrix":
        return cls([[one if i == j else zero for j in range(dim)] for i in range(dim)])

    @classmethod
    def elementary(cls, dim: int, i: int, j: int, parameter: Any, one: Any, zero: Any) -> "Matrix":
        """E_ij(d) = E + d e_ij with 1-based i != j."""
        if i == j:
            raise ValueError("elementary matrices need i != j")
        rows = [[one if r == c else zero for c in range(dim)] for r in range(dim)]
        rows[i - 1][j - 1] = parameter
        return cls(rows)

    @classmethod
    def diagonal(cls, entries: Sequence[Any], zero: Any) -> "Matrix":
        dim = len(entries)
        return cls([[entries[i] if i == j else zero for j in range(dim)] for i in range(dim)])

    # ----- shape and access -----

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.rows), len(self.rows[0]))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, index: Tuple[int, int]) -> Any:
        i, j = index
        return self.rows[i][j]

    def entries(self) -> List[Any]:
        return [entry for row in self.rows for entry in row]

    def column(self, j: int) -> Tuple[Any, ...]:
        return tuple(row[j] for row in self.rows)

    def block(self, size: int) -> "Matrix":
        """Upper-left size×size block."""
        return Matrix([row[:size] for row in self.rows[:size]])

    def replace(self, i: int, j: int, value: Any) -> "Matrix":
        rows = [list(row) for row in self.rows]
        rows[i][j] = value
        return Matrix(rows)

    # ----- arithmetic -----

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __mul__(self, other: "Matrix") -> "Matrix":
        rows, inner = self.shape
        if other.shape[0] != inner:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.shape[1]
        return Matrix([
            [reduce(add, (self.rows[i][k] * other.rows[k][j] for k in range(inner))) for j in range(cols)]
            for i in range(rows)
        ])

    def map(self, fn: Callable[[Any], Any]) -> "Matrix":
        """Apply a ring map entrywise."""
        return Matrix([[fn(entry) for entry in row] for row in self.rows])

    # ----- commutative helpers -----

    def det2(self) -> Any:
        if self.shape != (2, 2):
            raise ValueError("det2 needs a 2×2 matrix")
        (a, b), (c, d) = self.rows
        return a * d - b * c

    def minors2(self) -> List[Any]:
        """All 2×2 minors; meaningful for commutative entries."""
        rows, cols = self.shape
        result = []
        for i1 in range(rows):
            for i2 in range(i1 + 1, rows):
                for j1 in range(cols):
                    for j2 in range(j1 + 1, cols):
                        result.append(
                            self.rows[i1][j1] * self.rows[i2][j2] - self.rows[i1][j2] * self.rows[i2][j1]
                        )
        return result

    # ----- comparison and display -----

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def to_strings(self) -> List[List[str]]:
        """Row-major array of entry strings."""
        return [[str(entry) for entry in row] for row in self.rows]

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(row) + "]" for row in self.to_strings()) + "]"

    def __repr__(self) -> str:
        return f"Matrix({str(self)})"
