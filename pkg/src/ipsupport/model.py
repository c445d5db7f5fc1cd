"""Standard-form integer program ``max{c x : A x = b, x >= 0, x integral}``."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import DimensionError, InfeasibleInput
from .linalg import IntMatrix, as_int_matrix, mat_vec


@dataclass(frozen=True)
class Instance:
    A: IntMatrix
    b: tuple[int, ...]
    c: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "A", as_int_matrix(self.A))
        object.__setattr__(self, "b", tuple(int(v) for v in self.b))
        object.__setattr__(self, "c", tuple(int(v) for v in self.c))
        if len(self.b) != self.A.rows:
            raise DimensionError(f"b has length {len(self.b)}, A has {self.A.rows} rows")
        if len(self.c) != self.A.cols:
            raise DimensionError(f"c has length {len(self.c)}, A has {self.A.cols} columns")

    @classmethod
    def from_lists(cls, A: Sequence[Sequence[int]], b: Sequence[int], c: Sequence[int]) -> Instance:
        return cls(IntMatrix.from_rows(A), tuple(b), tuple(c))

    @property
    def m(self) -> int:
        return self.A.rows

    @property
    def n(self) -> int:
        return self.A.cols

    def objective(self, x: Sequence[int]) -> int:
        return sum(ci * xi for ci, xi in zip(self.c, x))

    def check_feasible(self, x: Sequence[int]) -> None:
        """Raise :class:`InfeasibleInput` naming the first violation."""
        if len(x) != self.n:
            raise DimensionError(f"solution has length {len(x)}, expected {self.n}")
        for j, v in enumerate(x):
            if v < 0:
                raise InfeasibleInput(f"coordinate {j} is negative ({v})", column=j)
        for i, (lhs, rhs) in enumerate(zip(mat_vec(self.A, x), self.b)):
            if lhs != rhs:
                raise InfeasibleInput(f"row {i}: A x = {lhs} but b = {rhs}", row=i)

    def is_feasible(self, x: Sequence[int]) -> bool:
        try:
            self.check_feasible(x)
        except InfeasibleInput:
            return False
        return True


@dataclass(frozen=True)
class Solution:
    """Nonnegative integer point with its support cached."""

    x: tuple[int, ...]
    support: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        x = tuple(int(v) for v in self.x)
        for j, v in enumerate(x):
            if v < 0:
                raise InfeasibleInput(f"coordinate {j} is negative ({v})", column=j)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "support", tuple(j for j, v in enumerate(x) if v))

    @property
    def support_size(self) -> int:
        return len(self.support)

    def __len__(self) -> int:
        return len(self.x)

    def __iter__(self):
        return iter(self.x)

    def __getitem__(self, j: int) -> int:
        return self.x[j]
