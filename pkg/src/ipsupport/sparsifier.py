"""Support reduction of integer points along {-1, 0, 1} kernel directions.

Given a feasible point ``z`` of ``max{c x : A x = b, x >= 0}``, restrict to its
support ``S``, look for a nonzero sign vector ``y`` with ``A_S y = 0`` (and
``c_S y = 0`` when the objective must be preserved), and move to
``z + lam * y`` with ``lam = min{z_i : y_i < 0}``.  Each step zeroes at least
one coordinate, keeps ``A z = b`` and ``z >= 0``, and leaves ``c z`` unchanged
when ``c_S y = 0``.  When no sign vector survives, the support obeys the
determinant bound of :mod:`ipsupport.bounds` on the restricted matrix.

If the point is not optimal the search may instead find a sign direction
that increases the objective; that yields a strictly better point, or a
nonnegative ray proving the program unbounded.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .errors import BudgetExceeded, InconsistentSystem, InfeasibleInput, NoNegativeEntry
from .linalg import IntMatrix, as_int_matrix, remove_dependent_rows
from .model import Instance, Solution

__all__ = [
    "DEFAULT_SIGN_BUDGET",
    "Mode",
    "Outcome",
    "SignVector",
    "TraceStep",
    "SparsifyOutcome",
    "find_sign_kernel_vector",
    "lambda_step",
    "restrict_to_support",
    "sparsify",
]

DEFAULT_SIGN_BUDGET = 18


class Mode(str, enum.Enum):
    OPTIMAL = "optimal"
    FEASIBLE = "feasible"


class Outcome(str, enum.Enum):
    SPARSIFIED = "Sparsified"
    IMPROVED = "Improved"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True)
class SignVector:
    """Nonzero ``y`` in ``{-1, 0, 1}^|columns|``, indexed by ``columns``."""

    y: tuple[int, ...]
    columns: tuple[int, ...]

    def __post_init__(self):
        if len(self.y) != len(self.columns):
            raise ValueError("sign vector and column index set differ in length")
        if any(v not in (-1, 0, 1) for v in self.y):
            raise ValueError(f"sign vector entries must lie in {{-1, 0, 1}}: {self.y}")
        if not any(self.y):
            raise ValueError("sign vector must be nonzero")

    def __neg__(self) -> SignVector:
        return SignVector(tuple(-v for v in self.y), self.columns)

    def dense(self, n: int) -> tuple[int, ...]:
        out = [0] * n
        for j, v in zip(self.columns, self.y):
            out[j] = v
        return tuple(out)

    def dot(self, full: Sequence[int]) -> int:
        return sum(v * full[j] for j, v in zip(self.columns, self.y))


def find_sign_kernel_vector(
    M: IntMatrix | Sequence[Sequence[int]],
    columns: Sequence[int] | None = None,
    budget: int = DEFAULT_SIGN_BUDGET,
) -> SignVector | None:
    """Lexicographically smallest nonzero ``y in {-1,0,1}^n`` with ``M y = 0``.

    Order is entrywise with ``-1 < 0 < 1``.  Depth-first over columns in
    index order, pruning a branch once some row's partial sum exceeds what
    the remaining columns could cancel.  ``columns`` only labels the result
    (defaults to ``0..n-1``).
    """
    M = as_int_matrix(M)
    n = M.cols
    if n > budget:
        raise BudgetExceeded(
            f"sign-vector search over {n} columns exceeds the budget of {budget}",
            size=n, budget=budget,
        )
    labels = tuple(range(n)) if columns is None else tuple(columns)
    cols = [M.column(j) for j in range(n)]
    # reach[j][i]: largest |sum| columns j.. can contribute to row i
    reach = [[0] * M.rows for _ in range(n + 1)]
    for j in range(n - 1, -1, -1):
        reach[j] = [r + abs(a) for r, a in zip(reach[j + 1], cols[j])]

    y = [0] * n

    def dfs(j: int, sums: list[int], nonzero: bool) -> bool:
        if j == n:
            return nonzero
        col = cols[j]
        bound = reach[j + 1]
        for v in (-1, 0, 1):
            nxt = [s + v * a for s, a in zip(sums, col)] if v else sums
            if any(abs(s) > r for s, r in zip(nxt, bound)):
                continue
            y[j] = v
            if dfs(j + 1, nxt, nonzero or v != 0):
                return True
        y[j] = 0
        return False

    if dfs(0, [0] * M.rows, False):
        return SignVector(tuple(y), labels)
    return None


def lambda_step(z: Solution, y: SignVector) -> Solution:
    """Move ``z`` to ``z + lam * y`` with ``lam = min{z_i : y_i < 0}``."""
    negatives = [z.x[j] for j, v in zip(y.columns, y.y) if v < 0]
    if not negatives:
        raise NoNegativeEntry(f"sign vector {y.y} has no negative entry")
    for j in y.columns:
        if z.x[j] <= 0:
            raise InfeasibleInput(f"coordinate {j} is not strictly positive", column=j)
    lam = min(negatives)
    x = list(z.x)
    for j, v in zip(y.columns, y.y):
        x[j] += lam * v
    return Solution(tuple(x))


def restrict_to_support(inst: Instance, z: Solution) -> tuple[Instance, Solution]:
    """Column-restrict to ``supp(z)`` and drop dependent rows.

    Returns the restricted instance (full row rank, columns ordered as in
    ``z.support``) and the strictly positive restricted point.
    """
    inst.check_feasible(z.x)
    S = z.support
    A_S = inst.A.select_columns(S)
    try:
        A_bar, b_bar = remove_dependent_rows(A_S, inst.b)
    except InconsistentSystem as exc:  # pragma: no cover - excluded by feasibility
        raise InfeasibleInput(str(exc)) from exc
    return (
        Instance(A_bar, tuple(b_bar), tuple(inst.c[j] for j in S)),
        Solution(tuple(z.x[j] for j in S)),
    )


@dataclass(frozen=True)
class TraceStep:
    """One lambda step: direction, step length and support sizes."""

    iteration: int
    direction: SignVector
    lam: int
    support_before: int
    support_after: int
    objective_delta: int

    def to_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "columns": list(self.direction.columns),
            "y": list(self.direction.y),
            "lambda": str(self.lam),
            "support_before": self.support_before,
            "support_after": self.support_after,
            "objective_delta": str(self.objective_delta),
        }


@dataclass(frozen=True)
class SparsifyOutcome:
    """Result of :func:`sparsify`.

    ``restricted`` is the row-reduced matrix on the final support, the one
    whose bound the final point satisfies.  ``exhaustive`` is False when the
    support outgrew the search budget and only column windows were searched;
    the bound guarantee is then not established.
    """

    tag: Outcome
    solution: Solution | None
    ray: tuple[int, ...] | None
    iterations: int
    trace: tuple[TraceStep, ...] = ()
    restricted: IntMatrix | None = None
    exhaustive: bool = True

    def to_dict(self, inst: Instance | None = None) -> dict:
        d = {
            "tag": self.tag.value,
            "iterations": self.iterations,
            "exhaustive": self.exhaustive,
            "solution": None if self.solution is None else [str(v) for v in self.solution.x],
            "support_size": None if self.solution is None else self.solution.support_size,
            "ray": None if self.ray is None else [str(v) for v in self.ray],
            "trace": [s.to_dict() for s in self.trace],
        }
        if inst is not None and self.solution is not None:
            d["objective"] = str(inst.objective(self.solution.x))
        return d


def _search(rows: IntMatrix, S: tuple[int, ...], budget: int) -> tuple[SignVector | None, bool]:
    """Search ``rows`` (columns aligned with ``S``); window the columns past budget."""
    if len(S) <= budget:
        return find_sign_kernel_vector(rows, S, budget), True
    # A sign vector on any column window extends by zeros to one on S.
    for start in range(len(S) - budget + 1):
        window = list(range(start, start + budget))
        y = find_sign_kernel_vector(
            rows.select_columns(window), [S[k] for k in window], budget
        )
        if y is not None:
            return y, False
    return None, False


def sparsify(
    inst: Instance,
    z: Solution | Sequence[int],
    mode: Mode | str = Mode.OPTIMAL,
    budget: int = DEFAULT_SIGN_BUDGET,
) -> SparsifyOutcome:
    """Reduce the support of a feasible point by repeated lambda steps.

    In ``optimal`` mode only directions with ``c_S y = 0`` are used, so the
    objective is preserved; if none exists but a sign direction with
    ``c_S y != 0`` does, the input was not optimal and the outcome is
    ``Improved`` (or ``Unbounded`` for a nonnegative improving ray).  In
    ``feasible`` mode ``c`` is ignored.
    """
    mode = Mode(mode)
    if not isinstance(z, Solution):
        z = Solution(tuple(z))
    inst.check_feasible(z.x)

    trace: list[TraceStep] = []
    exhaustive = True
    it = 0
    while True:
        S = z.support
        A_bar, _ = remove_dependent_rows(inst.A.select_columns(S), inst.b)
        if not S:
            break
        c_S = [inst.c[j] for j in S]
        searched = A_bar.stack([c_S]) if mode is Mode.OPTIMAL else A_bar
        y, full = _search(searched, S, budget)
        exhaustive = exhaustive and full
        if y is not None:
            if all(v >= 0 for v in y.y):
                y = -y
            z, step = _step(inst, z, y, it + 1)
            trace.append(step)
            it += 1
            continue

        if mode is Mode.OPTIMAL:
            y, full = _search(A_bar, S, budget)
            exhaustive = exhaustive and full
            if y is not None:
                # stacked search failed, so c_S y != 0 here
                if y.dot(inst.c) < 0:
                    y = -y
                if all(v >= 0 for v in y.y):
                    return SparsifyOutcome(
                        Outcome.UNBOUNDED, None, y.dense(inst.n), it, tuple(trace),
                        A_bar, exhaustive,
                    )
                z, step = _step(inst, z, y, it + 1)
                trace.append(step)
                A_new, _ = remove_dependent_rows(inst.A.select_columns(z.support), inst.b)
                return SparsifyOutcome(
                    Outcome.IMPROVED, z, None, it + 1, tuple(trace), A_new, exhaustive
                )
        break

    return SparsifyOutcome(Outcome.SPARSIFIED, z, None, it, tuple(trace), A_bar, exhaustive)


def _step(inst: Instance, z: Solution, y: SignVector, iteration: int) -> tuple[Solution, TraceStep]:
    before = z.support_size
    lam = min(z.x[j] for j, v in zip(y.columns, y.y) if v < 0)
    z_new = lambda_step(z, y)
    step = TraceStep(
        iteration, y, lam, before, z_new.support_size, lam * y.dot(inst.c)
    )
    return z_new, step
