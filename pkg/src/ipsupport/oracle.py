"""Brute-force ground truth for tiny instances.

Enumeration walks the box coordinate by coordinate.  At each level the
residual ``b - A x_prefix`` must stay within what the remaining coordinates
can still produce, which pins every coordinate to an interval (and the last
one to at most a single value).  Budgets are checked before any enumeration
starts.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .bounds import optimality_support_bound, support_within_bound
from .errors import BudgetExceeded, RankDeficient
from .linalg import IntMatrix, as_int_matrix, remove_dependent_rows
from .model import Instance, Solution
from .sparsifier import DEFAULT_SIGN_BUDGET, Outcome, sparsify

__all__ = [
    "DEFAULT_BUDGET",
    "DEFAULT_OPTIMA_CAP",
    "OracleResult",
    "SupportBoundVerdict",
    "budget_from_env",
    "enumerate_box",
    "enumeration_size",
    "region_in_box",
    "brute_force_optimize",
    "brute_force_min_support_any_sign",
    "verify_support_bound",
    "NonOptimalCheck",
    "check_nonoptimal_start",
]

DEFAULT_BUDGET = 10**8
DEFAULT_OPTIMA_CAP = 10**5
BUDGET_ENV = "IPSUPPORT_BUDGET"


def budget_from_env(default: int = DEFAULT_BUDGET) -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else default


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def enumerate_box(
    A: IntMatrix, b: Sequence[int], lo: int, hi: int, values_first: Sequence[int] = ()
) -> Iterator[tuple[int, ...]]:
    """All ``x`` in ``[lo, hi]^n`` with ``A x = b``, in lexicographic order.

    ``values_first`` lists values tried before the rest of each interval,
    which changes the order but not the set.
    """
    A = as_int_matrix(A)
    m, n = A.shape
    cols = [A.column(j) for j in range(n)]
    # smin[j][i], smax[j][i]: range of row i over coordinates j..n-1
    smin = [[0] * m for _ in range(n + 1)]
    smax = [[0] * m for _ in range(n + 1)]
    for j in range(n - 1, -1, -1):
        for i, a in enumerate(cols[j]):
            lo_c, hi_c = sorted((a * lo, a * hi))
            smin[j][i] = smin[j + 1][i] + lo_c
            smax[j][i] = smax[j + 1][i] + hi_c

    x = [0] * n

    def interval(j: int, r: list[int]) -> tuple[int, int]:
        vlo, vhi = lo, hi
        nmin, nmax = smin[j + 1], smax[j + 1]
        for i, a in enumerate(cols[j]):
            if a > 0:
                vlo = max(vlo, _ceil_div(r[i] - nmax[i], a))
                vhi = min(vhi, (r[i] - nmin[i]) // a)
            elif a < 0:
                vlo = max(vlo, _ceil_div(r[i] - nmin[i], a))
                vhi = min(vhi, (r[i] - nmax[i]) // a)
            elif not nmin[i] <= r[i] <= nmax[i]:
                return 1, 0
        return vlo, vhi

    def rec(j: int, r: list[int]) -> Iterator[tuple[int, ...]]:
        if j == n:
            yield tuple(x)
            return
        vlo, vhi = interval(j, r)
        if vlo > vhi:
            return
        first = [v for v in values_first if vlo <= v <= vhi]
        rest = (v for v in range(vlo, vhi + 1) if v not in first)
        col = cols[j]
        for v in (*first, *rest):
            x[j] = v
            yield from rec(j + 1, [ri - a * v for ri, a in zip(r, col)])
        x[j] = 0

    r0 = list(b)
    if all(smin[0][i] <= r0[i] <= smax[0][i] for i in range(m)):
        yield from rec(0, r0)


def _count_knapsack(weights: Sequence[int], cap: int, box: int) -> int:
    # number of x in [0, box]^n with sum w_j x_j <= cap, all w_j >= 0
    counts = [1] + [0] * cap
    for w in weights:
        if w == 0:
            counts = [v * (box + 1) for v in counts]
            continue
        new = [0] * (cap + 1)
        for s in range(cap + 1):
            acc = 0
            k = 0
            while k <= box and k * w <= s:
                acc += counts[s - k * w]
                k += 1
            new[s] = acc
        counts = new
    return sum(counts)


def enumeration_size(inst: Instance, box: int, knapsack_cap: int = 10**4) -> int:
    """Upfront upper bound on the number of box points the oracle can reach.

    Plain ``(box + 1)^n``, tightened by counting box points of the knapsack
    ``sum a_ij x_j <= b_i`` for any sign-uniform row with a small right side.
    """
    size = (box + 1) ** inst.n
    for i in range(inst.m):
        row, rhs = list(inst.A.row(i)), inst.b[i]
        if all(a <= 0 for a in row):
            row, rhs = [-a for a in row], -rhs
        if not all(a >= 0 for a in row):
            continue
        if rhs < 0:
            return 0
        if rhs <= knapsack_cap:
            size = min(size, _count_knapsack(row, rhs, box))
    return size


def region_in_box(inst: Instance, box: int) -> bool:
    """True if some strictly sign-definite row confines all of ``{Ax=b, x>=0}`` to the box."""
    for i in range(inst.m):
        row, rhs = inst.A.row(i), inst.b[i]
        if all(a < 0 for a in row):
            row, rhs = [-a for a in row], -rhs
        if all(a > 0 for a in row) and all(rhs // a <= box for a in row):
            return True
    return False


@dataclass
class OracleResult:
    """All maximizers in the box plus support statistics.

    ``optimal_value`` is ``None`` when nothing in the box is feasible.  The
    optima list stops growing at the cap (``optima_overflow`` is then set);
    support statistics are streamed and do not depend on the cap.
    """

    optimal_value: int | None
    optima: list[Solution] = field(default_factory=list)
    optima_overflow: bool = False
    min_support: int | None = None
    argmin_support_solution: Solution | None = None
    max_support_solution: Solution | None = None
    feasible_count: int = 0
    worst_value: int | None = None
    worst_solution: Solution | None = None

    @property
    def feasible(self) -> bool:
        return self.optimal_value is not None


def _check_budget(size: int, budget: int) -> None:
    if size > budget:
        raise BudgetExceeded(
            f"enumeration size {size} exceeds budget {budget}", size=size, budget=budget
        )


def brute_force_optimize(
    inst: Instance,
    box: int,
    budget: int | None = None,
    optima_cap: int = DEFAULT_OPTIMA_CAP,
) -> OracleResult:
    """Maximize ``c x`` over ``{x in [0, box]^n : A x = b}`` by enumeration.

    Exact for the whole program when the feasible region lies in the box
    (see :func:`region_in_box`).
    """
    budget = budget_from_env() if budget is None else budget
    _check_budget(enumeration_size(inst, box), budget)
    res = OracleResult(None)
    for x in enumerate_box(inst.A, inst.b, 0, box):
        val = inst.objective(x)
        res.feasible_count += 1
        if res.worst_value is None or val < res.worst_value:
            res.worst_value, res.worst_solution = val, Solution(x)
        if res.optimal_value is None or val > res.optimal_value:
            res.optimal_value = val
            res.optima = []
            res.optima_overflow = False
            res.min_support = None
            res.argmin_support_solution = None
            res.max_support_solution = None
        if val != res.optimal_value:
            continue
        sol = Solution(x)
        if len(res.optima) < optima_cap:
            res.optima.append(sol)
        else:
            res.optima_overflow = True
        s = sol.support_size
        if res.min_support is None or s < res.min_support:
            res.min_support, res.argmin_support_solution = s, sol
        if res.max_support_solution is None or s > res.max_support_solution.support_size:
            res.max_support_solution = sol
    return res


def brute_force_min_support_any_sign(
    A: IntMatrix | Sequence[Sequence[int]],
    b: Sequence[int],
    box: int,
    budget: int | None = None,
) -> int | None:
    """Least ``|supp(z)|`` over integer ``z`` in ``[-box, box]^n`` with ``A z = b``.

    Returns ``None`` if the box holds no solution.
    """
    A = as_int_matrix(A)
    budget = budget_from_env() if budget is None else budget
    _check_budget((2 * box + 1) ** A.cols, budget)
    best = None
    # trying 0 first finds sparse solutions early; the count then prunes
    for z in _sparse_first(A, b, box, lambda: best):
        s = sum(1 for v in z if v)
        if best is None or s < best:
            best = s
            if best == 0:
                break
    return best


def _sparse_first(A: IntMatrix, b, box, current_best) -> Iterator[tuple[int, ...]]:
    # enumerate_box with an extra cut: stop a branch once its support
    # already reaches the best found so far
    m, n = A.shape
    cols = [A.column(j) for j in range(n)]
    reach = [[0] * m for _ in range(n + 1)]
    for j in range(n - 1, -1, -1):
        reach[j] = [r + abs(a) * box for r, a in zip(reach[j + 1], cols[j])]
    z = [0] * n

    def rec(j, r, supp):
        best = current_best()
        if best is not None and supp >= best:
            return
        if any(abs(ri) > lim for ri, lim in zip(r, reach[j])):
            return
        if j == n:
            yield tuple(z)
            return
        col = cols[j]
        for v in [0] + [s * k for k in range(1, box + 1) for s in (1, -1)]:
            z[j] = v
            yield from rec(j + 1, [ri - a * v for ri, a in zip(r, col)], supp + (v != 0))
        z[j] = 0

    yield from rec(0, list(b), 0)


@dataclass
class SupportBoundVerdict:
    """Outcome of checking the support bound on one instance against the oracle."""

    passed: bool
    reason: str
    box: int
    region_in_box: bool
    optimal_value: int | None = None
    feasible_count: int = 0
    optima_count: int = 0
    min_support: int | None = None
    min_support_solution: Solution | None = None
    bound_floor: int | None = None
    bound_holds: bool | None = None
    full_bound_floor: int | None = None
    sparsify_start: Solution | None = None
    sparsify_tag: str | None = None
    sparsify_solution: Solution | None = None
    sparsify_support: int | None = None
    sparsify_bound_floor: int | None = None
    sparsify_bound_holds: bool | None = None
    sparsify_value_matches: bool | None = None
    sparsify_in_optima: bool | None = None
    sparsify_iterations: int | None = None

    @property
    def slack(self) -> int | None:
        if self.bound_floor is None or self.min_support is None:
            return None
        return self.bound_floor - self.min_support

    def to_dict(self) -> dict:
        def vec(s):
            return None if s is None else [str(v) for v in s.x]

        return {
            "passed": self.passed,
            "reason": self.reason,
            "box": self.box,
            "region_in_box": self.region_in_box,
            "optimal_value": _opt_str(self.optimal_value),
            "feasible_count": self.feasible_count,
            "optima_count": self.optima_count,
            "min_support": self.min_support,
            "min_support_solution": vec(self.min_support_solution),
            "bound_floor": self.bound_floor,
            "bound_holds": self.bound_holds,
            "full_matrix_bound_floor": self.full_bound_floor,
            "slack": self.slack,
            "sparsify": {
                "start": vec(self.sparsify_start),
                "tag": self.sparsify_tag,
                "solution": vec(self.sparsify_solution),
                "support": self.sparsify_support,
                "bound_floor": self.sparsify_bound_floor,
                "bound_holds": self.sparsify_bound_holds,
                "value_matches": self.sparsify_value_matches,
                "in_oracle_optima": self.sparsify_in_optima,
                "iterations": self.sparsify_iterations,
            },
        }


def _restricted(inst: Instance, sol: Solution) -> IntMatrix:
    A_bar, _ = remove_dependent_rows(inst.A.select_columns(sol.support), inst.b)
    return A_bar


def verify_support_bound(
    inst: Instance,
    box: int,
    budget: int | None = None,
    sign_budget: int = DEFAULT_SIGN_BUDGET,
    oracle: OracleResult | None = None,
) -> SupportBoundVerdict:
    """Check the optimal-support bound on ``inst`` by enumeration.

    1. The sparsest oracle optimum must satisfy the bound for the row-reduced
       matrix on its own support.
    2. Sparsifying the densest oracle optimum must return ``Sparsified`` with
       the optimal value and a support within the bound on its final support.

    Pass ``oracle`` to reuse an enumeration already done with the same box.
    """
    res = oracle if oracle is not None else brute_force_optimize(inst, box, budget)
    v = SupportBoundVerdict(False, "", box, region_in_box(inst, box))
    if not res.feasible:
        v.reason = "no feasible point in box"
        return v
    v.optimal_value = res.optimal_value
    v.feasible_count = res.feasible_count
    v.optima_count = len(res.optima)
    v.min_support = res.min_support
    v.min_support_solution = res.argmin_support_solution
    A_min = _restricted(inst, res.argmin_support_solution)
    v.bound_floor = optimality_support_bound(A_min).opt_bound_floor
    v.bound_holds = support_within_bound(res.min_support, A_min)
    try:
        v.full_bound_floor = optimality_support_bound(inst.A).opt_bound_floor
    except RankDeficient:  # the restricted bound still applies
        v.full_bound_floor = None

    start = res.max_support_solution
    out = sparsify(inst, start, "optimal", sign_budget)
    v.sparsify_start = start
    v.sparsify_tag = out.tag.value
    v.sparsify_iterations = out.iterations
    if out.solution is not None:
        sol = out.solution
        v.sparsify_solution = sol
        v.sparsify_support = sol.support_size
        v.sparsify_bound_floor = optimality_support_bound(out.restricted).opt_bound_floor
        v.sparsify_bound_holds = support_within_bound(sol.support_size, out.restricted)
        v.sparsify_value_matches = (
            inst.is_feasible(sol.x) and inst.objective(sol.x) == res.optimal_value
        )
        v.sparsify_in_optima = None if res.optima_overflow else sol in res.optima

    failures = []
    if not v.bound_holds:
        failures.append("oracle minimum support exceeds bound")
    if out.tag is not Outcome.SPARSIFIED:
        failures.append(f"sparsifier returned {out.tag.value} from an optimal point")
    elif not (v.sparsify_bound_holds and v.sparsify_value_matches and out.exhaustive):
        failures.append("sparsified point misses bound or optimal value")
    v.passed = not failures
    v.reason = "; ".join(failures) if failures else "ok"
    return v


def _opt_str(v: int | None) -> str | None:
    return None if v is None else str(v)


@dataclass
class NonOptimalCheck:
    """Sparsifying a deliberately suboptimal point, judged against the oracle."""

    applicable: bool
    passed: bool
    start: Solution | None = None
    start_value: int | None = None
    optimal_value: int | None = None
    tag: str | None = None
    result_value: int | None = None

    def to_dict(self) -> dict:
        return {
            "applicable": self.applicable,
            "passed": self.passed,
            "start": None if self.start is None else [str(v) for v in self.start.x],
            "start_value": _opt_str(self.start_value),
            "optimal_value": _opt_str(self.optimal_value),
            "tag": self.tag,
            "result_value": _opt_str(self.result_value),
        }


def check_nonoptimal_start(
    inst: Instance, oracle: OracleResult, sign_budget: int = DEFAULT_SIGN_BUDGET
) -> NonOptimalCheck:
    """Sparsify from the worst feasible point in optimal mode.

    Consistent outcomes: ``Improved`` to a feasible point whose value is
    above the start and at most the oracle optimum, or ``Sparsified`` at the
    start value.  ``Unbounded`` contradicts a bounded oracle region.  Not
    applicable when all feasible points share one value.
    """
    if not oracle.feasible or oracle.worst_value == oracle.optimal_value:
        return NonOptimalCheck(False, True)
    start = oracle.worst_solution
    chk = NonOptimalCheck(
        True, False, start, oracle.worst_value, oracle.optimal_value
    )
    out = sparsify(inst, start, "optimal", sign_budget)
    chk.tag = out.tag.value
    if out.solution is None:
        return chk
    sol = out.solution
    chk.result_value = inst.objective(sol.x)
    if not inst.is_feasible(sol.x) or chk.result_value > oracle.optimal_value:
        return chk
    if out.tag is Outcome.IMPROVED:
        chk.passed = chk.result_value > chk.start_value
    elif out.tag is Outcome.SPARSIFIED:
        chk.passed = chk.result_value == chk.start_value
    return chk
