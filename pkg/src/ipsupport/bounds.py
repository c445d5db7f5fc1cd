"""Support bounds for standard-form integer programs.

Every verdict is an exact integer inequality: a bound of the form
``s <= m + log2(sqrt(G) / g)`` is checked as ``g**2 * 4**(s - m) <= G``.
Floats are carried along for reporting only.  Logarithms are base two.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Sequence

from .errors import DomainError, RankDeficient
from .linalg import IntMatrix, as_int_matrix, gcd_of_maximal_minors, gram_determinant

__all__ = [
    "BoundReport",
    "optimality_support_bound",
    "feasibility_support_bound",
    "mixed_integer_support_bound",
    "support_within_bound",
    "vertex_count_bound",
    "lower_bound_formula",
    "simplified_bound_holds",
]


@dataclass(frozen=True)
class BoundReport:
    """Exact and approximate values of one support bound for a matrix.

    ``opt_bound_*`` is the determinant form ``extra + m + log2(sqrt(G)/g)``,
    ``simplified_bound_*`` the entry-size form ``extra + 2m log2(2 sqrt(m) a)``,
    where ``extra`` is 0 for pure integer programs and ``m`` for the
    mixed-integer variant.
    """

    kind: str
    m: int
    n: int
    a_inf: int
    g: int
    gram_det: int
    opt_bound_float: float
    simplified_bound_float: float
    opt_bound_floor: int
    simplified_bound_floor: int

    def to_dict(self) -> dict:
        d = asdict(self)
        # exact integers as decimal strings; they outgrow JSON numbers
        for key in ("a_inf", "g", "gram_det"):
            d[key] = str(d[key])
        return d


def _determinantal_data(A: IntMatrix) -> tuple[int, int]:
    gram = gram_determinant(A)
    if gram == 0:
        raise RankDeficient(f"matrix with {A.rows} rows does not have full row rank")
    return gcd_of_maximal_minors(A), gram


def _log_excess_floor(g: int, gram: int) -> int:
    # max{t >= 0 : g^2 * 4^t <= gram}; g^2 <= gram always holds
    return ((gram // (g * g)).bit_length() - 1) // 2


def _simplified_power(m: int, a_inf: int) -> int:
    # (2 sqrt(m) a)^(2m) = (4 m a^2)^m
    return (4 * m * a_inf * a_inf) ** m


def _report(A: IntMatrix, kind: str, extra: int) -> BoundReport:
    g, gram = _determinantal_data(A)
    m, n, a = A.rows, A.cols, A.max_abs()
    if m == 0:
        opt_float = float(extra)
        simp_float = float(extra)
        simp_floor = extra
    else:
        opt_float = extra + m + math.log2(gram) / 2 - math.log2(g)
        simp_float = extra + 2 * m * (1 + 0.5 * math.log2(m) + math.log2(a))
        simp_floor = extra + _simplified_power(m, a).bit_length() - 1
    return BoundReport(
        kind=kind,
        m=m,
        n=n,
        a_inf=a,
        g=g,
        gram_det=gram,
        opt_bound_float=opt_float,
        simplified_bound_float=simp_float,
        opt_bound_floor=extra + m + _log_excess_floor(g, gram),
        simplified_bound_floor=simp_floor,
    )


def optimality_support_bound(A: IntMatrix | Sequence[Sequence[int]]) -> BoundReport:
    """Bound on the support of some optimal solution of ``max{c x : Ax=b, x>=0}``.

    Independent of ``c`` and ``b``.  Raises :class:`RankDeficient` unless ``A``
    has full row rank.
    """
    return _report(as_int_matrix(A), "optimality", 0)


def feasibility_support_bound(A: IntMatrix | Sequence[Sequence[int]]) -> BoundReport:
    """Same formula as :func:`optimality_support_bound`, for feasible points."""
    return _report(as_int_matrix(A), "feasibility", 0)


def mixed_integer_support_bound(A: IntMatrix | Sequence[Sequence[int]]) -> BoundReport:
    """``2m + log2(sqrt(G)/g)`` and ``m + 2m log2(2 sqrt(m) a)``."""
    A = as_int_matrix(A)
    return _report(A, "mixed_integer", A.rows)


def support_within_bound(support_size: int, A: IntMatrix | Sequence[Sequence[int]]) -> bool:
    """True iff ``support_size <= m + log2(sqrt(det(A A^T)) / g)``, decided exactly."""
    A = as_int_matrix(A)
    g, gram = _determinantal_data(A)
    if support_size < A.rows:
        return True
    return g * g * 4 ** (support_size - A.rows) <= gram


def simplified_bound_holds(A: IntMatrix | Sequence[Sequence[int]]) -> bool:
    """Exact check that the determinant bound is below the entry-size bound.

    Squared and exponentiated: ``4^m G <= g^2 (4 m a^2)^(2m)``.  Hadamard's
    inequality ``G <= (n a^2)^m`` makes this true whenever ``n <= 4 m^2 a^2``;
    past that it can fail, e.g. for a single row of five ones.
    """
    A = as_int_matrix(A)
    g, gram = _determinantal_data(A)
    m = A.rows
    return 4 ** m * gram <= g * g * _simplified_power(m, A.max_abs()) ** 2


def vertex_count_bound(A: IntMatrix | Sequence[Sequence[int]]) -> int:
    """Integer upper bound on the number of vertices of the integer hull.

    Evaluates ``n^m * n^e * (m (2 m a + 1)^m)^e`` with ``e`` the ceiling of
    ``2m log2(2 sqrt(m) a)``; rounding the exponent up only enlarges the bound.
    """
    A = as_int_matrix(A)
    _determinantal_data(A)
    m, n, a = A.rows, A.cols, A.max_abs()
    if n < 1:
        raise DomainError("vertex count bound needs at least one column")
    if m == 0:
        return 1
    # ceil(log2 P) for integer P >= 1 is (P - 1).bit_length()
    e = (_simplified_power(m, a) - 1).bit_length()
    return n ** m * n ** e * (m * (2 * m * a + 1) ** m) ** e


def lower_bound_formula(m: int, a_inf: int, epsilon: float) -> float:
    """``m * log2(a_inf) ** (1 / (1 + epsilon))``, for reporting."""
    if a_inf < 2:
        raise DomainError(f"a_inf must be at least 2, got {a_inf}")
    if not epsilon > 0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    return m * math.log2(a_inf) ** (1.0 / (1.0 + epsilon))
