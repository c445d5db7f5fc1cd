"""Exact linear algebra over arbitrary-precision Python integers.

Everything here works on :class:`IntMatrix` (or any nested sequence of ints,
which is coerced).  Elimination is fraction-free (Bareiss), so intermediate
values stay integral and every result is exact.  Smith and Hermite normal
forms use the classical gcd-driven row/column reduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Sequence

from .errors import DimensionError, InconsistentSystem, RankDeficient

__all__ = [
    "IntMatrix",
    "SmithForm",
    "as_int_matrix",
    "rank",
    "determinant",
    "remove_dependent_rows",
    "smith_form",
    "hermite_normal_form",
    "gcd_of_maximal_minors",
    "gram_determinant",
    "integer_kernel_basis",
    "mat_vec",
]


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored row-major in a flat tuple.

    Zero rows or zero columns are representable: restricting a system to an
    empty support, or dropping every row of an all-zero block, produces them.
    """

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"expected {self.rows * self.cols} entries for a {self.rows}x{self.cols} "
                f"matrix, got {len(self.entries)}"
            )
        for e in self.entries:
            if not isinstance(e, int) or isinstance(e, bool):
                raise TypeError(f"matrix entries must be int, got {type(e).__name__}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise DimensionError("cannot infer the column count of an empty row list")
            cols = len(rows[0])
        for i, r in enumerate(rows):
            if len(r) != cols:
                raise DimensionError(f"row {i} has {len(r)} entries, expected {cols}")
        return cls(len(rows), cols, tuple(int(e) for r in rows for e in r))

    @classmethod
    def identity(cls, size: int) -> IntMatrix:
        return cls.from_rows(
            [[int(i == j) for j in range(size)] for i in range(size)], cols=size
        )

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows(
            [self.column(j) for j in range(self.cols)], cols=self.rows
        )

    def select_columns(self, columns: Sequence[int]) -> IntMatrix:
        return IntMatrix.from_rows(
            [[self[i, j] for j in columns] for i in range(self.rows)], cols=len(columns)
        )

    def select_rows(self, rows: Sequence[int]) -> IntMatrix:
        return IntMatrix.from_rows([self.row(i) for i in rows], cols=self.cols)

    def stack(self, extra_rows: Iterable[Sequence[int]]) -> IntMatrix:
        return IntMatrix.from_rows(self.to_rows() + [list(r) for r in extra_rows], cols=self.cols)

    def max_abs(self) -> int:
        """Largest absolute entry, ``||M||_inf`` in max-entry convention."""
        return max((abs(e) for e in self.entries), default=0)

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_rows()!r})"


def as_int_matrix(M: IntMatrix | Sequence[Sequence[int]]) -> IntMatrix:
    if isinstance(M, IntMatrix):
        return M
    return IntMatrix.from_rows(M)


def mat_vec(M: IntMatrix, x: Sequence[int]) -> list[int]:
    M = as_int_matrix(M)
    if len(x) != M.cols:
        raise DimensionError(f"vector length {len(x)} does not match {M.cols} columns")
    return [sum(a * v for a, v in zip(M.row(i), x)) for i in range(M.rows)]


def _bareiss(a: list[list[int]], ncols: int) -> tuple[int, int, int]:
    """Fraction-free forward elimination of ``a`` in place.

    Returns ``(rank, sign, last_pivot)``.  ``sign`` tracks row swaps and
    ``last_pivot`` is the final Bareiss pivot, which for a nonsingular square
    matrix equals ``sign * det``.
    """
    nrows = len(a)
    r = 0
    sign = 1
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            sign = -sign
        piv = a[r][c]
        for i in range(r + 1, nrows):
            f = a[i][c]
            row_i = a[i]
            row_r = a[r]
            for j in range(c, ncols):
                row_i[j] = (piv * row_i[j] - f * row_r[j]) // prev
        prev = piv
        r += 1
    return r, sign, prev


def rank(M: IntMatrix | Sequence[Sequence[int]]) -> int:
    """Rank over the rationals."""
    M = as_int_matrix(M)
    return _bareiss(M.to_rows(), M.cols)[0]


def determinant(M: IntMatrix | Sequence[Sequence[int]]) -> int:
    M = as_int_matrix(M)
    if M.rows != M.cols:
        raise DimensionError(f"determinant needs a square matrix, got {M.rows}x{M.cols}")
    if M.rows == 0:
        return 1
    r, sign, last = _bareiss(M.to_rows(), M.cols)
    return sign * last if r == M.rows else 0


def remove_dependent_rows(
    M: IntMatrix | Sequence[Sequence[int]], rhs: Sequence[int]
) -> tuple[IntMatrix, list[int]]:
    """Keep a maximal independent subset of rows, first occurrences first.

    Each dropped row must be a rational combination of the kept rows with the
    same combination reproducing its right-hand side; otherwise the system is
    inconsistent and :class:`InconsistentSystem` is raised.
    """
    M = as_int_matrix(M)
    if len(rhs) != M.rows:
        raise DimensionError(f"rhs has length {len(rhs)}, expected {M.rows}")
    kept: list[int] = []
    for i in range(M.rows):
        trial = [list(M.row(k)) for k in kept] + [list(M.row(i))]
        if _bareiss(trial, M.cols)[0] > len(kept):
            kept.append(i)
            continue
        aug = [list(M.row(k)) + [rhs[k]] for k in kept] + [list(M.row(i)) + [rhs[i]]]
        if _bareiss(aug, M.cols + 1)[0] > len(kept):
            raise InconsistentSystem(
                f"row {i} lies in the span of earlier rows but its right-hand side does not"
            )
    return M.select_rows(kept), [int(rhs[k]) for k in kept]


@dataclass(frozen=True)
class SmithForm:
    """Invariant factors ``d_1 | d_2 | ... | d_r`` of an integer matrix.

    When requested, ``left`` and ``right`` are unimodular with
    ``left * M * right = diag(d_1, ..., d_r, 0, ...)``.
    """

    invariant_factors: tuple[int, ...]
    left: IntMatrix | None = field(default=None, compare=False)
    right: IntMatrix | None = field(default=None, compare=False)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def _swap_rows(a, i, j):
    a[i], a[j] = a[j], a[i]


def _swap_cols(a, i, j):
    for row in a:
        row[i], row[j] = row[j], row[i]


def _add_row(a, dst, src, q):
    # row_dst += q * row_src
    rd, rs = a[dst], a[src]
    for k in range(len(rd)):
        rd[k] += q * rs[k]


def _add_col(a, dst, src, q):
    for row in a:
        row[dst] += q * row[src]


def smith_form(M: IntMatrix | Sequence[Sequence[int]], transforms: bool = False) -> SmithForm:
    """Smith normal form by repeated gcd-driven row and column reduction."""
    M = as_int_matrix(M)
    m, n = M.shape
    D = M.to_rows()
    U = IntMatrix.identity(m).to_rows() if transforms else None
    V = IntMatrix.identity(n).to_rows() if transforms else None

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        if i != t:
            _swap_rows(D, t, i)
            if U is not None:
                _swap_rows(U, t, i)
        if j != t:
            _swap_cols(D, t, j)
            if V is not None:
                _swap_cols(V, t, j)

        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    _add_row(D, i, t, -q)
                    if U is not None:
                        _add_row(U, i, t, -q)
                    if D[i][t]:
                        _swap_rows(D, t, i)
                        if U is not None:
                            _swap_rows(U, t, i)
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    _add_col(D, j, t, -q)
                    if V is not None:
                        _add_col(V, j, t, -q)
                    if D[t][j]:
                        _swap_cols(D, t, j)
                        if V is not None:
                            _swap_cols(V, t, j)
                        done = False
            if not done:
                continue
            # pivot must divide the whole trailing block
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % D[t][t]),
                None,
            )
            if bad is None:
                break
            _add_row(D, t, bad, 1)
            if U is not None:
                _add_row(U, t, bad, 1)

        if D[t][t] < 0:
            D[t] = [-e for e in D[t]]
            if U is not None:
                U[t] = [-e for e in U[t]]
        t += 1

    factors = tuple(D[k][k] for k in range(t))
    return SmithForm(
        factors,
        IntMatrix.from_rows(U, cols=m) if U is not None else None,
        IntMatrix.from_rows(V, cols=n) if V is not None else None,
    )


def hermite_normal_form(M: IntMatrix | Sequence[Sequence[int]]) -> IntMatrix:
    """Row-style Hermite normal form with zero rows removed.

    The result is upper echelon, pivots are positive, and entries above a
    pivot lie in ``[0, pivot)``.  It is canonical for the row lattice of ``M``.
    """
    M = as_int_matrix(M)
    m, n = M.shape
    H = M.to_rows()
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(H[i][c]))
            if p != r:
                _swap_rows(H, r, p)
            for i in range(r + 1, m):
                if H[i][c]:
                    _add_row(H, i, r, -(H[i][c] // H[r][c]))
            if all(H[i][c] == 0 for i in range(r + 1, m)):
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-e for e in H[r]]
        for i in range(r):
            _add_row(H, i, r, -(H[i][c] // H[r][c]))
        r += 1
    return IntMatrix.from_rows(H[:r], cols=n)


def gcd_of_maximal_minors(M: IntMatrix | Sequence[Sequence[int]]) -> int:
    """gcd of all ``rows x rows`` minors, as the product of invariant factors."""
    M = as_int_matrix(M)
    sf = smith_form(M)
    if sf.rank < M.rows:
        raise RankDeficient(f"matrix has rank {sf.rank} < {M.rows} rows")
    return prod(sf.invariant_factors)


def gram_determinant(M: IntMatrix | Sequence[Sequence[int]]) -> int:
    """``det(M M^T)``, computed by Bareiss elimination on the Gram matrix."""
    M = as_int_matrix(M)
    rows = [M.row(i) for i in range(M.rows)]
    gram = [[sum(a * b for a, b in zip(ri, rj)) for rj in rows] for ri in rows]
    return determinant(IntMatrix.from_rows(gram, cols=M.rows))


def integer_kernel_basis(M: IntMatrix | Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Lattice basis of ``ker(M) ∩ Z^n``.

    The trailing columns of the right Smith transform span the kernel lattice;
    the basis is then put into Hermite normal form so the output is canonical
    and each vector's first nonzero entry is positive.
    """
    M = as_int_matrix(M)
    sf = smith_form(M, transforms=True)
    n = M.cols
    if sf.rank == n:
        return []
    V = sf.right
    raw = [V.column(j) for j in range(sf.rank, n)]
    H = hermite_normal_form(IntMatrix.from_rows(raw, cols=n))
    return [H.row(i) for i in range(H.rows)]
