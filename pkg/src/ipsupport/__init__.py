"""Support bounds and support reduction for standard-form integer programs.

For ``max{c x : A x = b, x >= 0, x integral}`` with ``A`` of full row rank,
some optimal solution has at most ``m + log2(sqrt(det(A A^T)) / g)`` nonzero
entries, ``g`` being the gcd of the maximal minors of ``A``.  This package
computes that bound (and its relatives) exactly, reduces the support of a
given optimal point until it meets the bound, builds primorial instances on
which every integer solution is dense, and checks all of it by brute force
on small instances.
"""

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    feasibility_support_bound,
    lower_bound_formula,
    mixed_integer_support_bound,
    optimality_support_bound,
    support_within_bound,
    vertex_count_bound,
)
from .errors import (
    BudgetExceeded,
    DimensionError,
    DomainError,
    GenerationFailure,
    InconsistentSystem,
    InfeasibleInput,
    IPSupportError,
    NoNegativeEntry,
    ParseError,
    RankDeficient,
)
from .instances import primorial, primorial_certificate, primorial_instance, random_instance
from .linalg import (
    IntMatrix,
    SmithForm,
    gcd_of_maximal_minors,
    gram_determinant,
    integer_kernel_basis,
    rank,
    remove_dependent_rows,
    smith_form,
)
from .model import Instance, Solution
from .oracle import brute_force_min_support_any_sign, brute_force_optimize, verify_support_bound
from .sparsifier import (
    Mode,
    Outcome,
    SignVector,
    SparsifyOutcome,
    find_sign_kernel_vector,
    lambda_step,
    restrict_to_support,
    sparsify,
)
