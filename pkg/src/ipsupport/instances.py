"""Instance generators: primorial worst cases and a seeded random corpus.

The primorial family takes the first ``k`` primes, sets
``q_i = p_k# / p_i`` and finds integers ``lam`` with ``sum lam_j q_j = 1``.
Each of ``m`` rows carries its own block of ``k`` columns holding
``sign(lam_j) q_j``, so ``A z = 1`` has the positive solution
``z = |lam|`` per block, yet every integer solution (of any sign) needs all
``k m`` block columns.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import prod
from typing import Iterator

from .errors import DimensionError, DomainError, GenerationFailure
from .linalg import IntMatrix, rank
from .model import Instance, Solution

__all__ = [
    "first_primes",
    "primorial",
    "extended_gcd",
    "primorial_certificate",
    "PrimorialInstance",
    "primorial_instance",
    "random_instance",
    "random_corpus",
    "corpus_parameters",
    "CorpusItem",
]


def first_primes(k: int) -> list[int]:
    """First ``k`` primes by trial division."""
    primes: list[int] = []
    cand = 2
    while len(primes) < k:
        if all(cand % p for p in primes if p * p <= cand):
            primes.append(cand)
        cand += 1
    return primes


def primorial(i: int) -> int:
    if i < 1:
        raise DomainError(f"primorial index must be at least 1, got {i}")
    return prod(first_primes(i))


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s a + t b = g = gcd(a, b)``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def primorial_certificate(k: int) -> tuple[list[int], list[int]]:
    """``q_i = p_k# / p_i`` and Bezout coefficients ``lam`` with ``lam . q = 1``.

    ``lam`` comes from a left fold of extended Euclid: combine ``q_1, q_2``,
    then fold each further ``q_j`` into the running gcd, rescaling all earlier
    coefficients.
    """
    if k < 2:
        raise DomainError(f"k must be at least 2, got {k}")
    primes = first_primes(k)
    pk = prod(primes)
    q = [pk // p for p in primes]
    g, s, t = extended_gcd(q[0], q[1])
    lam = [s, t]
    for qj in q[2:]:
        g, s, t = extended_gcd(g, qj)
        lam = [s * v for v in lam] + [t]
    assert g == 1 and sum(l * v for l, v in zip(lam, q)) == 1
    # every q_j is needed: dropping it leaves gcd p_j, so no lam_j can vanish
    assert all(lam), lam
    return q, lam


@dataclass(frozen=True)
class PrimorialInstance:
    k: int
    m: int
    n: int
    primes: tuple[int, ...]
    primorial: int
    q: tuple[int, ...]
    lam: tuple[int, ...]
    q_signed: tuple[int, ...]
    instance: Instance
    witness: Solution

    def metadata(self) -> dict:
        return {
            "generator": "primorial",
            "k": self.k,
            "m": self.m,
            "n": self.n,
            "primes": [str(p) for p in self.primes],
            "primorial": str(self.primorial),
            "q": [str(v) for v in self.q],
            "lambda": [str(v) for v in self.lam],
            "q_signed": [str(v) for v in self.q_signed],
        }


def primorial_instance(k: int, m: int, n: int | None = None) -> PrimorialInstance:
    """Block-diagonal primorial instance with ``b`` the all-ones vector.

    Columns past ``k * m`` are zero.  The objective is zero; only feasibility
    and support matter for this family.
    """
    if n is None:
        n = k * m
    if m < 1:
        raise DimensionError(f"m must be at least 1, got {m}")
    if n < k * m:
        raise DimensionError(f"n = {n} is smaller than k * m = {k * m}")
    q, lam = primorial_certificate(k)
    q_signed = [v if l > 0 else -v for v, l in zip(q, lam)]
    rows = []
    for i in range(m):
        row = [0] * n
        row[i * k:(i + 1) * k] = q_signed
        rows.append(row)
    witness = [abs(lam[j % k]) for j in range(k * m)] + [0] * (n - k * m)
    primes = first_primes(k)
    return PrimorialInstance(
        k=k,
        m=m,
        n=n,
        primes=tuple(primes),
        primorial=prod(primes),
        q=tuple(q),
        lam=tuple(lam),
        q_signed=tuple(q_signed),
        instance=Instance(IntMatrix.from_rows(rows), (1,) * m, (0,) * n),
        witness=Solution(tuple(witness)),
    )


MAX_DRAWS = 1000


def random_instance(m: int, n: int, a_max: int, seed: int) -> tuple[Instance, Solution]:
    """Seeded instance with a bounded feasible region and a known feasible point.

    The first row of ``A`` is drawn from ``1..a_max`` so every feasible ``x``
    satisfies ``sum x <= b_1``; other rows come from ``-a_max..a_max``.  ``A``
    is redrawn until it has full row rank.  ``b = A x0`` for ``x0`` in
    ``{0..3}^n`` and ``c`` has entries in ``-5..5``.
    """
    if not n > m >= 1:
        raise DimensionError(f"need n > m >= 1, got m={m}, n={n}")
    if a_max < 1:
        raise DomainError(f"a_max must be positive, got {a_max}")
    rng = random.Random(seed)
    for _ in range(MAX_DRAWS):
        rows = [[rng.randint(1, a_max) for _ in range(n)]]
        rows += [[rng.randint(-a_max, a_max) for _ in range(n)] for _ in range(m - 1)]
        A = IntMatrix.from_rows(rows)
        if rank(A) == m:
            break
    else:
        raise GenerationFailure(f"no full-rank {m}x{n} matrix after {MAX_DRAWS} draws")
    x0 = [rng.randint(0, 3) for _ in range(n)]
    c = [rng.randint(-5, 5) for _ in range(n)]
    b = [sum(a * v for a, v in zip(row, x0)) for row in rows]
    return Instance(A, tuple(b), tuple(c)), Solution(tuple(x0))


@dataclass(frozen=True)
class CorpusItem:
    index: int
    seed: int
    instance: Instance
    witness: Solution


def corpus_parameters(
    count: int, seed: int, m_max: int = 3, n_max: int = 7
) -> Iterator[tuple[int, int, int, int]]:
    """``(index, m, n, instance_seed)`` with ``m`` in ``1..m_max``, ``n`` in ``m+1..n_max``."""
    if n_max <= 1 or m_max < 1:
        raise DimensionError(f"need m_max >= 1 and n_max >= 2, got {m_max}, {n_max}")
    rng = random.Random(seed)
    for index in range(count):
        m = rng.randint(1, min(m_max, n_max - 1))
        n = rng.randint(m + 1, n_max)
        yield index, m, n, rng.getrandbits(32)


def random_corpus(
    count: int, seed: int, m_max: int = 3, n_max: int = 7, a_max: int = 3
) -> Iterator[CorpusItem]:
    for index, m, n, sub in corpus_parameters(count, seed, m_max, n_max):
        inst, x0 = random_instance(m, n, a_max, sub)
        yield CorpusItem(index, sub, inst, x0)
