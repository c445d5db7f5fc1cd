import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brute import feasible_points, support
from ipsupport.errors import BudgetExceeded
from ipsupport.instances import primorial_instance, random_instance
from ipsupport.model import Instance
from ipsupport.oracle import (
    brute_force_min_support_any_sign,
    brute_force_optimize,
    check_nonoptimal_start,
    enumerate_box,
    enumeration_size,
    region_in_box,
    verify_support_bound,
)


class TestOptimizeExamples:
    def test_two_columns(self):
        r = brute_force_optimize(Instance.from_lists([[1, 1]], [3], [2, 1]), 3)
        assert r.optimal_value == 6
        assert [s.x for s in r.optima] == [(3, 0)]
        assert r.min_support == 1
        assert r.feasible_count == 4

    def test_zero_objective(self):
        r = brute_force_optimize(Instance.from_lists([[1, 1, 1]], [2], [0, 0, 0]), 2)
        assert r.feasible_count == 6 and len(r.optima) == 6
        assert r.optimal_value == 0 and r.min_support == 1

    def test_forced_zero(self):
        r = brute_force_optimize(Instance.from_lists([[1, 0], [0, 1]], [0, 0], [4, -1]), 1)
        assert [s.x for s in r.optima] == [(0, 0)] and r.min_support == 0

    def test_infeasible_in_box(self):
        r = brute_force_optimize(Instance.from_lists([[2, 4]], [3], [1, 1]), 5)
        assert not r.feasible and r.optimal_value is None

    def test_budget_checked_upfront(self):
        inst = Instance.from_lists([[1, -1, 1, -1]], [0], [0, 0, 0, 0])
        with pytest.raises(BudgetExceeded) as err:
            brute_force_optimize(inst, 50, budget=1000)
        assert err.value.size == 51**4

    def test_optima_cap(self):
        inst = Instance.from_lists([[1, 1, 1]], [4], [0, 0, 0])
        r = brute_force_optimize(inst, 4, optima_cap=3)
        assert len(r.optima) == 3 and r.optima_overflow
        assert r.min_support == 1  # streamed, unaffected by the cap


@settings(max_examples=150, deadline=None)
@given(
    st.integers(1, 2), st.integers(1, 4), st.integers(-2, 2), st.integers(0, 3), st.data()
)
def test_enumerate_box_matches_itertools(m, n, lo_off, width, data):
    lo = min(lo_off, 0)
    hi = lo + width
    rows = [data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n)) for _ in range(m)]
    x = data.draw(st.lists(st.integers(lo, hi), min_size=n, max_size=n))
    b = [sum(a * v for a, v in zip(r, x)) for r in rows]
    from ipsupport.linalg import IntMatrix

    got = list(enumerate_box(IntMatrix.from_rows(rows), b, lo, hi))
    assert got == list(feasible_points(rows, b, lo, hi, n))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 2), st.integers(1, 2), st.integers(0, 2**32 - 1))
def test_optimize_matches_itertools(m, extra, seed):
    inst, _ = random_instance(m, m + extra, 2, seed)
    box = min(inst.b[0], 6)
    rows = inst.A.to_rows()
    pts = list(feasible_points(rows, inst.b, 0, box, inst.n))
    r = brute_force_optimize(inst, box)
    if not pts:
        assert not r.feasible
        return
    best = max(inst.objective(x) for x in pts)
    optima = sorted(x for x in pts if inst.objective(x) == best)
    assert r.optimal_value == best
    assert sorted(s.x for s in r.optima) == optima
    assert r.min_support == min(support(x) for x in optima)
    assert r.feasible_count == len(pts)
    assert enumeration_size(inst, box) >= len(pts)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_box_monotone_and_exact(m, extra, seed):
    inst, _ = random_instance(m, min(m + extra, 5), 3, seed)
    b1 = inst.b[0]
    small = brute_force_optimize(inst, max(b1 // 2, 0))
    exact = brute_force_optimize(inst, b1)
    wider = brute_force_optimize(inst, b1 + 2)
    assert region_in_box(inst, b1)
    if small.feasible:
        assert exact.optimal_value >= small.optimal_value
    assert (exact.optimal_value, exact.min_support, exact.feasible_count) == (
        wider.optimal_value, wider.min_support, wider.feasible_count
    )


class TestAnySign:
    def test_primorial_k2(self):
        assert brute_force_min_support_any_sign([[3, -2]], [1], 5) == 2

    def test_zero_rhs(self):
        assert brute_force_min_support_any_sign([[1]], [0], 1) == 0

    def test_primorial_k3(self):
        assert brute_force_min_support_any_sign([[-15, 10, 6]], [1], 5) == 3

    def test_no_solution(self):
        assert brute_force_min_support_any_sign([[2, 4]], [1], 3) is None

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            brute_force_min_support_any_sign([[1] * 8], [1], 10, budget=10**6)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(1, 4), st.data())
    def test_matches_itertools(self, n, data):
        rows = [data.draw(st.lists(st.integers(-6, 6), min_size=n, max_size=n))]
        b = [data.draw(st.integers(-4, 4))]
        box = 3
        pts = list(feasible_points(rows, b, -box, box, n))
        expected = min((support(x) for x in pts), default=None)
        assert brute_force_min_support_any_sign(rows, b, box) == expected


@pytest.mark.parametrize("k, m", [(2, 1), (3, 1), (2, 2)])
def test_primorial_support_is_km(k, m):
    p = primorial_instance(k, m)
    box = 5 * max(abs(v) for v in p.lam)
    assert brute_force_min_support_any_sign(p.instance.A, p.instance.b, box) == k * m


class TestVerifySupportBound:
    def test_sum_row(self):
        v = verify_support_bound(Instance.from_lists([[1, 1, 1]], [2], [0, 0, 0]), 2)
        assert v.passed and v.min_support == 1 and v.bound_floor == 1
        assert v.sparsify_in_optima

    def test_square_instance(self):
        v = verify_support_bound(Instance.from_lists([[2, 1], [1, 1]], [5, 3], [1, 1]), 5)
        assert v.passed and v.min_support == 2

    def test_infeasible(self):
        v = verify_support_bound(Instance.from_lists([[2, 4]], [3], [1, 1]), 3)
        assert not v.passed and "feasible" in v.reason

    def test_small_random_corpus(self):
        for seed in range(40):
            inst, _ = random_instance(1 + seed % 3, 4 + seed % 3, 3, seed)
            v = verify_support_bound(inst, inst.b[0])
            assert v.passed, (seed, v.reason)
            assert v.sparsify_in_optima


def test_nonoptimal_check():
    inst = Instance.from_lists([[1, 1]], [2], [1, 0])
    r = brute_force_optimize(inst, 2)
    chk = check_nonoptimal_start(inst, r)
    assert chk.applicable and chk.passed
    # the worst point is a vertex, so no step inside its support exists
    assert chk.start.x == (0, 2) and chk.tag == "Sparsified" and chk.result_value == 0

    inst = Instance.from_lists([[1, 1, 1]], [2], [2, -1, -1])
    chk = check_nonoptimal_start(inst, brute_force_optimize(inst, 2))
    assert chk.applicable and chk.passed and chk.start_value == -2

    flat = Instance.from_lists([[1, 1]], [2], [1, 1])
    chk = check_nonoptimal_start(flat, brute_force_optimize(flat, 2))
    assert not chk.applicable and chk.passed


def test_enumeration_size_knapsack():
    inst = Instance.from_lists([[1, 1, 1]], [3], [0, 0, 0])
    # points of [0,3]^3 with x1+x2+x3 <= 3
    expected = sum(1 for x in itertools.product(range(4), repeat=3) if sum(x) <= 3)
    assert enumeration_size(inst, 3) == expected
