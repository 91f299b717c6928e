from fractions import Fraction as F

import pytest

from telesum.errors import DivisionByZero
from telesum.rational import const, seq
from telesum.sampling import rng_for, sample_rational
from telesum.telescope import (TelescopeProblem, raw_euler_sum,
                               solve_linear_recurrence, sum_to_telescope,
                               telescoping_closed_form, telescoping_sum)


def fib(n: int) -> F:
    a, b = F(0), F(1)
    for _ in range(n):
        a, b = b, a + b
    return a


def random_problem(rng, max_len=12) -> TelescopeProblem:
    """Admissible problem: nonzero u, v everywhere and w_0 != 0."""
    n = rng.randint(0, max_len - 1)
    while True:
        u_vals = [sample_rational(rng) for _ in range(n + 1)]
        v_vals = [sample_rational(rng) for _ in range(n + 1)]
        if u_vals[0] != v_vals[0]:
            return TelescopeProblem(seq(u_vals), seq(v_vals), n)


def test_geometric_instance():
    # u = 2, v = 1 is the geometric sum at ratio 2
    p = TelescopeProblem(const(2), const(1), 3)
    assert telescoping_sum(p) == 15
    assert telescoping_closed_form(p) == 15


def test_single_term_is_one():
    p = TelescopeProblem(lambda k: F(k) + 7, lambda k: F(k) + 2, 0)
    assert telescoping_sum(p) == 1
    assert telescoping_closed_form(p) == 1


def test_fibonacci_shifted_instance():
    p = TelescopeProblem(lambda k: fib(k + 3), lambda k: fib(k + 2), 4)
    assert telescoping_sum(p) == 12  # 1 + 1 + 2 + 3 + 5
    assert telescoping_closed_form(p) == 12


def test_unit_ratio_counts_terms():
    p = TelescopeProblem(lambda k: F(k + 2), lambda k: F(k + 1), 4)
    assert telescoping_closed_form(p) == 5
    assert telescoping_sum(p) == 5


def test_zero_w0_raises():
    p = TelescopeProblem(const(3), const(3), 2)
    with pytest.raises(DivisionByZero):
        telescoping_sum(p)
    with pytest.raises(DivisionByZero):
        telescoping_closed_form(p)


def test_zero_v_raises():
    p = TelescopeProblem(const(2), lambda k: F(k - 1), 3)  # v(1) = 0
    with pytest.raises(DivisionByZero):
        telescoping_sum(p)


def test_closed_form_zero_u0_with_nonzero_v0():
    p = TelescopeProblem(lambda k: F(k), lambda k: F(k) + 1, 2)  # u(0) = 0, v(0) = 1
    with pytest.raises(DivisionByZero):
        telescoping_closed_form(p)


def test_closed_form_skips_second_term_when_v0_zero():
    # the rising-factorial pattern: v_0 = 0 makes the -v_0/u_0 term vanish
    m = 2
    u = lambda k: F((k + 1) * (k + 2) * (k + 3))
    v = lambda k: F(k * (k + 1) * (k + 2))
    p = TelescopeProblem(u, v, 4)
    assert telescoping_sum(p) == telescoping_closed_form(p)


def test_oracle_equivalence_seeded():
    rng = rng_for(101, "oracle")
    for _ in range(250):
        p = random_problem(rng)
        assert telescoping_sum(p) == telescoping_closed_form(p)


def test_raw_euler_sum_trivial_and_geometric():
    assert raw_euler_sum(const(1), const(1), 5) == (0, 0)
    lhs, rhs = raw_euler_sum(const(2), const(1), 3)
    assert lhs == rhs == 7


def test_raw_euler_sum_fibonacci():
    u = lambda k: fib(k + 2)
    v = lambda k: fib(k + 1)
    lhs, rhs = raw_euler_sum(u, v, 6)
    assert lhs == rhs == fib(8) - 1  # = 20
    lhs4, rhs4 = raw_euler_sum(u, v, 4)
    assert lhs4 == rhs4 == fib(6) - 1


def test_raw_euler_sum_seeded_equality():
    rng = rng_for(5, "raw")
    for _ in range(250):
        n = rng.randint(1, 12)
        u_vals = [sample_rational(rng) for _ in range(n + 1)]
        v_vals = [sample_rational(rng) for _ in range(n + 1)]
        lhs, rhs = raw_euler_sum(seq(u_vals), seq(v_vals), n)
        assert lhs == rhs


def test_sum_to_telescope_examples():
    f_sq = lambda k: F(k * k)
    assert sum_to_telescope(f_sq, 3) == (16, 16)
    assert sum_to_telescope(const(7), 9) == (0, 0)
    collapsed, gaps = sum_to_telescope(lambda k: fib(k), 5)
    assert collapsed == gaps == 8  # F_6 - F_0


def test_sum_to_telescope_seeded_equality():
    rng = rng_for(6, "tel")
    for _ in range(200):
        n = rng.randint(0, 12)
        vals = [sample_rational(rng) for _ in range(n + 2)]
        collapsed, gaps = sum_to_telescope(seq(vals), n)
        assert collapsed == gaps


def test_solve_linear_recurrence_derangements():
    b = lambda m: F(m)
    c = lambda m: F((-1) ** m)
    assert solve_linear_recurrence(b, c, F(0), 4) == 9  # x_5 = d_4


def test_solve_linear_recurrence_homogeneous():
    b = lambda m: F(m + 2)
    assert solve_linear_recurrence(b, const(0), F(3), 3) == 3 * 2 * 3 * 4 * 5


def test_solve_linear_recurrence_counting():
    assert solve_linear_recurrence(const(1), const(1), F(0), 9) == 10


def test_solve_linear_recurrence_matches_iteration():
    rng = rng_for(7, "linrec")
    for _ in range(120):
        n = rng.randint(0, 40)
        b_vals = [sample_rational(rng) for _ in range(n + 1)]
        c_vals = [sample_rational(rng) for _ in range(n + 1)]
        x0 = sample_rational(rng)
        x = x0
        for m in range(n + 1):
            x = b_vals[m] * x + c_vals[m]
        assert solve_linear_recurrence(seq(b_vals), seq(c_vals), x0, n) == x


def test_solve_linear_recurrence_zero_b_raises():
    b = lambda m: F(m)  # b(1) != 0 required; make b(1) = 0 via shift
    with pytest.raises(DivisionByZero):
        solve_linear_recurrence(lambda m: F(m - 1), const(1), F(1), 3)
