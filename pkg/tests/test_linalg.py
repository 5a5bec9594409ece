import random
from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st

from tropglue import linalg


def random_matrix(rng, m, n, lo=-3, hi=3):
    return [[Fraction(rng.randint(lo, hi), rng.choice((1, 1, 2, 3))) for _ in range(n)] for _ in range(m)]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 6), st.integers(1, 6))
def test_rank_matches_sympy(seed, m, n):
    rng = random.Random(seed)
    A = random_matrix(rng, m, n)
    if rng.random() < 0.5 and m > 1:
        A[-1] = [a + b for a, b in zip(A[0], A[-1 - (m > 2)])]  # force dependencies
    assert linalg.rank(A) == sympy.Matrix(A).rank()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 5), st.integers(1, 6))
def test_solve_exact(seed, m, n):
    rng = random.Random(seed)
    A = random_matrix(rng, m, n)
    x_true = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)]
    b = [sum(a * x for a, x in zip(row, x_true)) for row in A]
    sol, rnk = linalg.solve(A, b)
    assert sol is not None and rnk == sympy.Matrix(A).rank()
    assert sol.dim == n - rnk
    for row, bi in zip(A, b):
        assert sum(a * x for a, x in zip(row, sol.particular)) == bi
        for k in sol.kernel:
            assert sum(a * x for a, x in zip(row, k)) == 0


def test_solve_inconsistent():
    sol, rnk = linalg.solve([[1, 1], [2, 2]], [1, 3])
    assert sol is None and rnk == 1


def test_strict_feasible_point():
    # t > 0, 1 - t > 0  ->  some t in (0, 1)
    t = linalg.strict_feasible_point([([1], 0), ([-1], 1)], 1)
    assert t is not None and 0 < t[0] < 1
    # t > 1 and t < 1 impossible
    assert linalg.strict_feasible_point([([1], -1), ([-1], 1)], 1) is None
    # two variables: x > 0, y > 0, x + y < 1
    p = linalg.strict_feasible_point([([1, 0], 0), ([0, 1], 0), ([-1, -1], 1)], 2)
    assert p is not None and p[0] > 0 and p[1] > 0 and p[0] + p[1] < 1
