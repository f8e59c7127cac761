import random
from fractions import Fraction

import pytest

from openbooks.linalg import SingularMatrixError, det, signature, solve

from oracles import leibniz_det, signature_oracle


def test_det_matches_leibniz_on_random_integer_matrices():
    rng = random.Random(20240)
    for _ in range(1500):
        n = rng.randint(0, 5)
        m = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        assert det(m) == leibniz_det(m)


def test_det_matches_leibniz_on_rational_matrices():
    rng = random.Random(20241)
    for _ in range(400):
        n = rng.randint(1, 4)
        m = [
            [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
            for _ in range(n)
        ]
        assert det(m) == leibniz_det(m)


def test_det_empty_matrix_is_one():
    assert det([]) == 1


def test_signature_matches_charpoly_oracle():
    rng = random.Random(20242)
    for _ in range(600):
        n = rng.randint(1, 5)
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                v = rng.randint(-4, 4)
                m[i][j] = v
                m[j][i] = v
        assert signature(m) == signature_oracle(m)


def test_signature_handles_zero_diagonal_blocks():
    # hyperbolic pair: signature 0
    assert signature([[0, 1], [1, 0]]) == 0
    assert signature([[0, 3], [3, 0]]) == 0
    # definite cases
    assert signature([[2, 0], [0, 5]]) == 2
    assert signature([[-1, 0], [0, -7]]) == -2
    assert signature([[0]]) == 0


def test_signature_rejects_asymmetric_input():
    with pytest.raises(ValueError):
        signature([[1, 2], [3, 4]])


def test_solve_roundtrip_on_random_systems():
    rng = random.Random(20243)
    solved = 0
    while solved < 300:
        n = rng.randint(1, 6)
        m = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        if det(m) == 0:
            continue
        b = [rng.randint(-5, 5) for _ in range(n)]
        x = solve(m, b)
        for i in range(n):
            assert sum(Fraction(m[i][j]) * x[j] for j in range(n)) == b[i]
        solved += 1


def test_solve_raises_on_singular():
    with pytest.raises(SingularMatrixError):
        solve([[1, 2], [2, 4]], [1, 1])
