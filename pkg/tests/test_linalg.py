"""Exact linear algebra: Bareiss against cofactor and plain Gauss."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from diffprim import MultiPoly
from diffprim.errors import RandomizationExhausted
from diffprim.linalg import bareiss, cofactor_det, rational_nullspace, rational_rank


def _frac_bareiss(rows):
    return bareiss(rows, is_zero=lambda v: v == 0,
                   exact_div=lambda a, b: a / b, one=Fraction(1))


def test_bareiss_matches_cofactor_on_random_integer_matrices():
    rng = random.Random(51)
    for _ in range(60):
        n = rng.randint(1, 4)
        rows = [[Fraction(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n)]
        _, det = _frac_bareiss(rows)
        assert det == cofactor_det(rows, Fraction(0))


def test_bareiss_rank_matches_gauss():
    rng = random.Random(53)
    for _ in range(60):
        n_rows, n_cols = rng.randint(1, 4), rng.randint(1, 4)
        rows = [[Fraction(rng.randint(-2, 2)) for _ in range(n_cols)]
                for _ in range(n_rows)]
        rank, _ = _frac_bareiss(rows)
        assert rank == rational_rank(rows)


def test_bareiss_polynomial_determinant():
    x = MultiPoly.variable("x")
    y = MultiPoly.variable("y")
    rows = [[x, y], [y, x]]
    _, det = bareiss(rows, is_zero=lambda p: p.is_zero,
                     exact_div=lambda a, b: a.exact_div(b), one=MultiPoly.const(1))
    assert det == x**2 - y**2
    assert det == cofactor_det(rows, MultiPoly.zero())


def test_nullspace_vectors_annihilate():
    rng = random.Random(57)
    for _ in range(40):
        n_rows, n_cols = rng.randint(1, 4), rng.randint(2, 5)
        rows = [[Fraction(rng.randint(-3, 3)) for _ in range(n_cols)]
                for _ in range(n_rows)]
        basis = rational_nullspace(rows, n_cols)
        assert len(basis) == n_cols - rational_rank(rows)
        for vec in basis:
            for row in rows:
                assert sum(r * v for r, v in zip(row, vec)) == 0


def test_nullspace_full_rank_is_empty():
    rows = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    assert rational_nullspace(rows, 2) == []


def test_randomization_exhausted(line_field):
    from diffprim import alg_trdeg

    with pytest.raises(RandomizationExhausted):
        alg_trdeg([line_field.gen("t")], retries=0)
