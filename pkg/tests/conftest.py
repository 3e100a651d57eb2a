"""Shared corpus builders: seeded random polynomials, rational functions and
presented differential fields at desk scale."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from diffprim import DiffField, FieldElement, MultiPoly, RatFunc


def rand_poly(rng: random.Random, variables: list[str], max_terms: int = 4,
              max_exp: int = 3, coeff_bound: int = 5, allow_zero: bool = True) -> MultiPoly:
    terms = {}
    for _ in range(rng.randint(0 if allow_zero else 1, max_terms)):
        mono = []
        for v in variables:
            e = rng.randint(0, max_exp)
            if e:
                mono.append((v, e))
        coeff = rng.randint(-coeff_bound, coeff_bound)
        if coeff:
            terms[tuple(sorted(mono))] = Fraction(coeff)
    poly = MultiPoly(terms)
    if not allow_zero and poly.is_zero:
        return MultiPoly.const(rng.randint(1, coeff_bound))
    return poly


def rand_ratfunc(rng: random.Random, variables: list[str], max_exp: int = 3,
                 coeff_bound: int = 5) -> RatFunc:
    num = rand_poly(rng, variables, max_exp=max_exp, coeff_bound=coeff_bound)
    den = rand_poly(rng, variables, max_terms=2, max_exp=max(1, max_exp - 1),
                    coeff_bound=coeff_bound, allow_zero=False)
    return RatFunc(num, den)


def rand_field(rng: random.Random, n_gens: int, derivation_degree: int = 2,
               rational_derivations: bool = False) -> DiffField:
    gens = ["t", "u", "v"][:n_gens]
    derivation = {}
    for g in gens:
        num = rand_poly(rng, gens, max_terms=3, max_exp=derivation_degree,
                        coeff_bound=3)
        if rational_derivations and rng.random() < 0.4:
            den = rand_poly(rng, gens, max_terms=2, max_exp=1, coeff_bound=2,
                            allow_zero=False)
            derivation[g] = RatFunc(num, den)
        else:
            derivation[g] = RatFunc(num)
    return DiffField(gens, derivation)


def rand_element(rng: random.Random, field: DiffField, max_exp: int = 2,
                 coeff_bound: int = 3, polynomial: bool = False) -> FieldElement:
    gens = list(field.generators)
    if polynomial:
        return field.element(RatFunc(rand_poly(rng, gens, max_exp=max_exp,
                                               coeff_bound=coeff_bound)))
    return field.element(rand_ratfunc(rng, gens, max_exp=max_exp,
                                      coeff_bound=coeff_bound))


@pytest.fixture()
def two_generator_field() -> DiffField:
    """k(x, y) with x' = 1 and y' = 0: the standard worked example."""
    return DiffField(["x", "y"], {"x": RatFunc.const(1), "y": RatFunc.const(0)})


@pytest.fixture()
def line_field() -> DiffField:
    """k(t) with t' = 1."""
    return DiffField(["t"], {"t": RatFunc.const(1)})


@pytest.fixture()
def example_field_text() -> str:
    return (
        "# two generators, constant second generator\n"
        "generator x\n"
        "generator y\n"
        "derivation x = 1\n"
        "derivation y = 0\n"
        "element a = x^2 + y\n"
    )
