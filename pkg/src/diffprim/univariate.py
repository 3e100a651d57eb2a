"""Dense univariate polynomials over Q and the canonical candidate stream
used by the substitution-witness and density searches.

Candidates are enumerated in a fixed, documented order so searches are
reproducible: the zero polynomial first, then degree ascending from 1, within
a degree coefficient height ascending (height of n/q in lowest terms is
max(|n|, q)), within a height all-integer coefficient vectors before vectors
containing proper fractions (denominators up to 4), and finally lexicographic
on (leading, ..., constant) coefficients under the scalar order
0, 1, -1, 2, -2, 1/2, -1/2, 3, ...  Nonzero constant polynomials are not
candidates: a constant shift can never create a new witness and it would mask
the intended smallest nonconstant answers.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Iterator, Sequence, TypeVar

from .algebra import MultiPoly

T = TypeVar("T")

RATIONAL_DEN_CAP = 4


def scalar_height(c: Fraction) -> int:
    return max(abs(c.numerator), c.denominator)


def _scalar_key(c: Fraction) -> tuple[int, int, int, int]:
    return (scalar_height(c), c.denominator, abs(c.numerator), 0 if c.numerator >= 0 else 1)


def scalars_up_to(height: int, den_cap: int = 1) -> list[Fraction]:
    """Every rational of height <= height with denominator <= den_cap, in
    canonical scalar order."""
    out = {Fraction(0)}
    for den in range(1, den_cap + 1):
        for num in range(-height, height + 1):
            c = Fraction(num, den)
            if scalar_height(c) <= height:
                out.add(c)
    return sorted(out, key=_scalar_key)


class UPoly:
    """Univariate polynomial, coefficients listed from the constant term up."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> UPoly:
        return cls()

    @classmethod
    def monomial(cls, degree: int, coeff: Fraction | int = 1) -> UPoly:
        return cls([0] * degree + [coeff])

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree with the convention that the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def derivative(self, times: int = 1) -> UPoly:
        cs = self.coeffs
        for _ in range(times):
            cs = tuple(c * (i + 1) for i, c in enumerate(cs[1:]))
        return UPoly(cs)

    def eval_with(self, value: T, lift: Callable[[Fraction], T]) -> T:
        """Horner evaluation inside any ring; ``lift`` embeds rationals."""
        acc = lift(Fraction(0))
        for c in reversed(self.coeffs):
            acc = acc * value + lift(c)
        return acc

    def eval_fraction(self, x: Fraction | int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_multipoly(self, var: str = "t") -> MultiPoly:
        total = MultiPoly.zero()
        for i, c in enumerate(self.coeffs):
            if c:
                total = total + MultiPoly({(((var, i),) if i else ()): c})
        return total

    def render(self, var: str = "t") -> str:
        return self.to_multipoly(var).render()

    def __eq__(self, other) -> bool:
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"UPoly({self.render()})"


def _vectors(lead: Sequence[Fraction], rest: Sequence[Fraction], degree: int,
             height: int, need_fraction: bool) -> Iterator[tuple[Fraction, ...]]:
    # product iterates the trailing coordinate fastest, which is exactly
    # lexicographic order with the leading coefficient most significant
    for vec in product(lead, *([rest] * degree)):
        if max(scalar_height(c) for c in vec) != height:
            continue
        if need_fraction and all(c.denominator == 1 for c in vec):
            continue
        yield vec


def candidate_polys(max_degree: int, max_height: int,
                    den_cap: int = RATIONAL_DEN_CAP) -> Iterator[UPoly]:
    """The canonical search stream of univariate polynomials (see module doc).

    Coefficient vectors are yielded leading-coefficient-first, so the first
    degree-2 candidate is t^2.
    """
    yield UPoly.zero()
    for degree in range(1, max_degree + 1):
        for height in range(1, max_height + 1):
            ints = scalars_up_to(height, 1)
            lead_ints = [c for c in ints if c]
            for vec in _vectors(lead_ints, ints, degree, height, need_fraction=False):
                yield UPoly(reversed(vec))
            rats = scalars_up_to(height, den_cap)
            lead_rats = [c for c in rats if c]
            for vec in _vectors(lead_rats, rats, degree, height, need_fraction=True):
                yield UPoly(reversed(vec))
