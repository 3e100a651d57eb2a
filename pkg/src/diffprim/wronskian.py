"""Symbolic Wronskians and the power-difference family.

The family member of size k with omitted index l is the k x k Wronskian of
(x - y, x^2 - y^2, ..., x^(k+1) - y^(k+1)) with the column x^l - y^l deleted.
Every such determinant is affine in the top-order symbols (the (k-1)-st
derivatives of x and y); splitting on them and, for k >= 3, factoring the two
top coefficients through a shared cofactor is the structural content this
module computes and checks.  Determinants run through fraction-free
elimination with cofactor expansion kept as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import MultiPoly, RatFunc
from .diffpoly import DerivSymbol, DiffPoly, formal_derive
from .errors import ArgumentOutOfRange, DecompositionFailed, ExactDivisionError, NoWitness
from .fields import FieldElement
from .linalg import bareiss, cofactor_det

_X, _Y = "x", "y"


def _derivative_grid(sources: Sequence, depth: int, derive) -> list[list]:
    rows = [list(sources)]
    for _ in range(depth - 1):
        rows.append([derive(entry) for entry in rows[-1]])
    return rows


def wronskian(sources: Sequence[DiffPoly] | Sequence[FieldElement], *, use_cofactor: bool = False):
    """Determinant of the matrix whose row i holds the i-th derivatives of the
    sources.  DiffPoly inputs stay in the differential polynomial ring; field
    elements are derived with their field's derivation."""
    sources = list(sources)
    if not sources:
        raise ValueError("wronskian of an empty family")
    if isinstance(sources[0], DiffPoly):
        rows = _derivative_grid(sources, len(sources), formal_derive)
        body_rows = [[entry.body for entry in row] for row in rows]
        if use_cofactor:
            return DiffPoly(cofactor_det(body_rows, MultiPoly.zero()))
        _, det = bareiss(
            body_rows,
            is_zero=lambda p: p.is_zero,
            exact_div=lambda a, b: a.exact_div(b),
            one=MultiPoly.const(1),
        )
        return DiffPoly(det)
    field = sources[0].field
    rows = _derivative_grid(sources, len(sources), lambda f: f.derivative())
    value_rows = [[entry.value for entry in row] for row in rows]
    if use_cofactor:
        det = cofactor_det(value_rows, RatFunc.zero())
    else:
        _, det = bareiss(
            value_rows,
            is_zero=lambda r: r.is_zero,
            exact_div=lambda a, b: a / b,
            one=RatFunc.one(),
        )
    return field.element(det.normalized())


def family_sources(k: int, l: int) -> list[DiffPoly]:
    """x^j - y^j for j = 1..k+1 with j = l omitted."""
    if k < 2:
        raise ArgumentOutOfRange(f"family size k must be at least 2, got {k}")
    if not 1 <= l <= k + 1:
        raise ArgumentOutOfRange(f"omitted index l must lie in [1, {k + 1}], got {l}")
    x = DiffPoly.variable(_X)
    y = DiffPoly.variable(_Y)
    return [x**j - y**j for j in range(1, k + 2) if j != l]


def family_wronskian(k: int, l: int, *, use_cofactor: bool = False) -> DiffPoly:
    return wronskian(family_sources(k, l), use_cofactor=use_cofactor)


@dataclass(frozen=True)
class FamilyDecomposition:
    """Split of a family Wronskian on its top-order derivative symbols.

    whole = base + x^(k-1) * x_coeff + y^(k-1) * y_coeff, with every piece of
    derivative order at most k-2; for k >= 3 additionally
    x_coeff = -y' * common and y_coeff = x' * common.
    """

    k: int
    l: int
    whole: DiffPoly
    base: DiffPoly
    x_coeff: DiffPoly
    y_coeff: DiffPoly
    common: DiffPoly | None

    def reassembles(self) -> bool:
        top_x = DiffPoly.variable(_X, self.k - 1)
        top_y = DiffPoly.variable(_Y, self.k - 1)
        rebuilt = self.base + top_x * self.x_coeff + top_y * self.y_coeff
        return rebuilt == self.whole


def family_decomposition(k: int, l: int) -> FamilyDecomposition:
    """Collect the family Wronskian on the top-order symbols and, for k >= 3,
    factor the shared cofactor out of the two top coefficients.

    A failure here would contradict the determinant structure the family is
    built on, so it raises DecompositionFailed instead of degrading.
    """
    w = family_wronskian(k, l)
    top_x = DerivSymbol(_X, k - 1).flat
    top_y = DerivSymbol(_Y, k - 1).flat
    if w.body.degree_in(top_x) > 1 or w.body.degree_in(top_y) > 1:
        raise DecompositionFailed(f"family ({k}, {l}) is not affine in its top orders")
    x_coeff = w.body.coeff_of(top_x, 1)
    y_coeff = w.body.coeff_of(top_y, 1)
    if x_coeff.degree_in(top_y) or y_coeff.degree_in(top_x):
        raise DecompositionFailed(f"family ({k}, {l}) has a mixed top-order term")
    base = w.body.coeff_of(top_x, 0).coeff_of(top_y, 0)
    max_piece_order = max(
        (
            DerivSymbol.from_flat(v).order
            for piece in (base, x_coeff, y_coeff)
            for v in piece.variables()
        ),
        default=0,
    )
    if max_piece_order > k - 2:
        raise DecompositionFailed(f"family ({k}, {l}) pieces exceed order {k - 2}")
    common: DiffPoly | None = None
    if k >= 3:
        y1 = MultiPoly.variable(DerivSymbol(_Y, 1).flat)
        x1 = MultiPoly.variable(DerivSymbol(_X, 1).flat)
        try:
            shared = (-x_coeff).exact_div(y1)
        except ExactDivisionError as exc:
            raise DecompositionFailed(
                f"family ({k}, {l}): x-coefficient is not divisible by y'"
            ) from exc
        if x1 * shared != y_coeff:
            raise DecompositionFailed(
                f"family ({k}, {l}): shared cofactor does not reproduce the y-coefficient"
            )
        common = DiffPoly(shared)
    deco = FamilyDecomposition(
        k=k,
        l=l,
        whole=w,
        base=DiffPoly(base),
        x_coeff=DiffPoly(x_coeff),
        y_coeff=DiffPoly(y_coeff),
        common=common,
    )
    if not deco.reassembles():
        raise DecompositionFailed(f"family ({k}, {l}) does not reassemble")
    return deco


def independence_witness(k: int) -> int:
    """Least l in [1, k] whose decomposition is not proportional to the one
    with the last column omitted: base_l * common_(k+1) - base_(k+1) * common_l
    is a nonzero differential polynomial."""
    if k < 3:
        raise ArgumentOutOfRange(f"the witness needs k >= 3, got {k}")
    last = family_decomposition(k, k + 1)
    for l in range(1, k + 1):
        deco = family_decomposition(k, l)
        cross = deco.base * last.common - last.base * deco.common
        if not cross.is_zero:
            return l
    raise NoWitness(f"no independence witness for k = {k}")


def coefficient_determinant() -> DiffPoly:
    """Determinant of the (x', y') coefficient matrix of the two size-2 family
    Wronskians (omitted indices 3 and 2)."""
    top = family_decomposition(2, 3)
    bottom = family_decomposition(2, 2)
    return top.x_coeff * bottom.y_coeff - top.y_coeff * bottom.x_coeff


@dataclass(frozen=True)
class LemmaCheck:
    name: str
    passed: bool
    detail: str = ""


def _diagonal_collapse(w: DiffPoly) -> DiffPoly:
    """Substitute every y-symbol by the matching x-symbol."""
    bindings = {}
    for sym in w.symbols():
        if sym.base == _Y:
            bindings[sym.flat] = MultiPoly.variable(DerivSymbol(_X, sym.order).flat)
    substituted = w.body.substitute(bindings)
    if not substituted.den == MultiPoly.const(1):
        raise AssertionError("polynomial substitution produced a denominator")
    return DiffPoly(substituted.num)


def lemma_checks(k_max: int = 4) -> list[LemmaCheck]:
    """Machine checks of every structural identity of the family, one row per
    instance; used by the verify-lemmas command and the acceptance suite."""
    if k_max < 2:
        raise ArgumentOutOfRange("k_max must be at least 2")
    checks: list[LemmaCheck] = []
    x = DiffPoly.variable(_X)
    y = DiffPoly.variable(_Y)
    xp = DiffPoly.variable(_X, 1)
    yp = DiffPoly.variable(_Y, 1)

    ref_23 = (x - y) ** 2 * (xp + yp)
    checks.append(
        LemmaCheck(
            "family(2,3) equals (x - y)^2 (x' + y')",
            family_wronskian(2, 3) == ref_23,
        )
    )
    ref_22 = (x - y) * (xp * (2 * x**2 - x * y - y**2) + yp * (x**2 + x * y - 2 * y**2))
    checks.append(
        LemmaCheck(
            "family(2,2) equals (x - y)(x'(2x^2 - xy - y^2) + y'(x^2 + xy - 2y^2))",
            family_wronskian(2, 2) == ref_22,
        )
    )
    checks.append(
        LemmaCheck(
            "coefficient determinant equals -(x - y)^5",
            coefficient_determinant() == -((x - y) ** 5),
        )
    )
    for k in range(2, k_max + 1):
        for l in range(1, k + 2):
            try:
                deco = family_decomposition(k, l)
                ok = deco.reassembles()
                detail = ""
            except DecompositionFailed as exc:
                ok, detail = False, str(exc)
            checks.append(LemmaCheck(f"decomposition reassembles ({k},{l})", ok, detail))
            w = family_wronskian(k, l)
            checks.append(
                LemmaCheck(
                    f"matches cofactor determinant ({k},{l})",
                    w == family_wronskian(k, l, use_cofactor=True),
                )
            )
            checks.append(
                LemmaCheck(
                    f"vanishes on x = y ({k},{l})",
                    _diagonal_collapse(w).is_zero,
                )
            )
        if k >= 3:
            try:
                l_found = independence_witness(k)
                checks.append(
                    LemmaCheck(f"independence witness exists (k={k})", True, f"l = {l_found}")
                )
            except NoWitness as exc:
                checks.append(LemmaCheck(f"independence witness exists (k={k})", False, str(exc)))
    return checks
