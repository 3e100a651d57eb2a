"""Presented differential fields k(t1, ..., tm) with the derivation given on
the generators.

Transcendence degree of a family of elements is the rank of its Jacobian with
respect to the generators (characteristic zero).  The default rank method
evaluates the Jacobian at random integer points and is confirmed by agreement
of two pole-free samples; the symbolic method clears denominators row-wise and
runs fraction-free elimination over the polynomial ring, giving an
independent exact answer.  Differential transcendence degree iterates ranks of
prolongations until the first non-increase, which suffices in characteristic
zero because algebraicity of the next derivative propagates upward.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Mapping, Sequence

from .algebra import MultiPoly, RatFunc, check_var_name
from .diffpoly import DERIV_MARK, DiffPoly, diff_substitute
from .errors import (
    CapExceeded,
    ConstantElement,
    MembershipNotFound,
    RandomizationExhausted,
    ZeroPolynomial,
)
from .linalg import bareiss, rational_nullspace, rational_rank
from .univariate import UPoly, candidate_polys

RANDOM_POINT_BOUND = 10**6
DEFAULT_RANK_RETRIES = 32
DEFAULT_DEGREE_CAP = 8

# Light gcd allowance applied after each derivative to keep representatives small.
_DERIVE_GCD_BUDGET = 4_000


class DiffField:
    """A field k(t1, ..., tm) together with the derivative of each generator."""

    __slots__ = ("generators", "derivation")

    def __init__(self, generators: Sequence[str], derivation: Mapping[str, RatFunc]):
        gens = tuple(generators)
        if not gens:
            raise ValueError("a differential field needs at least one generator")
        seen: set[str] = set()
        for g in gens:
            check_var_name(g)
            if DERIV_MARK in g:
                raise ValueError(f"generator name may not contain {DERIV_MARK!r}")
            if g in seen:
                raise ValueError(f"duplicate generator {g!r}")
            seen.add(g)
        rules: dict[str, RatFunc] = {}
        for g in gens:
            if g not in derivation:
                raise ValueError(f"no derivation given for generator {g!r}")
            rf = RatFunc.coerce(derivation[g])
            extra = rf.variables() - seen
            if extra:
                raise ValueError(f"derivation of {g!r} uses unknown variables {sorted(extra)}")
            rules[g] = rf
        unknown = set(derivation) - seen
        if unknown:
            raise ValueError(f"derivation given for non-generators {sorted(unknown)}")
        self.generators = gens
        self.derivation = rules

    # -- element construction -------------------------------------------------

    def element(self, value) -> FieldElement:
        rf = RatFunc.coerce(value)
        extra = rf.variables() - set(self.generators)
        if extra:
            raise ValueError(f"element uses unknown variables {sorted(extra)}")
        return FieldElement(self, rf)

    def gen(self, name: str) -> FieldElement:
        if name not in self.generators:
            raise ValueError(f"{name!r} is not a generator")
        return FieldElement(self, RatFunc.variable(name))

    def const(self, c) -> FieldElement:
        return FieldElement(self, RatFunc.const(c))

    def zero(self) -> FieldElement:
        return self.const(0)

    def one(self) -> FieldElement:
        return self.const(1)

    # -- derivation -------------------------------------------------------------

    def derive_poly(self, p: MultiPoly) -> RatFunc:
        total = RatFunc.zero()
        for g in self.generators:
            part = p.partial(g)
            if not part.is_zero:
                total = total + RatFunc(part) * self.derivation[g]
        return total

    def derive_ratfunc(self, rf: RatFunc, times: int = 1) -> RatFunc:
        """Chain rule over the generators, iterated ``times`` times."""
        for _ in range(times):
            num, den = rf.num, rf.den
            num_dot = self.derive_poly(num)
            if den.total_degree() == 0:
                rf = (num_dot * RatFunc.const(1 / den.constant_value())).normalized(
                    _DERIVE_GCD_BUDGET
                )
                continue
            den_dot = self.derive_poly(den)
            rf = (
                (num_dot * RatFunc(den) - RatFunc(num) * den_dot)
                / RatFunc(den * den)
            ).normalized(_DERIVE_GCD_BUDGET)
        return rf

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffField):
            return NotImplemented
        return self.generators == other.generators and all(
            self.derivation[g] == other.derivation[g] for g in self.generators
        )

    __hash__ = None

    def __repr__(self) -> str:
        rules = ", ".join(f"{g}' = {self.derivation[g].render(self.generators)}" for g in self.generators)
        return f"DiffField({', '.join(self.generators)}; {rules})"


class FieldElement:
    """An element of a presented differential field (a rational function of
    the generators)."""

    __slots__ = ("field", "value")

    def __init__(self, field: DiffField, value: RatFunc):
        self.field = field
        self.value = value

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        return FieldElement(self.field, RatFunc.coerce(other))

    def __add__(self, other) -> FieldElement:
        return FieldElement(self.field, self.value + self._coerce(other).value)

    __radd__ = __add__

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, -self.value)

    def __sub__(self, other) -> FieldElement:
        return FieldElement(self.field, self.value - self._coerce(other).value)

    def __rsub__(self, other) -> FieldElement:
        return FieldElement(self.field, self._coerce(other).value - self.value)

    def __mul__(self, other) -> FieldElement:
        return FieldElement(self.field, self.value * self._coerce(other).value)

    __rmul__ = __mul__

    def __truediv__(self, other) -> FieldElement:
        return FieldElement(self.field, self.value / self._coerce(other).value)

    def __rtruediv__(self, other) -> FieldElement:
        return FieldElement(self.field, self._coerce(other).value / self.value)

    def __pow__(self, n: int) -> FieldElement:
        return FieldElement(self.field, self.value.pow_int(n))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, RatFunc, MultiPoly)):
            return self.value == RatFunc.coerce(other)
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        return NotImplemented

    __hash__ = None

    @property
    def is_zero(self) -> bool:
        return self.value.is_zero

    def derivative(self, times: int = 1) -> FieldElement:
        return FieldElement(self.field, self.field.derive_ratfunc(self.value, times))

    def normalized(self) -> FieldElement:
        return FieldElement(self.field, self.value.normalized())

    def render(self) -> str:
        return self.value.render(var_order=self.field.generators)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"FieldElement({self.render()})"


# -- basic operations -----------------------------------------------------------


def derive_element(f: FieldElement, times: int = 1) -> FieldElement:
    return f.derivative(times)


def prolongation(f: FieldElement, up_to: int) -> list[FieldElement]:
    """[f, f', ..., f^(up_to)]."""
    if up_to < 0:
        raise ValueError("prolongation order must be nonnegative")
    out = [f]
    for _ in range(up_to):
        out.append(out[-1].derivative())
    return out


def is_nonconstant(f: FieldElement) -> bool:
    return not f.derivative().value.is_zero


# -- transcendence degree ---------------------------------------------------------


@dataclass(frozen=True)
class TrdegReport:
    """Result of a differential transcendence degree computation."""

    trdeg: int
    stabilization_order: int
    method: str  # "randomized" | "symbolic"
    witness_points: tuple[dict[str, Fraction], ...] = ()


def _jacobian_rows_symbolic(elements: Sequence[FieldElement], gens: Sequence[str]) -> list[list[MultiPoly]]:
    # d(n/d)/dt = (n_t d - n d_t) / d^2: the whole row shares denominator d^2,
    # so scaling the row by it leaves polynomial entries and the same rank.
    rows = []
    for f in elements:
        num, den = f.value.num, f.value.den
        rows.append([num.partial(g) * den - num * den.partial(g) for g in gens])
    return rows


def _symbolic_rank(elements: Sequence[FieldElement], gens: Sequence[str]) -> int:
    rows = _jacobian_rows_symbolic(elements, gens)
    rank, _ = bareiss(
        rows,
        is_zero=lambda p: p.is_zero,
        exact_div=lambda a, b: a.exact_div(b),
        one=MultiPoly.const(1),
    )
    return rank


def _randomized_rank(
    elements: Sequence[FieldElement],
    gens: Sequence[str],
    seed: int,
    retries: int,
    bound: int,
) -> tuple[int, list[dict[str, Fraction]]]:
    pre = []
    for f in elements:
        num, den = f.value.num, f.value.den
        pre.append(
            (
                num,
                den,
                {g: num.partial(g) for g in gens},
                {g: den.partial(g) for g in gens},
            )
        )
    cap = min(len(elements), len(gens))
    rng = random.Random(seed)
    best = -1
    witnesses: list[dict[str, Fraction]] = []
    agreements = 0
    poles = 0
    for _ in range(retries):
        point = {g: Fraction(rng.randint(-bound, bound)) for g in gens}
        rows: list[list[Fraction]] = []
        try:
            for num, den, dnum, dden in pre:
                d = den.eval(point)
                if not d:
                    raise ZeroDivisionError
                n = num.eval(point)
                rows.append(
                    [
                        (dnum[g].eval(point) * d - n * dden[g].eval(point)) / (d * d)
                        for g in gens
                    ]
                )
        except ZeroDivisionError:
            poles += 1
            continue
        r = rational_rank(rows)
        if r > best:
            best, witnesses, agreements = r, [point], 1
        elif r == best:
            agreements += 1
            if len(witnesses) < 2:
                witnesses.append(point)
        if best == cap or agreements >= 2:
            return best, witnesses
    raise RandomizationExhausted(retries, poles)


def alg_trdeg(
    elements: Sequence[FieldElement],
    *,
    symbolic: bool = False,
    seed: int = 0,
    retries: int = DEFAULT_RANK_RETRIES,
    bound: int = RANDOM_POINT_BOUND,
) -> int:
    """Transcendence degree of the elements over the constants: Jacobian rank."""
    rank, _ = _alg_trdeg_full(elements, symbolic=symbolic, seed=seed, retries=retries, bound=bound)
    return rank


def _alg_trdeg_full(
    elements: Sequence[FieldElement],
    *,
    symbolic: bool,
    seed: int,
    retries: int,
    bound: int = RANDOM_POINT_BOUND,
) -> tuple[int, list[dict[str, Fraction]]]:
    elements = [f for f in elements]
    if not elements:
        return 0, []
    gens = elements[0].field.generators
    if symbolic:
        return _symbolic_rank(elements, gens), []
    return _randomized_rank(elements, gens, seed, retries, bound)


def diff_trdeg(
    gens: Sequence[FieldElement],
    *,
    symbolic: bool = False,
    seed: int = 0,
    retries: int = DEFAULT_RANK_RETRIES,
) -> TrdegReport:
    """Differential transcendence degree of the field generated by ``gens``.

    Ranks of prolongations are computed for rising order and the loop stops at
    the first order whose rank does not increase.
    """
    method = "symbolic" if symbolic else "randomized"
    if not gens:
        return TrdegReport(0, 0, method)
    chains = [[g] for g in gens]
    flat = [g for chain in chains for g in chain]
    rank, points = _alg_trdeg_full(flat, symbolic=symbolic, seed=seed, retries=retries)
    order = 0
    while True:
        for chain in chains:
            chain.append(chain[-1].derivative())
        flat = [g for chain in chains for g in chain]
        next_rank, next_points = _alg_trdeg_full(
            flat, symbolic=symbolic, seed=seed + order + 1, retries=retries
        )
        if next_rank == rank:
            return TrdegReport(rank, order, method, tuple(next_points))
        rank, points = next_rank, next_points
        order += 1


# -- substitution witnesses ------------------------------------------------------


def nonvanishing_witness(q: DiffPoly, f: FieldElement, cfg=None) -> UPoly:
    """A univariate p over Q with q nonzero after substituting p(f) for the
    indeterminate of q.

    Candidates are tried in the canonical enumeration order, so the answer is
    reproducible.  Exhausting the caps raises CapExceeded; it never means no
    witness exists.
    """
    from .search import SearchConfig  # local import to avoid a cycle

    cfg = cfg or SearchConfig()
    if q.is_zero:
        raise ZeroPolynomial("the differential polynomial is zero")
    if not is_nonconstant(f):
        raise ConstantElement("the substituted element must be nonconstant")
    bases = q.bases()
    if len(bases) > 1:
        raise ValueError(f"expected one indeterminate, found {sorted(bases)}")
    field = f.field
    if not bases:
        return UPoly.zero()  # constant nonzero polynomial: any value works
    base = next(iter(bases))
    for p in candidate_polys(cfg.max_p_degree, cfg.max_coeff_height):
        value = p.eval_with(f, lift=field.element)
        if not diff_substitute(q, {base: value}, field).value.is_zero:
            return p
    raise CapExceeded(
        "no substitution witness within caps",
        caps={"max_p_degree": cfg.max_p_degree, "max_coeff_height": cfg.max_coeff_height},
    )


# -- membership certificates -------------------------------------------------------


def monomials_up_to(n_vars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent tuples of total degree <= degree, ascending graded-lex."""
    out: list[tuple[int, ...]] = [(0,) * n_vars]
    for total in range(1, degree + 1):
        batch = set()
        for combo in combinations_with_replacement(range(n_vars), total):
            exp = [0] * n_vars
            for idx in combo:
                exp[idx] += 1
            batch.add(tuple(exp))
        out.extend(sorted(batch))
    return out


@dataclass(frozen=True)
class MembershipCertificate:
    """Explicit P, Q with target = P(tower)/Q(tower); revalidated on creation.

    Coefficient vectors follow ``monomials_up_to(len(tower), degree_bound)``.
    """

    target: FieldElement
    tower: tuple[FieldElement, ...]
    num_coeffs: tuple[Fraction, ...]
    den_coeffs: tuple[Fraction, ...]
    degree_bound: int

    def __post_init__(self):
        num, den = self.evaluate_pair()
        if den.is_zero:
            raise ValueError("certificate denominator vanishes on the tower")
        if not (self.target.value * den - num).is_zero:
            raise ValueError("certificate identity failed to revalidate")

    def monomials(self) -> list[tuple[int, ...]]:
        return monomials_up_to(len(self.tower), self.degree_bound)

    def evaluate_pair(self) -> tuple[RatFunc, RatFunc]:
        """(P(tower), Q(tower)) as rational functions of the generators."""
        monos = self.monomials()
        # build monomial values along the graded lattice: each value is its
        # predecessor (first exponent lowered) times one tower entry
        values: dict[tuple[int, ...], RatFunc] = {monos[0]: RatFunc.one()}
        for exp in monos[1:]:
            j = next(i for i, e in enumerate(exp) if e)
            parent = exp[:j] + (exp[j] - 1,) + exp[j + 1:]
            values[exp] = values[parent] * self.tower[j].value
        num = RatFunc.zero()
        den = RatFunc.zero()
        for exp, pc, qc in zip(monos, self.num_coeffs, self.den_coeffs):
            if pc:
                num = num + RatFunc.const(pc) * values[exp]
            if qc:
                den = den + RatFunc.const(qc) * values[exp]
        return num, den

    def check(self) -> bool:
        num, den = self.evaluate_pair()
        return (not den.is_zero) and (self.target.value * den - num).is_zero


def _canonical_vector(vec: list[Fraction]) -> list[Fraction]:
    # integral, coprime, first nonzero entry positive
    den_lcm = 1
    for c in vec:
        if c:
            den_lcm = den_lcm * c.denominator // _gcd(den_lcm, c.denominator)
    ints = [c * den_lcm for c in vec]
    g = 0
    for c in ints:
        g = _gcd(g, abs(int(c)))
    if g:
        ints = [c / g for c in ints]
    lead = next((c for c in ints if c), Fraction(1))
    if lead < 0:
        ints = [-c for c in ints]
    return ints


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def member_of_tower(
    g: FieldElement,
    tower: Sequence[FieldElement],
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> MembershipCertificate:
    """Search for polynomials P, Q in the tower entries, of total degree
    rising to degree_cap, with g = P(tower)/Q(tower) identically.

    Clearing denominators turns the identity into a homogeneous linear system
    over Q in the unknown coefficients; the first nullspace basis vector whose
    Q part is nonzero on the tower gives the certificate.  Raises
    MembershipNotFound when the cap is reached: membership is unwitnessed, not
    refuted.
    """
    if not tower:
        raise ValueError("tower must be nonempty")
    k = len(tower)
    nums = [z.value.num for z in tower]
    dens = [z.value.den for z in tower]
    g_num, g_den = g.value.num, g.value.den
    one = MultiPoly.const(1)
    den_trivial = [den == one for den in dens]
    all_trivial = all(den_trivial)
    # numerator products along the graded lattice: each is its predecessor
    # times one tower numerator, and they are reusable across degrees
    num_part: dict[tuple[int, ...], MultiPoly] = {(0,) * k: one}
    for d in range(degree_cap + 1):
        monos = monomials_up_to(k, d)
        for exp in monos:
            if exp not in num_part:
                j = next(i for i, e in enumerate(exp) if e)
                parent = exp[:j] + (exp[j] - 1,) + exp[j + 1:]
                num_part[exp] = num_part[parent] * nums[j]
        if all_trivial:
            cleared = [num_part[exp] for exp in monos]
        else:
            den_pows = [[one] for _ in range(k)]
            for j in range(k):
                for _ in range(d):
                    den_pows[j].append(
                        one if den_trivial[j] else den_pows[j][-1] * dens[j]
                    )
            cleared = []
            for exp in monos:
                value = num_part[exp]
                for j, e in enumerate(exp):
                    if d - e and not den_trivial[j]:
                        value = value * den_pows[j][d - e]
                cleared.append(value)
        # identity: g_num * sum q_e cleared_e - g_den * sum p_e cleared_e = 0
        n_unknowns = 2 * len(monos)  # P coefficients first, then Q coefficients
        row_index: dict[tuple, int] = {}
        rows: list[list] = []

        def _put(col: int, poly: MultiPoly) -> None:
            for mono, coeff in poly.terms.items():
                r = row_index.get(mono)
                if r is None:
                    r = row_index[mono] = len(rows)
                    rows.append([0] * n_unknowns)
                rows[r][col] = coeff.numerator if coeff.denominator == 1 else coeff

        for i, cl in enumerate(cleared):
            _put(i, -(g_den * cl))
            _put(len(monos) + i, g_num * cl)
        for vec in rational_nullspace(rows, n_unknowns):
            q_part = vec[len(monos):]
            q_on_tower = MultiPoly.zero()
            for qc, cl in zip(q_part, cleared):
                if qc:
                    q_on_tower = q_on_tower + cl.scale(qc)
            if q_on_tower.is_zero:
                continue
            canon = _canonical_vector(list(vec))
            return MembershipCertificate(
                target=g,
                tower=tuple(tower),
                num_coeffs=tuple(canon[: len(monos)]),
                den_coeffs=tuple(canon[len(monos):]),
                degree_bound=d,
            )
    raise MembershipNotFound(degree_cap)
