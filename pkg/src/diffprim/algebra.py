"""Exact arithmetic tower: rationals, sparse multivariate polynomials and
rational functions over them.

Rationals are ``fractions.Fraction`` (arbitrary precision, positive
denominator, always reduced).  A polynomial is a sparse map from monomials to
nonzero rational coefficients; a monomial is a sorted tuple of
``(variable, exponent)`` pairs with positive exponents.  Rational functions
are quotients of polynomials compared by cross-multiplication, so correctness
never depends on gcd cancellation.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as _int_gcd
from typing import Mapping, Sequence

from .errors import (
    DivisionByZero,
    DenominatorVanished,
    ExactDivisionError,
    PoleAtPoint,
    UnboundVariable,
)

Rational = Fraction

# ((var, exp), ...) sorted by variable name, every exp > 0; () is the unit monomial.
Monomial = tuple[tuple[str, int], ...]

_VAR_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

# Step allowance for the optional multivariate gcd pass; exhausting it is not
# an error, the caller just keeps the unreduced representative.
DEFAULT_GCD_BUDGET = 20_000


def check_var_name(name: str) -> str:
    if not isinstance(name, str) or not _VAR_NAME_RE.match(name):
        raise ValueError(f"invalid variable name: {name!r}")
    return name


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    merged: dict[str, int] = dict(a)
    for v, e in b:
        merged[v] = merged.get(v, 0) + e
    return tuple(sorted(merged.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when monomial a divides monomial b."""
    db = dict(b)
    return all(db.get(v, 0) >= e for v, e in a)


def _mono_div(b: Monomial, a: Monomial) -> Monomial:
    """b / a, assuming a divides b."""
    out = dict(b)
    for v, e in a:
        r = out[v] - e
        if r:
            out[v] = r
        else:
            del out[v]
    return tuple(sorted(out.items()))


def _mono_key(m: Monomial, order: Sequence[str]) -> tuple:
    """Graded-lex sort key of a monomial over a fixed variable order."""
    d = dict(m)
    return (_mono_degree(m), tuple(d.get(v, 0) for v in order))


class MultiPoly:
    """Sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                c = Fraction(coeff)
                if not c:
                    continue
                if any(e <= 0 for _, e in mono) or list(mono) != sorted(mono):
                    mono = tuple(sorted((v, e) for v, e in mono if e))
                    if any(e < 0 for _, e in mono):
                        raise ValueError("negative exponent in monomial")
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if not clean[mono]:
                    del clean[mono]
        self._terms = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> MultiPoly:
        return cls()

    @classmethod
    def const(cls, c) -> MultiPoly:
        return cls({(): Fraction(c)})

    @classmethod
    def variable(cls, name: str) -> MultiPoly:
        check_var_name(name)
        return cls({((name, 1),): Fraction(1)})

    @staticmethod
    def _coerce(value) -> MultiPoly:
        if isinstance(value, MultiPoly):
            return value
        if isinstance(value, (int, Fraction)):
            return MultiPoly.const(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to MultiPoly")

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def variables(self) -> set[str]:
        out: set[str] = set()
        for mono in self._terms:
            for v, _ in mono:
                out.add(v)
        return out

    def total_degree(self) -> int:
        if not self._terms:
            return 0
        return max(_mono_degree(m) for m in self._terms)

    def degree_in(self, var: str) -> int:
        deg = 0
        for mono in self._terms:
            for v, e in mono:
                if v == var and e > deg:
                    deg = e
        return deg

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial (raises if non-constant)."""
        if not self._terms:
            return Fraction(0)
        if set(self._terms) == {()}:
            return self._terms[()]
        raise ValueError("polynomial is not constant")

    def leading(self, order: Sequence[str] | None = None) -> tuple[Monomial, Fraction]:
        """Leading (monomial, coefficient) in graded-lex order."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        if order is None:
            order = sorted(self.variables())
        mono = max(self._terms, key=lambda m: _mono_key(m, order))
        return mono, self._terms[mono]

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> MultiPoly:
        other = self._coerce(other)
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            s = out.get(mono, 0) + coeff
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        res = MultiPoly.__new__(MultiPoly)
        res._terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        res = MultiPoly.__new__(MultiPoly)
        res._terms = {m: -c for m, c in self._terms.items()}
        return res

    def __sub__(self, other) -> MultiPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> MultiPoly:
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> MultiPoly:
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return MultiPoly.zero()
            res = MultiPoly.__new__(MultiPoly)
            res._terms = {m: k * c for m, k in self._terms.items()}
            return res
        other = self._coerce(other)
        res = MultiPoly.__new__(MultiPoly)
        # integer-coefficient products accumulate in raw ints (much cheaper
        # than Fraction arithmetic) and lift back at the end
        if all(c.denominator == 1 for c in self._terms.values()) and all(
            c.denominator == 1 for c in other._terms.values()
        ):
            acc: dict[Monomial, int] = {}
            for m1, c1 in self._terms.items():
                n1 = c1.numerator
                for m2, c2 in other._terms.items():
                    mono = _mono_mul(m1, m2)
                    acc[mono] = acc.get(mono, 0) + n1 * c2.numerator
            res._terms = {m: Fraction(v) for m, v in acc.items() if v}
            return res
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = _mono_mul(m1, m2)
                s = out.get(mono, 0) + c1 * c2
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        res = MultiPoly.__new__(MultiPoly)
        res._terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MultiPoly:
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None  # mutable-looking container semantics; not hashable

    # -- calculus and substitution ------------------------------------------

    def partial(self, var: str) -> MultiPoly:
        """Formal partial derivative with respect to one variable."""
        out: dict[Monomial, Fraction] = {}
        for mono, coeff in self._terms.items():
            d = dict(mono)
            e = d.get(var, 0)
            if not e:
                continue
            if e == 1:
                del d[var]
            else:
                d[var] = e - 1
            key = tuple(sorted(d.items()))
            s = out.get(key, 0) + coeff * e
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        res = MultiPoly.__new__(MultiPoly)
        res._terms = out
        return res

    def coeff_of(self, var: str, power: int) -> MultiPoly:
        """Coefficient of var**power, as a polynomial in the other variables."""
        out: dict[Monomial, Fraction] = {}
        for mono, coeff in self._terms.items():
            d = dict(mono)
            if d.get(var, 0) != power:
                continue
            d.pop(var, None)
            out[tuple(sorted(d.items()))] = coeff
        return MultiPoly(out)

    def as_univariate_in(self, var: str) -> dict[int, MultiPoly]:
        """Split into {power: coefficient polynomial} with respect to var."""
        buckets: dict[int, dict[Monomial, Fraction]] = {}
        for mono, coeff in self._terms.items():
            d = dict(mono)
            e = d.pop(var, 0)
            key = tuple(sorted(d.items()))
            buckets.setdefault(e, {})[key] = coeff
        return {e: MultiPoly(t) for e, t in buckets.items()}

    def substitute(self, bindings: Mapping[str, "RatFunc | MultiPoly | Fraction | int"]) -> RatFunc:
        """Substitute rational functions for variables; unbound variables stay.

        Raises DenominatorVanished when a denominator collapses to zero.
        """
        lifted = {v: RatFunc.coerce(val) for v, val in bindings.items()}
        total = RatFunc.zero()
        for mono, coeff in self._terms.items():
            term = RatFunc.const(coeff)
            for v, e in mono:
                base = lifted.get(v)
                if base is None:
                    base = RatFunc.variable(v)
                term = term * base.pow_int(e)
            total = total + term
        return total

    def eval(self, point: Mapping[str, Fraction | int]) -> Fraction:
        """Exact value at a fully specified rational point."""
        total = Fraction(0)
        for mono, coeff in self._terms.items():
            term = coeff
            for v, e in mono:
                if v not in point:
                    raise UnboundVariable(f"no value bound for variable {v!r}")
                term *= Fraction(point[v]) ** e
            total += term
        return total

    # -- integer/rational content -------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        num_gcd = 0
        den_lcm = 1
        for c in self._terms.values():
            num_gcd = _int_gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // _int_gcd(den_lcm, c.denominator)
        return Fraction(num_gcd, den_lcm)

    def scale(self, c) -> MultiPoly:
        c = Fraction(c)
        if not c:
            return MultiPoly.zero()
        res = MultiPoly.__new__(MultiPoly)
        res._terms = {m: k * c for m, k in self._terms.items()}
        return res

    def exact_div(self, other: MultiPoly) -> MultiPoly:
        """Exact polynomial quotient; raises ExactDivisionError on remainder."""
        other = self._coerce(other)
        if other.is_zero:
            raise DivisionByZero("exact division by the zero polynomial")
        if self.is_zero:
            return MultiPoly.zero()
        order = sorted(self.variables() | other.variables())
        lt_mono, lt_coeff = other.leading(order)
        quotient: dict[Monomial, Fraction] = {}
        rem = self
        while not rem.is_zero:
            r_mono, r_coeff = rem.leading(order)
            if not _mono_divides(lt_mono, r_mono):
                raise ExactDivisionError("division left a remainder")
            q_mono = _mono_div(r_mono, lt_mono)
            q_coeff = r_coeff / lt_coeff
            quotient[q_mono] = q_coeff
            rem = rem - MultiPoly({q_mono: q_coeff}) * other
        return MultiPoly(quotient)

    # -- rendering ------------------------------------------------------------

    def render(
        self,
        var_order: Sequence[str] | None = None,
        display: Mapping[str, str] | None = None,
    ) -> str:
        """Canonical text form: graded-lex term order, `^` powers, explicit `*`.

        ``var_order`` fixes lexicographic significance (defaults to sorted
        names); ``display`` maps variable names to printed symbols.
        """
        if not self._terms:
            return "0"
        if var_order is None:
            var_order = sorted(self.variables())
        else:
            missing = sorted(self.variables() - set(var_order))
            if missing:
                var_order = list(var_order) + missing
        show = display or {}
        pieces: list[str] = []
        ordered = sorted(self._terms, key=lambda m: _mono_key(m, var_order), reverse=True)
        for i, mono in enumerate(ordered):
            coeff = self._terms[mono]
            neg = coeff < 0
            mag = -coeff if neg else coeff
            factors = []
            d = dict(mono)
            for v in var_order:
                e = d.get(v, 0)
                if not e:
                    continue
                sym = show.get(v, v)
                factors.append(sym if e == 1 else f"{sym}^{e}")
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            if i == 0:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"MultiPoly({self.render()})"


# -- multivariate gcd (budgeted primitive-remainder sequence) -----------------


class _BudgetExhausted(Exception):
    pass


class _Budget:
    __slots__ = ("left",)

    def __init__(self, steps: int):
        self.left = steps

    def spend(self, cost: int = 1) -> None:
        self.left -= cost
        if self.left < 0:
            raise _BudgetExhausted


def _canonical(p: MultiPoly) -> MultiPoly:
    """Scale to coprime integer coefficients with positive leading coefficient."""
    if p.is_zero:
        return p
    c = p.content()
    _, lead = p.leading()
    if lead < 0:
        c = -c
    return p.scale(1 / c)


def _content_pp(p: MultiPoly, var: str, budget: _Budget) -> tuple[MultiPoly, MultiPoly]:
    parts = p.as_univariate_in(var)
    content = MultiPoly.zero()
    for coeff_poly in parts.values():
        content = _gcd_inner(content, coeff_poly, budget)
        if content == MultiPoly.const(1):
            break
    return content, p.exact_div(content)


# Deterministic specialization probes for the coprimality fast path, run over
# a word-size prime field so the Euclid never swells.
_PROBE_PRIME = (1 << 61) - 1
_PROBE_POINTS = (9973, 7919, 6421)


def _specialized_modp(p: MultiPoly, var: str, point: dict[str, int]) -> list[int] | None:
    """Coefficient list of p in var after specializing the other variables,
    reduced mod the probe prime; None when the image degenerates."""
    prime = _PROBE_PRIME
    coeffs = [0] * (p.degree_in(var) + 1)
    for mono, coeff in p._terms.items():
        den = coeff.denominator % prime
        if den == 0:
            return None
        value = coeff.numerator % prime * pow(den, prime - 2, prime) % prime
        exp = 0
        for v, e in mono:
            if v == var:
                exp = e
            else:
                value = value * pow(point[v], e, prime) % prime
        coeffs[exp] = (coeffs[exp] + value) % prime
    if coeffs[-1] == 0:
        return None  # leading coefficient vanished under the probe
    return coeffs


def _gcd_degree_modp(a: list[int], b: list[int]) -> int:
    """Degree of gcd of two dense nonzero polynomials over the probe field."""
    prime = _PROBE_PRIME
    while True:
        # reduce a mod b in place
        db = len(b) - 1
        inv_lead = pow(b[-1], prime - 2, prime)
        r = list(a)
        while len(r) - 1 >= db:
            if r[-1]:
                factor = r[-1] * inv_lead % prime
                shift = len(r) - 1 - db
                for i in range(db):
                    r[shift + i] = (r[shift + i] - factor * b[i]) % prime
            r.pop()
        while len(r) > 1 and not r[-1]:
            r.pop()
        if not r or (len(r) == 1 and not r[0]):
            return len(b) - 1
        a, b = b, r


def _coprime_in_var(f: MultiPoly, g: MultiPoly, var: str) -> bool:
    """True when gcd(f, g) certainly has degree zero in var.

    A specialized-mod-p gcd degree can only overestimate the true gcd degree
    in var (an alive leading coefficient keeps the gcd factor at full degree),
    so degree zero is a proof; an inconclusive probe just returns False and
    the caller does the full work.
    """
    df, dg = f.degree_in(var), g.degree_in(var)
    if df == 0 or dg == 0:
        return True
    others = sorted((f.variables() | g.variables()) - {var})
    for probe in _PROBE_POINTS:
        point = {v: probe + 17 * i for i, v in enumerate(others)}
        fu = _specialized_modp(f, var, point)
        gu = _specialized_modp(g, var, point)
        if fu is None or gu is None:
            continue
        return _gcd_degree_modp(fu, gu) == 0
    return False


def _pseudo_rem(f: MultiPoly, g: MultiPoly, var: str, budget: _Budget) -> MultiPoly:
    n = g.degree_in(var)
    lead_g = g.coeff_of(var, n)
    v = MultiPoly.variable(var)
    while not f.is_zero:
        m = f.degree_in(var)
        if m < n:
            break
        budget.spend(len(f._terms) + len(g._terms))
        lead_f = f.coeff_of(var, m)
        f = lead_g * f - lead_f * g * v ** (m - n)
    return f


def _gcd_inner(f: MultiPoly, g: MultiPoly, budget: _Budget) -> MultiPoly:
    if f.is_zero:
        return _canonical(g)
    if g.is_zero:
        return _canonical(f)
    budget.spend()
    # any divisor of both uses only shared variables
    shared = sorted(f.variables() & g.variables())
    if not shared:
        return MultiPoly.const(1)
    if all(_coprime_in_var(f, g, v) for v in shared):
        return MultiPoly.const(1)
    var = min(shared, key=lambda v: (min(f.degree_in(v), g.degree_in(v)), v))
    cf, pf = _content_pp(f, var, budget)
    cg, pg = _content_pp(g, var, budget)
    c = _gcd_inner(cf, cg, budget)
    # canonicalize every remainder (integer-primitive, positive lead);
    # without the numeric stripping the pseudo-division coefficients explode
    pf, pg = _canonical(pf), _canonical(pg)
    if pf.degree_in(var) < pg.degree_in(var):
        pf, pg = pg, pf
    while not pg.is_zero:
        r = _pseudo_rem(pf, pg, var, budget)
        pf, pg = pg, (r if r.is_zero else _canonical(_content_pp(r, var, budget)[1]))
    return _canonical(c * _content_pp(pf, var, budget)[1])


def poly_gcd(f: MultiPoly, g: MultiPoly, budget: int = DEFAULT_GCD_BUDGET) -> MultiPoly | None:
    """Budgeted multivariate gcd; None when the step budget runs out."""
    try:
        return _gcd_inner(f, g, _Budget(budget))
    except _BudgetExhausted:
        return None


# -- rational functions -------------------------------------------------------


class RatFunc:
    """Quotient of two MultiPoly values; equality by cross-multiplication.

    Representatives are not kept gcd-reduced: ``normalized`` is an explicit,
    budgeted size-control pass.  The denominator sign is canonical (positive
    leading coefficient) so rendering is deterministic.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = MultiPoly._coerce(num)
        den = MultiPoly.const(1) if den is None else MultiPoly._coerce(den)
        if den.is_zero:
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero:
            den = MultiPoly.const(1)
        else:
            _, lead = den.leading()
            if lead < 0:
                num, den = -num, -den
        self.num = num
        self.den = den

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> RatFunc:
        return cls(MultiPoly.zero())

    @classmethod
    def one(cls) -> RatFunc:
        return cls(MultiPoly.const(1))

    @classmethod
    def const(cls, c) -> RatFunc:
        return cls(MultiPoly.const(c))

    @classmethod
    def variable(cls, name: str) -> RatFunc:
        return cls(MultiPoly.variable(name))

    @classmethod
    def coerce(cls, value) -> RatFunc:
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, MultiPoly):
            return cls(value)
        if isinstance(value, (int, Fraction)):
            return cls.const(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to RatFunc")

    # -- inspection ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __bool__(self) -> bool:
        return not self.num.is_zero

    def variables(self) -> set[str]:
        return self.num.variables() | self.den.variables()

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other) -> RatFunc:
        other = RatFunc.coerce(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> RatFunc:
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other) -> RatFunc:
        return RatFunc.coerce(other) + (-self)

    def __mul__(self, other) -> RatFunc:
        other = RatFunc.coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RatFunc:
        other = RatFunc.coerce(other)
        if other.is_zero:
            raise DivisionByZero("division by a zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> RatFunc:
        return RatFunc.coerce(other) / self

    def pow_int(self, n: int) -> RatFunc:
        if n < 0:
            if self.is_zero:
                raise DivisionByZero("negative power of zero")
            return RatFunc(self.den ** (-n), self.num ** (-n))
        return RatFunc(self.num**n, self.den**n)

    __pow__ = pow_int

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = RatFunc.coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero

    __hash__ = None

    # -- calculus and substitution -----------------------------------------

    def partial(self, var: str) -> RatFunc:
        """Formal partial derivative (quotient rule)."""
        dn = self.num.partial(var)
        dd = self.den.partial(var)
        if dd.is_zero:
            return RatFunc(dn, self.den)
        return RatFunc(dn * self.den - self.num * dd, self.den * self.den)

    def substitute(self, bindings: Mapping[str, "RatFunc | MultiPoly | Fraction | int"]) -> RatFunc:
        num = self.num.substitute(bindings)
        den = self.den.substitute(bindings)
        if den.is_zero:
            raise DenominatorVanished(
                "denominator became identically zero under substitution"
            )
        return num / den

    def eval(self, point: Mapping[str, Fraction | int]) -> Fraction:
        d = self.den.eval(point)
        if not d:
            raise PoleAtPoint(f"denominator vanishes at {dict(point)!r}")
        return self.num.eval(point) / d

    def normalized(self, gcd_budget: int = DEFAULT_GCD_BUDGET) -> RatFunc:
        """Equivalent representative with common content (and, budget
        permitting, common polynomial factors) removed."""
        if self.num.is_zero:
            return RatFunc.zero()
        cn, cd = self.num.content(), self.den.content()
        scale = Fraction(
            _int_gcd(cn.numerator * cd.denominator, cd.numerator * cn.denominator),
            cn.denominator * cd.denominator,
        )
        num, den = self.num.scale(1 / scale), self.den.scale(1 / scale)
        if den != MultiPoly.const(1):
            g = poly_gcd(num, den, gcd_budget)
            if g is not None and g.total_degree() > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        return RatFunc(num, den)

    # -- rendering -------------------------------------------------------------

    def render(
        self,
        var_order: Sequence[str] | None = None,
        display: Mapping[str, str] | None = None,
    ) -> str:
        if var_order is None:
            var_order = sorted(self.variables())
        return f"({self.num.render(var_order, display)})/({self.den.render(var_order, display)})"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"RatFunc({self.render()})"


def eval_at_point(f: RatFunc | MultiPoly, point: Mapping[str, Fraction | int]) -> Fraction:
    """Exact evaluation; raises PoleAtPoint on a vanishing denominator."""
    return f.eval(point)


def lcm_with_budget(a: MultiPoly, b: MultiPoly, budget: int = DEFAULT_GCD_BUDGET) -> MultiPoly:
    """Least common multiple when the gcd budget suffices, plain product otherwise."""
    if a.is_zero or b.is_zero:
        return MultiPoly.zero()
    g = poly_gcd(a, b, budget)
    if g is None or g.total_degree() == 0:
        return a * b
    return a.exact_div(g) * b
