"""Differential polynomials over Q: sparse polynomials whose variables are
(indeterminate, derivative order) pairs, with the formal derivation, the
weighted tag-tower derivation, its shift operator, and substitution of field
elements for indeterminates.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Mapping

from .algebra import MultiPoly, RatFunc, check_var_name
from .errors import UnboundVariable
from .univariate import UPoly

if TYPE_CHECKING:  # structural only; fields.py imports this module
    from .fields import DiffField, FieldElement

# Infix marking flattened derivative variables; user-facing names must not
# contain it (the file parser rejects them).
DERIV_MARK = "__D"

_FLAT_RE = re.compile(rf"(?P<base>.+?){re.escape(DERIV_MARK)}(?P<order>[0-9]+)\Z")

DEFAULT_LAMBDA_BASE = "Lam"


@dataclass(frozen=True, order=True)
class DerivSymbol:
    """A formal derivative of an indeterminate; order 0 is the indeterminate."""

    base: str
    order: int = 0

    def __post_init__(self):
        check_var_name(self.base)
        if DERIV_MARK in self.base:
            raise ValueError(f"base name may not contain {DERIV_MARK!r}: {self.base!r}")
        if self.order < 0:
            raise ValueError("derivative order must be nonnegative")

    @property
    def flat(self) -> str:
        return self.base if self.order == 0 else f"{self.base}{DERIV_MARK}{self.order}"

    @property
    def display(self) -> str:
        if self.order <= 3:
            return self.base + "'" * self.order
        return f"{self.base}^({self.order})"

    def shifted(self, by: int = 1) -> DerivSymbol:
        return DerivSymbol(self.base, self.order + by)

    @classmethod
    def from_flat(cls, name: str) -> DerivSymbol:
        m = _FLAT_RE.match(name)
        if m:
            return cls(m.group("base"), int(m.group("order")))
        return cls(name, 0)

    def __str__(self) -> str:
        return self.display


class DiffPoly:
    """Polynomial in derivative symbols with exact rational coefficients."""

    __slots__ = ("body",)

    def __init__(self, body: MultiPoly):
        self.body = body

    @classmethod
    def zero(cls) -> DiffPoly:
        return cls(MultiPoly.zero())

    @classmethod
    def const(cls, c) -> DiffPoly:
        return cls(MultiPoly.const(c))

    @classmethod
    def variable(cls, base: str, order: int = 0) -> DiffPoly:
        return cls(MultiPoly.variable(DerivSymbol(base, order).flat))

    @classmethod
    def symbol(cls, sym: DerivSymbol) -> DiffPoly:
        return cls(MultiPoly.variable(sym.flat))

    @staticmethod
    def _coerce(value) -> DiffPoly:
        if isinstance(value, DiffPoly):
            return value
        if isinstance(value, MultiPoly):
            return DiffPoly(value)
        if isinstance(value, (int, Fraction)):
            return DiffPoly.const(value)
        if isinstance(value, DerivSymbol):
            return DiffPoly.symbol(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to DiffPoly")

    # -- inspection ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.body.is_zero

    def __bool__(self) -> bool:
        return bool(self.body)

    def symbols(self) -> set[DerivSymbol]:
        return {DerivSymbol.from_flat(v) for v in self.body.variables()}

    def bases(self) -> set[str]:
        return {s.base for s in self.symbols()}

    def max_order(self, base: str | None = None) -> int:
        orders = [s.order for s in self.symbols() if base is None or s.base == base]
        return max(orders, default=0)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other) -> DiffPoly:
        return DiffPoly(self.body + self._coerce(other).body)

    __radd__ = __add__

    def __neg__(self) -> DiffPoly:
        return DiffPoly(-self.body)

    def __sub__(self, other) -> DiffPoly:
        return DiffPoly(self.body - self._coerce(other).body)

    def __rsub__(self, other) -> DiffPoly:
        return DiffPoly(self._coerce(other).body - self.body)

    def __mul__(self, other) -> DiffPoly:
        if isinstance(other, (int, Fraction)):
            return DiffPoly(self.body * other)
        return DiffPoly(self.body * self._coerce(other).body)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> DiffPoly:
        return DiffPoly(self.body**n)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, MultiPoly, DerivSymbol, DiffPoly)):
            return self.body == self._coerce(other).body
        return NotImplemented

    __hash__ = None

    def partial(self, sym: DerivSymbol) -> DiffPoly:
        return DiffPoly(self.body.partial(sym.flat))

    # -- rendering --------------------------------------------------------------

    def render(self) -> str:
        syms = sorted(self.symbols())
        return self.body.render(
            var_order=[s.flat for s in syms],
            display={s.flat: s.display for s in syms},
        )

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"DiffPoly({self.render()})"


@dataclass(frozen=True)
class LambdaConfig:
    """Names the tag-variable base and the weight of its derivation rule.

    The derivation sends tag i to weight * tag (i+1).  The weight is either a
    symbol (typically the first derivative of a designated indeterminate) or a
    concrete polynomial value; it must be nonzero.
    """

    lambda_base: str = DEFAULT_LAMBDA_BASE
    weight: DerivSymbol | DiffPoly | MultiPoly | RatFunc | Fraction | int = DerivSymbol("b", 1)

    def weight_poly(self) -> MultiPoly:
        w = self.weight
        if isinstance(w, DerivSymbol):
            return MultiPoly.variable(w.flat)
        if isinstance(w, DiffPoly):
            return w.body
        if isinstance(w, MultiPoly):
            return w
        if isinstance(w, RatFunc):
            if w.den.total_degree() == 0:
                return w.num.scale(1 / w.den.constant_value())
            raise ValueError(
                "a weight with nonconstant denominator leaves the polynomial "
                "ring; derive the image in the field instead"
            )
        if isinstance(w, (int, Fraction)):
            return MultiPoly.const(w)
        raise TypeError(f"unsupported weight type {type(w).__name__}")

    def __post_init__(self):
        check_var_name(self.lambda_base)
        if self.weight_poly().is_zero:
            raise ValueError("derivation weight must be nonzero")


def _derive_body(body: MultiPoly, rule) -> MultiPoly:
    """Extend a variable rule to the whole polynomial by linearity and the
    product rule; Q-coefficients derive to zero."""
    total = MultiPoly.zero()
    for mono, coeff in body.terms.items():
        for idx, (var, exp) in enumerate(mono):
            dv = rule(var)
            if dv.is_zero:
                continue
            rest = list(mono)
            if exp == 1:
                del rest[idx]
            else:
                rest[idx] = (var, exp - 1)
            factor = MultiPoly({tuple(rest): coeff * exp})
            total = total + factor * dv
    return total


def formal_derive(q: DiffPoly, times: int = 1) -> DiffPoly:
    """The unique derivation shifting every symbol's order up by one."""

    def rule(var: str) -> MultiPoly:
        return MultiPoly.variable(DerivSymbol.from_flat(var).shifted().flat)

    body = q.body
    for _ in range(times):
        body = _derive_body(body, rule)
    return DiffPoly(body)


def lambda_derive(q: DiffPoly, cfg: LambdaConfig) -> DiffPoly:
    """Derivation acting as formal_derive off the tag base and sending
    tag i to weight * tag (i+1)."""
    weight = cfg.weight_poly()

    def rule(var: str) -> MultiPoly:
        sym = DerivSymbol.from_flat(var)
        bumped = MultiPoly.variable(sym.shifted().flat)
        if sym.base == cfg.lambda_base:
            return weight * bumped
        return bumped

    return DiffPoly(_derive_body(q.body, rule))


def lambda_shift(q: DiffPoly, n: int | None = None,
                 lambda_base: str = DEFAULT_LAMBDA_BASE) -> DiffPoly:
    """Sum over i of tag(i+1) * d q / d tag(i), for tag orders 0..n."""
    if n is None:
        n = q.max_order(lambda_base)
    total = DiffPoly.zero()
    for i in range(n + 1):
        sym = DerivSymbol(lambda_base, i)
        part = q.partial(sym)
        if part.is_zero:
            continue
        total = total + DiffPoly.symbol(sym.shifted()) * part
    return total


def eval_lambda_tower(
    q: DiffPoly,
    p: UPoly,
    b: "FieldElement",
    field: "DiffField",
    lambda_base: str = DEFAULT_LAMBDA_BASE,
    bindings: Mapping[str, "FieldElement"] | None = None,
) -> "FieldElement":
    """Substitute tag i by the i-th formal derivative of p evaluated at b.

    Symbols off the tag base are replaced through the derivatives of the
    caller-supplied bound elements, so the map is a differential homomorphism
    when the tag weight is the first derivative of the bound b-symbol.
    """
    bindings = dict(bindings or {})
    flat: dict[str, RatFunc] = {}
    deriv_cache: dict[tuple[str, int], RatFunc] = {}
    for sym in q.symbols():
        if sym.base == lambda_base:
            value = p.derivative(sym.order).eval_with(b, lift=field.element).value
        else:
            bound = bindings.get(sym.base)
            if bound is None:
                raise UnboundVariable(
                    f"no element bound for indeterminate {sym.base!r}"
                )
            key = (sym.base, sym.order)
            if key not in deriv_cache:
                deriv_cache[key] = field.derive_ratfunc(bound.value, times=sym.order)
            value = deriv_cache[key]
        flat[sym.flat] = value
    return field.element(q.body.substitute(flat))


def diff_substitute(
    q: DiffPoly,
    binding: Mapping[str, "FieldElement"],
    field: "DiffField",
) -> "FieldElement":
    """Evaluate q at field elements: symbol (base, i) becomes the i-th
    derivative of the element bound to base."""
    flat: dict[str, RatFunc] = {}
    prolong: dict[str, list[RatFunc]] = {}
    for sym in sorted(q.symbols()):
        bound = binding.get(sym.base)
        if bound is None:
            raise UnboundVariable(f"no element bound for indeterminate {sym.base!r}")
        chain = prolong.setdefault(sym.base, [bound.value])
        while len(chain) <= sym.order:
            chain.append(field.derive_ratfunc(chain[-1]))
        flat[sym.flat] = chain[sym.order]
    return field.element(q.body.substitute(flat))
