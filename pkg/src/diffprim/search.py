"""Constructive search pipelines: the density step replacing a generator pair
(a, b) by a single element a + p(b) of the same differential transcendence
degree, and the primitive-element search that folds a generator list into one
element whose derivative tower certifiably regenerates every input.

All randomness flows through the config seed, and every returned result is
revalidated from scratch (symbolically when symbolic_confirm is set), so
identical inputs and seed give identical, certified outputs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

from .errors import (
    CapExceeded,
    ConstantElement,
    MembershipNotFound,
    NoNonconstant,
    ZeroFactor,
)
from .fields import (
    FieldElement,
    MembershipCertificate,
    diff_trdeg,
    is_nonconstant,
    member_of_tower,
    prolongation,
)
from .univariate import UPoly, candidate_polys


@dataclass(frozen=True)
class SearchConfig:
    """Caps and seed shared by every search; all caps must be positive."""

    max_p_degree: int = 6
    max_coeff_height: int = 8
    lambda_height: int = 100
    retries: int = 32
    seed: int = 0
    membership_degree_cap: int = 8
    symbolic_confirm: bool = True

    def __post_init__(self):
        for name in ("max_p_degree", "max_coeff_height", "lambda_height", "retries",
                     "membership_degree_cap"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    def caps(self) -> dict:
        return {
            "max_p_degree": self.max_p_degree,
            "max_coeff_height": self.max_coeff_height,
            "lambda_height": self.lambda_height,
            "retries": self.retries,
            "membership_degree_cap": self.membership_degree_cap,
        }


@dataclass(frozen=True)
class DensityResult:
    """First polynomial p making a + (c *) p(b) carry the pair's full
    differential transcendence degree."""

    p: UPoly
    candidate: FieldElement
    trdeg_pair: int
    trdeg_candidate: int


@dataclass(frozen=True)
class PrimitiveResult:
    """A single generator with one revalidating certificate per covered
    element; lambdas is empty when the folded element was already primitive."""

    primitive: FieldElement
    n: int
    lambdas: tuple[Fraction, ...]
    certificates: tuple[MembershipCertificate, ...]


def _trdeg(elements: Sequence[FieldElement], cfg: SearchConfig, salt: int,
           symbolic: bool = False) -> int:
    return diff_trdeg(
        elements, symbolic=symbolic, seed=cfg.seed + salt, retries=cfg.retries
    ).trdeg


def _confirmed_trdeg(elements: Sequence[FieldElement], cfg: SearchConfig, salt: int) -> int:
    if cfg.symbolic_confirm:
        return _trdeg(elements, cfg, salt, symbolic=True)
    return _trdeg(elements, cfg, salt)


def _density(a: FieldElement, b: FieldElement, factor: FieldElement | None,
             cfg: SearchConfig) -> DensityResult:
    if not is_nonconstant(b):
        raise ConstantElement("the substituted element b must be nonconstant")
    field = a.field
    target = _confirmed_trdeg([a, b], cfg, salt=0)
    for index, p in enumerate(candidate_polys(cfg.max_p_degree, cfg.max_coeff_height)):
        shift = p.eval_with(b, lift=field.element)
        candidate = a + (factor * shift if factor is not None else shift)
        if _trdeg([candidate], cfg, salt=index + 1) != target:
            continue
        if cfg.symbolic_confirm and _trdeg([candidate], cfg, 0, symbolic=True) != target:
            continue
        return DensityResult(p, candidate.normalized(), target, target)
    raise CapExceeded("density step found no polynomial within caps", caps=cfg.caps())


def density_step(a: FieldElement, b: FieldElement, cfg: SearchConfig | None = None) -> DensityResult:
    """First p in the canonical enumeration with
    trdeg<a + p(b)> = trdeg<a, b>; cap exhaustion is CapExceeded, never a
    nonexistence claim."""
    return _density(a, b, None, cfg or SearchConfig())


def density_step_with_factor(a: FieldElement, b: FieldElement, c: FieldElement,
                             cfg: SearchConfig | None = None) -> DensityResult:
    """Scaled variant: the candidate is a + c * p(b) with a fixed nonzero c."""
    if c.value.is_zero:
        raise ZeroFactor("the factor element c must be nonzero")
    return _density(a, b, c, cfg or SearchConfig())


def _fold_vectors(m: int, cfg: SearchConfig) -> Iterator[tuple[Fraction, ...]]:
    """Candidate coefficient vectors for folding generators into the partner
    element: unit vectors first, then small deterministic combinations, then
    seeded random draws."""
    for i in range(m):
        vec = [Fraction(0)] * m
        vec[i] = Fraction(1)
        yield tuple(vec)
    small = [Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(-2)]
    for combo in product(small, repeat=m):
        nonzero = [c for c in combo if c]
        if not nonzero or (len(nonzero) == 1 and nonzero[0] == 1):
            continue  # zero and unit vectors are already covered
        yield combo
    rng = random.Random(cfg.seed ^ 0x6F1D)
    while True:
        yield tuple(Fraction(rng.randint(-8, 8)) for _ in range(m))


def reduce_to_two(generators: Sequence[FieldElement],
                  cfg: SearchConfig | None = None) -> tuple[FieldElement, FieldElement]:
    """Fold a generator list into (a, b): repeated density steps make a carry
    the full differential transcendence degree, and b is a small linear
    combination of the originals verified to regenerate every one of them
    together with a."""
    cfg = cfg or SearchConfig()
    generators = list(generators)
    if not generators:
        raise ValueError("at least one generator is required")
    field = generators[0].field
    nonconstant = [g for g in generators if is_nonconstant(g)]
    if not nonconstant:
        raise NoNonconstant("every generator is constant")
    constant = [g for g in generators if not is_nonconstant(g)]
    acc = nonconstant[0]
    # Keeping a nonconstant accumulator guarantees each merge has a legal
    # nonconstant substitution side.
    for g in nonconstant[1:] + constant:
        if is_nonconstant(g):
            acc = density_step(acc, g, cfg).candidate
        else:
            acc = density_step(g, acc, cfg).candidate
    if len(generators) == 1:
        return acc, field.zero()
    full = _confirmed_trdeg(generators, cfg, salt=11)
    attempts = max(cfg.retries, len(generators) + 1)
    for index, mu in enumerate(_fold_vectors(len(generators), cfg)):
        if index >= attempts:
            break
        partner = field.zero()
        for coeff, g in zip(mu, generators):
            if coeff:
                partner = partner + field.const(coeff) * g
        report = diff_trdeg([acc, partner], seed=cfg.seed + 13 + index, retries=cfg.retries)
        if report.trdeg != full:
            continue
        tower = prolongation(acc, report.stabilization_order) + prolongation(
            partner, report.stabilization_order
        )
        try:
            for g in generators:
                member_of_tower(g, tower, cfg.membership_degree_cap)
        except MembershipNotFound:
            continue
        return acc, partner
    raise CapExceeded("no verified fold partner within retries", caps=cfg.caps())


def _sample_lambdas(rng: random.Random, count: int, height: int) -> tuple[Fraction, ...]:
    return tuple(
        Fraction(rng.randint(-height, height), rng.randint(1, height))
        for _ in range(count)
    )


def lambda_search(a: FieldElement, b: FieldElement, cfg: SearchConfig | None = None,
                  targets: Sequence[FieldElement] | None = None) -> PrimitiveResult:
    """Sample coefficient vectors until b + sum_i lambda_i a^i has full degree
    and its derivative tower certifiably contains every target (a and b by
    default).  Requires trdeg<a> = trdeg<a, b>."""
    cfg = cfg or SearchConfig()
    if not is_nonconstant(a) and not is_nonconstant(b):
        raise NoNonconstant("both elements are constant; no primitive element exists")
    n = _confirmed_trdeg([a], cfg, salt=17)
    pair = _confirmed_trdeg([a, b], cfg, salt=19)
    if n != pair:
        raise ValueError(
            f"lambda search requires trdeg<a> = trdeg<a, b>; got {n} != {pair}"
        )
    targets = list(targets) if targets is not None else [a, b]
    rng = random.Random(cfg.seed)
    rejected: list[tuple[tuple[Fraction, ...], str]] = []
    for attempt in range(cfg.retries):
        lambdas = _sample_lambdas(rng, n + 2, cfg.lambda_height)
        z = b
        power = a.field.one()
        for lam in lambdas:
            power = power * a
            if lam:
                z = z + a.field.const(lam) * power
        z = z.normalized()
        if _trdeg([z], cfg, salt=23 + attempt) != n:
            rejected.append((lambdas, "trdeg"))
            continue
        if cfg.symbolic_confirm and _trdeg([z], cfg, 0, symbolic=True) != n:
            rejected.append((lambdas, "trdeg"))
            continue
        tower = prolongation(z, n)
        certificates: list[MembershipCertificate] = []
        failed = None
        for i, target in enumerate(targets):
            try:
                certificates.append(member_of_tower(target, tower, cfg.membership_degree_cap))
            except MembershipNotFound:
                failed = f"membership[{i}]"
                break
        if failed:
            rejected.append((lambdas, failed))
            continue
        return PrimitiveResult(z, n, lambdas, tuple(certificates))
    raise CapExceeded(
        "no accepted coefficient vector within retries", caps=cfg.caps(), rejected=rejected
    )


def find_primitive(generators: Sequence[FieldElement],
                   cfg: SearchConfig | None = None) -> PrimitiveResult:
    """Full pipeline: fold to (a, b), accept a itself when its tower already
    certifies every original generator, otherwise run the coefficient search.
    Certificates always cover every original generator."""
    cfg = cfg or SearchConfig()
    generators = list(generators)
    if not generators:
        raise ValueError("at least one generator is required")
    a, b = reduce_to_two(generators, cfg)
    a = a.normalized()
    n = _confirmed_trdeg([a], cfg, salt=29)
    tower = prolongation(a, n)
    try:
        certificates = tuple(
            member_of_tower(g, tower, cfg.membership_degree_cap) for g in generators
        )
        return PrimitiveResult(a, n, (), certificates)
    except MembershipNotFound:
        pass
    return lambda_search(a, b, cfg, targets=generators)
