"""Exact linear algebra helpers: fraction-free (Bareiss) elimination over any
integral domain with exact division, cofactor expansion as an independent
second determinant route, and plain Gaussian elimination over the rationals
for ranks and nullspaces.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")


def bareiss(
    rows: Sequence[Sequence[T]],
    *,
    is_zero: Callable[[T], bool],
    exact_div: Callable[[T, T], T],
    one: T,
) -> tuple[int, T | None]:
    """Fraction-free elimination; returns (rank, determinant-or-None).

    The determinant is reported only for square inputs.  Entries must come
    from an integral domain whose ``+ - *`` operators are closed and where
    ``exact_div`` performs the (guaranteed exact) Bareiss division.
    """
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return 0, None
    n_rows, n_cols = len(m), len(m[0])
    zero = one - one
    prev = one
    sign = 1
    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        pivot = next((r for r in range(rank, n_rows) if not is_zero(m[r][col])), None)
        if pivot is None:
            continue
        if pivot != rank:
            m[rank], m[pivot] = m[pivot], m[rank]
            sign = -sign
        for r in range(rank + 1, n_rows):
            for c in range(col + 1, n_cols):
                m[r][c] = exact_div(m[rank][col] * m[r][c] - m[r][col] * m[rank][c], prev)
            m[r][col] = zero
        prev = m[rank][col]
        rank += 1
    det: T | None = None
    if n_rows == n_cols:
        # full rank means no column was ever skipped, so the classic
        # last-pivot formula applies; otherwise the determinant is zero.
        det = (prev if sign > 0 else -prev) if rank == n_rows else zero
    return rank, det


def cofactor_det(rows: Sequence[Sequence[T]], zero: T) -> T:
    """Determinant by cofactor expansion along the first row (oracle path)."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("cofactor_det requires a square matrix")
    if n == 0:
        raise ValueError("empty matrix has no determinant here")
    if n == 1:
        return rows[0][0]
    total = zero
    for j in range(n):
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = rows[0][j] * cofactor_det(minor, zero)
        total = total + term if j % 2 == 0 else total - term
    return total


def rational_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank over Q by ordinary Gaussian elimination (independent of Bareiss)."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m or not m[0]:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [v * inv for v in m[rank]]
        for r in range(n_rows):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == n_rows:
            break
    return rank


def _int_gcd_list(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


# Word-size probe prime for the vectorized structure pass; products of two
# residues stay far inside int64.
_MODP_PRIME = 32749


def _modp_structure(rows: Sequence[Sequence], n_cols: int) -> tuple[int, list[int]] | None:
    """(rank mod p, spanning row indices) via vectorized elimination over the
    probe field; None when an entry cannot be reduced (denominator hits p)."""
    try:
        import numpy as np
    except ImportError:
        return None

    p = _MODP_PRIME
    m = np.zeros((len(rows), n_cols), dtype=np.int64)
    for i, raw in enumerate(rows):
        for j, v in enumerate(raw):
            num = v.numerator % p
            if not num:
                continue
            den = v.denominator
            if den != 1:
                den %= p
                if den == 0:
                    return None
                num = num * pow(den, p - 2, p) % p
            m[i, j] = num
    rank = 0
    order = list(range(len(rows)))
    used: list[int] = []
    for col in range(n_cols):
        if rank == len(rows):
            break
        nz = np.nonzero(m[rank:, col])[0]
        if nz.size == 0:
            continue
        i = rank + int(nz[0])
        if i != rank:
            m[[rank, i]] = m[[i, rank]]
            order[rank], order[i] = order[i], order[rank]
        inv = pow(int(m[rank, col]), p - 2, p)
        m[rank] = m[rank] * inv % p
        below = m[rank + 1:, col]
        nzb = np.nonzero(below)[0]
        if nzb.size:
            idx = nzb + rank + 1
            m[idx] = (m[idx] - below[nzb, None] * m[rank][None, :]) % p
        used.append(order[rank])
        rank += 1
    return rank, used


def _annihilated_by(vec: list[Fraction], rows: Sequence[Sequence]) -> bool:
    scale = 1
    for v in vec:
        scale = scale * v.denominator // gcd(scale, v.denominator)
    ints = [int(v * scale) for v in vec]
    support = [j for j, v in enumerate(ints) if v]
    for row in rows:
        total = 0
        for j in support:
            r = row[j]
            if r:
                total += r * ints[j]
        if total:
            return False
    return True


def rational_nullspace(rows: Sequence[Sequence[Fraction]], n_cols: int) -> list[list[Fraction]]:
    """Nullspace basis, one vector per free column with a 1 in its free slot
    and 0 in every other free slot (that vector is unique, so the result does
    not depend on row order).

    Large systems first go through a vectorized mod-p pass: full column rank
    mod p soundly proves an empty nullspace, and otherwise the exact
    elimination runs on the mod-p spanning rows only, with every candidate
    vector verified against all rows (any failure falls back to the full
    exact elimination, so an unlucky prime costs time, never correctness).
    """
    rows = rows if isinstance(rows, list) else list(rows)
    if len(rows) >= 48 and n_cols >= 24:
        structure = _modp_structure(rows, n_cols)
        if structure is not None:
            rank_p, used = structure
            if rank_p == n_cols:
                return []
            candidates = _nullspace_exact([rows[i] for i in used], n_cols)
            if candidates and all(_annihilated_by(vec, rows) for vec in candidates):
                return candidates
    return _nullspace_exact(rows, n_cols)


def _nullspace_exact(rows: Sequence[Sequence[Fraction]], n_cols: int) -> list[list[Fraction]]:
    """Incremental integer row-echelon elimination; keeps at most n_cols rows
    alive and aborts as soon as full column rank rules out any nullspace."""
    echelon: dict[int, list[int]] = {}  # pivot column -> integer row
    for raw in rows:
        # entries may be ints or Fractions; both expose numerator/denominator
        scale = 1
        for v in raw:
            d = v.denominator
            if d != 1:
                scale = scale * d // gcd(scale, d)
        if scale == 1:
            row = [v.numerator for v in raw]
        else:
            row = [v.numerator * (scale // v.denominator) for v in raw]
        growth = 0
        for col in range(n_cols):
            if not row[col]:
                continue
            base = echelon.get(col)
            if base is None:
                g = _int_gcd_list(row)
                if g > 1:
                    row = [v // g for v in row]
                if row[col] < 0:
                    row = [-v for v in row]
                echelon[col] = row
                break
            f, b = row[col], base[col]
            # both rows are zero before col, so only the tails combine
            row[col:] = [b * rv - f * bv for rv, bv in zip(row[col:], base[col:])]
            growth += b.bit_length()
            if growth > 4096:  # amortize gcd reduction over many combinations
                g = _int_gcd_list(row)
                if g > 1:
                    row = [v // g for v in row]
                growth = 0
        if len(echelon) == n_cols:
            return []
    pivots = sorted(echelon)
    free_cols = [c for c in range(n_cols) if c not in echelon]
    basis: list[list[Fraction]] = []
    for free in free_cols:
        vec: list[Fraction] = [Fraction(0)] * n_cols
        vec[free] = Fraction(1)
        for col in reversed(pivots):
            row = echelon[col]
            acc = sum((row[c] * vec[c] for c in range(col + 1, n_cols) if vec[c]),
                      Fraction(0))
            vec[col] = -acc / row[col]
        basis.append(vec)
    return basis
