"""Theta series, partition counts, Dyson rank tables, and mock theta series.

The pieces fit together as follows.  Diagonal theta series count lattice
points of a given squared norm.  Unary theta series weight each lattice
point n by eps(n) * n for an odd periodic eps, with a rational exponent
scale.  Partition counts p(n) come from the pentagonal recurrence; the
rank of a partition is its largest part minus its number of parts, and
N(n, m) counts partitions of n with rank m.  The two-variable rank
generating series

    R(w, q) = 1 + sum_{n>=1} q^(n^2) / prod_{m=1}^{n} (1 - w q^m)(1 - w^{-1} q^m)

is expanded with exact Laurent-polynomial coefficients in w, and its
w = -1 specialization reproduces the q-hypergeometric series

    f(q) = sum_{n>=0} q^(n^2) / ((1+q)(1+q^2)...(1+q^n))^2

expanded independently; that cross-check is the arbiter for both
pipelines.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .qseries import QSeries, make_series, pow as qpow

__all__ = [
    "OmegaPoly",
    "RankTable",
    "theta_diagonal",
    "unary_theta",
    "partition_count",
    "rank_table",
    "rank_generating",
    "mock_theta_f",
    "specialize_omega",
]


# -- theta series -----------------------------------------------------------------


def theta_diagonal(k: int, order: int) -> QSeries:
    """Theta series of the k-variable sum-of-squares form.

    Coefficient of q^m is the number of integer k-vectors of squared
    norm m.  Computed as the k-th power of the one-variable series
    1 + 2q + 2q^4 + 2q^9 + ...
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    base = [0] * order
    base[0] = 1
    n = 1
    while n * n < order:
        base[n * n] = 2
        n += 1
    theta1 = make_series(0, base, order)
    return theta1 if k == 1 else qpow(theta1, k)


def unary_theta(
    eps: Sequence[int], kappa: Union[int, Fraction], order: int
) -> QSeries:
    """Weighted unary theta series sum_{n in Z} eps(n) n q^(kappa n^2).

    ``eps`` is one period of an odd integer-valued map: eps(n) is read
    as eps[n mod L] for L = len(eps), and oddness
    (eps[-n mod L] == -eps[n mod L]) is required, which forces eps(0) = 0.
    By oddness the n and -n terms combine, so the result is
    sum_{n>=1} 2 eps(n) n q^(kappa n^2).

    ``kappa`` must be a positive rational with denominator dividing 24.
    All surviving exponents must lie on one integer lattice
    (offset + Z); patterns that spread over several residue classes of
    exponents cannot be represented in a single window and are rejected.
    """
    kappa = Fraction(kappa)
    if kappa <= 0 or 24 % kappa.denominator != 0:
        raise ValueError(f"kappa must be positive with denominator dividing 24, got {kappa}")
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    period = len(eps)
    if period < 1:
        raise ValueError("eps must have at least one entry")
    for r in range(period):
        if eps[(-r) % period] != -eps[r]:
            raise ValueError("eps must be odd: eps[-n mod L] == -eps[n mod L]")
    first = None
    for n in range(1, 2 * period + 1):
        if eps[n % period]:
            first = n
            break
    if first is None:
        return make_series(0, [0] * order, order)
    offset = kappa * first * first
    end = offset + order
    coeffs = [Fraction(0)] * order
    n = first
    while kappa * n * n < end:
        e = eps[n % period]
        if e:
            rel = kappa * n * n - offset
            if rel.denominator != 1:
                raise ValueError(
                    "exponents fall on more than one integer lattice "
                    f"(q^{offset} vs q^{kappa * n * n}); not representable"
                )
            coeffs[int(rel)] += 2 * e * n
        n += 1
    return QSeries(offset, tuple(coeffs))


# -- partitions and ranks -----------------------------------------------------------


_PARTITIONS = [1]  # p(0)


def partition_count(n: int) -> int:
    """p(n) by the pentagonal-number recurrence (cached)."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    while len(_PARTITIONS) <= n:
        m = len(_PARTITIONS)
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * _PARTITIONS[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * _PARTITIONS[m - g2]
            k += 1
        _PARTITIONS.append(total)
    return _PARTITIONS[n]


@dataclass(frozen=True)
class RankTable:
    """Exact table of N(n, m): partitions of n whose rank is m.

    Stored sparsely; absent (n, m) keys mean zero.  For every n,
    sum_m N(n, m) = p(n) and N(n, m) = N(n, -m) (conjugation), which the
    test suite verifies rather than assumes.
    """

    n_max: int
    entries: Mapping[tuple[int, int], int]

    def count(self, n: int, m: int) -> int:
        if n < 1 or n > self.n_max:
            raise ValueError(f"n must be in 1..{self.n_max}, got {n}")
        return self.entries.get((n, m), 0)

    def ranks(self, n: int) -> list[int]:
        return sorted(m for (nn, m) in self.entries if nn == n)

    def counts_mod(self, n: int, s: int) -> list[int]:
        """Partition counts of n grouped by rank residue mod s."""
        out = [0] * s
        for (nn, m), c in self.entries.items():
            if nn == n:
                out[m % s] += c
        return out

    def polynomial(self, n: int) -> "OmegaPoly":
        """The Laurent polynomial sum_m N(n, m) w^m."""
        return OmegaPoly.from_terms(
            {m: c for (nn, m), c in self.entries.items() if nn == n}
        )

    def rows(self) -> list[tuple[int, int, int]]:
        return sorted((n, m, c) for (n, m), c in self.entries.items())


def rank_table(n_max: int) -> RankTable:
    """N(n, m) for all n <= n_max by dynamic programming.

    The DP counts partitions by (largest part, number of parts): with
    D_l(n, k) = #partitions of n into exactly k parts each <= l, the
    partitions with largest part exactly l and k parts are
    D_l(n - l, k - 1), contributing rank m = l - k.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    # D[n][k], updated in place as the part bound l grows
    D = [[0] * (n_max + 1) for _ in range(n_max + 1)]
    D[0][0] = 1
    entries: dict[tuple[int, int], int] = {}
    for part in range(1, n_max + 1):
        for n in range(part, n_max + 1):
            row, prev = D[n], D[n - part]
            for k in range(1, n + 1):
                if prev[k - 1]:
                    row[k] += prev[k - 1]
        for n in range(part, n_max + 1):
            prev = D[n - part]
            for k in range(1, n + 1):
                c = prev[k - 1]
                if c:
                    key = (n, part - k)
                    entries[key] = entries.get(key, 0) + c
    return RankTable(n_max, entries)


# -- exact Laurent polynomials in the phase variable --------------------------------


@dataclass(frozen=True)
class OmegaPoly:
    """Laurent polynomial in w with exact integer coefficients.

    ``coeffs[j]`` is the coefficient of w^(lo + j); leading and trailing
    entries are nonzero except for the zero polynomial, which is
    ``OmegaPoly(0, ())``.
    """

    lo: int
    coeffs: tuple[int, ...]

    @staticmethod
    def zero() -> "OmegaPoly":
        return OmegaPoly(0, ())

    @staticmethod
    def const(c: int) -> "OmegaPoly":
        return OmegaPoly(0, (c,)) if c else OmegaPoly.zero()

    @staticmethod
    def from_terms(terms: Mapping[int, int]) -> "OmegaPoly":
        live = {m: c for m, c in terms.items() if c}
        if not live:
            return OmegaPoly.zero()
        lo, hi = min(live), max(live)
        return OmegaPoly(lo, tuple(live.get(m, 0) for m in range(lo, hi + 1)))

    def terms(self) -> dict[int, int]:
        return {self.lo + j: c for j, c in enumerate(self.coeffs) if c}

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "OmegaPoly") -> "OmegaPoly":
        t = self.terms()
        for m, c in other.terms().items():
            t[m] = t.get(m, 0) + c
        return OmegaPoly.from_terms(t)

    def __neg__(self) -> "OmegaPoly":
        return OmegaPoly(self.lo, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "OmegaPoly") -> "OmegaPoly":
        return self + (-other)

    def __mul__(self, other: "OmegaPoly") -> "OmegaPoly":
        if self.is_zero or other.is_zero:
            return OmegaPoly.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return OmegaPoly.from_terms(
            {self.lo + other.lo + j: c for j, c in enumerate(out)}
        )

    def scaled(self, c: int) -> "OmegaPoly":
        if c == 0:
            return OmegaPoly.zero()
        return OmegaPoly(self.lo, tuple(c * x for x in self.coeffs))

    def eval_root_of_unity(self, r: int, s: int):
        """Value at w = exp(2 pi i r / s), exactly.

        For s in {1, 2} the value is an integer.  Otherwise the result
        is the length-s integer vector of coefficients on the group
        basis 1, z, ..., z^(s-1) with z^s = 1 (exponents reduced mod s,
        no further cyclotomic reduction).
        """
        if s < 1:
            raise ValueError(f"s must be >= 1, got {s}")
        if s == 1:
            return sum(self.coeffs)
        if s == 2:
            return sum(c if (r * (self.lo + j)) % 2 == 0 else -c
                       for j, c in enumerate(self.coeffs))
        vec = [0] * s
        for j, c in enumerate(self.coeffs):
            if c:
                vec[(r * (self.lo + j)) % s] += c
        return tuple(vec)


# -- the rank generating series and its specializations -----------------------------


def _fold_geometric(acc: list[OmegaPoly], n: int, sign: int) -> list[OmegaPoly]:
    """Multiply the series by 1/(1 - w^sign q^n) = sum_j w^(sign j) q^(nj).

    Every coefficient of the sparse factor is a monomial in w, so each
    contribution is a shift of an existing polynomial: no full
    polynomial products are needed.
    """
    order = len(acc)
    out = [OmegaPoly.zero()] * order
    j = 0
    while j * n < order:
        shift = j * n
        wexp = sign * j
        for pos in range(order - shift):
            p = acc[pos]
            if not p.is_zero:
                out[pos + shift] = out[pos + shift] + OmegaPoly(p.lo + wexp, p.coeffs)
        j += 1
    return out


def rank_generating(order: int) -> list[OmegaPoly]:
    """Coefficients of q^0 .. q^(order-1) in R(w, q), exactly.

    Expanded straight from the sum-over-n form: the n-th summand is
    q^(n^2) times the running inverse of
    prod_{m<=n} (1 - w q^m)(1 - w^(-1) q^m), each reciprocal factor
    entering as the geometric series sum_j w^(+-j) q^(mj).
    """
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    one = OmegaPoly.const(1)
    result = [one] + [OmegaPoly.zero()] * (order - 1)
    inv_den = [one] + [OmegaPoly.zero()] * (order - 1)
    n = 1
    while n * n < order:
        inv_den = _fold_geometric(inv_den, n, +1)
        inv_den = _fold_geometric(inv_den, n, -1)
        for j in range(order - n * n):
            p = inv_den[j]
            if not p.is_zero:
                result[n * n + j] = result[n * n + j] + p
        n += 1
    return result


def mock_theta_f(order: int) -> QSeries:
    """The series sum_{n>=0} q^(n^2) / ((1+q)(1+q^2)...(1+q^n))^2.

    The reciprocal of the running denominator is maintained
    cumulatively: 1/(1+q^n)^2 = sum_j (-1)^j (j+1) q^(nj) folds in as a
    sparse factor at each step.
    """
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    acc = [0] * order
    acc[0] = 1  # n = 0 summand
    inv_den = [0] * order
    inv_den[0] = 1
    n = 1
    while n * n < order:
        new = [0] * order
        for j in range((order - 1) // n + 1):
            c = (j + 1) * (1 if j % 2 == 0 else -1)
            base = j * n
            for i in range(order - base):
                if inv_den[i]:
                    new[base + i] += c * inv_den[i]
        inv_den = new
        for i in range(order - n * n):
            if inv_den[i]:
                acc[n * n + i] += inv_den[i]
        n += 1
    return make_series(0, acc, order)


def specialize_omega(
    polys: Sequence[OmegaPoly], w: tuple[int, int]
) -> list:
    """Substitute w = exp(2 pi i r / s) into a coefficient sequence.

    ``w`` is the pair (r, s) with s >= 1.  For s in {1, 2} the result is
    a list of exact integers; for larger s, a list of length-s integer
    vectors on the basis 1, z, ..., z^(s-1) with z^s = 1.
    """
    r, s = w
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    return [p.eval_root_of_unity(r, s) for p in polys]
