"""Classical level-1 modular form objects and Hecke operator action.

Provides the Dedekind eta expansion, the discriminant cusp form and its
coefficient function tau(n), the weight-12 Eisenstein series, divisor
power sums, upper-triangular Hecke coset representatives, the Hecke
action on q-expansions

    coefficient of q^m in T_n f  =  sum_{d | gcd(m, n)} eps(d) d^(k-1) a(m n / d^2),

the operator composition law T_m T_n = sum_{d | gcd(m,n)} d^(k-1) T_{mn/d^2},
eigenform verification, the tau congruence battery, and the exact
eigenvalue pair of the shear/diagonal coset quadratic.

tau values come from a process-wide cache backed by the product
expansion of the discriminant form; the cache extends itself on demand
and is guarded by a lock so concurrent readers see identical values.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Mapping, Optional, Union

from .qseries import QSeries, WindowError, euler_product, scalar_mul

__all__ = [
    "FormMeta",
    "CosetRep",
    "EigenPair",
    "CheckReport",
    "HeckeComposeReport",
    "EigenformReport",
    "eta",
    "delta",
    "tau",
    "sigma",
    "eisenstein_e12",
    "hecke_coset_reps",
    "hecke_apply",
    "hecke_compose_check",
    "is_eigenform",
    "tau_properties_check",
    "eigen_pair",
    "biquanta",
    "primes_up_to",
]


@dataclass(frozen=True)
class FormMeta:
    """Weight / level tag with an optional multiplicative character.

    ``character`` maps residues mod ``level`` to exact integers; the
    default is the trivial character (identically 1).  No character
    arithmetic is performed here, only table lookup.
    """

    weight: int
    level: int = 1
    character: Optional[Mapping[int, int]] = None

    def __post_init__(self) -> None:
        if self.weight <= 0 or self.weight % 2 != 0:
            raise ValueError(f"weight must be a positive even integer, got {self.weight}")
        if self.level < 1:
            raise ValueError(f"level must be >= 1, got {self.level}")

    def eps(self, d: int) -> int:
        if self.character is None:
            return 1
        return self.character[d % self.level]


@dataclass(frozen=True)
class CosetRep:
    """Upper-triangular representative ``[[a, b], [0, d]]`` with a*d = n."""

    a: int
    b: int
    d: int

    def __post_init__(self) -> None:
        if self.a < 1 or self.d < 1 or not (0 <= self.b < self.d):
            raise ValueError(f"invalid coset representative ({self.a}, {self.b}, {self.d})")


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a batch verification; empty ``violations`` means pass."""

    check: str
    params: tuple[tuple[str, int], ...]
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json_obj(self) -> dict:
        obj = {"check": self.check}
        obj.update({k: v for k, v in self.params})
        obj["violations"] = list(self.violations)
        obj["ok"] = self.ok
        return obj


# -- eta, delta, tau ----------------------------------------------------------


def eta(order: int) -> QSeries:
    """q^(1/24) * prod_{n>=1} (1 - q^n) to ``order`` terms."""
    return euler_product(1, order).shift(Fraction(1, 24))


def delta(order: int) -> QSeries:
    """q * prod_{n>=1} (1 - q^n)^24; coefficients tau(1) .. tau(order)."""
    return euler_product(24, order).shift(1).with_meta(weight=12, level=1)


class _TauCache:
    """Lazily extended tau table; thread-safe, deterministic."""

    def __init__(self) -> None:
        self._values: list[int] = [0]  # index 0 unused
        self._lock = threading.Lock()
        self._fault: Optional[tuple[int, int]] = None

    def get(self, n: int) -> int:
        if n < 1:
            raise ValueError(f"tau(n) requires n >= 1, got {n}")
        with self._lock:
            if n >= len(self._values):
                order = 64
                while order < n:
                    order *= 2
                d = delta(order)
                self._values = [0] + [int(c) for c in d.coeffs]
                if self._fault is not None and self._fault[0] < len(self._values):
                    self._values[self._fault[0]] += self._fault[1]
            return self._values[n]

    def corrupt_for_testing(self, n: int = 2, offset: int = 1) -> None:
        """Fault-injection hook: poison one cached value, stickily.

        Used by negative-control tests to prove the verification
        pipeline actually notices wrong data; the poison survives cache
        refills.  Never call outside tests.
        """
        self.get(n)
        with self._lock:
            self._fault = (n, offset)
            self._values[n] += offset

    def reset(self) -> None:
        with self._lock:
            self._values = [0]
            self._fault = None


_TAU = _TauCache()


def tau(n: int) -> int:
    """Coefficient of q^n in the discriminant form (extends cache on demand)."""
    return _TAU.get(n)


def corrupt_tau_cache_for_testing(n: int = 2, offset: int = 1) -> None:
    _TAU.corrupt_for_testing(n, offset)


def reset_tau_cache() -> None:
    _TAU.reset()


# -- divisor sums and the weight-12 Eisenstein series ---------------------------


def sigma(k: int, n: int) -> int:
    """Divisor power sum: sum of d^k over positive divisors d of n."""
    if n < 1:
        raise ValueError(f"sigma(k, n) requires n >= 1, got {n}")
    if k < 0:
        raise ValueError(f"sigma requires k >= 0, got {k}")
    total = 0
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            total += d**k
            e = n // d
            if e != d:
                total += e**k
    return total


def eisenstein_e12(order: int) -> QSeries:
    """691/65520 + sum_{n>=1} sigma_11(n) q^n, to exponent order-1.

    The constant term is exact; all higher coefficients are integers,
    computed by a multiple-marking sieve.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    coeffs = [0] * order
    for d in range(1, order):
        p = d**11
        for m in range(d, order, d):
            coeffs[m] += p
    out = [Fraction(691, 65520)] + [Fraction(v) for v in coeffs[1:]]
    return QSeries(Fraction(0), tuple(out), weight=12, level=1)


# -- Hecke operators ------------------------------------------------------------


def hecke_coset_reps(n: int) -> list[CosetRep]:
    """All (a, b, d) with a*d = n, 0 <= b < d, lexicographic; sigma_1(n) many."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    reps = []
    for a in range(1, n + 1):
        if n % a == 0:
            d = n // a
            for b in range(d):
                reps.append(CosetRep(a, b, d))
    return reps


def hecke_apply(f: QSeries, meta: FormMeta, n: int) -> QSeries:
    """Exact q-expansion of T_n f on the shrunken window floor(order/n).

    Requires an integral offset of 0 or 1.  The m-th output coefficient
    reads a(m n / d^2) for d | gcd(m, n); the window shrink guarantees
    every read lands inside f's known range.
    """
    if n < 1:
        raise ValueError(f"operator index must be >= 1, got {n}")
    if f.offset not in (0, 1):
        raise ValueError(f"hecke_apply requires offset 0 or 1, got {f.offset}")
    k = meta.weight
    out_order = f.order // n
    if out_order < 1:
        raise WindowError(
            f"series order {f.order} too small for T_{n} (needs >= {n})"
        )
    out = []
    for m in range(out_order):
        s = Fraction(0)
        g = gcd(m, n)  # gcd(0, n) == n covers the constant term
        for d in range(1, g + 1):
            if g % d == 0:
                idx = m * n // (d * d)
                s += meta.eps(d) * d ** (k - 1) * f.coeff(idx)
        out.append(s)
    return QSeries(Fraction(0), tuple(out))


@dataclass(frozen=True)
class HeckeComposeReport:
    """Coefficientwise comparison of T_m T_n f against its divisor sum."""

    m: int
    n: int
    order: int
    first_mismatch: Optional[tuple[int, Fraction, Fraction]]

    @property
    def ok(self) -> bool:
        return self.first_mismatch is None


def hecke_compose_check(
    meta: FormMeta, m: int, n: int, f: QSeries, order: int
) -> HeckeComposeReport:
    """Verify T_m(T_n f) = sum_{d | gcd(m,n)} eps(d) d^(k-1) T_{mn/d^2} f.

    Both sides are expanded independently through :func:`hecke_apply`
    and compared on the first ``order`` coefficients.
    """
    if f.order < m * n * max(order, 1):
        raise WindowError(
            f"need f to order >= {m * n * order} for ({m},{n}) at order {order}, "
            f"got {f.order}"
        )
    lhs = hecke_apply(hecke_apply(f, meta, n), meta, m)
    rhs: Optional[QSeries] = None
    g = gcd(m, n)
    k = meta.weight
    for d in range(1, g + 1):
        if g % d == 0:
            term = scalar_mul(
                meta.eps(d) * d ** (k - 1), hecke_apply(f, meta, m * n // (d * d))
            )
            rhs = term if rhs is None else rhs + term
    assert rhs is not None
    for j in range(order):
        a, b = lhs.coeff(j), rhs.coeff(j)
        if a != b:
            return HeckeComposeReport(m, n, order, (j, a, b))
    return HeckeComposeReport(m, n, order, None)


@dataclass(frozen=True)
class EigenformReport:
    """Result of checking T_n f = a(n) f over a range of operator indices.

    ``eigenvalues`` holds a(n) for every fully checked index;
    ``insufficient`` lists indices whose shrunken window was too short
    to falsify anything (fewer than two comparable coefficients).
    """

    eigenvalues: tuple[tuple[int, Fraction], ...]
    insufficient: tuple[int, ...]
    first_failure: Optional[tuple[int, int]]  # (operator index, exponent)

    @property
    def ok(self) -> bool:
        return self.first_failure is None


def is_eigenform(f: QSeries, meta: FormMeta, n_max: int, order: int) -> EigenformReport:
    """Check the simultaneous eigenvector property for T_1 .. T_{n_max}.

    ``f`` must be normalized (coefficient of q^1 equal to 1).  Each T_n
    is compared with a(n) * f on the whole shrunken window; the first
    violated coefficient stops the scan.
    """
    work = f.truncate(min(order, f.order))
    a1 = work.coeff(1)
    if a1 != 1:
        raise ValueError(f"eigenform check requires a(1) = 1, got {a1}")
    eigenvalues = []
    insufficient = []
    for n in range(1, n_max + 1):
        if work.order // n < 2 or n >= work.end:
            insufficient.append(n)
            continue
        t_n = hecke_apply(work, meta, n)
        lam = work.coeff(n)
        for j in range(t_n.order):
            if t_n.coeff(j) != lam * work.coeff(j):
                return EigenformReport(
                    tuple(eigenvalues), tuple(insufficient), (n, j)
                )
        eigenvalues.append((n, lam))
    return EigenformReport(tuple(eigenvalues), tuple(insufficient), None)


# -- tau property battery --------------------------------------------------------


def primes_up_to(n: int) -> list[int]:
    """Primes <= n by a plain sieve."""
    if n < 2:
        return []
    mark = bytearray([1]) * (n + 1)
    mark[0] = mark[1] = 0
    for p in range(2, isqrt(n) + 1):
        if mark[p]:
            mark[p * p :: p] = bytearray(len(mark[p * p :: p]))
    return [i for i in range(2, n + 1) if mark[i]]


def tau_properties_check(n_max: int) -> CheckReport:
    """Run the tau identity battery up to ``n_max``.

    Checks, all in exact integer arithmetic:

    1. multiplicativity tau(nm) = tau(n) tau(m) for coprime n, m with nm <= n_max;
    2. prime-power recursion tau(p^(e+1)) = tau(p) tau(p^e) - p^11 tau(p^(e-1));
    3. the coefficient bound tau(p)^2 <= 4 p^11 at every prime p <= n_max;
    4. tau(n) == sigma_11(n) mod 691 for n <= n_max;
    5. tau(n) == sigma_11(n) mod 2^11 for n == 1 mod 8, n <= n_max.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    tau(n_max)  # one cache fill
    violations = []
    for n in range(2, n_max + 1):
        for m in range(2, n_max // n + 1):
            if gcd(n, m) == 1 and tau(n * m) != tau(n) * tau(m):
                violations.append(f"multiplicativity failed at ({n},{m})")
    primes = primes_up_to(n_max)
    for p in primes:
        e = 1
        while p ** (e + 1) <= n_max:
            if tau(p ** (e + 1)) != tau(p) * tau(p**e) - p**11 * tau(p ** (e - 1)):
                violations.append(f"recursion failed at p={p}, e={e}")
            e += 1
        if tau(p) ** 2 > 4 * p**11:
            violations.append(f"coefficient bound failed at p={p}")
    for n in range(1, n_max + 1):
        if (tau(n) - sigma(11, n)) % 691 != 0:
            violations.append(f"mod-691 congruence failed at n={n}")
        if n % 8 == 1 and (tau(n) - sigma(11, n)) % 2048 != 0:
            violations.append(f"mod-2048 congruence failed at n={n}")
    return CheckReport(
        "tau-properties", (("n_max", n_max),), tuple(violations)
    )


# -- eigenvalue pair of the coset quadratic ---------------------------------------


@dataclass(frozen=True)
class EigenPair:
    """Roots of X^2 - (1 + b^2 + n^2) X + n^2, squared-eigenvalue pair.

    The roots are exact :class:`Fraction` values when the discriminant
    (trace^2 - 4 det) is a perfect square, 64-bit floats otherwise; the
    Vieta invariants hold exactly in the integer data either way.
    """

    n: int
    b: int
    lambda_plus_sq: Union[Fraction, float]
    lambda_minus_sq: Union[Fraction, float]

    @property
    def trace(self) -> int:
        return 1 + self.b**2 + self.n**2

    @property
    def det(self) -> int:
        return self.n**2


def eigen_pair(n: int, b: int) -> EigenPair:
    """Eigenvalue pair with trace 1 + b^2 + n^2 and determinant n^2.

    The discriminant trace^2 - 4 det is nonnegative for every n >= 1,
    b >= 0 (trace >= 2n), so the roots are always real.
    """
    if n < 1 or b < 0:
        raise ValueError(f"require n >= 1 and b >= 0, got ({n}, {b})")
    tr = 1 + b * b + n * n
    det = n * n
    disc = tr * tr - 4 * det
    assert disc >= 0
    root = isqrt(disc)
    if root * root == disc:
        plus = Fraction(tr + root, 2)
        minus = Fraction(tr - root, 2)
        assert plus + minus == tr and plus * minus == det
        return EigenPair(n, b, plus, minus)
    sq = disc**0.5
    return EigenPair(n, b, (tr + sq) / 2, (tr - sq) / 2)


def biquanta(n: int, k: int) -> int:
    """Exact n**k, the size of the index-n class at weight k."""
    if n < 1 or k < 1:
        raise ValueError(f"require n >= 1 and k >= 1, got ({n}, {k})")
    return n**k
