"""Exact truncated power series in q.

A :class:`QSeries` is the series

    q^offset * (c[0] + c[1] q + c[2] q^2 + ... + c[order-1] q^(order-1))

with exact rational coefficients ``c[j]`` and a rational exponent
``offset`` whose denominator divides 24, so eta-quotient exponents stay
exactly representable.  Exponents advance in integer steps from the
offset; everything below the offset is zero by definition (the offset is
the exponent of the leading monomial), and everything at or beyond
``offset + order`` is *unknown*, not zero.

Truncation follows a no-fabrication rule: each operation returns the
largest window on which its result is fully determined by the operands,
and reading a coefficient past that window raises :class:`WindowError`
rather than returning a silent zero.  This keeps "identity verified to
order N" claims honest.

Multiplication is schoolbook convolution (exact arithmetic first; the
sparser operand drives the outer loop, so eta-like series stay cheap).
A module-level operation counter is kept for benchmarking convolution
cost; see :func:`conv_ops`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Sequence, Union

RationalLike = Union[int, Fraction, str]

__all__ = [
    "QSeries",
    "WindowError",
    "make_series",
    "add",
    "mul",
    "scalar_mul",
    "pow",
    "invert",
    "euler_product",
    "one",
    "monomial",
    "to_json_obj",
    "from_json_obj",
    "conv_ops",
    "reset_conv_ops",
]


class WindowError(Exception):
    """A coefficient beyond the known truncation window was requested."""


def _frac(x: RationalLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# Convolution cost counter (coefficient multiplications).  Not a public
# contract, only a benchmark hook; approximate under threads.
_CONV_OPS = 0


def conv_ops() -> int:
    """Number of coefficient multiplications performed so far."""
    return _CONV_OPS


def reset_conv_ops() -> None:
    global _CONV_OPS
    _CONV_OPS = 0


@dataclass(frozen=True)
class QSeries:
    """Truncated exact power series ``q^offset * sum c[j] q^j``.

    ``weight`` and ``level`` are optional bookkeeping tags set by the
    named constructors (they do not participate in equality and are
    dropped by arithmetic).
    """

    offset: Fraction
    coeffs: tuple[Fraction, ...]
    weight: Optional[int] = field(default=None, compare=False)
    level: Optional[int] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        off = _frac(self.offset)
        if 24 % off.denominator != 0:
            raise ValueError(
                f"offset denominator must divide 24, got {off.denominator}"
            )
        object.__setattr__(self, "offset", off)
        object.__setattr__(
            self, "coeffs", tuple(_frac(c) for c in self.coeffs)
        )

    # -- window bookkeeping -------------------------------------------------

    @property
    def order(self) -> int:
        """Number of known coefficients (integer steps from the offset)."""
        return len(self.coeffs)

    @property
    def end(self) -> Fraction:
        """First unknown exponent, ``offset + order``."""
        return self.offset + len(self.coeffs)

    def coeff(self, exponent: RationalLike) -> Fraction:
        """Exact coefficient of ``q^exponent``.

        Exponents below the window are zero (nothing sits under the
        leading monomial); exponents off the integer lattice of the
        offset but still inside the window are zero as well.  Exponents
        at or past ``offset + order`` raise :class:`WindowError`.
        """
        e = _frac(exponent)
        if e >= self.end:
            raise WindowError(
                f"coefficient of q^{e} is beyond the known window "
                f"[{self.offset}, {self.end})"
            )
        rel = e - self.offset
        if rel < 0 or rel.denominator != 1:
            return Fraction(0)
        return self.coeffs[int(rel)]

    def __getitem__(self, exponent: RationalLike) -> Fraction:
        return self.coeff(exponent)

    def nonzero_terms(self) -> Iterable[tuple[Fraction, Fraction]]:
        """Yield (exponent, coefficient) for the nonzero stored terms."""
        for j, c in enumerate(self.coeffs):
            if c:
                yield self.offset + j, c

    def with_meta(self, weight: Optional[int], level: Optional[int]) -> "QSeries":
        return QSeries(self.offset, self.coeffs, weight=weight, level=level)

    def shift(self, delta: RationalLike) -> "QSeries":
        """Multiply by the monomial ``q^delta`` (exact, window unchanged)."""
        return QSeries(self.offset + _frac(delta), self.coeffs)

    def truncate(self, order: int) -> "QSeries":
        """Restrict to the first ``order`` coefficients."""
        if order < 0 or order > len(self.coeffs):
            raise WindowError(
                f"cannot truncate to order {order}: only {len(self.coeffs)} "
                "coefficients are known"
            )
        return QSeries(self.offset, self.coeffs[:order])

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "QSeries") -> "QSeries":
        return add(self, other)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return add(self, scalar_mul(-1, other))

    def __neg__(self) -> "QSeries":
        return scalar_mul(-1, self)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return mul(self, other)
        return scalar_mul(other, self)

    def __rmul__(self, other):
        return scalar_mul(other, self)

    def __pow__(self, e: int) -> "QSeries":
        return pow(self, e)

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if len(self.coeffs) > 6 else ""
        return f"QSeries(q^{self.offset} * [{head}{tail}], order={self.order})"


def make_series(
    offset: RationalLike, coeffs: Sequence[RationalLike], order: int
) -> QSeries:
    """Build a series from explicit data, validating the window contract."""
    if len(coeffs) != order:
        raise ValueError(
            f"coefficient count {len(coeffs)} does not match order {order}"
        )
    return QSeries(_frac(offset), tuple(_frac(c) for c in coeffs))


def one(order: int) -> QSeries:
    """The multiplicative identity known to ``order`` coefficients."""
    if order < 1:
        return QSeries(Fraction(0), ())
    return QSeries(Fraction(0), (Fraction(1),) + (Fraction(0),) * (order - 1))


def monomial(exponent: RationalLike, order: int) -> QSeries:
    """The series ``q^exponent`` known to ``order`` coefficients."""
    return one(order).shift(exponent)


# -- kernels ------------------------------------------------------------------


def _all_integer(cs: Sequence[Fraction]) -> bool:
    return all(c.denominator == 1 for c in cs)


def _conv(a: Sequence[Fraction], b: Sequence[Fraction], n: int) -> list[Fraction]:
    """Cauchy product of the coefficient blocks, truncated to n terms.

    The sparser block runs the outer loop, so multiplying by an
    eta-like pentagonal-support series costs O(sqrt(n) * n) instead of
    O(n^2).
    """
    global _CONV_OPS
    if sum(1 for c in a[:n] if c) > sum(1 for c in b[:n] if c):
        a, b = b, a
    if _all_integer(a) and _all_integer(b):
        ai = [c.numerator for c in a[:n]]
        bi = [c.numerator for c in b[:n]]
        out = [0] * n
        for i, av in enumerate(ai):
            if av:
                _CONV_OPS += n - i
                for j, bv in enumerate(bi[: n - i]):
                    if bv:
                        out[i + j] += av * bv
        return [Fraction(v) for v in out]
    out_f = [Fraction(0)] * n
    for i, av in enumerate(a[:n]):
        if av:
            _CONV_OPS += n - i
            for j, bv in enumerate(b[: n - i]):
                if bv:
                    out_f[i + j] += av * bv
    return out_f


def add(f: QSeries, g: QSeries) -> QSeries:
    """Coefficientwise sum on the largest fully determined window."""
    rel = g.offset - f.offset
    if rel.denominator != 1:
        raise ValueError(
            "cannot add series on different exponent lattices "
            f"(offsets {f.offset} and {g.offset})"
        )
    off = min(f.offset, g.offset)
    end = min(f.end, g.end)
    n = int(end - off)
    if n <= 0:
        return QSeries(off, ())
    out = []
    for j in range(n):
        e = off + j
        out.append(
            (f.coeffs[int(e - f.offset)] if e >= f.offset else Fraction(0))
            + (g.coeffs[int(e - g.offset)] if e >= g.offset else Fraction(0))
        )
    return QSeries(off, tuple(out))


def scalar_mul(c: RationalLike, f: QSeries) -> QSeries:
    c = _frac(c)
    return QSeries(f.offset, tuple(c * x for x in f.coeffs))


def mul(f: QSeries, g: QSeries) -> QSeries:
    """Cauchy product; result order is the smaller operand order."""
    n = min(f.order, g.order)
    if n <= 0:
        return QSeries(f.offset + g.offset, ())
    return QSeries(f.offset + g.offset, tuple(_conv(f.coeffs, g.coeffs, n)))


def invert(f: QSeries) -> QSeries:
    """Multiplicative inverse: mul(f, invert(f)) == 1 on the window."""
    if f.order == 0 or f.coeffs[0] == 0:
        raise ValueError("cannot invert a series with zero leading coefficient")
    n = f.order
    a = f.coeffs
    if a[0] in (1, -1) and _all_integer(a):
        ai = [c.numerator for c in a]
        lead = ai[0]
        bi = [lead] + [0] * (n - 1)
        for k in range(1, n):
            s = 0
            for i in range(1, k + 1):
                if ai[i]:
                    s += ai[i] * bi[k - i]
            bi[k] = -lead * s
        return QSeries(-f.offset, tuple(Fraction(v) for v in bi))
    b = [1 / a[0]] + [Fraction(0)] * (n - 1)
    for k in range(1, n):
        s = Fraction(0)
        for i in range(1, k + 1):
            if a[i]:
                s += a[i] * b[k - i]
        b[k] = -b[0] * s
    return QSeries(-f.offset, tuple(b))


def pow(f: QSeries, e: int) -> QSeries:  # noqa: A001 - mirrors the series API
    """Integer power; negative exponents require an invertible lead."""
    if e == 0:
        return one(f.order)
    if e < 0:
        return pow(invert(f), -e)
    nnz = sum(1 for c in f.coeffs if c)
    # Sparse bases (pentagonal-type support) are cheaper to fold in one
    # by one; dense bases win with repeated squaring.
    if nnz * (e - 1) <= 2 * f.order * max(1, e.bit_length()):
        acc = f
        for _ in range(e - 1):
            acc = mul(acc, f)
        return acc
    acc = None
    base = f
    k = e
    while k:
        if k & 1:
            acc = base if acc is None else mul(acc, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return acc


def _binom_term(e: int, j: int) -> int:
    """Signed binomial coefficient of q^(n*j) in (1 - q^n)^e."""
    if e >= 0:
        if j > e:
            return 0
        c = comb(e, j)
        return -c if j & 1 else c
    return comb(-e + j - 1, j)


def euler_product(e: int, order: int) -> QSeries:
    """Expansion of ``prod_{n>=1} (1 - q^n)^e`` to ``order`` coefficients.

    Factors are folded in one at a time (sparse in q^n), never by
    powering a dense base.  The n-th factor only touches exponents >= n,
    so the loop stops at n = order - 1.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    c = [0] * order
    c[0] = 1
    if e == 0:
        return QSeries(Fraction(0), tuple(Fraction(v) for v in c))
    for n in range(1, order):
        if e > 0:
            # descending in-place pass per binomial term block
            jmax = min(e, (order - 1) // n)
            terms = [(j * n, _binom_term(e, j)) for j in range(1, jmax + 1)]
            for m in range(order - 1, n - 1, -1):
                s = c[m]
                for jn, t in terms:
                    if jn > m:
                        break
                    s += t * c[m - jn]
                c[m] = s
        else:
            # 1/(1-q^n)^|e| as |e| ascending accumulation passes
            for _ in range(-e):
                for m in range(n, order):
                    c[m] += c[m - n]
    return QSeries(Fraction(0), tuple(Fraction(v) for v in c))


# -- serialization -------------------------------------------------------------


def to_json_obj(f: QSeries) -> dict:
    """JSON form: {offset_num, offset_den, order, coeffs: [[num, den], ...]}."""
    return {
        "offset_num": f.offset.numerator,
        "offset_den": f.offset.denominator,
        "order": f.order,
        "coeffs": [[c.numerator, c.denominator] for c in f.coeffs],
    }


def from_json_obj(obj: dict) -> QSeries:
    coeffs = [Fraction(n, d) for n, d in obj["coeffs"]]
    return make_series(
        Fraction(obj["offset_num"], obj["offset_den"]), coeffs, obj["order"]
    )
