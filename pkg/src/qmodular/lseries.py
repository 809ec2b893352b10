"""Dirichlet series from q-expansions and the attached numeric checks.

Three numeric pipelines live here, deliberately kept independent so they
can cross-check each other:

* exact Dirichlet coefficients, read off a q-expansion or rebuilt from
  local Euler factors via the prime-power recursion
  c(p^(e+1)) = c(p) c(p^e) - p^(k-1) c(p^(e-1));
* the completed value Lambda(s) = integral_0^inf F(iy) y^s dy/y computed
  by adaptive quadrature, using the weight-12 inversion
  F(i/y) = y^12 F(iy) to evaluate the integrand accurately near 0 (the
  integrand then dies double-exponentially at both ends); Lambda
  equals (2 pi)^(-s) Gamma(s) sum c(n) n^(-s), so the two routes must
  agree, and invariance under s -> 12 - s is a genuine test rather than
  a built-in symmetry;
* critical-line zero ordinates of the zeta function, located by sign
  changes of the rotated real combination Z(t) = exp(i theta(t))
  zeta(1/2 + it) with zeta evaluated by Euler-Maclaurin summation,
  then refined by bisection.

Everything is 64-bit floating point with explicit error estimates; the
parameter sizes in scope sit comfortably inside double precision.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple, Optional

from . import forms
from .qseries import QSeries

__all__ = [
    "DirichletSeries",
    "DirichletValue",
    "EulerProductCoeffs",
    "CompletedLValue",
    "ZeroList",
    "BracketingError",
    "QuadratureBudgetError",
    "mellin_coeffs",
    "euler_product_coeffs",
    "dirichlet_eval",
    "completed_lambda_integral",
    "zeta_em",
    "rs_theta",
    "z_function",
    "zeta_zero_spacings",
]


class QuadratureBudgetError(RuntimeError):
    """Adaptive quadrature hit its evaluation budget before converging."""


class BracketingError(RuntimeError):
    """Zero scan missed sign changes; retry with a finer step."""


# -- Dirichlet series ------------------------------------------------------------


@dataclass(frozen=True)
class DirichletSeries:
    """Coefficients c_1 .. c_N of sum c_n n^(-s), exact.

    ``normalized_eigenform`` asserts the coefficient bound
    |c_n| <= d(n) n^((weight-1)/2), which powers the rigorous tail
    estimates in :func:`dirichlet_eval`.
    """

    coeffs: tuple[Fraction, ...]
    weight: int = 0
    normalized_eigenform: bool = False

    def __post_init__(self) -> None:
        if len(self.coeffs) < 1:
            raise ValueError("need at least one coefficient")
        object.__setattr__(
            self, "coeffs", tuple(Fraction(c) for c in self.coeffs)
        )

    def coeff(self, n: int) -> Fraction:
        if not 1 <= n <= len(self.coeffs):
            raise ValueError(f"n must be in 1..{len(self.coeffs)}, got {n}")
        return self.coeffs[n - 1]


def mellin_coeffs(f: QSeries, normalized_eigenform: bool = False) -> DirichletSeries:
    """Dirichlet coefficients of a cusp expansion: c_n = coefficient of q^n.

    ``f`` must have an integer offset >= 0 and a vanishing constant
    term (the cusp condition); coefficients run from exponent 1 to the
    end of f's window.
    """
    if f.offset.denominator != 1 or f.offset < 0:
        raise ValueError(f"mellin_coeffs requires an integer offset >= 0, got {f.offset}")
    if f.offset == 0 and f.order > 0 and f.coeffs[0] != 0:
        raise ValueError(
            f"nonzero constant term {f.coeffs[0]}: not a cusp expansion"
        )
    n_max = int(f.end) - 1
    if n_max < 1:
        raise ValueError("window too short: no coefficients at exponent >= 1")
    cs = [f.coeff(n) for n in range(1, n_max + 1)]
    return DirichletSeries(
        tuple(cs),
        weight=f.weight if f.weight is not None else 0,
        normalized_eigenform=normalized_eigenform,
    )


@dataclass(frozen=True)
class EulerProductCoeffs:
    """Dirichlet coefficients rebuilt from local Euler factors.

    ``values[n]`` is exact for every n <= n_max whose prime factors all
    lie under ``prime_bound``; other slots hold None (unknown), which a
    plain DirichletSeries cannot represent.
    """

    weight: int
    prime_bound: int
    n_max: int
    values: tuple[Optional[int], ...]  # index 0 unused

    def known(self, n: int) -> bool:
        return self.values[n] is not None

    def coeff(self, n: int) -> int:
        v = self.values[n]
        if v is None:
            raise ValueError(f"coefficient at n={n} is not {self.prime_bound}-smooth")
        return v


def euler_product_coeffs(
    prime_values: Mapping[int, int], weight: int, prime_bound: int, n_max: int
) -> EulerProductCoeffs:
    """Expand prod_p (1 - c(p) p^(-s) + p^(k-1) p^(-2s))^(-1) coefficientwise.

    Each local factor contributes c(p^e) through the recursion
    c(p^(e+1)) = c(p) c(p^e) - p^(k-1) c(p^(e-1)); multiplicativity
    assembles c(n) for every prime_bound-smooth n <= n_max.
    """
    primes = forms.primes_up_to(prime_bound)
    missing = [p for p in primes if p not in prime_values]
    if missing:
        raise ValueError(f"prime values missing for {missing}")
    local: dict[int, list[int]] = {}
    for p in primes:
        powers = [1, prime_values[p]]
        while p ** len(powers) <= n_max:
            powers.append(
                prime_values[p] * powers[-1] - p ** (weight - 1) * powers[-2]
            )
        local[p] = powers
    values: list[Optional[int]] = [None] * (n_max + 1)
    values[1] = 1
    for n in range(2, n_max + 1):
        rem = n
        acc = 1
        for p in primes:
            if p * p > rem:
                break
            e = 0
            while rem % p == 0:
                rem //= p
                e += 1
            if e:
                acc *= local[p][e]
        if rem > 1:
            if rem <= prime_bound:
                acc *= local[rem][1]
            else:
                continue  # not smooth
        values[n] = acc
    return EulerProductCoeffs(weight, prime_bound, n_max, tuple(values))


class DirichletValue(NamedTuple):
    value: float
    tail_bound: float


def dirichlet_eval(ds: DirichletSeries, s: float) -> DirichletValue:
    """Partial sum of sum c_n n^(-s) with a rigorous tail bound.

    For a flagged normalized eigenform the bound |c_n| <= 2 n^(k/2)
    (divisor count under 2 sqrt(n)) gives

        |tail| <= 2 N^(k/2 + 1 - s) / (s - k/2 - 1),

    valid for s > k/2 + 1; arguments at or below that line are refused.
    Unflagged series carry no coefficient bound, so their tail is
    reported as infinite.
    """
    if ds.normalized_eigenform:
        barrier = ds.weight / 2 + 1
        if s <= barrier:
            raise ValueError(
                f"s={s} is outside the guaranteed convergence region s > {barrier}"
            )
    total = 0.0
    for n, c in enumerate(ds.coeffs, start=1):
        if c:
            total += float(c) * n ** (-s)
    if ds.normalized_eigenform:
        n_cut = len(ds.coeffs)
        tail = 2.0 * n_cut ** (ds.weight / 2 + 1 - s) / (s - ds.weight / 2 - 1)
    else:
        tail = math.inf
    return DirichletValue(total, tail)


# -- completed Lambda by quadrature ------------------------------------------------


@dataclass(frozen=True)
class CompletedLValue:
    """Numeric Lambda(s) with its quadrature + truncation error estimate."""

    s: float
    value: float
    quadrature_error: float

    def to_json_obj(self) -> dict:
        return {"s": self.s, "value": self.value, "err": self.quadrature_error}


def _cusp_exp_sum(y: float, order: int) -> float:
    """sum_{n<=order} tau(n) exp(-2 pi n y) for y >= 1."""
    total = 0.0
    two_pi_y = 2.0 * math.pi * y
    for n in range(1, order + 1):
        t = -two_pi_y * n
        if t < -745.0:  # exp underflows to 0
            break
        total += forms.tau(n) * math.exp(t)
    return total


def _discriminant_iy(y: float, order: int) -> float:
    """The weight-12 form at iy, using the inversion y -> 1/y below 1."""
    if y <= 0:
        raise ValueError("y must be positive")
    if y >= 1.0:
        return _cusp_exp_sum(y, order)
    inner = _cusp_exp_sum(1.0 / y, order)
    if inner == 0.0:
        return 0.0
    return inner * y**-12


def _adaptive_simpson(fn, a, b, tol, budget) -> tuple[float, float]:
    """Classic adaptive Simpson; returns (value, error estimate).

    ``budget`` is a single-entry list holding the remaining function
    evaluations; exhausting it raises QuadratureBudgetError.
    """

    def evaluate(x):
        if budget[0] <= 0:
            raise QuadratureBudgetError("quadrature evaluation budget exhausted")
        budget[0] -= 1
        return fn(x)

    def recurse(x0, f0, x2, f2, x1, f1, whole, tol_here, depth):
        xl = 0.5 * (x0 + x1)
        xr = 0.5 * (x1 + x2)
        fl = evaluate(xl)
        fr = evaluate(xr)
        h = x2 - x0
        left = h / 12.0 * (f0 + 4.0 * fl + f1)
        right = h / 12.0 * (f1 + 4.0 * fr + f2)
        delta = left + right - whole
        if depth <= 0:
            raise QuadratureBudgetError("quadrature recursion depth exhausted")
        if abs(delta) <= 15.0 * tol_here:
            return left + right + delta / 15.0, abs(delta) / 15.0
        vl, el = recurse(x0, f0, x1, f1, xl, fl, left, tol_here / 2.0, depth - 1)
        vr, er = recurse(x1, f1, x2, f2, xr, fr, right, tol_here / 2.0, depth - 1)
        return vl + vr, el + er

    f0, f2 = evaluate(a), evaluate(b)
    x1 = 0.5 * (a + b)
    f1 = evaluate(x1)
    whole = (b - a) / 6.0 * (f0 + 4.0 * f1 + f2)
    return recurse(a, f0, b, f2, x1, f1, whole, tol, 48)


def completed_lambda_integral(
    s: float, y_cut: float = 12.0, order: int = 48
) -> CompletedLValue:
    """Lambda(s) = integral_0^inf F(iy) y^(s-1) dy for the weight-12 form.

    The integral is split at y = 1.  On [1, y_cut] the integrand uses
    the exponential sum directly; on (0, 1] it uses the inversion
    relation, under which the integrand vanishes double-exponentially
    at 0.  The reported error adds the quadrature estimates to bounds
    for the discarded y > y_cut tail and for the truncation of the
    exponential sum.
    """
    if not 0.0 < s < 12.0:
        raise ValueError(f"s must lie in (0, 12), got {s}")
    if y_cut < 2.0:
        raise ValueError(f"y_cut must be >= 2, got {y_cut}")
    if order < 8:
        raise ValueError(f"order must be >= 8, got {order}")

    def upper(y: float) -> float:
        return _discriminant_iy(y, order) * y ** (s - 1.0)

    def lower(y: float) -> float:
        if y <= 0.0:
            return 0.0
        inner = _cusp_exp_sum(1.0 / y, order)
        if inner == 0.0:
            return 0.0
        return inner * y ** (s - 13.0)

    budget = [200_000]
    coarse = abs(upper(1.0)) + abs(upper(2.0)) + 1e-6
    tol = 1e-13 * coarse
    v_up, e_up = _adaptive_simpson(upper, 1.0, y_cut, tol, budget)
    v_lo, e_lo = _adaptive_simpson(lower, 0.0, 1.0, tol, budget)
    # y > y_cut tail: |F(iy)| <= 2 exp(-2 pi y) there, and y^(s-1) <= y_cut^11 e^(y - y_cut)
    # is a crude but safe majorant for s < 12.
    tail_cut = 2.0 * y_cut ** 11 * math.exp(-(2.0 * math.pi - 1.0) * y_cut)
    # exponential-sum truncation, evaluated at the slowest-decaying point y = 1
    n1 = order + 1
    series_tail = 4.0 * n1**6 * math.exp(-2.0 * math.pi * n1) * (y_cut - 1.0 + 1.0)
    err = e_up + e_lo + tail_cut + series_tail
    return CompletedLValue(s, v_up + v_lo, err)


# -- zeta on the critical line -----------------------------------------------------


_BERNOULLI_2K = [
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
    Fraction(43867, 798),
    Fraction(-174611, 330),
]


def zeta_em(s: complex, terms: Optional[int] = None, corrections: int = 8) -> complex:
    """zeta(s) by Euler-Maclaurin summation.

    Accurate to ~1e-12 for |Im s| up to a few hundred with the default
    term count N ~ 2|Im s|.  Not valid at s = 1.
    """
    if s == 1:
        raise ValueError("zeta has a pole at s = 1")
    t = abs(s.imag)
    n_terms = terms if terms is not None else max(24, int(2.0 * t) + 8)
    total = complex(0.0)
    for n in range(1, n_terms):
        total += cmath.exp(-s * math.log(n))
    n_s = cmath.exp(-s * math.log(n_terms))
    total += n_terms * n_s / (s - 1.0)
    total += 0.5 * n_s
    # correction terms B_2k/(2k)! * (s)(s+1)...(s+2k-2) * N^(1-s-2k)
    poch = s
    fact = 1.0
    for k in range(1, corrections + 1):
        fact *= (2 * k - 1) * (2 * k)
        total += (
            float(_BERNOULLI_2K[k - 1])
            / fact
            * poch
            * cmath.exp((1.0 - s - 2.0 * k) * math.log(n_terms))
        )
        poch *= (s + 2 * k - 1) * (s + 2 * k)
    return total


def rs_theta(t: float) -> float:
    """Phase theta(t) with arg zeta rotation, asymptotic expansion.

    Good to better than 1e-9 for t >= 10, which covers every ordinate
    handled here.  Only sign changes matter for zero location, so the
    residual phase error cannot move a zero.
    """
    if t < 1.0:
        raise ValueError(f"asymptotic phase needs t >= 1, got {t}")
    return (
        0.5 * t * math.log(t / (2.0 * math.pi))
        - 0.5 * t
        - math.pi / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t**3)
        + 31.0 / (80640.0 * t**5)
    )


def z_function(t: float) -> float:
    """Real rotated combination Z(t) = exp(i theta(t)) zeta(1/2 + it)."""
    val = cmath.exp(1j * rs_theta(t)) * zeta_em(complex(0.5, t))
    return val.real


@dataclass(frozen=True)
class ZeroList:
    """Increasing critical-line ordinates with refinement residuals."""

    gammas: tuple[float, ...]
    residuals: tuple[float, ...]

    def __post_init__(self) -> None:
        if any(b <= a for a, b in zip(self.gammas, self.gammas[1:])):
            raise ValueError("ordinates must be strictly increasing")
        if any(g <= 0 for g in self.gammas):
            raise ValueError("ordinates must be positive")

    @property
    def spacings(self) -> tuple[float, ...]:
        return tuple(b - a for a, b in zip(self.gammas, self.gammas[1:]))

    def rows(self) -> list[tuple[int, float, Optional[float]]]:
        sp = self.spacings
        return [
            (i + 1, g, sp[i] if i < len(sp) else None)
            for i, g in enumerate(self.gammas)
        ]


def zeta_zero_spacings(
    count: int,
    step: float = 0.2,
    refine_tol: float = 1e-6,
    residual_tol: float = 1e-4,
) -> ZeroList:
    """First ``count`` critical-line ordinates and their spacings.

    Sign changes of Z(t) are bracketed on a uniform grid from t = 4 and
    refined by bisection to ``refine_tol`` in t.  A Riemann-von Mangoldt
    count check guards against pairs of zeros slipping between grid
    points; on mismatch a BracketingError asks for a finer step.
    """
    if not 1 <= count <= 50:
        raise ValueError(f"count must be in 1..50 (desk scale), got {count}")
    gammas = []
    residuals = []
    t = 4.0
    z_prev = z_function(t)
    while len(gammas) < count:
        t_next = t + step
        if t_next > 400.0:
            raise BracketingError("scan ran away; step too coarse?")
        z_next = z_function(t_next)
        if z_prev == 0.0:
            gammas.append(t)
            residuals.append(0.0)
        elif z_prev * z_next < 0.0:
            lo, hi = t, t_next
            f_lo = z_prev
            while hi - lo > refine_tol:
                mid = 0.5 * (lo + hi)
                f_mid = z_function(mid)
                if f_mid == 0.0:
                    lo = hi = mid
                    break
                if f_lo * f_mid < 0.0:
                    hi = mid
                else:
                    lo, f_lo = mid, f_mid
            gamma = 0.5 * (lo + hi)
            res = abs(z_function(gamma))
            if res > residual_tol:
                raise BracketingError(
                    f"refinement residual {res:.3g} at t={gamma:.6f} exceeds "
                    f"{residual_tol}; bracket may be spurious"
                )
            gammas.append(gamma)
            residuals.append(res)
        t, z_prev = t_next, z_next
    expected = rs_theta(gammas[-1] + 1e-3) / math.pi + 1.0
    if expected - count > 1.2:
        raise BracketingError(
            f"zero count {count} up to t={gammas[-1]:.4f} falls short of the "
            f"counting function ({expected:.2f}); step {step} too coarse"
        )
    return ZeroList(tuple(gammas), tuple(residuals))
