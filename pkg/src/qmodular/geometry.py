"""Torus terms with elliptic cross sections: holomorphic part and shadow.

Each Fourier term of a classical cusp expansion is modeled as a product
of two circle factors with radii (r_a, r_d).  Deforming the second
circle into an ellipse while preserving its perimeter produces one term
of a weakly modular series: the inscribed circle of the ellipse carries
the holomorphic part, with coefficient

    c_hol = r_a * r_ref * min(e, f),

and the residue between ellipse and inscribed circle is the term's
shadow.  Here (e, f) are dimensionless half-axis factors relative to the
reference radius r_ref, which is fixed by requiring the ellipse
perimeter to equal 2 pi r_d.

For series evaluation the angular argument of the cross-section is
taken along the imaginary direction, so cosine/sine turn hyperbolic:

    f cos -> f cosh(th),  i e sin -> -e sinh(th),  th = 2 pi n Im(z),

written stably as ((f-e)/2) e^th + ((f+e)/2) e^(-th).  When e = f this
collapses to f e^(-th), exactly reproducing the classical decaying term
and making the shadow vanish identically (also in floating point, since
the e^th coefficient is an exact zero).

Perimeters use the arithmetic-geometric-mean evaluation of the complete
elliptic integral of the second kind, converged to ~1e-15 relative.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

__all__ = [
    "EllipseSpec",
    "TorusTerm",
    "WeakMaassValue",
    "ellipse_perimeter",
    "circle_matching_ellipse",
    "torus_term",
    "weak_maass_series",
    "elliptic_form_term",
    "surface_grid_json_obj",
]


@dataclass(frozen=True)
class EllipseSpec:
    """Ellipse with semiaxes r_ref*f (real axis) and r_ref*e (imaginary)."""

    r_ref: float
    e: float
    f: float

    def __post_init__(self) -> None:
        if not (self.r_ref > 0 and self.e > 0 and self.f > 0):
            raise ValueError(
                f"r_ref, e, f must all be positive, got "
                f"({self.r_ref}, {self.e}, {self.f})"
            )

    @property
    def semi_real(self) -> float:
        return self.r_ref * self.f

    @property
    def semi_imag(self) -> float:
        return self.r_ref * self.e

    @property
    def inscribed_radius(self) -> float:
        return self.r_ref * min(self.e, self.f)

    def point(self, theta: float) -> complex:
        """Boundary point r_ref (f cos theta + i e sin theta)."""
        return self.r_ref * complex(
            self.f * math.cos(theta), self.e * math.sin(theta)
        )


def ellipse_perimeter(spec: EllipseSpec) -> float:
    """Perimeter via the AGM form of the complete elliptic integral E.

    With a >= b the perimeter is 4 a E(m), m = 1 - (b/a)^2, and

        E(m) = K(m) (1 - sum_{j>=0} 2^(j-1) c_j^2),
        K(m) = pi / (2 agm(1, sqrt(1-m))),

    where c_j = (a_{j-1} - b_{j-1})/2 along the AGM iteration.  The
    iteration is quadratically convergent; it is run to machine
    precision, far inside the 1e-12 relative contract.
    """
    a = max(spec.semi_real, spec.semi_imag)
    b = min(spec.semi_real, spec.semi_imag)
    if a == b:
        return 2.0 * math.pi * a
    an, bn = 1.0, b / a
    s = 0.5 * (1.0 - bn * bn)  # 2^{-1} c_0^2 with c_0^2 = 1 - (b/a)^2
    pw = 0.5
    for _ in range(64):  # quadratic convergence: ~6 rounds to machine eps
        if an - bn <= 4e-16 * an:
            break
        cn = 0.5 * (an - bn)
        an, bn = 0.5 * (an + bn), math.sqrt(an * bn)
        pw *= 2.0
        s += pw * cn * cn
    k_val = math.pi / (2.0 * an)
    return 4.0 * a * k_val * (1.0 - s)


def circle_matching_ellipse(r_target: float, e: float, f: float) -> EllipseSpec:
    """Reference radius making the (e, f) ellipse as long as a circle.

    Solves perimeter(r_ref, e, f) = 2 pi r_target for r_ref.  The map is
    exactly linear in r_ref, so the Newton step from the unit-reference
    perimeter lands on the root at once; the residual is asserted
    against the 1e-10 relative contract anyway.
    """
    if r_target <= 0:
        raise ValueError(f"r_target must be positive, got {r_target}")
    unit = ellipse_perimeter(EllipseSpec(1.0, e, f))
    r_ref = 2.0 * math.pi * r_target / unit
    spec = EllipseSpec(r_ref, e, f)
    residual = abs(ellipse_perimeter(spec) - 2.0 * math.pi * r_target)
    assert residual < 1e-10 * r_target, f"matching residual {residual}"
    return spec


@dataclass(frozen=True)
class TorusTerm:
    """One series term: circle radius r_a times a perimeter-matched ellipse.

    ``c_hol`` is the coefficient of the inscribed-circle (holomorphic)
    part; ``shadow_samples`` trace the difference curve between the
    elliptic section and its inscribed circle on a uniform angular grid.
    """

    n: int
    r_a: float
    ellipse: EllipseSpec
    c_hol: float
    shadow_samples: tuple[complex, ...]

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "r_a": self.r_a,
            "r_ref": self.ellipse.r_ref,
            "e": self.ellipse.e,
            "f": self.ellipse.f,
            "c_hol": self.c_hol,
            "shadow_samples": [[s.real, s.imag] for s in self.shadow_samples],
        }


def torus_term(
    n: int, r_a: float, r_d: float, e: float, f: float, grid_size: int
) -> TorusTerm:
    """Build the index-n term record from its four radii/axis parameters."""
    if grid_size < 4:
        raise ValueError(f"grid_size must be >= 4, got {grid_size}")
    if r_a <= 0 or r_d <= 0:
        raise ValueError(f"radii must be positive, got ({r_a}, {r_d})")
    spec = circle_matching_ellipse(r_d, e, f)
    c_hol = r_a * spec.inscribed_radius
    # Semiaxes and inscribed radius are shared subexpressions, so for
    # e == f the two boundary points are bit-identical and the shadow
    # cancels exactly, not just to rounding.
    semi_re, semi_im = spec.semi_real, spec.semi_imag
    r_in = spec.inscribed_radius
    samples = []
    for j in range(grid_size):
        theta = 2.0 * math.pi * j / grid_size
        ct, st = math.cos(theta), math.sin(theta)
        samples.append(complex(semi_re * ct - r_in * ct, semi_im * st - r_in * st))
    return TorusTerm(n, r_a, spec, c_hol, tuple(samples))


class WeakMaassValue(NamedTuple):
    full: complex
    hol: complex
    shadow: complex


def _section_and_inscribed(spec: EllipseSpec, th: float) -> tuple[float, float]:
    """Section value r_ref (f cosh th - e sinh th) and its inscribed decay.

    The stable split ((f-e)/2) e^th + ((f+e)/2) e^(-th) keeps the
    growing mode's coefficient an exact zero when e == f, and the decay
    coefficient then equals the inscribed radius bit-for-bit, so the
    shadow contribution vanishes identically for circular sections.
    """
    grow = spec.r_ref * (0.5 * (spec.f - spec.e))
    decay = spec.r_ref * (0.5 * (spec.f + spec.e))
    damp = math.exp(-th)
    section = decay * damp
    if grow != 0.0:
        section += grow * math.exp(th)
    return section, spec.inscribed_radius * damp


def weak_maass_series(
    terms: Sequence[tuple[float, float, float, float]],
    z: complex,
    truncation: int,
) -> WeakMaassValue:
    """Evaluate the three-part sum at z: full, holomorphic, shadow.

    ``terms`` lists (r_a, r_d, e, f) for n = 1, 2, ...; at most
    ``truncation`` of them enter.  Per term,

        full_n   = r_a e^(2 pi i n x) * section(2 pi n y)
        hol_n    = c_hol e^(2 pi i n z)
        shadow_n = full_n - hol_n, accumulated independently,

    summed in ascending n (the order is part of the contract).  The
    identity full = hol + shadow then holds to rounding rather than by
    construction.
    """
    if z.imag <= 0:
        raise ValueError(f"need Im(z) > 0, got {z.imag}")
    x, y = z.real, z.imag
    full = complex(0.0)
    hol = complex(0.0)
    shadow = complex(0.0)
    for n, (r_a, r_d, e, f) in enumerate(terms[:truncation], start=1):
        if r_a == 0.0:
            continue
        spec = circle_matching_ellipse(r_d, e, f)
        th = 2.0 * math.pi * n * y
        circle = r_a * cmath.exp(2j * math.pi * n * x)
        section, inscribed = _section_and_inscribed(spec, th)
        full += circle * section
        hol += circle * inscribed
        shadow += circle * (section - inscribed)
    return WeakMaassValue(full, hol, shadow)


def elliptic_form_term(
    n: int,
    a: float,
    b: float,
    e: float,
    f: float,
    r_a: float,
    r_d: float,
    grid: int,
) -> list[list[complex]]:
    """Sample grid of the index-n ellipse-around-ellipse surface.

    Outer curve r_a (b cos th + i a sin th), inner curve
    r_d (f cos ph + i e sin ph); entry [i][j] is the product of the two
    at th_i = 2 pi i / grid, ph_j = 2 pi j / grid.  The index n labels
    the term in table output and does not enter the parametrization.
    """
    if min(a, b, e, f, r_a, r_d) <= 0:
        raise ValueError("all axis factors and radii must be positive")
    if grid < 2:
        raise ValueError(f"grid must be >= 2, got {grid}")
    outer = [
        r_a * complex(b * math.cos(t), a * math.sin(t))
        for t in (2.0 * math.pi * i / grid for i in range(grid))
    ]
    inner = [
        r_d * complex(f * math.cos(t), e * math.sin(t))
        for t in (2.0 * math.pi * j / grid for j in range(grid))
    ]
    return [[o * p for p in inner] for o in outer]


def surface_grid_json_obj(grid: Sequence[Sequence[complex]]) -> list:
    """JSON form of a sample grid: nested [re, im] pairs."""
    return [[[v.real, v.imag] for v in row] for row in grid]
