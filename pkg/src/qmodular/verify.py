"""Batch verification suites behind the command-line ``verify`` umbrella.

Each suite function recomputes its objects from scratch and returns
:class:`~qmodular.forms.CheckReport` records; an empty violation list
means the property battery passed.  Default bounds match the acceptance
targets of the project; the CLI can override them.

The geometry suite carries its own arc-length quadrature so the AGM
perimeter evaluation is checked against a genuinely different
algorithm without external dependencies.
"""

from __future__ import annotations

import inspect
import math
import random
from fractions import Fraction
from typing import Callable

from . import forms, geometry, lseries, theta_partitions
from .forms import CheckReport
from .lseries import _adaptive_simpson
from .qseries import mul

__all__ = ["SUITES", "run_suite", "run_all", "suite_names"]


def _report(check: str, params: dict, violations: list[str]) -> CheckReport:
    return CheckReport(check, tuple(params.items()), tuple(violations))


# -- tau suite -----------------------------------------------------------------


def verify_tau(n_max: int = 1000) -> list[CheckReport]:
    reports = []
    e12 = forms.eisenstein_e12(2)
    bad = []
    if e12.coeff(0) != Fraction(691, 65520):
        bad.append(f"constant term is {e12.coeff(0)}, want 691/65520")
    reports.append(_report("e12-constant-term", {}, bad))

    e12 = forms.eisenstein_e12(n_max + 1)
    bad = []
    for n in range(1, n_max + 1):
        if (forms.tau(n) - e12.coeff(n)) % 691 != 0:
            bad.append(f"tau vs sigma11 mod 691 differ at n={n}")
    reports.append(_report("e12-delta-mod-691", {"n_max": n_max}, bad))

    reports.append(forms.tau_properties_check(n_max))
    return reports


# -- hecke suite ----------------------------------------------------------------


def verify_hecke(
    order: int = 200, eigen_n_max: int = 20, compose_bound: int = 48
) -> list[CheckReport]:
    reports = []
    bad = []
    for n in range(1, 51):
        if len(forms.hecke_coset_reps(n)) != forms.sigma(1, n):
            bad.append(f"coset count != sigma_1 at n={n}")
    reports.append(_report("hecke-coset-count", {"n_max": 50}, bad))

    meta = forms.FormMeta(weight=12, level=1)
    disc = forms.delta(order)
    bad = []
    eigen = forms.is_eigenform(disc, meta, eigen_n_max, order)
    if not eigen.ok:
        bad.append(f"eigenform property fails at {eigen.first_failure}")
    else:
        for n, lam in eigen.eigenvalues:
            if lam != forms.tau(n):
                bad.append(f"eigenvalue at n={n} is {lam}, want tau(n)")
    reports.append(
        _report("hecke-eigenform", {"order": order, "n_max": eigen_n_max}, bad)
    )

    bad = []
    for m in range(1, compose_bound + 1):
        for n in range(1, compose_bound // m + 1):
            target = order // (m * n)
            rep = forms.hecke_compose_check(meta, m, n, disc, target)
            if not rep.ok:
                bad.append(f"composition law fails at (m,n)=({m},{n}): {rep.first_mismatch}")
    reports.append(
        _report(
            "hecke-composition",
            {"order": order, "mn_bound": compose_bound},
            bad,
        )
    )
    return reports


# -- rank suite -----------------------------------------------------------------


def verify_rank(
    n_max: int = 60,
    gen_n_max: int = 40,
    equid_bound: int = 49,
    congruence_bound: int = 500,
    mock_order: int = 50,
) -> list[CheckReport]:
    reports = []
    table = theta_partitions.rank_table(n_max)
    bad = []
    for n in range(1, n_max + 1):
        total = sum(c for (nn, _), c in table.entries.items() if nn == n)
        if total != theta_partitions.partition_count(n):
            bad.append(f"sum over ranks != p(n) at n={n}")
    for (n, m), c in table.entries.items():
        if table.count(n, -m) != c:
            bad.append(f"symmetry fails at (n,m)=({n},{m})")
        if n >= 2 and abs(m) >= n:
            bad.append(f"support violation at (n,m)=({n},{m})")
    reports.append(_report("rank-table-invariants", {"n_max": n_max}, bad))

    bad = []
    polys = theta_partitions.rank_generating(gen_n_max + 1)
    for n in range(1, gen_n_max + 1):
        if polys[n] != table.polynomial(n):
            bad.append(f"generating coefficient differs from table at n={n}")
    if polys[0] != theta_partitions.OmegaPoly.const(1):
        bad.append("constant coefficient is not 1")
    reports.append(_report("rank-generating-vs-table", {"n_max": gen_n_max}, bad))

    bad = []
    n = 4
    while n <= equid_bound:
        counts = table.counts_mod(n, 5)
        p_n = theta_partitions.partition_count(n)
        if p_n % 5 != 0 or any(c != p_n // 5 for c in counts):
            bad.append(f"rank classes mod 5 not equal at n={n}: {counts}")
        n += 5
    reports.append(_report("rank-equidistribution-mod5", {"n_max": equid_bound}, bad))

    bad = []
    for mod, res in ((5, 4), (7, 5), (11, 6)):
        n = res
        while n <= congruence_bound:
            if theta_partitions.partition_count(n) % mod != 0:
                bad.append(f"p({n}) not divisible by {mod}")
            n += mod
    reports.append(
        _report("partition-congruences", {"n_max": congruence_bound}, bad)
    )

    bad = []
    polys = theta_partitions.rank_generating(mock_order + 1)
    at_minus_one = theta_partitions.specialize_omega(polys, (1, 2))
    mock = theta_partitions.mock_theta_f(mock_order + 1)
    for n in range(mock_order + 1):
        if at_minus_one[n] != mock.coeff(n):
            bad.append(f"w=-1 specialization differs from direct series at n={n}")
    at_one = theta_partitions.specialize_omega(polys, (0, 1))
    for n in range(mock_order + 1):
        if at_one[n] != theta_partitions.partition_count(n):
            bad.append(f"w=1 specialization differs from p(n) at n={n}")
    reports.append(_report("mock-theta-specialization", {"order": mock_order}, bad))
    return reports


# -- theta suite ------------------------------------------------------------------


def _lattice_count(k: int, m: int) -> int:
    """Brute-force number of integer k-vectors with squared norm m."""
    if k == 0:
        return 1 if m == 0 else 0
    total = 0
    r = math.isqrt(m)
    for v in range(-r, r + 1):
        total += _lattice_count(k - 1, m - v * v)
    return total


def verify_theta(count_k_max: int = 4, count_m_max: int = 100, order: int = 100) -> list[CheckReport]:
    reports = []
    bad = []
    for k in range(1, count_k_max + 1):
        series = theta_partitions.theta_diagonal(k, count_m_max + 1)
        for m in range(count_m_max + 1):
            if series.coeff(m) != _lattice_count(k, m):
                bad.append(f"lattice count mismatch at k={k}, m={m}")
    reports.append(
        _report(
            "theta-lattice-counts",
            {"k_max": count_k_max, "m_max": count_m_max},
            bad,
        )
    )

    bad = []
    for k in range(1, 4):
        for j in range(1, 4 - k + 1):
            lhs = theta_partitions.theta_diagonal(k + j, order)
            rhs = mul(
                theta_partitions.theta_diagonal(k, order),
                theta_partitions.theta_diagonal(j, order),
            )
            if lhs != rhs:
                bad.append(f"theta({k})*theta({j}) != theta({k + j})")
    reports.append(_report("theta-multiplicativity", {"order": order}, bad))
    return reports


# -- lfunc suite -------------------------------------------------------------------


def verify_lfunc(
    smooth_bound: int = 200,
    fe_rel_tol: float = 1e-8,
    dirichlet_n_max: int = 1000,
    zero_count: int = 10,
) -> list[CheckReport]:
    reports = []

    bad = []
    disc = forms.delta(smooth_bound)
    mell = lseries.mellin_coeffs(disc, normalized_eigenform=True)
    ep = lseries.euler_product_coeffs(
        {p: forms.tau(p) for p in forms.primes_up_to(13)}, 12, 13, smooth_bound
    )
    smooth_seen = 0
    for n in range(1, smooth_bound + 1):
        if ep.known(n):
            smooth_seen += 1
            if ep.coeff(n) != mell.coeff(n):
                bad.append(f"euler product coefficient differs at n={n}")
    if smooth_seen < 60:
        bad.append(f"only {smooth_seen} 13-smooth indices found; expected more")
    reports.append(_report("euler-product-vs-expansion", {"n_max": smooth_bound}, bad))

    bad = []
    lam: dict[float, lseries.CompletedLValue] = {}
    for s in (3.0, 4.0, 5.0, 7.0, 8.0, 9.0):
        lam[s] = lseries.completed_lambda_integral(s)
    for s in (4.0, 5.0, 8.0, 9.0):
        a, b = lam[s], lam[12.0 - s]
        rel = abs(a.value - b.value) / abs(a.value)
        if rel >= fe_rel_tol:
            bad.append(f"functional equation off by {rel:.3g} at s={s}")
    reports.append(_report("lambda-functional-equation", {"tol_exp": -8}, bad))

    bad = []
    series = lseries.mellin_coeffs(
        forms.delta(dirichlet_n_max), normalized_eigenform=True
    )
    for s in (8.0, 9.0, 10.0):
        integral = lseries.completed_lambda_integral(s)
        partial = lseries.dirichlet_eval(series, s)
        gamma_factor = (2.0 * math.pi) ** (-s) * math.gamma(s)
        direct = gamma_factor * partial.value
        allowed = gamma_factor * partial.tail_bound + integral.quadrature_error
        diff = abs(direct - integral.value)
        if diff > allowed:
            bad.append(
                f"pipelines disagree at s={s}: diff {diff:.3g} vs bars {allowed:.3g}"
            )
    reports.append(
        _report("lambda-two-pipelines", {"n_max": dirichlet_n_max}, bad)
    )

    bad = []
    zeros = lseries.zeta_zero_spacings(zero_count)
    if len(zeros.gammas) != zero_count:
        bad.append(f"found {len(zeros.gammas)} ordinates, want {zero_count}")
    if any(s <= 0 for s in zeros.spacings):
        bad.append("nonpositive spacing")
    if abs(zeros.gammas[0] - 14.1347251417) > 1e-4:
        bad.append(f"first ordinate {zeros.gammas[0]:.6f} off the reference value")
    if any(r > 1e-4 for r in zeros.residuals):
        bad.append("refinement residual above tolerance")
    reports.append(_report("zeta-zero-spacings", {"count": zero_count}, bad))
    return reports


# -- geometry suite ----------------------------------------------------------------


def _arc_length_quadrature(spec: geometry.EllipseSpec) -> float:
    """Perimeter by adaptive Simpson on the speed |dz/dtheta|."""
    a, b = spec.semi_real, spec.semi_imag

    def speed(t: float) -> float:
        return math.hypot(a * math.sin(t), b * math.cos(t))

    budget = [200_000]
    scale = 2.0 * math.pi * max(a, b)
    value, _ = _adaptive_simpson(speed, 0.0, 2.0 * math.pi, 1e-12 * scale, budget)
    return value


def verify_geometry(
    sample_sets: int = 100, agm_pairs: int = 20, seed: int = 20240911
) -> list[CheckReport]:
    rng = random.Random(seed)
    reports = []

    bad = []
    params = [(1.0, 1.0, 1.0), (1.0, 1.0, 2.0), (0.5, 2.0, 0.25), (3.0, 0.7, 1.3)]
    params += [
        (rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0))
        for _ in range(16)
    ]
    for r_d, e, f in params:
        term = geometry.torus_term(1, 1.0, r_d, e, f, 64)
        err = abs(
            geometry.ellipse_perimeter(term.ellipse) - 2.0 * math.pi * r_d
        )
        if err >= 1e-9 * r_d:
            bad.append(f"perimeter not preserved for (r_d,e,f)=({r_d},{e},{f})")
    reports.append(_report("perimeter-preservation", {"cases": len(params)}, bad))

    bad = []
    for c in (0.5, 1.0, 2.0):
        term = geometry.torus_term(2, 1.5, 1.0, c, c, 48)
        if any(abs(s) != 0.0 for s in term.shadow_samples):
            bad.append(f"shadow not exactly zero for e=f={c}")
        val = geometry.weak_maass_series([(1.5, 1.0, c, c)], complex(0.3, 0.7), 1)
        if val.shadow != 0 or val.full != val.hol:
            bad.append(f"series shadow not exactly zero for e=f={c}")
    reports.append(_report("shadow-vanishing", {}, bad))

    bad = []
    for i in range(sample_sets):
        n_terms = rng.randint(1, 8)
        terms = [
            (
                rng.uniform(0.1, 2.0),
                rng.uniform(0.3, 2.0),
                rng.uniform(0.3, 2.5),
                rng.uniform(0.3, 2.5),
            )
            for _ in range(n_terms)
        ]
        z = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.2, 1.5))
        val = geometry.weak_maass_series(terms, z, n_terms)
        scale = max(abs(val.full), abs(val.hol) + abs(val.shadow), 1e-30)
        if abs(val.full - (val.hol + val.shadow)) > 1e-12 * scale:
            bad.append(f"decomposition identity fails on sample {i}")
    reports.append(_report("decomposition-identity", {"sets": sample_sets}, bad))

    bad = []
    for _ in range(agm_pairs):
        e, f = rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0)
        spec = geometry.EllipseSpec(rng.uniform(0.2, 2.0), e, f)
        agm = geometry.ellipse_perimeter(spec)
        quad = _arc_length_quadrature(spec)
        if abs(agm - quad) >= 1e-9 * agm:
            bad.append(f"AGM vs quadrature differ for {spec}")
    reports.append(_report("agm-vs-quadrature", {"pairs": agm_pairs}, bad))
    return reports


SUITES: dict[str, Callable[..., list[CheckReport]]] = {
    "tau": verify_tau,
    "hecke": verify_hecke,
    "rank": verify_rank,
    "theta": verify_theta,
    "lfunc": verify_lfunc,
    "geometry": verify_geometry,
}


def suite_names() -> list[str]:
    return list(SUITES) + ["all"]


def run_suite(name: str, **overrides) -> list[CheckReport]:
    """Run one named suite with optional parameter overrides."""
    fn = SUITES[name]
    accepted = inspect.signature(fn).parameters
    kwargs = {k: v for k, v in overrides.items() if k in accepted and v is not None}
    return fn(**kwargs)


def run_all(threads: int = 1, **overrides) -> list[tuple[str, list[CheckReport]]]:
    """Run every suite, optionally in a thread pool, in fixed order."""
    names = list(SUITES)
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [(n, pool.submit(run_suite, n, **overrides)) for n in names]
            return [(n, fut.result()) for n, fut in futures]
    return [(n, run_suite(n, **overrides)) for n in names]
