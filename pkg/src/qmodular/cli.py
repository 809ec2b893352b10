"""Command-line front end: expand series, run verification, emit tables.

Output is byte-deterministic for fixed arguments: JSON is written with
sorted keys and compact separators, floats are rounded to 12 significant
digits before serialization, and all text is UTF-8 with LF endings.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import forms, geometry, lseries, theta_partitions, verify
from .qseries import QSeries, euler_product, to_json_obj

__all__ = ["main", "build_parser", "CommandConfig"]


@dataclass(frozen=True)
class CommandConfig:
    """Validated run parameters shared by every subcommand."""

    subcommand: str
    order: Optional[int] = None
    n_max: Optional[int] = None
    count: Optional[int] = None
    fmt: str = "json"
    out: Optional[str] = None
    tol: Optional[float] = None
    threads: int = 1

    def __post_init__(self) -> None:
        for name in ("order", "n_max", "count"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ValueError(f"{name} must be positive, got {v}")
        if self.fmt not in ("json", "tsv", "csv"):
            raise ValueError(f"unknown output format {self.fmt!r}")
        if self.tol is not None and self.tol <= 0:
            raise ValueError(f"tolerance must be positive, got {self.tol}")
        if self.threads < 1:
            raise ValueError(f"threads must be >= 1, got {self.threads}")


def _config_from_args(args) -> CommandConfig:
    return CommandConfig(
        subcommand=args.command,
        order=getattr(args, "order", None),
        n_max=getattr(args, "n_max", None),
        count=getattr(args, "count", None),
        fmt=getattr(args, "format", "json"),
        out=getattr(args, "out", None),
        tol=getattr(args, "tol", None),
        threads=getattr(args, "threads", 1),
    )


def _fmt_float(x: float) -> float:
    """Round to 12 significant digits so reruns are byte-identical."""
    return float(format(x, ".12g"))


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _series_tsv(f: QSeries) -> str:
    lines = ["exponent\tcoefficient"]
    for j, c in enumerate(f.coeffs):
        lines.append(f"{f.offset + j}\t{c}")
    return "\n".join(lines) + "\n"


# -- expand ---------------------------------------------------------------------


def _expand_object(name: str, order: int) -> QSeries:
    if name == "eta":
        return forms.eta(order)
    if name == "delta":
        return forms.delta(order)
    if name == "e12":
        return forms.eisenstein_e12(order)
    if name == "mock-f":
        return theta_partitions.mock_theta_f(order)
    if name.startswith("theta-"):
        return theta_partitions.theta_diagonal(int(name.split("-", 1)[1]), order)
    if name.startswith("euler-"):
        return euler_product(int(name.split("-", 1)[1]), order)
    raise KeyError(name)


def _cmd_expand(args) -> int:
    cfg = _config_from_args(args)
    try:
        series = _expand_object(args.object, cfg.order)
    except (KeyError, ValueError) as exc:
        print(f"unknown or malformed object: {exc}", file=sys.stderr)
        return 2
    if cfg.fmt == "json":
        _emit(_dump_json(to_json_obj(series)), cfg.out)
    else:
        _emit(_series_tsv(series), cfg.out)
    return 0


# -- verify ---------------------------------------------------------------------


def _cmd_verify(args) -> int:
    cfg = _config_from_args(args)
    if args.inject_tau_fault:
        forms.corrupt_tau_cache_for_testing()
    overrides = {
        "n_max": cfg.n_max,
        "order": cfg.order,
        "zero_count": cfg.count,
        "fe_rel_tol": cfg.tol,
    }
    if args.suite == "all":
        pairs = verify.run_all(threads=cfg.threads, **overrides)
    else:
        pairs = [(args.suite, verify.run_suite(args.suite, **overrides))]
    checks = []
    ok = True
    for suite_name, reports in pairs:
        for rep in reports:
            obj = rep.to_json_obj()
            obj["suite"] = suite_name
            obj["violations"] = obj["violations"][:20]
            ok = ok and rep.ok
            checks.append(obj)
    payload = {"suite": args.suite, "checks": checks, "ok": ok}
    _emit(_dump_json(payload), cfg.out)
    return 0 if ok else 1


# -- tables ----------------------------------------------------------------------


def _table_rank(args) -> tuple[list[dict], list[str], list[list]]:
    table = theta_partitions.rank_table(args.n_max)
    rows = table.rows()
    return (
        [{"n": n, "m": m, "count": c} for n, m, c in rows],
        ["n", "m", "count"],
        [[n, m, c] for n, m, c in rows],
    )


def _table_zeros(args) -> tuple[list[dict], list[str], list[list]]:
    zeros = lseries.zeta_zero_spacings(args.count)
    rows = zeros.rows()
    return (
        [
            {
                "n": n,
                "gamma": _fmt_float(g),
                "spacing": None if sp is None else _fmt_float(sp),
            }
            for n, g, sp in rows
        ],
        ["n", "gamma", "spacing"],
        [
            [n, format(g, ".12g"), "" if sp is None else format(sp, ".12g")]
            for n, g, sp in rows
        ],
    )


def _table_spacings(args) -> tuple[list[dict], list[str], list[list]]:
    zeros = lseries.zeta_zero_spacings(args.count)
    sp = zeros.spacings
    return (
        [{"n": i + 1, "spacing": _fmt_float(s)} for i, s in enumerate(sp)],
        ["n", "spacing"],
        [[i + 1, format(s, ".12g")] for i, s in enumerate(sp)],
    )


def _table_lvalues(args) -> tuple[list[dict], list[str], list[list]]:
    svals = [float(tok) for tok in args.s_values.split(",") if tok.strip()]
    out = []
    for s in svals:
        lam = lseries.completed_lambda_integral(s)
        out.append(
            {
                "s": _fmt_float(lam.s),
                "value": _fmt_float(lam.value),
                "err": _fmt_float(lam.quadrature_error),
            }
        )
    return (
        out,
        ["s", "value", "err"],
        [
            [format(o["s"], ".12g"), format(o["value"], ".12g"), format(o["err"], ".12g")]
            for o in out
        ],
    )


def _table_shadow(args) -> tuple[list[dict], list[str], list[list]]:
    term = geometry.torus_term(args.n, args.r_a, args.r_d, args.e, args.f, args.grid)
    out = []
    for j, sample in enumerate(term.shadow_samples):
        theta = 2.0 * math.pi * j / args.grid
        out.append(
            {
                "theta": _fmt_float(theta),
                "re": _fmt_float(sample.real),
                "im": _fmt_float(sample.imag),
            }
        )
    return (
        out,
        ["theta", "re", "im"],
        [
            [format(o["theta"], ".12g"), format(o["re"], ".12g"), format(o["im"], ".12g")]
            for o in out
        ],
    )


_TABLES = {
    "rank": _table_rank,
    "zeros": _table_zeros,
    "spacings": _table_spacings,
    "lvalues": _table_lvalues,
    "shadow": _table_shadow,
}


def _cmd_tables(args) -> int:
    cfg = _config_from_args(args)
    try:
        json_rows, header, text_rows = _TABLES[args.table](args)
    except (ValueError, lseries.BracketingError) as exc:
        print(f"table generation failed: {exc}", file=sys.stderr)
        return 1
    if cfg.fmt == "json":
        _emit(_dump_json(json_rows), cfg.out)
    else:
        sep = "," if cfg.fmt == "csv" else "\t"
        lines = [sep.join(header)]
        lines += [sep.join(str(v) for v in row) for row in text_rows]
        _emit("\n".join(lines) + "\n", cfg.out)
    return 0


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmodular",
        description="Exact q-expansions, verification batteries, and numeric tables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_expand = sub.add_parser("expand", help="print a named q-expansion")
    p_expand.add_argument(
        "object",
        help="eta | delta | e12 | mock-f | theta-K | euler-E (K, E integers)",
    )
    p_expand.add_argument("--order", type=int, default=10)
    p_expand.add_argument("--format", choices=["json", "tsv"], default="json")
    p_expand.add_argument("--out", default=None)
    p_expand.set_defaults(fn=_cmd_expand)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=verify.suite_names())
    p_verify.add_argument("--n-max", dest="n_max", type=int, default=None)
    p_verify.add_argument("--order", type=int, default=None)
    p_verify.add_argument("--count", type=int, default=None)
    p_verify.add_argument("--tol", type=float, default=None)
    p_verify.add_argument("--threads", type=int, default=1)
    p_verify.add_argument("--format", choices=["json"], default="json")
    p_verify.add_argument("--out", default=None)
    p_verify.add_argument(
        "--inject-tau-fault",
        action="store_true",
        help=argparse.SUPPRESS,
    )
    p_verify.set_defaults(fn=_cmd_verify)

    p_tables = sub.add_parser("tables", help="emit a data table")
    p_tables.add_argument("table", choices=sorted(_TABLES))
    p_tables.add_argument("--n-max", dest="n_max", type=int, default=10)
    p_tables.add_argument("--count", type=int, default=10)
    p_tables.add_argument("--s-values", dest="s_values", default="4,5,8,9")
    p_tables.add_argument("--n", type=int, default=1)
    p_tables.add_argument("--r-a", dest="r_a", type=float, default=1.0)
    p_tables.add_argument("--r-d", dest="r_d", type=float, default=1.0)
    p_tables.add_argument("--e", type=float, default=1.0)
    p_tables.add_argument("--f", type=float, default=1.0)
    p_tables.add_argument("--grid", type=int, default=16)
    p_tables.add_argument("--format", choices=["json", "tsv", "csv"], default="tsv")
    p_tables.add_argument("--out", default=None)
    p_tables.set_defaults(fn=_cmd_tables)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ValueError as exc:
        print(f"invalid arguments: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
