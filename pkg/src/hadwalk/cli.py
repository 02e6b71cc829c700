"""Command-line front end.

Subcommands:
  prob    -- absorption probabilities for one start site, by any method
  table   -- the reference probability table for n up to a bound
  gf      -- the path-count generating function f_j^(n)(z)
  verify  -- run a named suite of identity checks
  roots   -- certified pole classification for one row

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numeric
precision failure.  Every failure path writes one line of the form
"error: <category>: <reason>" to stderr.

Output is deterministic: cells are ordered by n then j, roots are
sorted, JSON is compact with sorted keys (parse + re-serialize is
byte-identical), and decimal expansions are correctly rounded to 30
significant digits.  Cells are computed sequentially; nothing in the
output depends on evaluation order.
"""

from __future__ import annotations

import argparse
import csv
import decimal
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import NoReturn, Sequence

import mpmath

from .errors import (
    ConsistencyError,
    PrecisionError,
    PrecisionEscalation,
    StepBudgetExceeded,
)
from .exactq import Rational
from .residue_engine import (
    MAX_BITS,
    START_BITS,
    build_integrand,
    classify_roots,
    integrate_exact,
)
from .simulator import SimulationReport, simulate
from .verification import SUITES, certified_roots, run_suite
from .walk_core import (
    AbsorptionResult,
    absorption,
    absorption_denominator,
    gf,
    gf_denominator,
    row_common_denominator,
    row_table,
)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_PRECISION = 3

_PROB_METHODS = ("closed", "residue", "numeric", "simulate")
_DEFAULT_TAIL = Fraction(1, 10 ** 10)

_DIV_CTX = decimal.Context(prec=30, rounding=decimal.ROUND_HALF_EVEN)
_PAD_CTX = decimal.Context(prec=40)


def decimal_expansion(x: Rational) -> str:
    """Correctly rounded 30-significant-digit decimal string for a
    rational; exact short expansions are zero-padded so the width is
    uniform across a table."""
    if x == 0:
        return "0"
    d = _DIV_CTX.divide(decimal.Decimal(x.numerator), decimal.Decimal(x.denominator))
    target = decimal.Decimal((0, (1,), d.adjusted() - 29))
    return str(d.quantize(target, context=_PAD_CTX))


def canonical_json(obj) -> str:
    """Compact, key-sorted serialization; loads() + canonical_json()
    reproduces the bytes exactly (no floats anywhere in the tree)."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# ------------------------------------------------------------ configuration


@dataclass(frozen=True)
class CommandConfig:
    """Validated invocation: every field satisfies the preconditions of
    the target operation before dispatch."""

    subcommand: str
    n: int | None = None
    j: int | None = None
    n_max: int = 9
    method: str = "residue"
    format: str = "frac"
    precision_bits: int = START_BITS
    tail_eps: Rational = _DEFAULT_TAIL
    common_denominator: bool = False
    suite: str = "all"

    def __post_init__(self) -> None:
        if self.subcommand in ("prob", "gf", "roots"):
            if self.n is None or self.n < 2:
                raise ValueError(f"need a barrier position --n >= 2, got {self.n}")
        if self.subcommand in ("table", "verify") and self.n_max < 2:
            raise ValueError(f"need --n-max >= 2, got {self.n_max}")
        if self.subcommand == "prob":
            lo, hi = self._j_range()
            if self.j is None or not lo <= self.j <= hi:
                raise ValueError(
                    f"start site j={self.j} outside {lo}..{hi} for n={self.n} "
                    f"(method {self.method})"
                )
        if self.subcommand == "gf":
            if self.j is None or not 1 <= self.j <= self.n:
                raise ValueError(
                    f"start site j={self.j} outside 1..{self.n} for n={self.n}"
                )
        if not 16 <= self.precision_bits <= MAX_BITS:
            raise ValueError(
                f"--precision-bits must lie in 16..{MAX_BITS}, "
                f"got {self.precision_bits}"
            )
        if not 0 < self.tail_eps < 1:
            raise ValueError(f"--tail-eps must lie in (0, 1), got {self.tail_eps}")

    def _j_range(self) -> tuple[int, int]:
        # The evaluated formula covers the j = 0 and j = n conventions;
        # the closed form starts at 1; the contour and the simulator
        # need an interior start.
        assert self.n is not None
        if self.method == "residue":
            return 0, self.n
        if self.method == "closed":
            return 1, self.n
        return 1, self.n - 1


class _SingleLineParser(argparse.ArgumentParser):
    """argparse with one-line machine-parsable usage errors."""

    def error(self, message: str) -> NoReturn:
        sys.stderr.write(f"error: usage: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad fraction {text!r}: {exc}")


def build_parser() -> argparse.ArgumentParser:
    top = _SingleLineParser(
        prog="hadwalk",
        description="Exact absorption probabilities of the two-barrier "
        "Hadamard walk, by four independent methods.",
    )
    sub = top.add_subparsers(dest="subcommand", required=True)

    prob = sub.add_parser(
        "prob", help="absorption probabilities for one start site"
    )
    prob.add_argument("--n", type=int, required=True,
                      help="right barrier position (n >= 2)")
    prob.add_argument("--j", type=int, required=True, help="start site")
    prob.add_argument("--method", choices=_PROB_METHODS + ("all",),
                      default="residue",
                      help="computation pipeline (default: residue)")
    prob.add_argument("--format",
                      choices=("frac", "dec", "text", "csv", "json"),
                      default="frac")
    prob.add_argument("--precision-bits", type=int, default=START_BITS,
                      help="starting precision for the numeric contour method")
    prob.add_argument("--tail-eps", type=_fraction_arg, default=_DEFAULT_TAIL,
                      metavar="EPS",
                      help="unabsorbed-tail target for simulate "
                      "(fraction or decimal string)")

    table = sub.add_parser("table", help="probability table for n = 2..n_max")
    table.add_argument("--n-max", type=int, default=9)
    table.add_argument("--common-denominator", action="store_true",
                       help="present each row over its common denominator "
                       "(unreduced, reference-table style)")
    table.add_argument("--format",
                       choices=("frac", "dec", "text", "csv", "json"),
                       default="frac")

    gfp = sub.add_parser("gf", help="path-count generating function f_j^(n)")
    gfp.add_argument("--n", type=int, required=True)
    gfp.add_argument("--j", type=int, required=True)
    gfp.add_argument("--format", choices=("text", "json"), default="text")

    verify = sub.add_parser("verify", help="run an identity-check suite")
    verify.add_argument("--n-max", type=int, default=9)
    verify.add_argument("--suite", choices=tuple(sorted(SUITES)), default="all")
    verify.add_argument("--format", choices=("text", "json"), default="text")
    verify.add_argument("--tail-eps", type=_fraction_arg, default=_DEFAULT_TAIL,
                        metavar="EPS")

    roots = sub.add_parser(
        "roots", help="certified pole classification for one row"
    )
    roots.add_argument("--n", type=int, required=True)
    roots.add_argument("--precision-bits", type=int, default=START_BITS)
    roots.add_argument("--format", choices=("text", "json"), default="text")
    return top


def parse_argv(argv: Sequence[str]) -> CommandConfig:
    ns = build_parser().parse_args(argv)
    return CommandConfig(
        subcommand=ns.subcommand,
        n=getattr(ns, "n", None),
        j=getattr(ns, "j", None),
        n_max=getattr(ns, "n_max", 9),
        method=getattr(ns, "method", "residue"),
        format=getattr(ns, "format", "frac"),
        precision_bits=getattr(ns, "precision_bits", START_BITS),
        tail_eps=getattr(ns, "tail_eps", _DEFAULT_TAIL),
        common_denominator=getattr(ns, "common_denominator", False),
        suite=getattr(ns, "suite", "all"),
    )


# ----------------------------------------------------------------- renderers


def _frac(x: Rational) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _pair(x: Rational) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def _cell_json(n: int, j: int, p: Rational, q: Rational, method: str) -> dict:
    return {
        "n": n,
        "j": j,
        "p": _pair(p),
        "q": _pair(q),
        "decimal": decimal_expansion(p),
        "method": method,
    }


def _csv_table(rows: list[tuple[int, int, Rational, Rational, str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "j", "p_num", "p_den", "q_num", "q_den", "method"])
    for n, j, p, q, method in rows:
        writer.writerow(
            [n, j, p.numerator, p.denominator, q.numerator, q.denominator, method]
        )
    return buf.getvalue()


class _Unreduced:
    """Fraction stand-in that keeps a deliberately unreduced num/den
    pair; renderers only touch these two attributes."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, num: int, den: int):
        self.numerator = num
        self.denominator = den

    def __eq__(self, other: object) -> bool:
        return isinstance(other, int) and self.numerator == other * self.denominator


def _unreduced(n: int) -> list[tuple[_Unreduced, _Unreduced]]:
    """Row n as (p, q) pairs over the shared row denominator."""
    shared, nums = row_common_denominator(n)
    return [(_Unreduced(m, shared), _Unreduced(shared - m, shared)) for m in nums]


# ------------------------------------------------------------------ prob


def _one_method(cfg: CommandConfig, method: str):
    """(AbsorptionResult, SimulationReport | None) for one pipeline."""
    n, j = cfg.n, cfg.j
    if method in ("closed", "residue"):
        return absorption(j, n, method), None
    if method == "numeric":
        p = integrate_exact(build_integrand(j, n), start_bits=cfg.precision_bits)
        return AbsorptionResult(p_left=p, p_right=1 - p, method="numeric"), None
    report = simulate(j, n, cfg.tail_eps)
    result = AbsorptionResult(
        p_left=report.p_left_lower,
        p_right=report.p_right_lower,
        method="simulate",
    )
    return result, report


def _prob_line(res: AbsorptionResult, rep: SimulationReport | None,
               fmt: str) -> str:
    if rep is not None:
        if fmt == "frac":
            return f"{_frac(res.p_left)} {_frac(res.p_right)} {_frac(rep.residual)}"
        return (f"≈ {decimal_expansion(res.p_left)} "
                f"≈ {decimal_expansion(res.p_right)} "
                f"≈ {decimal_expansion(rep.residual)}")
    if fmt == "frac":
        return _frac(res.p_left)
    return f"≈ {decimal_expansion(res.p_left)}"


def _prob_text(cfg: CommandConfig, res: AbsorptionResult,
               rep: SimulationReport | None) -> list[str]:
    lines = [f"n = {cfg.n}  j = {cfg.j}  method = {res.method}"]
    if rep is None:
        lines.append(f"p_left  = {_frac(res.p_left)}"
                     f"  ≈ {decimal_expansion(res.p_left)}")
        lines.append(f"p_right = {_frac(res.p_right)}"
                     f"  ≈ {decimal_expansion(res.p_right)}")
    else:
        lines[0] += f"  steps = {rep.steps_run}"
        lines.append(f"p_left  >= {_frac(res.p_left)}"
                     f"  ≈ {decimal_expansion(res.p_left)}")
        lines.append(f"p_right >= {_frac(res.p_right)}"
                     f"  ≈ {decimal_expansion(res.p_right)}")
        lines.append(f"residual <= {_frac(rep.residual)}"
                     f"  ≈ {decimal_expansion(rep.residual)}")
    return lines


def _run_prob(cfg: CommandConfig) -> int:
    methods = _PROB_METHODS if cfg.method == "all" else (cfg.method,)
    computed = [(m, *_one_method(cfg, m)) for m in methods]

    if cfg.format in ("frac", "dec"):
        for m, res, rep in computed:
            prefix = f"{m} " if cfg.method == "all" else ""
            print(prefix + _prob_line(res, rep, cfg.format))
    elif cfg.format == "text":
        blocks = ["\n".join(_prob_text(cfg, res, rep)) for _, res, rep in computed]
        print("\n\n".join(blocks))
    elif cfg.format == "csv":
        print(_csv_table(
            [(cfg.n, cfg.j, res.p_left, res.p_right, m)
             for m, res, rep in computed]
        ), end="")
    else:
        cells = []
        for m, res, rep in computed:
            cell = _cell_json(cfg.n, cfg.j, res.p_left, res.p_right, m)
            if rep is not None:
                cell["residual"] = _pair(rep.residual)
                cell["steps"] = rep.steps_run
            cells.append(cell)
        print(canonical_json(cells if cfg.method == "all" else cells[0]))

    if cfg.method == "all":
        exact = {res.p_left for m, res, _ in computed
                 if m in ("closed", "residue", "numeric")}
        if len(exact) != 1:
            sys.stderr.write(
                f"error: verification: exact methods disagree at "
                f"j={cfg.j}, n={cfg.n}\n"
            )
            return EXIT_VERIFICATION
        p = exact.pop()
        _, sim_res, sim_rep = next(c for c in computed if c[0] == "simulate")
        if not sim_res.p_left <= p <= sim_res.p_left + sim_rep.residual:
            sys.stderr.write(
                f"error: verification: simulate interval misses the exact "
                f"value at j={cfg.j}, n={cfg.n}\n"
            )
            return EXIT_VERIFICATION
    return EXIT_OK


# ----------------------------------------------------------------- table


def _table_rows(cfg: CommandConfig) -> list[tuple[int, int, Rational, Rational]]:
    out = []
    for n in range(2, cfg.n_max + 1):
        if cfg.common_denominator:
            pairs = _unreduced(n)
        else:
            row = row_table(n)
            pairs = [(p, 1 - p) for p in row]
        for j, (p, q) in enumerate(pairs, start=1):
            out.append((n, j, p, q))
    return out


def _run_table(cfg: CommandConfig) -> int:
    cells = _table_rows(cfg)
    if cfg.format in ("frac", "text", "dec"):
        width = len(f"n={cfg.n_max}")
        for n in range(2, cfg.n_max + 1):
            row = [c for c in cells if c[0] == n]
            if cfg.format == "dec":
                shown = ["≈" + decimal_expansion(p) for _, _, p, _ in row]
            else:
                shown = [_frac(p) for _, _, p, _ in row]
            print(f"n={n}".ljust(width) + "  " + "  ".join(shown))
    elif cfg.format == "csv":
        print(_csv_table([(n, j, p, q, "residue") for n, j, p, q in cells]),
              end="")
    else:
        print(canonical_json(
            [_cell_json(n, j, p, q, "residue") for n, j, p, q in cells]
        ))
    return EXIT_OK


# -------------------------------------------------------------------- gf


def _run_gf(cfg: CommandConfig) -> int:
    f = gf(cfg.j, cfg.n)
    if cfg.format == "text":
        print(f"f_{cfg.j}^({cfg.n})(z) = {f}")
    else:
        print(canonical_json({
            "n": cfg.n,
            "j": cfg.j,
            "var": "z",
            "num": [str(c) for c in f.num.coeffs],
            "den": [str(c) for c in f.den.coeffs],
        }))
    return EXIT_OK


# ------------------------------------------------------------------ verify


def _run_verify(cfg: CommandConfig) -> int:
    results = run_suite(cfg.suite, cfg.n_max, cfg.tail_eps)
    failures = [r for r in results if not r.passed]
    if cfg.format == "text":
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}")
        print(f"{len(results) - len(failures)}/{len(results)} checks passed "
              f"(suite {cfg.suite}, n <= {cfg.n_max})")
    else:
        print(canonical_json({
            "suite": cfg.suite,
            "n_max": cfg.n_max,
            "results": [
                {"name": r.name, "passed": r.passed, "detail": r.detail}
                for r in results
            ],
        }))
    if failures:
        sys.stderr.write(
            f"error: verification: {failures[0].name}: {failures[0].detail}\n"
        )
        return EXIT_VERIFICATION
    return EXIT_OK


# ------------------------------------------------------------------- roots


def _root_entries(poly, role: str, bits: int):
    rs = certified_roots(poly, bits)
    inside, _ = classify_roots(rs, Fraction(1, 2))
    ordered = sorted(
        rs.approximations, key=lambda x: (float(x.real), float(x.imag))
    )
    entries = []
    with mpmath.workprec(rs.precision_bits):
        for x in ordered:
            location = "inside" if any(x == y for y in inside) else "outside"
            entries.append({
                "re": mpmath.nstr(x.real, 20),
                "im": mpmath.nstr(x.imag, 20),
                "location": location,
            })
        radius = mpmath.nstr(rs.error_radius, 5)
    return {"role": role, "poly": str(poly), "roots": entries}, radius


def _run_roots(cfg: CommandConfig) -> int:
    n = cfg.n
    d = absorption_denominator(n)
    c = gf_denominator(n)
    blocks = []
    inside_block, radius = _root_entries(d, "inside-factor", cfg.precision_bits)
    blocks.append(inside_block)
    if c.degree >= 1:
        outside_block, _ = _root_entries(c, "outside-factor", cfg.precision_bits)
        blocks.append(outside_block)
    if cfg.format == "text":
        print(f"n = {n}  contour |t| = 1/2  error radius <= {radius}")
        for block in blocks:
            print(f"{block['role']}: {block['poly']}")
            for e in block["roots"]:
                print(f"  {e['re']:>28} {e['im']:>28}i  {e['location']}")
        if c.degree < 1:
            print(f"outside-factor: {c} (constant, no roots)")
    else:
        print(canonical_json({
            "n": n,
            "contour_radius": "1/2",
            "error_radius": radius,
            "factors": blocks,
        }))
    return EXIT_OK


# ------------------------------------------------------------------ driver


_DISPATCH = {
    "prob": _run_prob,
    "table": _run_table,
    "gf": _run_gf,
    "verify": _run_verify,
    "roots": _run_roots,
}


def run(argv: Sequence[str]) -> int:
    """Parse and execute; returns the exit code instead of exiting."""
    try:
        cfg = parse_argv(argv)
    except SystemExit as exc:  # argparse --help or usage error
        return int(exc.code or 0)
    except ValueError as exc:
        sys.stderr.write(f"error: usage: {exc}\n")
        return EXIT_USAGE
    try:
        return _DISPATCH[cfg.subcommand](cfg)
    except ValueError as exc:
        sys.stderr.write(f"error: usage: {exc}\n")
        return EXIT_USAGE
    except (PrecisionError, PrecisionEscalation, StepBudgetExceeded) as exc:
        sys.stderr.write(f"error: precision: {exc}\n")
        return EXIT_PRECISION
    except ConsistencyError as exc:
        sys.stderr.write(f"error: verification: {exc}\n")
        return EXIT_VERIFICATION


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
