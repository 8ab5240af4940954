"""Command-line front end.

Subcommands::

    betaline sample --family beta-sym --a 0.5 --n 10 --seed 7
    betaline table --n 1000000 --output ks_moments.csv
    betaline alpha-curve --grid-size 201
    betaline verify --json

Exit codes: 0 success, 1 a verification check failed, 2 invalid
parameters, 3 I/O failure. Relative ``--output`` paths are resolved
against ``$BETALINE_OUTPUT_DIR`` when it is set.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
from pathlib import Path
from typing import Iterator, Sequence, TextIO

from betaline import __version__, checks, harness, sampling
from betaline.core import ShapeParam, alpha_weight
from betaline.families import NumericError
from betaline.streams import DEFAULT_SEED

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
OUTPUT_DIR_ENV = "BETALINE_OUTPUT_DIR"

FAMILIES = ("beta-sym", "beta", "gamma", "dirichlet")
TABLE_HEADER = (
    "a,emp_mom_1,the_mom_1,mcse_mom_1,z_mom_1,"
    "emp_mom_2,the_mom_2,mcse_mom_2,z_mom_2,"
    "emp_mom_3,the_mom_3,mcse_mom_3,z_mom_3"
)


class ParameterError(ValueError):
    pass


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="betaline", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"betaline {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sample", help="generate variates")
    s.add_argument("--family", choices=FAMILIES, default="beta-sym")
    s.add_argument("--a", type=float, help="Beta shape a (beta-sym, beta)")
    s.add_argument("--b", type=float, help="second Beta shape (beta)")
    s.add_argument("--c", type=float, help="Gamma shape, 0 < c < 1")
    s.add_argument("--scale", type=float, default=1.0, help="Gamma scale")
    s.add_argument("--alphas", type=_float_list, help="Dirichlet concentrations, comma separated")
    s.add_argument("--n", type=_positive_int, default=10)
    s.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    s.add_argument("--variant", choices=sampling.VARIANTS, default=sampling.DEFAULT_VARIANT)
    s.add_argument("--output", "-o", help="output file (default: stdout)")
    s.add_argument("--format", choices=("csv", "jsonl"), default="csv")

    t = sub.add_parser("table", help="moment diagnostics table as CSV")
    t.add_argument("--n", type=_positive_int, default=10**6)
    t.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    t.add_argument("--a-grid", type=_float_list, default=list(harness.A_GRID))
    t.add_argument("--variant", choices=sampling.VARIANTS, default=sampling.THREE_UNIFORM)
    t.add_argument("--workers", type=_positive_int, default=1)
    t.add_argument("--output", "-o")

    c = sub.add_parser("alpha-curve", help="mixture weight curves as long-format CSV")
    c.add_argument("--a-list", type=_float_list, default=list(harness.A_GRID))
    c.add_argument("--grid-size", type=int, default=201)
    c.add_argument("--output", "-o")

    v = sub.add_parser("verify", help="run the verification suite")
    v.add_argument("--n", type=_positive_int, default=10**5)
    v.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    v.add_argument("--json", action="store_true", help="print a JSON report")
    v.add_argument("--sabotage", choices=checks.SABOTAGE_MODES, help=argparse.SUPPRESS)
    v.add_argument("--output", "-o", help="also write the JSON report here")
    return parser


def _resolve(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


@contextlib.contextmanager
def _open_output(path: str | None) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
        return
    with open(_resolve(path), "w", encoding="utf-8", newline="\n") as fh:
        yield fh


def _provenance(command: str, **fields) -> str:
    parts = [f"betaline {__version__}", command]
    parts += [f"{k}={json.dumps(v) if isinstance(v, (list, dict)) else v}" for k, v in fields.items()]
    return " ".join(parts)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def cmd_sample(args) -> int:
    fam = args.family
    if fam == "beta-sym":
        if args.a is None:
            raise ParameterError("--a is required for family beta-sym")
        batch = sampling.beta_sym(args.a, args.n, args.seed, args.variant)
    elif fam == "beta":
        if args.a is None or args.b is None:
            raise ParameterError("--a and --b are required for family beta")
        batch = sampling.beta(args.a, args.b, args.n, args.seed, args.variant)
    elif fam == "gamma":
        if args.c is None:
            raise ParameterError("--c is required for family gamma")
        batch = sampling.gamma(args.c, args.n, args.scale, args.seed, args.variant)
    else:
        if not args.alphas:
            raise ParameterError("--alphas is required for family dirichlet")
        batch = sampling.dirichlet(args.alphas, args.n, args.seed, args.variant)

    meta = {
        "family": fam,
        "params": batch.params,
        "seed": batch.seed,
        "variant": batch.variant,
        "n": len(batch),
        "version": __version__,
    }
    values = batch.values
    with _open_output(args.output) as out:
        if args.format == "csv":
            out.write("# " + _provenance("sample", **meta) + "\n")
            if values.ndim == 1:
                out.write("value\n")
                out.writelines(_fmt(v) + "\n" for v in values.tolist())
            else:
                out.write(",".join(f"x{i + 1}" for i in range(values.shape[1])) + "\n")
                out.writelines(",".join(_fmt(v) for v in row) + "\n" for row in values.tolist())
        else:
            out.write(json.dumps({"meta": meta}) + "\n")
            key = "value" if values.ndim == 1 else "values"
            for v in values.tolist():
                out.write(json.dumps({key: v}) + "\n")
    return EXIT_OK


def table_rows(reports: Sequence[harness.MomentReport]) -> list[str]:
    by_a: dict[float, dict[int, harness.MomentReport]] = {}
    for r in reports:
        by_a.setdefault(r.a, {})[r.k] = r
    rows = []
    for a, cells in by_a.items():
        fields = [f"{a:.2f}"]
        for k in (1, 2, 3):
            r = cells[k]
            fields += [f"{r.emp:.6f}", f"{r.theo:.6f}", f"{r.mcse:.6e}", f"{r.z:.6f}"]
        rows.append(",".join(fields))
    return rows


def cmd_table(args) -> int:
    reports = harness.run_moment_table(args.a_grid, args.n, 3, args.seed, args.variant, args.workers)
    with _open_output(args.output) as out:
        out.write(
            "# "
            + _provenance("table", n=args.n, seed=args.seed, variant=args.variant, a_grid=args.a_grid)
            + "\n"
        )
        out.write(TABLE_HEADER + "\n")
        out.writelines(row + "\n" for row in table_rows(reports))
    return EXIT_OK


def alpha_curve_rows(a_list: Sequence[float], grid_size: int) -> Iterator[tuple[float, float, float]]:
    """``(a, p, alpha)`` on the interior grid ``p = j / (grid_size + 1)``."""
    if grid_size < 2:
        raise ParameterError("--grid-size must be at least 2")
    for a in a_list:
        s = ShapeParam(a)
        for j in range(1, grid_size + 1):
            p = j / (grid_size + 1)
            yield s.a, p, alpha_weight(s, p)


def cmd_alpha_curve(args) -> int:
    rows = list(alpha_curve_rows(args.a_list, args.grid_size))
    with _open_output(args.output) as out:
        out.write("# " + _provenance("alpha-curve", grid_size=args.grid_size, a_list=args.a_list) + "\n")
        out.write("a,p,alpha\n")
        out.writelines(f"{a!r},{_fmt(p)},{_fmt(w)}\n" for a, p, w in rows)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = checks.run_checks(n=args.n, seed=args.seed, sabotage=args.sabotage)
    failed = [r.name for r in results if not r.passed]
    report = {
        "version": __version__,
        "seed": args.seed,
        "n": args.n,
        "sabotage": args.sabotage,
        "passed": not failed,
        "failed": failed,
        "checks": [r.as_dict() for r in results],
    }
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}  ({r.seconds:.2f}s)")
        print("all checks passed" if not failed else f"failed: {', '.join(failed)}")
    if args.output:
        with _open_output(args.output) as out:
            json.dump(report, out, indent=2)
            out.write("\n")
    return EXIT_CHECK_FAILED if failed else EXIT_OK


COMMANDS = {
    "sample": cmd_sample,
    "table": cmd_table,
    "alpha-curve": cmd_alpha_curve,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    # UnsupportedParameterError and DomainError are ValueErrors too
    except (ValueError, NumericError) as exc:
        print(f"betaline: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"betaline: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
