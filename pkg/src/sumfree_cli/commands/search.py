"""Constructions, catalog profiling and small exhaustive searches."""

import json
from pathlib import Path
from typing import Optional

import typer
from rich.console import Console

from sumfree_cli.claims import sample_catalog_text
from sumfree_cli.gf2n import FieldContext
from sumfree_cli.search import (
    bound_consistency_report,
    carlet_exponent,
    carlet_function,
    exhaustive_nonexistence,
    gold_inverse_check,
    profile_catalog,
    restriction_chain,
)
from sumfree_cli.utils.formats import parse_catalog, read_catalog, read_function, write_function
from sumfree_cli.utils.options import (
    input_option,
    jobs_option,
    json_option,
    modulus_option,
    run_config,
)
from sumfree_cli.utils.output import (
    print_error,
    print_json,
    print_success,
    print_table,
    print_warning,
    to_data,
)

app = typer.Typer()
console = Console()


@app.command("carlet")
def carlet(
    n: int = typer.Option(..., "--n", help="Extension degree"),
    k: int = typer.Option(..., "--k", help="Sum-free order"),
    j: int = typer.Option(..., "--j", help="Step, gcd(j, n) = 1"),
    allow_any_j: bool = typer.Option(False, "--allow-any-j", help="Skip the gcd(j, n) check"),
    modulus: Optional[str] = modulus_option(),
    out: Path = typer.Option(..., "--out", "-o", help="Function file to write"),
):
    """
    Write the power map F_{k,j}(x) = x^(1 + 2^j + ... + 2^(j(k-1))).

    Examples:
        sumfree search carlet --n 5 --k 3 --j 1 --out x7.fn
    """
    try:
        ctx = FieldContext.create(n, modulus)
        F = carlet_function(ctx, k, j, allow_any_j=allow_any_j)
        write_function(F, out, ctx.modulus)
        print_success(f"Wrote x^{carlet_exponent(n, k, j)} over GF(2^{n}) to {out}")
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)


@app.command("gold-inverse")
def gold_inverse(
    n: int = typer.Option(..., "--n", help="Odd extension degree 2m+1"),
    i: int = typer.Option(..., "--i", help="Gold parameter, gcd(2i, n) = 1"),
    modulus: Optional[str] = modulus_option(),
    jobs: Optional[int] = jobs_option(),
    as_json: bool = json_option(),
):
    """Check that the inverse of x^(2^i+1) is F_{m+1,2i} and sum-free at orders 2 and m+1."""
    try:
        cfg = run_config(jobs=jobs)
        report = gold_inverse_check(FieldContext.create(n, modulus), i, cfg.jobs, cfg.flat_cap)
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)

    if as_json:
        print_json(report)
    else:
        print_table([to_data(report)], title=f"Inverse of x^{report.gold_exponent}")
    if not report.passed:
        raise typer.Exit(1)


@app.command("catalog")
def catalog(
    file: Optional[Path] = typer.Option(
        None, "--file", "-f", help="Catalog file (default: the bundled n=5 catalog)"
    ),
    kmin: int = typer.Option(1, "--kmin", help="Lowest order"),
    kmax: Optional[int] = typer.Option(None, "--kmax", help="Highest order (default n)"),
    report_path: Optional[Path] = typer.Option(
        None, "--report", help="Write the full report as JSON"
    ),
    jobs: Optional[int] = jobs_option(),
    as_json: bool = json_option(),
):
    """
    Profile every catalog entry over a range of orders.

    Examples:
        sumfree search catalog --kmin 1 --kmax 5
        sumfree search catalog --file n6.txt --kmin 2 --kmax 4 --jobs 8 --report n6.json
    """
    try:
        cfg = run_config(jobs=jobs)
        if file is None:
            cat = parse_catalog(sample_catalog_text(), source="catalog_n5.txt")
        else:
            cat = read_catalog(file)
        upper = kmax if kmax is not None else (cat.dims[0] if cat.dims else kmin)
        report = profile_catalog(cat, kmin, upper, cfg.jobs, cfg.flat_cap)
        if report_path is not None:
            report_path.write_text(json.dumps(to_data(report), indent=2))
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)

    if as_json:
        print_json(report)
        return
    rows = [
        {
            "label": row.label,
            "degree": row.degree,
            "apn": row.apn,
            "K_F": ",".join(map(str, row.orders)) or "-",
            "seconds": row.seconds,
        }
        for row in report.rows
    ]
    print_table(rows, title=f"Catalog {report.source} (orders {report.kmin}..{report.kmax})")
    for row in report.rows:
        for k, reason in row.skipped.items():
            print_warning(f"{row.label}: order {k} skipped ({reason})")


@app.command("nonexist")
def nonexist(
    n: int = typer.Option(..., "--n", help="Input dimension"),
    m: int = typer.Option(..., "--m", help="Output dimension"),
    k: int = typer.Option(..., "--k", help="Sum-free order"),
    budget: Optional[int] = typer.Option(None, "--budget", min=1, help="Node budget"),
    as_json: bool = json_option(),
):
    """Search exhaustively for a kth-order sum-free (n,m)-function."""
    try:
        cfg = run_config()
        result = exhaustive_nonexistence(n, m, k, budget or cfg.node_budget)
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)

    if as_json:
        print_json(result)
    else:
        console.print(
            f"({n},{m},{k}): {result.status} after {result.nodes} nodes", highlight=False
        )
        if result.witness is not None:
            console.print("witness: " + " ".join(f"{v:x}" for v in result.witness), highlight=False)
    if result.status == "budget-exhausted":
        raise typer.Exit(2)


@app.command("restrict")
def restrict(
    input: Path = input_option(),
    k: int = typer.Option(..., "--k", help="Order at which F is sum-free"),
    j: int = typer.Option(1, "--j", help="Number of restriction steps, 1 <= j < k"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the last function"),
    modulus: Optional[str] = modulus_option(),
    jobs: Optional[int] = jobs_option(),
    as_json: bool = json_option(),
):
    """Derive and restrict F step by step, checking sum-freedom drops one order per step."""
    try:
        cfg = run_config(jobs=jobs)
        F = read_function(input, modulus)
        chain = restriction_chain(F, k, j, cfg.jobs, cfg.flat_cap)
        if out is not None:
            write_function(chain.final, out)
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)

    if as_json:
        print_json(chain.steps)
    else:
        print_table([to_data(step) for step in chain.steps], title="Restriction chain")
    if not chain.holds:
        raise typer.Exit(1)


@app.command("bounds-check")
def bounds_check(
    input: Path = input_option(),
    modulus: Optional[str] = modulus_option(),
    jobs: Optional[int] = jobs_option(),
    as_json: bool = json_option(),
):
    """Check the lower bound m >= max(n-k+2, k+2) at every order of K_F."""
    try:
        cfg = run_config(jobs=jobs)
        report = bound_consistency_report(read_function(input, modulus), cfg.jobs, cfg.flat_cap)
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)

    if as_json:
        print_json(report)
    else:
        print_table([to_data(c) for c in report.checks], title=f"K_F = {report.orders}")
    if not report.consistent:
        raise typer.Exit(1)
