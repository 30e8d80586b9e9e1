"""Sum-freedom checks over flats."""

from pathlib import Path
from typing import Optional

import typer
from rich.console import Console

from sumfree_cli.flats import count_vanishing_flats, is_sumfree, order_profile
from sumfree_cli.utils.formats import read_function
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
)
from sumfree_cli.vecfun import is_nondegenerate

app = typer.Typer()
console = Console()


@app.command("check")
def check(
    input: Path = input_option(),
    k: Optional[int] = typer.Option(None, "--k", help="Order to check"),
    all_k: bool = typer.Option(False, "--all-k", help="Check every order 1..n"),
    modulus: Optional[str] = modulus_option(),
    jobs: Optional[int] = jobs_option(),
    as_json: bool = json_option(),
):
    """
    Check kth-order sum-freedom: no k-flat has witness 0.

    On FAIL the first vanishing flat in canonical order is printed as
    basis=<hex,...> rep=<hex>.

    Examples:
        sumfree sumfree check --input x7.fn --k 3
        sumfree sumfree check --input x7.fn --all-k --jobs 4
    """
    if k is None and not all_k:
        print_error("Give --k or --all-k.")
        raise typer.Exit(1)
    try:
        cfg = run_config(jobs=jobs)
        F = read_function(input, modulus)
        orders = range(1, F.n + 1) if all_k else [k]
        results = [is_sumfree(F, order, jobs=cfg.jobs, cap=cfg.flat_cap) for order in orders]
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)

    rows = [
        {
            "k": r.k,
            "result": "PASS" if r.sumfree else "FAIL",
            "counterexample": r.counterexample.format() if r.counterexample else "",
        }
        for r in results
    ]
    if as_json:
        print_json(rows)
    elif all_k:
        print_table(rows, title=f"Sum-freedom of an ({F.n},{F.m})-function")
    else:
        result = results[0]
        if result.sumfree:
            print_success(f"PASS: {k}th-order sum-free")
        else:
            console.print(f"FAIL {result.counterexample.format()}", highlight=False)
    if not all_k and not results[0].sumfree:
        raise typer.Exit(1)


@app.command("profile")
def profile(
    input: Path = input_option(),
    kmin: int = typer.Option(1, "--kmin", help="Lowest order"),
    kmax: Optional[int] = typer.Option(None, "--kmax", help="Highest order (default n)"),
    modulus: Optional[str] = modulus_option(),
    jobs: Optional[int] = jobs_option(),
    as_json: bool = json_option(),
):
    """Set K_F of orders at which F is sum-free, with non-degeneracy per order."""
    try:
        cfg = run_config(jobs=jobs)
        F = read_function(input, modulus)
        result = order_profile(F, kmin=kmin, kmax=kmax, jobs=cfg.jobs, cap=cfg.flat_cap)
        data = {
            "orders": sorted(result.orders),
            "checked": list(result.checked),
            "multiorder": result.is_multiorder,
            "nondegenerate": {str(k): is_nondegenerate(F, k) for k in sorted(result.orders)},
            "skipped": {str(k): v for k, v in result.skipped.items()},
        }
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)

    if as_json:
        print_json(data)
        return
    console.print(f"K_F = {{{', '.join(map(str, data['orders']))}}}")
    for k, reason in result.skipped.items():
        print_warning(f"order {k} skipped: {reason}")


@app.command("count")
def count(
    input: Path = input_option(),
    k: int = typer.Option(..., "--k", help="Flat dimension"),
    modulus: Optional[str] = modulus_option(),
):
    """Number of k-flats on which F sums to zero."""
    try:
        cfg = run_config()
        F = read_function(input, modulus)
        console.print(str(count_vanishing_flats(F, k, cap=cfg.flat_cap)))
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)
