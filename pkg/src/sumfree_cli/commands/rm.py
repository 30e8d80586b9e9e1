"""Reed-Muller code commands."""

from pathlib import Path
from typing import Optional

import typer

from sumfree_cli.rmcode import (
    BinaryCode,
    minimum_weight_codewords,
    rm_dimension,
    rm_generator,
    rm_parity_check,
)
from sumfree_cli.utils.formats import write_matrix
from sumfree_cli.utils.options import json_option, run_config
from sumfree_cli.utils.output import print_error, print_json, print_success, print_table

app = typer.Typer()


@app.command("gen")
def gen(
    r: int = typer.Option(..., "--r", help="Order"),
    n: int = typer.Option(..., "--n", help="Number of variables"),
    out: Path = typer.Option(..., "--out", "-o", help="Matrix file to write"),
):
    """Write the generator matrix of RM(r,n)."""
    try:
        G = rm_generator(r, n)
        write_matrix(G, out)
        print_success(f"Wrote {G.num_rows}x{G.cols} generator of RM({r},{n}) to {out}")
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)


@app.command("pcheck")
def pcheck(
    r: int = typer.Option(..., "--r", help="Order"),
    n: int = typer.Option(..., "--n", help="Number of variables"),
    out: Path = typer.Option(..., "--out", "-o", help="Matrix file to write"),
):
    """Write the parity-check matrix of RM(r,n), i.e. a generator of RM(n-r-1,n)."""
    try:
        H = rm_parity_check(r, n)
        write_matrix(H, out)
        print_success(f"Wrote {H.num_rows}x{H.cols} parity check of RM({r},{n}) to {out}")
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)


@app.command("info")
def info(
    r: int = typer.Option(..., "--r", help="Order"),
    n: int = typer.Option(..., "--n", help="Number of variables"),
    enumerate_words: bool = typer.Option(
        False, "--min-weight", help="Enumerate minimum-weight codewords"
    ),
    as_json: bool = json_option(),
):
    """Parameters of RM(r,n), optionally with its minimum-weight codeword count."""
    try:
        data: dict[str, Optional[int]] = {
            "length": 1 << n,
            "dimension": rm_dimension(r, n),
            "dual_dimension": (1 << n) - rm_dimension(r, n),
            "minimum_distance": 1 << (n - r),
        }
        if enumerate_words:
            cfg = run_config()
            weight, words = minimum_weight_codewords(
                BinaryCode.reed_muller(r, n), cfg.codeword_dim_cap
            )
            data["enumerated_minimum"] = weight
            data["minimum_weight_words"] = len(words)
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)

    if as_json:
        print_json(data)
    else:
        print_table([data], title=f"RM({r},{n})")
