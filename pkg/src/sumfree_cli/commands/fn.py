"""Vectorial Boolean function commands."""

from pathlib import Path
from typing import Optional

import typer
from rich.console import Console

from sumfree_cli.gf2n import FieldContext, format_poly
from sumfree_cli.utils.formats import read_function, write_function
from sumfree_cli.utils.options import input_option, json_option, modulus_option
from sumfree_cli.utils.output import (
    print_error,
    print_json,
    print_success,
    print_table,
    print_tree,
)
from sumfree_cli.vecfun import (
    algebraic_degree,
    component_degrees,
    differential_uniformity,
    is_permutation,
    power_map,
)

app = typer.Typer()
console = Console()


def _monomial(u: int, n: int) -> str:
    if u == 0:
        return "1"
    return "*".join(f"x{i}" for i in range(n) if (u >> i) & 1)


@app.command("degree")
def degree(
    input: Path = input_option(),
    modulus: Optional[str] = modulus_option(),
):
    """Algebraic degree (-1 for the zero function)."""
    try:
        F = read_function(input, modulus)
        console.print(str(algebraic_degree(F)))
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)


@app.command("anf")
def anf(
    input: Path = input_option(),
    modulus: Optional[str] = modulus_option(),
    as_json: bool = json_option(),
):
    """
    Algebraic normal form, one row per monomial.

    Each coefficient is the m-bit vector of the monomial across the output
    coordinates.
    """
    try:
        F = read_function(input, modulus)
        rows = [
            {"monomial": _monomial(u, F.n), "degree": u.bit_count(), "coefficient": f"{c:#x}"}
            for u, c in F.anf.monomials()
        ]
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)

    if as_json:
        print_json(rows)
    else:
        print_table(rows, title=f"ANF of an ({F.n},{F.m})-function")


@app.command("components")
def components(
    input: Path = input_option(),
    modulus: Optional[str] = modulus_option(),
    as_json: bool = json_option(),
):
    """Degrees of all nonzero components v.F(x), grouped by degree."""
    try:
        F = read_function(input, modulus)
        degrees = component_degrees(F)
        groups: dict[int, list[str]] = {}
        for v, d in enumerate(degrees, start=1):
            groups.setdefault(int(d), []).append(f"{v:#x}")
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)

    if as_json:
        print_json({str(d): vs for d, vs in sorted(groups.items())})
    else:
        print_tree(
            {f"degree {d}": f"{len(vs)} components" for d, vs in sorted(groups.items())},
            label=f"components of an ({F.n},{F.m})-function",
        )


@app.command("info")
def info(
    input: Path = input_option(),
    modulus: Optional[str] = modulus_option(),
    as_json: bool = json_option(),
):
    """Degree, differential uniformity and bijectivity of a function."""
    try:
        F = read_function(input, modulus)
        uniformity = differential_uniformity(F) if F.n >= 1 else None
        data = {
            "n": F.n,
            "m": F.m,
            "degree": algebraic_degree(F),
            "differential_uniformity": uniformity,
            "apn": F.n == F.m and uniformity == 2,
            "permutation": is_permutation(F),
        }
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)

    if as_json:
        print_json(data)
    else:
        print_table([data], title="Function properties")


@app.command("power")
def power(
    n: int = typer.Option(..., "--n", help="Extension degree"),
    d: int = typer.Option(..., "--d", help="Exponent"),
    modulus: Optional[str] = modulus_option(),
    out: Path = typer.Option(..., "--out", "-o", help="Function file to write"),
):
    """Write the truth table of the power map x^d over GF(2^n)."""
    try:
        ctx = FieldContext.create(n, modulus)
        F = power_map(ctx, d)
        write_function(F, out, ctx.modulus)
        print_success(f"Wrote x^{d} over GF(2^{n}) mod {format_poly(ctx.modulus)} to {out}")
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)
