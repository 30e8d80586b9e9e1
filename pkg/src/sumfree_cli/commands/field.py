"""GF(2^n) arithmetic commands."""

from typing import Optional

import typer
from rich.console import Console

from sumfree_cli.gf2n import FieldContext
from sumfree_cli.utils.options import json_option, modulus_option, parse_int
from sumfree_cli.utils.output import print_error, print_json, print_table

app = typer.Typer()
console = Console()


def _element(ctx: FieldContext, value: str) -> int:
    x = parse_int(value)
    if not 0 <= x < ctx.order:
        raise ValueError(f"{x:#x} is not an element of GF(2^{ctx.n})")
    return x


@app.command("info")
def info(
    n: int = typer.Option(..., "--n", help="Extension degree"),
    modulus: Optional[str] = modulus_option(),
    as_json: bool = json_option(),
):
    """
    Show the modulus and a primitive element of GF(2^n).

    Examples:
        sumfree field info --n 5
        sumfree field info --n 5 --modulus 0x3b
    """
    try:
        ctx = FieldContext.create(n, modulus)
        data = ctx.describe()
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)

    if as_json:
        print_json(data)
    else:
        print_table([data], title=f"GF(2^{n})")


@app.command("mul")
def mul(
    a: str = typer.Argument(..., help="First element (e.g. 0x1b)"),
    b: str = typer.Argument(..., help="Second element"),
    n: int = typer.Option(..., "--n", help="Extension degree"),
    modulus: Optional[str] = modulus_option(),
):
    """Multiply two field elements."""
    try:
        ctx = FieldContext.create(n, modulus)
        x, y = _element(ctx, a), _element(ctx, b)
        console.print(f"{ctx.mul(x, y):#x}")
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)


@app.command("pow")
def power(
    a: str = typer.Argument(..., help="Base element"),
    exponent: int = typer.Argument(..., help="Nonnegative exponent"),
    n: int = typer.Option(..., "--n", help="Extension degree"),
    modulus: Optional[str] = modulus_option(),
):
    """Raise a field element to a power."""
    try:
        ctx = FieldContext.create(n, modulus)
        x = _element(ctx, a)
        console.print(f"{ctx.pow(x, exponent):#x}")
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)


@app.command("trace")
def trace(
    a: str = typer.Argument(..., help="Field element"),
    n: int = typer.Option(..., "--n", help="Extension degree"),
    modulus: Optional[str] = modulus_option(),
):
    """Absolute trace of a field element."""
    try:
        ctx = FieldContext.create(n, modulus)
        x = _element(ctx, a)
        console.print(str(ctx.trace(x)))
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)
