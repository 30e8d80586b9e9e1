"""Grassmann graph coloring commands."""

from enum import Enum
from pathlib import Path
from typing import Optional

import typer

from sumfree_cli.grassmann import (
    chromatic_lower_bound,
    chromatic_upper_bound,
    extended_coloring,
    known_chromatic_number,
    verify_coloring,
    witness_coloring,
)
from sumfree_cli.utils.formats import read_certificate, read_function, write_certificate
from sumfree_cli.utils.options import jobs_option, json_option, modulus_option, run_config
from sumfree_cli.utils.output import (
    print_error,
    print_json,
    print_success,
    print_table,
    print_warning,
)

app = typer.Typer()


class ColoringMode(str, Enum):
    witness = "witness"
    extended = "extended"


@app.command("color")
def color(
    input: Path = typer.Option(..., "--input", "-i", help="Function file"),
    k: int = typer.Option(..., "--k", help="Subspace dimension"),
    mode: ColoringMode = typer.Option(ColoringMode.witness, "--mode", help="witness or extended"),
    out: Path = typer.Option(..., "--out", "-o", help="Certificate file to write"),
    modulus: Optional[str] = modulus_option(),
    jobs: Optional[int] = jobs_option(),
):
    """
    Color J_2(n,k) by witnesses, or J_2(n+1,k) by the extended coloring.

    Examples:
        sumfree grassmann color --input x7.fn --k 3 --out j2-5-3.cert
        sumfree grassmann color --input x7.fn --k 3 --mode extended --out j2-6-3.cert
    """
    try:
        cfg = run_config(jobs=jobs)
        F = read_function(input, modulus)
        build = witness_coloring if mode == ColoringMode.witness else extended_coloring
        cert = build(F, k, cfg.jobs, cfg.flat_cap)
        write_certificate(cert, out)
        p = cert.params
        print_success(
            f"Colored {len(cert.assignment)} vertices of J_2({p.n},{p.k}) "
            f"with {cert.colors_used} colors; certificate written to {out}"
        )
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)


@app.command("verify")
def verify(
    cert_path: Path = typer.Option(..., "--cert", help="Certificate file"),
    input: Optional[Path] = typer.Option(
        None, "--input", "-i", help="Defining function, enables the case re-derivation of extended certificates"
    ),
    modulus: Optional[str] = modulus_option(),
    as_json: bool = json_option(),
):
    """Check a coloring certificate for completeness and properness."""
    try:
        cfg = run_config()
        cert = read_certificate(cert_path)
        if input is not None:
            cert.function = read_function(input, modulus)
        report = verify_coloring(cert, cfg.pair_sample, cfg.seed)
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)

    if as_json:
        print_json(report)
    else:
        print_table(
            [
                {
                    "vertices": report.vertices,
                    "colors": report.colors_used,
                    "lower bound": report.lower_bound,
                    "valid": report.valid,
                    "sampled pairs": report.sampled_pairs,
                }
            ],
            title=f"J_2({report.n},{report.k},{report.t})",
        )
        for problem in report.problems:
            print_warning(problem)
        if report.first_conflict:
            print_warning(f"conflict: {report.first_conflict[0]} / {report.first_conflict[1]}")
    if not report.valid:
        raise typer.Exit(1)


@app.command("bounds")
def bounds(
    n: int = typer.Option(..., "--n", help="Ambient dimension"),
    k: int = typer.Option(..., "--k", help="Subspace dimension"),
    t: Optional[int] = typer.Option(None, "--t", help="Adjacency threshold (default k-1)"),
    as_json: bool = json_option(),
):
    """Chromatic number bounds for J_2(n,k,t)."""
    try:
        t = k - 1 if t is None else t
        data = {
            "n": n,
            "k": k,
            "t": t,
            "lower": chromatic_lower_bound(n, k, t),
            "upper": chromatic_upper_bound(n, k) if t == k - 1 else None,
            "known": known_chromatic_number(n, k) if t == k - 1 else None,
        }
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)

    if as_json:
        print_json(data)
    else:
        print_table([data], title="Chromatic number bounds")
