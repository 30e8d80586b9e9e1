"""Reed-Muller subcode C_F commands."""

from pathlib import Path
from typing import Optional

import typer
from rich.console import Console

from sumfree_cli.rmcode import BinaryCode
from sumfree_cli.subcode import (
    build_subcode,
    certify_min_distance,
    extract_function,
    min_distance_exhaustive,
)
from sumfree_cli.utils.formats import read_function, read_matrix, write_function, write_matrix
from sumfree_cli.utils.options import jobs_option, json_option, modulus_option, run_config
from sumfree_cli.utils.output import (
    print_error,
    print_info,
    print_json,
    print_success,
    print_table,
    print_warning,
)

app = typer.Typer()
console = Console()


@app.command("build")
def build(
    input: Path = typer.Option(..., "--input", "-i", help="Function file"),
    r: int = typer.Option(..., "--r", help="Reed-Muller order, 2 <= r <= n-2"),
    out: Path = typer.Option(..., "--out", "-o", help="Generator matrix file to write"),
    pcheck_out: Optional[Path] = typer.Option(
        None, "--pcheck-out", help="Also write the parity-check matrix"
    ),
    trust: bool = typer.Option(
        False, "--trust", help="Skip the sum-freedom and non-degeneracy checks"
    ),
    modulus: Optional[str] = modulus_option(),
    jobs: Optional[int] = jobs_option(),
):
    """
    Build C_F from an (n-r)th-order sum-free, non-degenerate F.

    Examples:
        sumfree subcode build --input x7.fn --r 2 --out cf.gen --pcheck-out cf.pcheck
    """
    try:
        cfg = run_config(jobs=jobs)
        F = read_function(input, modulus)
        bundle = build_subcode(F, r, trust=trust, jobs=cfg.jobs, flat_cap=cfg.flat_cap)
        G = bundle.code.generator_matrix()
        write_matrix(G, out)
        if pcheck_out is not None:
            write_matrix(bundle.code.parity_check, pcheck_out)
        if trust:
            print_warning("Built without verifying F (--trust)")
        print_success(
            f"C_F has length {bundle.code.length} and dimension {bundle.code.dimension}; "
            f"generator written to {out}"
        )
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)


@app.command("mindist")
def mindist(
    gen: Optional[Path] = typer.Option(None, "--gen", help="Generator matrix file"),
    exhaustive: bool = typer.Option(False, "--exhaustive", help="Enumerate all codewords"),
    certify: bool = typer.Option(False, "--certify", help="Certificate mode (needs --input, --r)"),
    input: Optional[Path] = typer.Option(None, "--input", "-i", help="Function file"),
    r: Optional[int] = typer.Option(None, "--r", help="Reed-Muller order"),
    modulus: Optional[str] = modulus_option(),
    jobs: Optional[int] = jobs_option(),
    as_json: bool = json_option(),
):
    """
    Minimum distance of a code, exhaustively or by certificate.

    Certificate mode needs no codeword enumeration: the lower bound comes
    from sum-freedom and the upper bound from an explicit codeword.
    """
    if certify == exhaustive:
        print_error("Choose exactly one of --exhaustive or --certify.")
        raise typer.Exit(1)
    try:
        cfg = run_config(jobs=jobs)
        if exhaustive:
            if gen is None:
                raise ValueError("--exhaustive needs --gen")
            G = read_matrix(gen)
            distance = min_distance_exhaustive(BinaryCode(G.cols, generator=G), cfg.codeword_dim_cap, cfg.jobs)
            if as_json:
                print_json({"minimum_distance": distance, "dimension": G.rank()})
            else:
                console.print(str(distance))
            return
        if input is None or r is None:
            raise ValueError("--certify needs --input and --r")
        F = read_function(input, modulus)
        bundle = build_subcode(F, r, jobs=cfg.jobs, flat_cap=cfg.flat_cap)
        cert = certify_min_distance(bundle, cfg.pair_search_cap, cfg.jobs, cfg.flat_cap)
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)

    if as_json:
        print_json(cert)
    else:
        print_table(
            [{"lower": cert.lower, "upper": cert.upper, "family": cert.clique_family, "witnesses": cert.witnesses_computed}],
            title=f"d(C_F) for n={cert.n}, r={cert.r}",
        )
        if cert.witness_codeword:
            print_info(f"witness codeword {cert.witness_codeword} of weight {cert.witness_weight}")
    if not cert.certified:
        print_warning(cert.note or "bounds do not match")
        raise typer.Exit(1)


@app.command("extract")
def extract(
    pcheck: Path = typer.Option(..., "--pcheck", help="Parity-check matrix of the subcode"),
    r: int = typer.Option(..., "--r", help="Reed-Muller order"),
    out: Path = typer.Option(..., "--out", "-o", help="Function file to write"),
):
    """Read the (n,m)-function off a subcode of RM(r,n) of codimension m <= n."""
    try:
        H = read_matrix(pcheck)
        bundle = extract_function(BinaryCode(H.cols, parity_check=H), r)
        write_function(bundle.function, out)
        if bundle.trivial:
            print_warning("The code is RM(r,n) itself; the extracted function is empty")
        print_success(f"Extracted an ({bundle.n},{bundle.m})-function to {out}")
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)
