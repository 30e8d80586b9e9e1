"""Main CLI application for sumfree-cli."""

from pathlib import Path
from typing import Optional

import typer
from rich.console import Console

from sumfree_cli.claims import ClaimContext, claim_ids, get_claim, run_claim
from sumfree_cli.config import get_config
from sumfree_cli.utils.output import (
    print_claim,
    print_error,
    print_info,
    print_json,
    print_success,
    print_table,
    setup_logging,
)

# Create main app
app = typer.Typer(
    name="sumfree",
    help="Sum-free vectorial Boolean functions, Reed-Muller subcodes and Grassmann colorings",
    add_completion=True,
    rich_markup_mode="rich",
)

console = Console()


@app.callback()
def main_callback(
    verbose: int = typer.Option(
        0, "--verbose", "-v", count=True, help="Log more (-v info, -vv debug)"
    ),
):
    setup_logging(verbose)


@app.command()
def config(
    jobs: Optional[int] = typer.Option(None, "--jobs", min=1, help="Worker processes"),
    flat_cap: Optional[int] = typer.Option(None, "--flat-cap", min=1, help="Flat enumeration cap"),
    codeword_dim_cap: Optional[int] = typer.Option(
        None, "--codeword-dim-cap", min=1, help="Largest code dimension enumerated exhaustively"
    ),
    node_budget: Optional[int] = typer.Option(
        None, "--node-budget", min=1, help="Nonexistence search node budget"
    ),
    pair_search_cap: Optional[int] = typer.Option(
        None, "--pair-search-cap", min=1, help="Witness budget of the distance certificate"
    ),
    pair_sample: Optional[int] = typer.Option(
        None, "--pair-sample", min=0, help="Adjacent pairs re-derived when verifying colorings"
    ),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for sampled checks"),
    output_dir: Optional[Path] = typer.Option(None, "--output-dir", help="Report directory"),
    show: bool = typer.Option(False, "--show", help="Show current configuration"),
    verbose: bool = typer.Option(
        False, "--verbose", help="With --show, print where each value comes from"
    ),
):
    """
    Configure sumfree-cli settings.

    Save configuration to ~/.sumfree/config.json for persistent use.
    """
    if show:
        cfg = get_config(verbose=verbose)
        print_info("Current configuration:")
        print_json(cfg.model_dump(mode="json"), pretty=True, highlight=True)
        return

    updates = {
        "jobs": jobs,
        "flat_cap": flat_cap,
        "codeword_dim_cap": codeword_dim_cap,
        "node_budget": node_budget,
        "pair_search_cap": pair_search_cap,
        "pair_sample": pair_sample,
        "seed": seed,
        "output_dir": output_dir,
    }
    updates = {k: v for k, v in updates.items() if v is not None}
    if not updates:
        print_error("No configuration provided. Run 'sumfree config --help' for the settings.")
        raise typer.Exit(1)

    try:
        cfg = get_config(**updates)
        cfg.save()
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)
    print_success("Configuration saved successfully!")


@app.command()
def reproduce(
    claim_id: Optional[str] = typer.Argument(None, help="Claim to run"),
    all_claims: bool = typer.Option(False, "--all", help="Run every claim"),
    list_claims: bool = typer.Option(False, "--list", help="List claim ids and exit"),
    out: Optional[Path] = typer.Option(
        None, "--out", "-o", help="Report file (default: <output_dir>/claims.txt)"
    ),
    artifacts: bool = typer.Option(
        False, "--artifacts", help="Keep matrices and certificates next to the report"
    ),
    jobs: Optional[int] = typer.Option(None, "--jobs", "-j", min=1, help="Worker processes"),
):
    """
    Run claim checks and write CLAIM <id> RESULT <PASS|FAIL> DETAIL <...> lines.

    Examples:
        sumfree reproduce --list
        sumfree reproduce subcode-5-2
        sumfree reproduce --all --jobs 8 --artifacts
    """
    if list_claims:
        print_table(
            [
                {"id": cid, "criterion": get_claim(cid).criterion, "summary": get_claim(cid).summary}
                for cid in claim_ids()
            ],
            title="Claims",
        )
        return
    if claim_id is None and not all_claims:
        print_error("Give a claim id or --all (see --list).")
        raise typer.Exit(1)

    try:
        cfg = get_config(jobs=jobs)
        ids = claim_ids() if all_claims else [get_claim(claim_id).claim_id]
        report = out or cfg.output_dir / "claims.txt"
        report.parent.mkdir(parents=True, exist_ok=True)
        context = ClaimContext(cfg, report.parent / "artifacts" if artifacts else None)
        results = []
        for cid in ids:
            result = run_claim(cid, context)
            print_claim(result.claim_id, result.passed, result.detail)
            results.append(result)
        report.write_text("".join(r.line() + "\n" for r in results))
    except Exception as e:
        print_error(str(e))
        raise typer.Exit(1)

    print_info(f"Report written to {report}")
    if not all(r.passed for r in results):
        raise typer.Exit(1)


@app.command()
def version():
    """Show sumfree-cli version."""
    from sumfree_cli import __version__

    print_info(f"sumfree-cli version {__version__}")


# Import and register command groups
def register_commands():
    """Register all command groups."""
    from sumfree_cli.commands import field, fn, grassmann, rm, search, subcode, sumfree

    app.add_typer(field.app, name="field", help="Arithmetic in GF(2^n)")
    app.add_typer(fn.app, name="fn", help="Vectorial Boolean functions")
    app.add_typer(sumfree.app, name="sumfree", help="Sum-freedom over flats")
    app.add_typer(rm.app, name="rm", help="Reed-Muller codes")
    app.add_typer(subcode.app, name="subcode", help="Subcodes C_F of Reed-Muller codes")
    app.add_typer(grassmann.app, name="grassmann", help="Grassmann graph colorings")
    app.add_typer(search.app, name="search", help="Constructions and searches")


# Register commands on import
register_commands()


def main():
    """Main entry point."""
    app()


if __name__ == "__main__":
    main()
