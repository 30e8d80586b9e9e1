"""Options and helpers shared by the command groups."""

from pathlib import Path
from typing import Optional

import typer

from sumfree_cli.config import SumfreeConfig, get_config


def parse_int(value: Optional[str]) -> Optional[int]:
    """Parse decimal or 0x-prefixed integers given on the command line."""
    if value is None:
        return None
    try:
        return int(value, 0)
    except ValueError:
        raise typer.BadParameter(f"not an integer: {value!r}")


def parse_hex(value: Optional[str]) -> Optional[int]:
    """Parse hex given on the command line, with or without 0x."""
    if value is None:
        return None
    try:
        return int(value, 16)
    except ValueError:
        raise typer.BadParameter(f"not a hex value: {value!r}")


def input_option(help: str = "Function file (- for stdin)") -> Path:
    return typer.Option(..., "--input", "-i", help=help)


def modulus_option() -> Optional[str]:
    return typer.Option(
        None,
        "--modulus",
        callback=parse_hex,
        help="Irreducible modulus in hex, e.g. 0x25 or 25 (default: docs/fields.md)",
    )


def jobs_option() -> Optional[int]:
    return typer.Option(None, "--jobs", "-j", min=1, help="Worker processes (default: config)")


def json_option() -> bool:
    return typer.Option(False, "--json", help="Emit the report as JSON")


def run_config(jobs: Optional[int] = None, **overrides) -> SumfreeConfig:
    return get_config(jobs=jobs, **overrides)
