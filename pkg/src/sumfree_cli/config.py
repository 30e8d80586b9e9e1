"""Configuration management for sumfree-cli."""

import json
import os
from pathlib import Path

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict
from rich.console import Console

console = Console()

# Configuration directory
CONFIG_DIR = Path.home() / ".sumfree"
CONFIG_FILE = CONFIG_DIR / "config.json"

SETTING_KEYS = [
    "jobs",
    "flat_cap",
    "codeword_dim_cap",
    "node_budget",
    "pair_search_cap",
    "pair_sample",
    "seed",
    "output_dir",
]


class SumfreeConfig(BaseSettings):
    """Run settings: worker count, enumeration caps, seed and output paths."""

    model_config = SettingsConfigDict(
        env_prefix="SUMFREE_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    jobs: int = Field(default=1, ge=1, description="Worker processes for sharded checks")
    flat_cap: int = Field(
        default=10**8, ge=1, description="Maximum number of flats enumerated per check"
    )
    codeword_dim_cap: int = Field(
        default=24, ge=1, description="Maximum code dimension for exhaustive enumeration"
    )
    node_budget: int = Field(
        default=10**9, ge=1, description="Node budget of the nonexistence search"
    )
    pair_search_cap: int = Field(
        default=10**7, ge=1, description="Witnesses computed by the certificate pair search"
    )
    pair_sample: int = Field(
        default=2000, ge=0, description="Adjacent pairs re-derived for extended colorings"
    )
    seed: int = Field(default=2024, description="Seed for sampled checks")
    output_dir: Path = Field(default=Path("reports"), description="Directory for reports")

    @classmethod
    def load(cls, verbose: bool = False, **overrides) -> "SumfreeConfig":
        """
        Load configuration from multiple sources with precedence:
        1. Overrides (CLI arguments) - highest priority
        2. Environment variables
        3. ~/.sumfree/config.json
        4. Defaults - lowest priority
        """
        file_config = {}
        if CONFIG_FILE.exists():
            try:
                with open(CONFIG_FILE, "r") as f:
                    file_config = json.load(f)
            except Exception as e:
                console.print(
                    f"[yellow]Warning: Could not load config file: {e}[/yellow]"
                )

        # None means "not given on the command line"
        overrides = {k: v for k, v in overrides.items() if v is not None}

        # .env entries never override the real environment
        load_dotenv(Path(".env"))
        env_config = {}
        for key in SETTING_KEYS:
            env_value = os.getenv(f"SUMFREE_{key.upper()}")
            if env_value:
                env_config[key] = env_value

        merged = {**file_config, **env_config, **overrides}

        if verbose:
            console.print("[bold]Configuration sources:[/bold]")
            defaults = cls.model_fields
            for key in SETTING_KEYS:
                if key in overrides:
                    source = "CLI argument"
                elif key in env_config:
                    source = f"environment variable (SUMFREE_{key.upper()})"
                elif key in file_config:
                    source = f"config file ({CONFIG_FILE})"
                else:
                    source = "default"
                value = merged.get(key, defaults[key].default)
                console.print(f"  {key}: {value} [dim]({source})[/dim]")

        # model_validate skips pydantic's own env loading
        return cls.model_validate(merged)

    def save(self) -> None:
        """Save current configuration to ~/.sumfree/config.json."""
        CONFIG_DIR.mkdir(parents=True, exist_ok=True)

        config_data = self.model_dump(mode="json")

        with open(CONFIG_FILE, "w") as f:
            json.dump(config_data, f, indent=2)

        console.print(
            f"[green]Configuration saved to {CONFIG_FILE}[/green]", style="bold"
        )


def get_config(verbose: bool = False, **overrides) -> SumfreeConfig:
    """Convenience function to load configuration."""
    return SumfreeConfig.load(verbose=verbose, **overrides)
