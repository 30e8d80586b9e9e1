"""Entry point for sumfree-cli when invoked as a module."""

from sumfree_cli.cli import app

if __name__ == "__main__":
    app()
