"""Command modules for sumfree-cli."""
