"""Utility modules for sumfree-cli."""
