"""sumfree-cli - Sum-free vectorial Boolean functions, Reed-Muller subcodes and Grassmann graph colorings."""

__version__ = "0.1.0"
