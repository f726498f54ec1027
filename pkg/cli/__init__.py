"""Command-line surface for the Laurent spectral toolkit."""
