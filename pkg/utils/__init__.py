"""Environment loading, settings and the error hierarchy."""
