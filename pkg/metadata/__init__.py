"""Run-trace store for CLI invocations."""
