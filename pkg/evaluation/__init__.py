"""Run-trace metrics and the numeric acceptance campaign."""
