"""CLI commands for weakmeas."""
