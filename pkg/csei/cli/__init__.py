"""Command-line interface."""

from csei.cli.main import app, main

__all__ = ["app", "main"]
