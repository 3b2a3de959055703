"""CLI interface module."""

