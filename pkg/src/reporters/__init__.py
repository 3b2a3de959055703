"""Reporters for different output formats."""
