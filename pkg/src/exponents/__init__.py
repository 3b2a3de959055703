"""Exact-arithmetic exponent conditions: critical powers, windows, dual pairs and the theorem gate."""
