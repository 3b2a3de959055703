"""Lorentz-space numerics on uniform grids: rearrangements, L^{p,q} norms and inequality harnesses."""
