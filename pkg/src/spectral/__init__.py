"""Fourier multipliers on periodic padded grids, the Riesz potential and Sobolev-Lorentz norms."""
