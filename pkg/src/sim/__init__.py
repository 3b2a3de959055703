"""Time integration of the inhomogeneous Hartree equation and its fixed-point diagnostics."""
