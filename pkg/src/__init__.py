"""Hartree Lab - computer-assisted analysis of the inhomogeneous Hartree equation."""

__version__ = "0.1.0"
__author__ = "Hartree Lab Team"
