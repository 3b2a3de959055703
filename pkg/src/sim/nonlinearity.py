"""Hartree potential, nonlinearity, mass and energy on the grid."""

import logging
from typing import Tuple

import numpy as np

from ..lorentz.grid import GridFunction
from ..spectral.lattice import forward, lattice_for, plancherel_sum
from .params import EquationParams

logger = logging.getLogger(__name__)


def _density_and_convolution(values: np.ndarray, params: EquationParams) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """|u|, rho = |x|^-b |u|^p and I_alpha rho (real part)."""
    modulus = np.abs(values)
    density = params.weight * modulus ** params.p
    convolution = params.riesz.apply_array(density, params.grid).real
    return modulus, density, convolution


def potential_array(values: np.ndarray, params: EquationParams) -> np.ndarray:
    """Real potential V = lam (I_alpha rho) |x|^-b |u|^{p-2}."""
    if params.lam == 0:
        return np.zeros(values.shape)
    modulus, _, convolution = _density_and_convolution(values, params)
    # 0**0 = 1 covers p = 2; for p > 2 a vanishing |u| gives a vanishing factor
    return params.lam * convolution * params.weight * modulus ** (params.p - 2.0)


def potential(u: GridFunction, params: EquationParams) -> GridFunction:
    u.require_finite()
    return GridFunction(u.grid, potential_array(u.values, params))


def nonlinearity(u: GridFunction, params: EquationParams) -> GridFunction:
    """F(u) = V(u) u."""
    u.require_finite()
    return u.with_values(potential_array(u.values, params) * u.values)


def mass(u: GridFunction) -> float:
    return u.l2_norm() ** 2


def kinetic_energy(u: GridFunction) -> float:
    """||grad u||^2 by Plancherel."""
    return plancherel_sum(u.grid, forward(u.values), lattice_for(u.grid).squared_norm)


def potential_energy(u: GridFunction, params: EquationParams) -> float:
    """integral of (I_alpha rho) rho, without the lam / (2p) factor."""
    _, density, convolution = _density_and_convolution(u.values, params)
    return float(u.grid.cell_measure * np.sum(convolution * density))


def energy(u: GridFunction, params: EquationParams) -> float:
    """E(u) = 1/2 ||grad u||^2 + lam / (2p) * integral of (I_alpha rho) rho."""
    u.require_finite()
    value = 0.5 * kinetic_energy(u)
    if params.lam != 0:
        value += params.lam / (2.0 * params.p) * potential_energy(u, params)
    return value
