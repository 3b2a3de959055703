"""Versioned acceptance manifest: test families, dilation ladders, boxes, tolerances.

Changing any value here changes what a passing report means, so bump
``MANIFEST_VERSION`` with it.
"""

from fractions import Fraction
from typing import Dict, Tuple

MANIFEST_VERSION = "2"

# Families used by the Lorentz and inequality harnesses
TEST_FAMILIES: Tuple[str, ...] = ("gaussian", "indicator", "truncated_power", "band_limited")

# Matched-grid dilation ladder; each entry keeps the sample array and rescales the box
DILATION_LADDER: Tuple[Fraction, ...] = (Fraction(1, 2), Fraction(1), Fraction(2))
NESTING_LADDER: Tuple[Fraction, ...] = (Fraction(1, 4), Fraction(1), Fraction(4))

# (points per axis, half-width) for each suite
BOXES: Dict[str, Tuple[int, float]] = {
    "identities": (32, 6.0),
    "holder": (32, 6.0),
    "hls": (32, 8.0),
    "sobolev": (32, 8.0),
    "strichartz": (32, 12.0),
    "riesz_oracle": (32, 8.0),
    "propagator": (64, 12.0),
    "weak_norm": (128, 4.0),
    "conservation": (64, 12.0),
    "scaling": (64, 12.0),
    "picard": (32, 10.0),
    "scatter": (72, 27.0),
}

TOLERANCES: Dict[str, float] = {
    "power_identity": 1e-10,
    "indicator_closed_form": 1e-10,
    "nesting_dilation": 1e-6,
    "dilation_spread": 0.10,
    "hls_dilation": 1e-3,
    "weak_norm": 0.05,
    "riesz_oracle": 1e-3,
    "propagator_closed_form": 1e-6,
    "unitarity": 1e-10,
    "mass_drift": 1e-8,
    "energy_drift": 1e-4,
    "scaling_field": 1e-3,
    "scaling_norm": 1e-6,
    "contraction_ratio": 0.5,
    "picard_vs_simulate": 1e-4,
    "dependence_spread": 2.0,
    "scatter_decay": 2.0,
    "free_control": 1e-12,
    "spectral_tail": 0.10,
    "boundary_mass": 0.01,
}

# Fraction of spectral energy allowed in the top octave before a step aborts
SPECTRAL_TAIL_LIMIT = TOLERANCES["spectral_tail"]

# Small-data scattering run. At s = 0 the Cauchy differences fall only like
# 1/t, so the point sits at s = 1/2 where they fall like t^-3 once the data
# has dispersed (t >> width^2 / 2). Three checkpoints fit under the
# recurrence horizon of the "scatter" box for width-1 data.
SCATTER_POINT: Tuple[int, Fraction, Fraction, Fraction] = (3, Fraction(1, 2), Fraction(9, 4), Fraction(1, 8))
SCATTER_SCHEDULE: Dict[str, Fraction] = {
    "amplitude": Fraction(1, 10),
    "first_checkpoint": Fraction(1, 2),
    "checkpoints": Fraction(3),
    "dt": Fraction(1, 20),
}
