"""Free-particle operators as diagonal multipliers.

Every operator here is diagonal in a single representation: position for
the coordinate operator, momentum for everything built from the dispersion
relation. The relativistic velocity-squared operator

    v^2(p) = p^2 c^4 / (p^2 c^2 + E_s^2),   E_s = m c^2

makes the symmetrized form (1/2)[A B^-1 + B^-1 A] collapse to the plain
quotient because for a structureless particle E_s is a scalar, so the
bounded proper-time operator is simply

    t_s(p) = t * sqrt(1 - v^2(p)/c^2) = t * E_s / sqrt(p^2 c^2 + E_s^2)

with spectrum in [0, t] for t > 0 ([t, 0] for t < 0).
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np

from .constants import NATURAL_UNITS, PhysicalConstants
from .grid import Representation, WaveFunction, inner, to_momentum, to_position, boundary_amplitude

EDGE_DECAY_THRESHOLD = 1e-10
FLAG_TOLERANCE = 1e-14


class Dispersion(Enum):
    NONRELATIVISTIC = "nonrelativistic"
    RELATIVISTIC = "relativistic"


@dataclass(frozen=True)
class ParticleSpec:
    mass: float
    constants: PhysicalConstants = NATURAL_UNITS

    def __post_init__(self):
        if self.mass < 0.0:
            raise ValueError(f"mass must be nonnegative, got {self.mass}")

    @property
    def rest_energy(self):
        return self.mass * self.constants.c**2


@dataclass(frozen=True)
class DiagonalOperator:
    basis: Representation
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=complex, copy=True)
        if not np.all(np.isfinite(vals.real)) or not np.all(np.isfinite(vals.imag)):
            raise ValueError("operator values must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @cached_property
    def hermitian(self):
        return bool(np.max(np.abs(self.values.imag), initial=0.0) <= FLAG_TOLERANCE)

    @cached_property
    def unitary(self):
        return bool(
            np.max(np.abs(np.abs(self.values) - 1.0), initial=0.0) <= FLAG_TOLERANCE
        )


def _require_same_constants(grid, particle):
    if grid.constants != particle.constants:
        raise ValueError("grid and particle carry different physical constants")


def position_op(grid):
    """Multiplication by the grid coordinate (a sawtooth across the wrap)."""
    return DiagonalOperator(Representation.POSITION, grid.positions)


def momentum_op(grid):
    """Momentum operator: diagonal p_k in the momentum representation."""
    return DiagonalOperator(Representation.MOMENTUM, grid.momenta)


def total_energy_op(grid, particle, dispersion=Dispersion.RELATIVISTIC):
    """Total energy E(p): p^2/2m nonrelativistic, sqrt(m^2 c^4 + p^2 c^2) relativistic."""
    _require_same_constants(grid, particle)
    p = grid.momenta
    c = grid.constants.c
    if dispersion is Dispersion.NONRELATIVISTIC:
        if particle.mass <= 0.0:
            raise ValueError("nonrelativistic dispersion requires mass > 0")
        values = p**2 / (2.0 * particle.mass)
    elif dispersion is Dispersion.RELATIVISTIC:
        values = np.sqrt(particle.rest_energy**2 + (p * c) ** 2)
    else:
        raise ValueError(f"unknown dispersion {dispersion!r}")
    return DiagonalOperator(Representation.MOMENTUM, values)


def velocity_squared_values(grid, particle):
    """v^2(p) = p^2 c^4 / (p^2 c^2 + E_s^2); identically c^2 for a massless particle."""
    _require_same_constants(grid, particle)
    p = grid.momenta
    c = grid.constants.c
    if particle.mass == 0.0:
        return np.full(grid.n, c**2)
    return (p * c**2) ** 2 / ((p * c) ** 2 + particle.rest_energy**2)


def velocity_squared_op(grid, particle):
    return DiagonalOperator(Representation.MOMENTUM, velocity_squared_values(grid, particle))


def proper_time_op(grid, particle, t):
    """Bounded proper-time operator t * sqrt(1 - v^2(p)/c^2).

    The argument of the root is clipped to [0, 1] to absorb one-ulp
    negatives; the principal root keeps eigenvalues between 0 and t.
    """
    c = grid.constants.c
    v2 = velocity_squared_values(grid, particle)
    values = t * np.sqrt(np.clip(1.0 - v2 / c**2, 0.0, 1.0))
    return DiagonalOperator(Representation.MOMENTUM, values)


def apply(op, psi):
    """Pointwise multiplication; psi must already be in the operator's basis."""
    if psi.representation is not op.basis:
        raise ValueError(
            f"operator is diagonal in {op.basis.value}, state is in "
            f"{psi.representation.value}"
        )
    return WaveFunction(psi.grid, op.values * psi.amplitudes, psi.representation)


def expectation(op, psi):
    """<psi|A|psi> with the transform handled if the basis differs."""
    if psi.representation is not op.basis:
        psi = to_momentum(psi) if op.basis is Representation.MOMENTUM else to_position(psi)
    return inner(psi, apply(op, psi))


def commutator_xp_expectation(psi, edge_threshold=EDGE_DECAY_THRESHOLD):
    """<psi|[x,p]|psi>, which equals i*hbar*<psi|psi> for edge-decayed states.

    The coordinate operator is discontinuous at the periodic wrap, so the
    identity fails for states with weight there; such states are rejected
    rather than silently producing a wrong value.
    """
    edge = boundary_amplitude(psi)
    if edge >= edge_threshold:
        raise ValueError(
            f"state is not edge-decayed: boundary amplitude {edge:.3e} >= "
            f"{edge_threshold:.1e}; the commutator identity does not hold at "
            "the periodic wrap"
        )
    x_op = position_op(psi.grid)
    p_op = momentum_op(psi.grid)
    pos = to_position(psi)
    p_psi = to_position(apply(p_op, to_momentum(pos)))
    xp = apply(x_op, p_psi)
    px = to_position(apply(p_op, to_momentum(apply(x_op, pos))))
    return inner(pos, WaveFunction(pos.grid, xp.amplitudes - px.amplitudes, Representation.POSITION))
