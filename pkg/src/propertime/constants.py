"""Physical constants threaded through every computation.

Natural units (hbar = c = 1) are the default. Nothing downstream assumes
them: every formula carries its own hbar and c factors, so any positive
pair is valid (useful for unit-robustness tests).
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        if not (self.hbar > 0.0 and self.c > 0.0):
            raise ValueError(
                f"hbar and c must be positive, got hbar={self.hbar} c={self.c}"
            )


NATURAL_UNITS = PhysicalConstants()
