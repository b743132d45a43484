"""Physical constants (CODATA 2018; c, hbar and k_B are exact by definition)."""
from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConstants:
    c: float = 299_792_458.0  # m s^-1
    hbar: float = 1.054_571_817e-34  # J s
    k_B: float = 1.380_649e-23  # J K^-1


CONSTANTS = PhysicalConstants()
