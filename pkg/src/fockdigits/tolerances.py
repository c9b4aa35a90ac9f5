"""Numerical tolerances used across the package, kept in one place."""
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    integer_distance: float = 1e-6  # residue sum vs nearest integer
    imaginary: float = 1e-9  # leftover imaginary part of a residue sum
    amplitude: float = 1e-12  # state amplitudes, slot algebra, quadrature
    series: float = 1e-8  # multiboson series vs closed form, per amplitude
    drop: float = 1e-14  # entries below this are omitted on export
    matrix_cap: int = 4096  # largest dimension materialized densely
    root_cap: int = 4096  # largest root-of-unity order used by digit operators


DEFAULT = Tolerances()
