"""Natural numbers as Fock states: multiboson and translation operators that
extract base-b digits, with brute-force verification."""
from .base_change import digits_classical, digits_quantum, digits_spectral, quotient_chain
from .fock_core import DigitVector, RegisterSpec, decode_digits, encode_digits, slot_count_for
from .multiboson import floor_eigenvalue, residue_coefficients
from .tolerances import DEFAULT, Tolerances

__all__ = [
    "DEFAULT", "DigitVector", "RegisterSpec", "Tolerances", "decode_digits", "digits_classical",
    "digits_quantum", "digits_spectral", "encode_digits", "floor_eigenvalue", "quotient_chain",
    "residue_coefficients", "slot_count_for",
]
