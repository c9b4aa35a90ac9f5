"""Registers of base-b slots and the number <-> digits <-> Fock index bijection.

Digits are little-endian throughout: ``digits[l]`` multiplies ``base**l``.
A basis state |n> of a q-slot register is the tensor product of its slot
states |g_0> x |g_1> x ... x |g_{q-1}>, so slot 0 is the leftmost factor.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import GuardViolation, InvalidDigit, OutOfRange, Overflow

# capacities are kept inside a signed 64-bit word
INT_LIMIT = 2**63 - 1

DEFAULT_GUARD = 2


def _check_base(base: int) -> None:
    if not isinstance(base, int) or base < 2:
        raise ValueError(f"base must be an integer >= 2, got {base!r}")


@dataclass(frozen=True)
class RegisterSpec:
    """A finite q-slot register, or a truncated stand-in for the infinite one.

    ``guard == 0`` means a finite register of ``slots`` slots.  ``guard > 0``
    means a truncated-infinite register: ``slots`` counts all slots and the
    top ``guard`` of them must stay empty.
    """

    base: int
    slots: int
    guard: int = 0

    def __post_init__(self):
        _check_base(self.base)
        if self.guard < 0:
            raise ValueError("guard must be >= 0")
        if self.guard == 0 and self.slots < 1:
            raise ValueError("a finite register needs at least one slot")
        if self.guard > 0 and (self.slots < 2 or self.slots <= self.guard):
            raise ValueError("truncated-infinite register needs slots > guard >= 1 and slots >= 2")
        if self.base**self.slots - 1 > INT_LIMIT:
            raise Overflow(f"{self.base}**{self.slots} exceeds the 64-bit range")

    @classmethod
    def finite(cls, base: int, slots: int) -> "RegisterSpec":
        return cls(base, slots)

    @classmethod
    def infinite_for(cls, n: int, base: int, guard: int = DEFAULT_GUARD) -> "RegisterSpec":
        """Truncated-infinite register wide enough for ``n`` plus ``guard`` empty slots."""
        if guard < 1:
            raise ValueError("guard must be >= 1")
        return cls(base, slot_count_for(n, base) + guard, guard)

    @property
    def infinite(self) -> bool:
        return self.guard > 0

    @property
    def max_digit(self) -> int:
        return self.base - 1

    @property
    def capacity(self) -> int:
        return self.base**self.slots - 1

    @property
    def dim(self) -> int:
        return self.base**self.slots

    @property
    def usable_max(self) -> int:
        """Largest n whose guard digits are all zero (equals capacity when finite)."""
        return self.base ** (self.slots - self.guard) - 1

    def check_guard(self, n: int) -> None:
        if self.guard and n > self.usable_max:
            raise GuardViolation(
                f"|{n}> has a nonzero digit in the top {self.guard} guard slot(s) "
                f"of a base-{self.base}, {self.slots}-slot register"
            )

    def check_index(self, n: int) -> None:
        if not 0 <= n <= self.capacity:
            raise OutOfRange(f"{n} outside [0, {self.capacity}]")


@dataclass(frozen=True)
class DigitVector:
    digits: tuple[int, ...]
    base: int

    def __post_init__(self):
        _check_base(self.base)
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        for l, d in enumerate(self.digits):
            if not 0 <= d < self.base:
                raise InvalidDigit(f"digit {d} at slot {l} is not in [0, {self.base - 1}]")

    @property
    def value(self) -> int:
        return decode_digits(self)

    def __len__(self):
        return len(self.digits)

    def __getitem__(self, l):
        return self.digits[l]

    def to_json(self) -> dict:
        return {"base": self.base, "digits": list(self.digits)}

    @classmethod
    def from_json(cls, obj: dict) -> "DigitVector":
        return cls(tuple(obj["digits"]), int(obj["base"]))


def capacity(spec: RegisterSpec) -> int:
    return spec.capacity


def slot_count_for(n: int, b: int) -> int:
    """Number of base-``b`` slots needed to write ``n``; 1 for ``n == 0``.

    Found by comparing against successive powers of b, never via log.
    """
    _check_base(b)
    if n < 0:
        raise OutOfRange("n must be a natural number")
    q, power = 1, b
    while power <= n:
        q += 1
        power *= b
    return q


def encode_digits(n: int, spec: RegisterSpec) -> DigitVector:
    """Little-endian digits of ``n``, zero-padded to the full register width."""
    if not 0 <= n <= spec.capacity:
        raise OutOfRange(f"{n} does not fit a {spec.slots}-slot base-{spec.base} register")
    digits = []
    for _ in range(spec.slots):
        n, g = divmod(n, spec.base)
        digits.append(g)
    return DigitVector(tuple(digits), spec.base)


def decode_digits(d: DigitVector | Sequence[int], base: int | None = None) -> int:
    if not isinstance(d, DigitVector):
        d = DigitVector(tuple(d), base)
    n = 0
    for g in reversed(d.digits):
        if not 0 <= g < d.base:
            raise InvalidDigit(f"digit {g} not valid in base {d.base}")
        n = n * d.base + g
    return n
