"""Slot ladder operators and the register translators t_l, T_m.

T_m subtracts b**m from n and borrows across empty slots:

    T_m = t_m + sum_{k=m}^{q-2} prod_{j=m}^{k} (t_j^+)^x t_{k+1},  T_{q-1} = t_{q-1}

Two realizations are kept: the literal operator sum built from t operators
(``route="sum"``) and a digit-wise borrow/carry procedure (``route="borrow"``).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Literal

import numpy as np

from .errors import (AllSummandsVanish, InvalidDigit, MultipleSummands, OutOfRange,
                     QuadratureUnderResolved, ShiftOutOfRange, SlotOutOfRange)
from .fock_core import RegisterSpec, decode_digits, encode_digits
from .operator_engine import (LinearOperator, PureState, apply, commutator, commutator_action,
                              compose, compose_all, materialize, power, sum_operators)
from .tolerances import DEFAULT

Route = Literal["borrow", "sum"]
Direction = Literal["subtract", "add"]


# -- single slot -----------------------------------------------------------

def _check_digit(g: int, b: int) -> None:
    if not 0 <= g <= b - 1:
        raise InvalidDigit(f"digit {g} not in [0, {b - 1}]")


def delta_projector_eigenvalue(g: int, x: int) -> int:
    """floor(g/x) on 0 <= g <= x, i.e. the Kronecker delta at the top digit."""
    if x < 1 or not 0 <= g <= x:
        raise InvalidDigit(f"digit {g} not in [0, {x}]")
    return g // x


def delta_quadrature(g: int, x: int, M: int | None = None) -> float:
    """(1/2pi) int_0^{2pi} exp(-i (x - g) t) dt by M-point sampling on |z| = 1.

    Exact up to rounding whenever M > x, since then x - g is never a
    nonzero multiple of M.  Defaults to M = 4b = 4(x + 1).
    """
    if x < 1 or not 0 <= g <= x:
        raise InvalidDigit(f"digit {g} not in [0, {x}]")
    M = 4 * (x + 1) if M is None else M
    if M <= x or M < 4:
        raise QuadratureUnderResolved(f"M = {M} samples cannot resolve offsets up to {x}")
    d = x - g
    total = sum(cmath.exp(-2j * math.pi * ((d * s) % M) / M) for s in range(M))
    return (total / M).real


def _raise_element(g: int, x: int) -> float:
    """<g+1| a^+ (g+1)^(-1/2) (I - floor(g/x)) |g>.

    The a^+ factor gives sqrt(g+1); taking the square root of the ratio keeps
    the product exactly 1 instead of sqrt(g+1) * (1/sqrt(g+1)).
    """
    if g == x:
        return 0.0
    return math.sqrt(Fraction(g + 1, g + 1)) * (1 - delta_projector_eigenvalue(g, x))


def slot_raise(g: int, b: int) -> PureState:
    _check_digit(g, b)
    amp = _raise_element(g, b - 1)
    return PureState.basis(b, g + 1, amp) if amp else PureState.zero(b)


def slot_lower(g: int, b: int) -> PureState:
    """Adjoint of the raising operator: |g-1> for g >= 1, zero for g = 0."""
    _check_digit(g, b)
    if g == 0:
        return PureState.zero(b)
    amp = _raise_element(g - 1, b - 1)
    return PureState.basis(b, g - 1, amp) if amp else PureState.zero(b)


def slot_operator(b: int, kind: Literal["lower", "raise"]) -> LinearOperator:
    if kind not in ("lower", "raise"):
        raise ValueError(kind)
    other = "raise" if kind == "lower" else "lower"
    act = slot_lower if kind == "lower" else slot_raise
    return LinearOperator(b, lambda g: act(g, b), "S" if kind == "lower" else "S^+",
                          adjoint=lambda: slot_operator(b, other))


# -- register translators --------------------------------------------------

def _check_slot(l: int, spec: RegisterSpec) -> None:
    if not 0 <= l < spec.slots:
        raise SlotOutOfRange(f"slot {l} outside [0, {spec.slots - 1}]")


def _embed(l: int, spec: RegisterSpec, act, name: str, adjoint_factory) -> LinearOperator:
    """I_b^(x)l (x) S (x) I_b^(x)(q-l-1) on the register's basis states."""
    step = spec.base**l

    def column(n: int) -> PureState:
        g = (n // step) % spec.base
        out = act(g, spec.base)
        return PureState(spec.dim, [(n + (h - g) * step, c) for h, c in out.items()])

    return LinearOperator(spec.dim, column, name, adjoint=adjoint_factory)


@lru_cache(maxsize=256)
def t_operator(l: int, spec: RegisterSpec) -> LinearOperator:
    """t_l: |n> -> |n - b^l> when digit l is nonzero, else 0."""
    _check_slot(l, spec)
    return _embed(l, spec, slot_lower, f"t_{l}", lambda: t_dagger(l, spec))


@lru_cache(maxsize=256)
def t_dagger(l: int, spec: RegisterSpec) -> LinearOperator:
    _check_slot(l, spec)
    return _embed(l, spec, slot_raise, f"t_{l}^+", lambda: t_operator(l, spec))


def borrow_subtract(n: int, m: int, spec: RegisterSpec) -> int | None:
    """n - b^m by schoolbook borrowing from slot m upward; None if it runs out."""
    digits = list(encode_digits(n, spec).digits)
    for l in range(m, spec.slots):
        if digits[l] > 0:
            digits[l] -= 1
            return decode_digits(digits, spec.base)
        digits[l] = spec.max_digit
    return None


def carry_add(n: int, m: int, spec: RegisterSpec) -> int | None:
    """n + b^m by carrying from slot m upward; None if it overflows the register."""
    digits = list(encode_digits(n, spec).digits)
    for l in range(m, spec.slots):
        if digits[l] < spec.max_digit:
            digits[l] += 1
            return decode_digits(digits, spec.base)
        digits[l] = 0
    return None


def _guarded(op: LinearOperator, spec: RegisterSpec) -> LinearOperator:
    """Wrap ``op`` so every output component is checked against the guard slots."""
    if not spec.infinite:
        return op
    inner = op._column

    def column(n: int) -> PureState:
        out = inner(n)
        for i, _ in out.items():
            spec.check_guard(i)
        return out

    op._column = column
    return op


def _borrow_T(m: int, spec: RegisterSpec) -> LinearOperator:
    def column(n: int) -> PureState:
        out = borrow_subtract(n, m, spec)
        return PureState.zero(spec.dim) if out is None else PureState.basis(spec.dim, out)

    return _guarded(LinearOperator(spec.dim, column, f"T_{m}",
                                   adjoint=lambda: _carry_T(m, spec)), spec)


def _carry_T(m: int, spec: RegisterSpec) -> LinearOperator:
    def column(n: int) -> PureState:
        out = carry_add(n, m, spec)
        return PureState.zero(spec.dim) if out is None else PureState.basis(spec.dim, out)

    return _guarded(LinearOperator(spec.dim, column, f"T_{m}^+",
                                   adjoint=lambda: _borrow_T(m, spec)), spec)


def T_summands(m: int, spec: RegisterSpec) -> list[LinearOperator]:
    """[t_m, (t_m^+)^x t_{m+1}, (t_m^+)^x (t_{m+1}^+)^x t_{m+2}, ...].

    Entry i (i >= 1) is the summand with k = m + i - 1 that decrements slot
    m + i.  (t_j^+)^x is an x-fold composition, not a closed form.
    """
    _check_slot(m, spec)
    x = spec.max_digit
    out = [t_operator(m, spec)]
    for k in range(m, spec.slots - 1):
        raises = [power(t_dagger(j, spec), x) for j in range(m, k + 1)]
        out.append(compose_all(raises + [t_operator(k + 1, spec)], spec.dim))
    return out


@lru_cache(maxsize=256)
def T_operator(m: int, spec: RegisterSpec, route: Route = "borrow") -> LinearOperator:
    """T_m; ``T_operator(...).adjoint()`` is the addition operator T_m^+."""
    _check_slot(m, spec)
    if route == "borrow":
        return _borrow_T(m, spec)
    if route == "sum":
        op = sum_operators(T_summands(m, spec), spec.dim)
        op.name = f"T_{m}"
        factory = op._adjoint_factory
        op._adjoint_factory = lambda: _guarded(factory(), spec)
        return _guarded(op, spec)
    raise ValueError(f"unknown route {route!r}")


def T_dagger(m: int, spec: RegisterSpec, route: Route = "borrow") -> LinearOperator:
    return T_operator(m, spec, route).adjoint()


@dataclass(frozen=True)
class SummandWitness:
    """Which summand of T_m acts on a state: ``k`` is None for the bare t_m."""

    m: int
    k: int | None
    end_slot: int

    @property
    def direct(self) -> bool:
        return self.k is None


def single_summand_witness(m: int, n: int, spec: RegisterSpec) -> SummandWitness:
    """The unique summand of T_m that does not annihilate |n>, for n >= b^m."""
    _check_slot(m, spec)
    if not spec.base**m <= n <= spec.capacity:
        raise OutOfRange(f"need {spec.base}**{m} <= n <= {spec.capacity}, got {n}")
    psi = PureState.basis(spec.dim, n)
    live = [i for i, s in enumerate(T_summands(m, spec)) if not apply(s, psi).is_zero()]
    if not live:
        raise AllSummandsVanish(f"every summand of T_{m} annihilates |{n}>")
    if len(live) > 1:
        raise MultipleSummands(f"summands {live} of T_{m} all act on |{n}>")
    i = live[0]
    return SummandWitness(m, None if i == 0 else m + i - 1, m + i)


# -- composite shifts ------------------------------------------------------

def _check_shift(n: int, w: int, spec: RegisterSpec, direction: Direction) -> None:
    if w < 0 or n < 0:
        raise ShiftOutOfRange("n and w must be natural numbers")
    top = spec.usable_max
    if direction == "subtract":
        ok = w <= n <= top
    elif direction == "add":
        ok = n <= top and (spec.infinite or n + w <= top)
    else:
        raise ValueError(f"unknown direction {direction!r}")
    if not ok:
        raise ShiftOutOfRange(f"cannot {direction} {w} from/to {n} within [0, {top}]")
    if direction == "add" and w > spec.capacity:
        raise ShiftOutOfRange(f"shift {w} does not fit the register")


def read_basis(state: PureState, tol: float = DEFAULT.amplitude) -> int:
    """Index of a single basis state with unit amplitude."""
    if state.is_zero():
        raise ShiftOutOfRange("the translation annihilated the state")
    n, amp = state.single()
    if abs(amp - 1) > tol:
        raise ValueError(f"amplitude {amp} on |{n}> is not 1")
    return n


def _pick(m: int, spec: RegisterSpec, direction: Direction, route: Route) -> LinearOperator:
    T = T_operator(m, spec, route)
    return T if direction == "subtract" else T.adjoint()


def shift_all_ops(n: int, w: int, spec: RegisterSpec, direction: Direction = "subtract",
                  route: Route = "borrow") -> int:
    """n -/+ w as prod_r T_r^(beta_r) |n>, beta = base-b digits of w."""
    _check_shift(n, w, spec, direction)
    beta = encode_digits(w, spec).digits
    psi = PureState.basis(spec.dim, n)
    # the product is written T_0^beta_0 ... T_{q-1}^beta_{q-1}: the top slot acts first
    for r in reversed(range(spec.slots)):
        T = _pick(r, spec, direction, route)
        for _ in range(beta[r]):
            psi = apply(T, psi)
    return read_basis(psi)


def shift_T0_power(n: int, w: int, spec: RegisterSpec, direction: Direction = "subtract",
                   route: Route = "borrow") -> int:
    """n -/+ w as T_0^w |n> (or (T_0^+)^w |n>)."""
    _check_shift(n, w, spec, direction)
    T = _pick(0, spec, direction, route)
    psi = PureState.basis(spec.dim, n)
    for _ in range(w):
        psi = apply(T, psi)
    return read_basis(psi)


# -- unitarity ranges ------------------------------------------------------

@dataclass(frozen=True)
class UnitarityRegion:
    """Index ranges, inclusive, of the left vacuum, unitary range and right vacuum.

    ``unitary`` is None when empty; ``rv`` is None for a truncated-infinite
    register, whose unitary range is cut at ``usable_max - b**m``.
    """

    m: int
    base: int
    slots: int
    lv: tuple[int, int]
    unitary: tuple[int, int] | None
    rv: tuple[int, int] | None

    def expected(self, n: int) -> int:
        """Commutator value [T_m, T_m^+] at |n>: +1 on LV, -1 on RV, 0 otherwise."""
        if self.lv[0] <= n <= self.lv[1]:
            return 1
        if self.rv is not None and self.rv[0] <= n <= self.rv[1]:
            return -1
        return 0

    def to_json(self, commutator_ok: bool | None = None) -> dict:
        return {
            "m": self.m, "base": self.base, "slots": self.slots,
            "LV": list(self.lv),
            "unitary": None if self.unitary is None else list(self.unitary),
            "RV": None if self.rv is None else list(self.rv),
            "commutator_ok": commutator_ok,
        }


def unitarity_region(m: int, spec: RegisterSpec) -> UnitarityRegion:
    _check_slot(m, spec)
    b, q, step = spec.base, spec.slots, spec.base**m
    lv = (0, step - 1)
    if spec.infinite:
        hi = spec.usable_max - step
        unitary = (step, hi) if step <= hi else None
        return UnitarityRegion(m, b, q, lv, unitary, None)
    N = spec.capacity
    unitary = (step, N - step) if step <= N - step else None
    return UnitarityRegion(m, b, q, lv, unitary, (b**q - step, N))


def commutator_classification(m: int, spec: RegisterSpec, route: Route = "borrow") -> dict[int, int]:
    """Per-state value c with [T_m, T_m^+]|n> = c|n>.

    Finite registers go through the materialized commutator; truncated-infinite
    ones are probed state by state up to ``usable_max - b**m``.
    """
    T = T_operator(m, spec, route)
    Td = T.adjoint()
    if spec.infinite:
        top = spec.usable_max - spec.base**m
        states = ((n, commutator_action(T, Td, PureState.basis(spec.dim, n))) for n in range(top + 1))
    else:
        C = commutator(T, Td)
        states = ((n, C.column(n)) for n in range(spec.dim))
    out = {}
    for n, col in states:
        off = [i for i, c in col.items() if i != n and abs(c) > DEFAULT.amplitude]
        val = col[n]
        if off or abs(val.imag) > DEFAULT.amplitude or abs(val.real - round(val.real)) > DEFAULT.amplitude:
            raise ValueError(f"[T_{m}, T_{m}^+] does not act diagonally with integer value on |{n}>")
        out[n] = int(round(val.real))
    return out


def check_commutator(m: int, spec: RegisterSpec, route: Route = "borrow") -> tuple[UnitarityRegion, bool]:
    region = unitarity_region(m, spec)
    values = commutator_classification(m, spec, route)
    return region, all(v == region.expected(n) for n, v in values.items())


def adjoint_matches_transpose(m: int, spec: RegisterSpec, route: Route = "borrow") -> bool:
    T = T_operator(m, spec, route)
    return bool(np.array_equal(materialize(T.adjoint()), materialize(T).conj().T))
