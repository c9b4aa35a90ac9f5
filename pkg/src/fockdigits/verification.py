"""Invariant sweeps behind ``fockdigits verify``.

Each suite checks library results against an independent integer oracle
and records failures instead of stopping at the first one.
"""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import base_change, multiboson, translation
from .errors import FockError
from .fock_core import RegisterSpec, decode_digits, encode_digits, slot_count_for
from .operator_engine import PureState
from .tolerances import DEFAULT, Tolerances

ACCEPTANCE_REGISTERS = ((2, 3), (2, 4), (3, 3), (5, 2), (10, 2))
MAX_FAILURES_KEPT = 100


@dataclass
class VerificationReport:
    suite: str
    parameters: dict
    cases: int = 0
    failures: list = field(default_factory=list)
    failure_count: int = 0
    max_residual: float = 0.0
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return self.failure_count == 0

    def check(self, passed: bool, **detail) -> bool:
        self.cases += 1
        if not passed:
            self.failure_count += 1
            if len(self.failures) < MAX_FAILURES_KEPT:
                self.failures.append(detail)
        return passed

    def residual(self, r: float) -> None:
        self.max_residual = max(self.max_residual, float(r))

    def to_json(self) -> dict:
        out = asdict(self)
        out["ok"] = self.ok
        return out


def _timed(suite: str, parameters: dict, body: Callable[[VerificationReport], None]) -> VerificationReport:
    report = VerificationReport(suite, parameters)
    start = time.perf_counter()
    try:
        body(report)
    except FockError as exc:
        report.check(False, error=f"{type(exc).__name__}: {exc}")
    report.wall_time = time.perf_counter() - start
    return report


def verify_floor(max_n: int = 5000, max_k: int = 64, tol: Tolerances = DEFAULT) -> VerificationReport:
    def body(r):
        n = np.arange(max_n + 1)
        for k in range(1, max_k + 1):
            value, imag = multiboson.floor_residue_value(n, k)
            rounded = np.rint(value)
            dist = np.abs(value - rounded)
            r.residual(max(dist.max(), np.abs(imag).max()))
            good = (rounded == n // k) & (dist < tol.integer_distance) & (np.abs(imag) < tol.imaginary)
            for i in np.flatnonzero(~good):
                r.check(False, n=int(n[i]), k=k, expected=int(n[i] // k), actual=float(value[i]),
                        residual=float(dist[i]), imag=float(imag[i]))
            r.cases += int(good.sum())
    return _timed("floor", {"max_n": max_n, "max_k": max_k}, body)


def verify_multiboson(max_n: int = 5000, max_k: int = 64, tol: Tolerances = DEFAULT) -> VerificationReport:
    """Series vs closed-form A_k, A_k^+ A_k = floor(n/k), and k floor(n/k) + n mod k = n."""
    def body(r):
        for k in range(1, min(max_k, 8) + 1):
            for n in range(min(max_n, 30) + 1):
                s = multiboson.annihilator_action_series(k, n)
                c = multiboson.annihilator_action_closed(k, n)
                r.residual(max((abs(s[i] - c[i]) for i in range(n + 1)), default=0.0))
                r.check(s.allclose(c, tol.series), op="A_k series vs closed", k=k, n=n)
                nk = multiboson.number_action_via_series(k, n)
                expect = PureState.basis(n + 1, n, n // k) if n >= k else PureState.zero(n + 1)
                r.check(nk.allclose(expect, tol.series), op="A_k^+ A_k", k=k, n=n, expected=n // k)
        n = np.arange(max_n + 1)
        for k in range(1, max_k + 1):
            value, _ = multiboson.floor_residue_value(n, k)
            remainder = n - k * value  # unrounded D_k eigenvalue
            dist = np.maximum(np.abs(remainder - n % k), np.abs(value - n // k))
            r.residual(dist.max())
            r.check(bool(np.all(dist < tol.integer_distance)), op="remainder identity (residues)", k=k)
            fl = multiboson.floor_eigenvalues(n, k, tol)
            rem = n - k * fl
            r.check(bool(np.all((k * fl + rem == n) & (rem >= 0) & (rem < k) & (rem == n % k))),
                    op="remainder identity (integer)", k=k)
    return _timed("multiboson", {"max_n": max_n, "max_k": max_k}, body)


def verify_slots(bases: Iterable[int] = range(2, 17), tol: Tolerances = DEFAULT) -> VerificationReport:
    bases = list(bases)

    def body(r):
        for b in bases:
            x = b - 1
            for g in range(b):
                up = translation.slot_raise(g, b)
                down = translation.slot_lower(g, b)
                if g < x:
                    back = translation.slot_lower(up.single()[0], b)
                    r.check(back == PureState.basis(b, g), op="S S^+", b=b, g=g)
                else:
                    r.check(up.is_zero(), op="S^+|x> = 0", b=b)
                if g > 0:
                    back = translation.slot_raise(down.single()[0], b)
                    r.check(back == PureState.basis(b, g), op="S^+ S", b=b, g=g)
                else:
                    r.check(down.is_zero(), op="S|0> = 0", b=b)
                quad = translation.delta_quadrature(g, x, 4 * b)
                delta = translation.delta_projector_eigenvalue(g, x)
                r.residual(abs(quad - delta))
                r.check(abs(quad - delta) < tol.amplitude and delta == int(g == x),
                        op="delta quadrature", b=b, g=g, expected=delta, actual=quad)
    return _timed("slots", {"bases": bases}, body)


def _registers(bases, slots):
    if bases is None and slots is None:
        return list(ACCEPTANCE_REGISTERS)
    return [(b, q) for b in (bases or [2, 3]) for q in (slots or [2, 3])]


def verify_translation(registers=ACCEPTANCE_REGISTERS) -> VerificationReport:
    registers = [tuple(x) for x in registers]

    def body(r):
        for b, q in registers:
            spec = RegisterSpec(b, q)
            for m in range(q):
                lit = translation.T_operator(m, spec, "sum")
                bor = translation.T_operator(m, spec, "borrow")
                for n in range(spec.dim):
                    for a, c, name in ((lit, bor, "T"), (lit.adjoint(), bor.adjoint(), "T^+")):
                        r.check(a.column(n) == c.column(n), op=f"{name}_{m} sum vs borrow", b=b, q=q, n=n)
                    target = n - b**m if n >= b**m else None
                    got = bor.column(n)
                    r.check(got == (PureState.zero(spec.dim) if target is None else PureState.basis(spec.dim, target)),
                            op=f"T_{m} action", b=b, q=q, n=n)
                    if n >= b**m:
                        try:
                            translation.single_summand_witness(m, n, spec)
                            r.check(True)
                        except AssertionError as exc:
                            r.check(False, op="one summand", b=b, q=q, m=m, n=n, error=str(exc))
                r.check(translation.adjoint_matches_transpose(m, spec, "sum"), op="adjoint", b=b, q=q, m=m)
    return _timed("translation", {"registers": registers}, body)


def verify_unitarity(registers=ACCEPTANCE_REGISTERS) -> VerificationReport:
    registers = [tuple(x) for x in registers]

    def body(r):
        for b, q in registers:
            spec = RegisterSpec(b, q)
            for m in range(q):
                region = translation.unitarity_region(m, spec)
                values = translation.commutator_classification(m, spec, "sum")
                for n, v in values.items():
                    r.check(v == region.expected(n), b=b, q=q, m=m, n=n, expected=region.expected(n), actual=v)
                special = b == 2 and m == q - 1
                r.check((region.unitary is None) == special, op="empty unitary range", b=b, q=q, m=m)
    return _timed("unitarity", {"registers": registers}, body)


def verify_digits(max_n: int = 10_000, bases: Iterable[int] = range(2, 11), literal_max_n: int = 1000,
                  tol: Tolerances = DEFAULT) -> VerificationReport:
    """Classical, spectral and quantum digits against the register encoding.

    The quantum route uses literal T_0 powers up to ``literal_max_n`` and the
    composite product of T_r powers for all n.
    """
    bases = list(bases)

    def body(r):
        ns = np.arange(max_n + 1)
        for b in bases:
            spectral = {}
            for l in range(slot_count_for(max_n, b)):
                if b ** (l + 1) <= tol.root_cap:
                    spectral[l] = multiboson.digit_eigenvalues(ns, b, l, "residues", tol)
            for n in range(max_n + 1):
                q = slot_count_for(n, b)
                expect = encode_digits(n, RegisterSpec(b, q)).digits
                routes = {
                    "classical": base_change.digits_classical(n, b).digits,
                    "quantum": base_change.digits_quantum(n, b, shift="composite").digits,
                }
                if n <= literal_max_n:
                    routes["quantum_T0"] = base_change.digits_quantum(n, b, shift="T0").digits
                if b**q <= tol.root_cap:
                    routes["spectral"] = tuple(int(spectral[l][n]) for l in range(q))
                else:
                    routes["spectral"] = base_change.digits_spectral(n, b, "division").digits
                for name, got in routes.items():
                    r.check(got == expect and decode_digits(got, b) == n,
                            n=n, b=b, route=name, expected=list(expect), actual=list(got))
    return _timed("digits", {"max_n": max_n, "bases": bases, "literal_max_n": literal_max_n}, body)


SUITES = ("floor", "multiboson", "slots", "translation", "unitarity", "digits")


def run_suite(name: str, max_n: int | None = None, max_k: int | None = None, bases=None, slots=None,
              tol: Tolerances = DEFAULT) -> list[VerificationReport]:
    if name == "all":
        return [r for s in SUITES for r in run_suite(s, max_n, max_k, bases, slots, tol)]
    if name == "floor":
        return [verify_floor(max_n if max_n is not None else 5000, max_k or 64, tol)]
    if name == "multiboson":
        return [verify_multiboson(max_n if max_n is not None else 5000, max_k or 64, tol)]
    if name == "slots":
        return [verify_slots(bases or range(2, 17), tol)]
    if name == "translation":
        return [verify_translation(_registers(bases, slots))]
    if name == "unitarity":
        return [verify_unitarity(_registers(bases, slots))]
    if name == "digits":
        n = max_n if max_n is not None else 10_000
        return [verify_digits(n, bases or range(2, 11), min(n, 1000), tol)]
    raise ValueError(f"unknown suite {name!r}")
