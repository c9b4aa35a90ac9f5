"""Base-b digits of n by three independent routes.

classical  gamma_l = M_l - b M_{l+1} with M_j = floor(n / b**j)
spectral   gamma_l = eigenvalue of the digit operator D_b^(l) at |n>
quantum    |gamma_l> = T_0^(W_l) |M_l>, W_l = b M_{l+1}, on a host register
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .errors import Overflow, ShiftOutOfRange
from .fock_core import DigitVector, RegisterSpec, slot_count_for
from .multiboson import FloorRoute, digit_eigenvalue, floor_eigenvalue
from .operator_engine import PureState, apply
from .tolerances import DEFAULT, Tolerances
from .translation import Route, T_operator, read_basis, shift_all_ops

SpectralRoute = Literal["auto", "residues", "division"]
ShiftMode = Literal["T0", "composite"]

# the literal operator-sum T_0 is only offered for small n
SUM_ROUTE_MAX_N = 1000


@dataclass(frozen=True)
class QuotientChain:
    n: int
    base: int
    M: tuple[int, ...]  # M_0 .. M_q

    @property
    def W(self) -> tuple[int, ...]:
        """Shifts W_l = b M_{l+1}, l = 0 .. q-1."""
        return tuple(self.base * m for m in self.M[1:])

    @property
    def digits(self) -> DigitVector:
        return DigitVector(tuple(m - w for m, w in zip(self.M, self.W)), self.base)


def _zero(b: int) -> DigitVector:
    return DigitVector((0,), b)


def quotient_chain(n: int, b: int, floor_route: FloorRoute = "division",
                   tol: Tolerances = DEFAULT) -> QuotientChain:
    """M_j = floor(n / b**j) for j = 0..q; the residue route needs b**q <= root cap."""
    if n < 1:
        raise ValueError("the quotient chain starts from n >= 1")
    q = slot_count_for(n, b)
    if floor_route == "residues":
        if b**q > tol.root_cap:
            raise Overflow(f"{b}**{q} roots exceed the residue cap {tol.root_cap}")
        M = [floor_eigenvalue(n, b**j, tol) for j in range(q + 1)]
    elif floor_route == "division":
        M = [n // b**j for j in range(q + 1)]
    else:
        raise ValueError(f"unknown route {floor_route!r}")
    assert M[0] == n and M[q] == 0
    return QuotientChain(n, b, tuple(M))


def digits_classical(n: int, b: int, floor_route: FloorRoute = "division",
                     tol: Tolerances = DEFAULT) -> DigitVector:
    if n == 0:
        return _zero(b)
    return quotient_chain(n, b, floor_route, tol).digits


def digits_spectral(n: int, b: int, route: SpectralRoute = "auto",
                    tol: Tolerances = DEFAULT) -> DigitVector:
    """Digit operator eigenvalues at |n>.

    ``auto`` uses the roots-of-unity form while b**q fits the root cap and
    integer division beyond it.
    """
    if n == 0:
        return _zero(b)
    q = slot_count_for(n, b)
    if route == "auto":
        route = "residues" if b**q <= tol.root_cap else "division"
    return DigitVector(tuple(digit_eigenvalue(n, b, l, route, tol) for l in range(q)), b)


def host_register(n: int, host_base: int = 10, guard: int = 1) -> RegisterSpec:
    return RegisterSpec.infinite_for(n, host_base, guard)


def quantum_digit(M: int, W: int, host: RegisterSpec, shift: ShiftMode = "T0",
                  route: Route = "borrow") -> int:
    """Occupation number of T_0^W |M> on the host register."""
    if W > M:
        raise ShiftOutOfRange(f"shift {W} exceeds {M}")
    if shift == "composite":
        return shift_all_ops(M, W, host, "subtract", route)
    if shift != "T0":
        raise ValueError(f"unknown shift mode {shift!r}")
    T0 = T_operator(0, host, route)
    psi = PureState.basis(host.dim, M)
    for _ in range(W):
        psi = apply(T0, psi)
    return read_basis(psi)


def digits_quantum(n: int, b: int, host_base: int = 10, shift: ShiftMode = "T0",
                   route: Route = "borrow", guard: int = 1) -> DigitVector:
    """gamma_l read off T_0^(W_l)|M_l> for each slot.

    ``shift="composite"`` realizes the same translation as
    prod_r T_r^(beta_r) with beta the host-base digits of W_l, which takes
    at most (host_base - 1) * slots steps instead of W_l.
    """
    if n == 0:
        return _zero(b)
    if route == "sum" and n > SUM_ROUTE_MAX_N:
        raise ValueError(f"the operator-sum route is limited to n <= {SUM_ROUTE_MAX_N}")
    host = host_register(n, host_base, guard)
    chain = quotient_chain(n, b)
    return DigitVector(tuple(quantum_digit(M, W, host, shift, route)
                             for M, W in zip(chain.M, chain.W)), b)


def three_way(n: int, b: int, tol: Tolerances = DEFAULT, shift: ShiftMode = "T0",
              route: Route = "borrow") -> dict:
    """All three routes plus the agreement flag, in the CLI result schema."""
    routes = {
        "classical": digits_classical(n, b).digits,
        "spectral": digits_spectral(n, b, tol=tol).digits,
        "quantum": digits_quantum(n, b, shift=shift, route=route).digits,
    }
    agree = len(set(routes.values())) == 1
    return {
        "n": n,
        "base": b,
        "digits": list(routes["classical"]),
        "routes": {k: list(v) for k, v in routes.items()},
        "agree": agree,
    }
