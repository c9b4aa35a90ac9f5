"""k-boson operators: integral part floor(n/k) as a roots-of-unity sum, the
annihilator A_k in series and closed form, remainders and base-b digits.

The integral part is written as

    floor(n/k) = (2n - k + 1) / (2k) + sum_{j=1}^{k-1} C_j zeta_j**n,

with zeta_j = exp(2 pi i j / k) and

    C_j = (zeta_j - 1)**-2 * prod_{l != j} (zeta_j - zeta_l)**-1.

For k = 1 the sum is empty.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import mpmath
import numpy as np

from .errors import BadK, NumericalDrift, OutOfRange, Overflow
from .fock_core import RegisterSpec
from .operator_engine import LinearOperator, PureState, diagonal
from .tolerances import DEFAULT, Tolerances

FloorRoute = Literal["residues", "division"]

# alpha_j^(k) and the series actions are exact only while j + k stays small
BRANDT_CAP = 40
_MP_DPS = 60
STIRLING_CAP = 30


@dataclass(frozen=True)
class ResidueCoefficients:
    k: int
    zetas: tuple[complex, ...]  # zeta_1 .. zeta_{k-1}
    coefficients: tuple[complex, ...]  # C_1 .. C_{k-1}

    @property
    def entries(self) -> list[tuple[complex, complex]]:
        return list(zip(self.zetas, self.coefficients))

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "coefficients": [
                {"j": j, "zeta": [z.real + 0.0, z.imag + 0.0], "C": [c.real + 0.0, c.imag + 0.0]}
                for j, (z, c) in enumerate(self.entries, start=1)
            ],
        }


def unit_roots(k: int) -> np.ndarray:
    """exp(2 pi i r / k) for r = 0..k-1, exact at the quarter turns."""
    r = np.arange(k)
    roots = np.exp(2j * np.pi * r / k)
    for quarter, value in enumerate((1, 1j, -1, -1j)):
        roots[4 * r == quarter * k] = value
    return roots


@lru_cache(maxsize=None)
def residue_coefficients(k: int) -> ResidueCoefficients:
    """C_j^(k) for j = 1..k-1, evaluated from the product formula.

    P(z) = 1 + z + ... + z^(k-1) = prod_{l=1}^{k-1} (z - zeta_l) only enters
    through that product.  The product is accumulated as a log-magnitude and
    a phase because for k in the thousands the running product of
    |zeta_j - zeta_l| underflows a double.
    """
    if not isinstance(k, (int, np.integer)) or k < 2:
        raise BadK(f"residue coefficients need k >= 2, got {k}")
    k = int(k)
    zetas = unit_roots(k)
    coeffs = []
    for j in range(1, k):
        others = np.delete(zetas[1:], j - 1)
        factors = np.concatenate(([zetas[j] - 1] * 2, zetas[j] - others))
        log_mag = -np.sum(np.log(np.abs(factors)))
        phase = math.remainder(-np.sum(np.angle(factors)), 2 * math.pi)
        coeffs.append(complex(cmath.rect(math.exp(log_mag), phase)))
    return ResidueCoefficients(k, tuple(complex(z) for z in zetas[1:]), tuple(coeffs))


@lru_cache(maxsize=None)
def _pair_table(k: int):
    """Pairs (j, k-j) folded into arrays; the self-paired j = k/2 is separate."""
    rc = residue_coefficients(k)
    C = np.array(rc.coefficients)
    js = np.arange(1, (k + 1) // 2)  # j < k - j
    roots = unit_roots(k)
    mid = C[k // 2 - 1] if k % 2 == 0 else None
    return js, C[js - 1], C[k - js - 1], roots, mid


def residue_sum(n, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Real and imaginary parts of sum_j C_j zeta_j**n for an array of n.

    Conjugate terms j and k-j are summed together so the real part comes out
    as 2 Re(C_j zeta_j**n) up to rounding; the imaginary part is what remains
    of Im(C_j zeta_j**n) + Im(C_{k-j} zeta_{k-j}**n) and is only a
    diagnostic.  zeta_j**n is read off the table of k-th roots at index
    (j n) mod k.
    """
    n = np.asarray(n, dtype=np.int64)
    real = np.zeros(n.shape)
    imag = np.zeros(n.shape)
    if k == 1:
        return real, imag
    js, Cj, Cpair, roots, mid = _pair_table(k)
    for j, c, cp in zip(js, Cj, Cpair):
        a = c * roots[(j * n) % k]
        b = cp * roots[((k - j) * n) % k]
        real += a.real + b.real
        imag += a.imag + b.imag
    if mid is not None:
        a = mid * roots[((k // 2) * n) % k]
        real += a.real
        imag += a.imag
    return real, imag


def floor_residue_value(n, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Unrounded value of the closed form for floor(n/k) and its imaginary residue."""
    if k < 1:
        raise BadK(f"k must be >= 1, got {k}")
    n = np.asarray(n, dtype=np.int64)
    real, imag = residue_sum(n, k)
    return (2 * n - k + 1) / (2 * k) + real, imag


def _round_checked(value, imag, tol: Tolerances, what: str) -> np.ndarray:
    rounded = np.rint(value)
    dist = np.abs(value - rounded)
    bad = (dist >= tol.integer_distance) | (np.abs(imag) >= tol.imaginary)
    if np.any(bad):
        i = int(np.flatnonzero(np.ravel(bad))[0])
        raise NumericalDrift(
            f"{what}: value {np.ravel(value)[i]!r} (imag {np.ravel(imag)[i]!r}) is not an integer within tolerance"
        )
    return rounded.astype(np.int64)


def floor_eigenvalues(n, k: int, tol: Tolerances = DEFAULT) -> np.ndarray:
    """Vectorized floor(n/k) from the residue closed form, with drift checks."""
    value, imag = floor_residue_value(n, k)
    return _round_checked(value, imag, tol, f"floor(n/{k})")


def floor_eigenvalue(n: int, k: int, tol: Tolerances = DEFAULT) -> int:
    if n < 0:
        raise OutOfRange("n must be a natural number")
    if k == 1:
        return int(n)
    return int(floor_eigenvalues(np.array([n]), k, tol)[0])


def number_operator(k: int, spec: RegisterSpec, route: FloorRoute = "residues",
                    tol: Tolerances = DEFAULT) -> LinearOperator:
    """N_k = floor(n/k) as a diagonal operator on the register."""
    if k < 1:
        raise BadK(f"k must be >= 1, got {k}")
    n = np.arange(spec.dim)
    vals = n // k if route == "division" else floor_eigenvalues(n, k, tol)
    return diagonal([float(v) for v in vals], f"N_{k}")


def remainder_operator(k: int, spec: RegisterSpec, route: FloorRoute = "residues",
                       tol: Tolerances = DEFAULT) -> LinearOperator:
    """D_k = n - k N_k, eigenvalue n mod k."""
    if k < 1:
        raise BadK(f"k must be >= 1, got {k}")
    n = np.arange(spec.dim)
    fl = n // k if route == "division" else floor_eigenvalues(n, k, tol)
    return diagonal([float(v) for v in n - k * fl], f"D_{k}")


# -- Brandt series ---------------------------------------------------------

@lru_cache(maxsize=None)
def _alpha_mp(j: int, k: int):
    with mpmath.workdps(_MP_DPS):
        total = mpmath.mpf(0)
        for l in range(j + 1):
            term = mpmath.sqrt(mpmath.mpf(1 + l // k) / (mpmath.factorial(l) * mpmath.factorial(l + k)))
            total += (-1) ** (j - l) / mpmath.factorial(j - l) * term
        return total


def _check_brandt(j: int, k: int) -> None:
    if j < 0 or k < 1:
        raise OutOfRange(f"need j >= 0 and k >= 1, got j={j}, k={k}")
    if j + k > BRANDT_CAP:
        raise Overflow(f"j + k = {j + k} exceeds the precision budget {BRANDT_CAP}")


def brandt_alpha(j: int, k: int) -> float:
    """alpha_j^(k) = sum_{l<=j} (-1)^(j-l)/(j-l)! * sqrt((1 + floor(l/k)) / (l! (l+k)!)).

    Summed at 60 significant digits, rounded to float once.
    """
    _check_brandt(j, k)
    return float(_alpha_mp(j, k))


def _series_amplitude(k: int, m: int):
    """sum_j alpha_j sqrt(m! (m+k)!) / (m-j)!  -- the single matrix element
    <m+k| A_k^+ |m> = <m| A_k |m+k> of the series, in extended precision."""
    _check_brandt(m, k)
    with mpmath.workdps(_MP_DPS):
        pref = mpmath.sqrt(mpmath.factorial(m) * mpmath.factorial(m + k))
        return sum((_alpha_mp(j, k) * pref / mpmath.factorial(m - j) for j in range(m + 1)),
                   mpmath.mpf(0))


def annihilator_action_series(k: int, n: int, dim: int | None = None) -> PureState:
    """A_k|n> from sum_j alpha_j a^+^j a^(j+k); terms with j + k > n vanish.

    a^(j+k)|n> = sqrt(n!/(n-j-k)!)|n-j-k> and a^+^j then returns to |n-k>
    with sqrt((n-k)!/(n-j-k)!), so every surviving term lands on |n-k>.
    """
    if k < 1 or n < 0:
        raise OutOfRange(f"need k >= 1 and n >= 0, got k={k}, n={n}")
    dim = n + 1 if dim is None else dim
    if n < k:
        return PureState.zero(dim)
    return PureState.basis(dim, n - k, float(_series_amplitude(k, n - k)))


def annihilator_adjoint_series(k: int, n: int, dim: int | None = None) -> PureState:
    """A_k^+|n> = sum_j alpha_j a^+^(j+k) a^j |n>, landing on |n+k>."""
    if k < 1 or n < 0:
        raise OutOfRange(f"need k >= 1 and n >= 0, got k={k}, n={n}")
    dim = n + k + 1 if dim is None else dim
    return PureState.basis(dim, n + k, float(_series_amplitude(k, n)))


def annihilator_action_closed(k: int, n: int, dim: int | None = None) -> PureState:
    """A_k|n> = a^k F_k(n)|n> = sqrt(floor(n/k)) |n-k>, zero for n < k."""
    if k < 1 or n < 0:
        raise OutOfRange(f"need k >= 1 and n >= 0, got k={k}, n={n}")
    dim = n + 1 if dim is None else dim
    if n < k:
        return PureState.zero(dim)
    # F_k(n) = sqrt(floor(n/k) (n-k)!/n!) and a^k contributes sqrt(n!/(n-k)!)
    return PureState.basis(dim, n - k, math.sqrt(n // k))


def number_action_via_series(k: int, n: int, dim: int | None = None) -> PureState:
    """A_k^+ A_k |n> with both factors taken from the series."""
    dim = n + 1 if dim is None else dim
    down = annihilator_action_series(k, n, dim)
    if down.is_zero():
        return PureState.zero(dim)
    m, amp = down.single()
    up = annihilator_adjoint_series(k, m, dim)
    return up * amp


@lru_cache(maxsize=None)
def _stirling_table(n: int) -> tuple[tuple[int, ...], ...]:
    rows = [(1,)]
    for m in range(n):
        prev = rows[-1] + (0,)
        row = [0] * (m + 2)
        for kk in range(m + 2):
            row[kk] = (prev[kk - 1] if kk else 0) - m * prev[kk]
        rows.append(tuple(row))
    return tuple(rows)


def stirling_first(n: int, k: int) -> int:
    """Signed Stirling number of the first kind, s(n+1,k) = s(n,k-1) - n s(n,k)."""
    if not 0 <= k <= n <= STIRLING_CAP:
        raise OutOfRange(f"need 0 <= k <= n <= {STIRLING_CAP}, got n={n}, k={k}")
    return _stirling_table(STIRLING_CAP)[n][k]


# -- digit operators -------------------------------------------------------

def _digit_residue_value(n, b: int, l: int):
    """(b-1)/2 + sum C^(b^l) zeta^n - b sum C^(b^(l+1)) zeta^n, unrounded."""
    lo_r, lo_i = residue_sum(n, b**l)
    hi_r, hi_i = residue_sum(n, b ** (l + 1))
    return (b - 1) / 2 + lo_r - b * hi_r, lo_i - b * hi_i


def digit_eigenvalues(n, b: int, l: int, route: FloorRoute = "residues",
                      tol: Tolerances = DEFAULT) -> np.ndarray:
    """l-th base-b digit of every n, i.e. floor(n/b^l) - b floor(n/b^(l+1))."""
    if b < 2 or l < 0:
        raise OutOfRange(f"need b >= 2 and l >= 0, got b={b}, l={l}")
    if b ** (l + 1) > 2**62:
        raise Overflow(f"{b}**{l + 1} is out of range")
    n = np.asarray(n, dtype=np.int64)
    if route == "division":
        return n // b**l - b * (n // b ** (l + 1))
    if route != "residues":
        raise ValueError(f"unknown route {route!r}")
    if b ** (l + 1) > tol.root_cap:
        raise Overflow(f"{b}**{l + 1} roots exceed the residue cap {tol.root_cap}")
    value, imag = _digit_residue_value(n, b, l)
    return _round_checked(value, imag, tol, f"digit {l} in base {b}")


def digit_eigenvalue(n: int, b: int, l: int, route: FloorRoute = "residues",
                     tol: Tolerances = DEFAULT) -> int:
    return int(digit_eigenvalues(np.array([n]), b, l, route, tol)[0])


def digit_operator(b: int, l: int, spec: RegisterSpec, route: FloorRoute = "residues",
                   tol: Tolerances = DEFAULT) -> LinearOperator:
    """D_b^(l): diagonal operator whose eigenvalue at |n> is the l-th base-b digit."""
    vals = digit_eigenvalues(np.arange(spec.dim), b, l, route, tol)
    return diagonal([float(v) for v in vals], f"D_{b}^({l})")
