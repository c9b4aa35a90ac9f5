"""Sparse states and column-defined linear operators on a truncated Fock basis.

An operator is given by what it does to each basis state |j>; the dense
matrix is only assembled on request (and refused above ``matrix_cap``).
"""
from __future__ import annotations

import csv
import io
from typing import Callable, Iterable, Mapping

import numpy as np

from .errors import DimMismatch, DimTooLarge
from .tolerances import DEFAULT


class PureState:
    """Vector in C^dim stored as an ordered map index -> amplitude.

    Exact zeros are dropped, so the zero vector (an annihilated state) is the
    empty map.
    """

    __slots__ = ("dim", "_amps")

    def __init__(self, dim: int, amplitudes: Mapping[int, complex] | Iterable = ()):
        self.dim = int(dim)
        items = amplitudes.items() if isinstance(amplitudes, Mapping) else amplitudes
        amps = {}
        for i, c in items:
            i = int(i)
            if not 0 <= i < self.dim:
                raise DimMismatch(f"index {i} outside a {self.dim}-dimensional space")
            amps[i] = amps.get(i, 0) + complex(c)
        self._amps = {i: amps[i] for i in sorted(amps) if amps[i] != 0}

    @classmethod
    def basis(cls, dim: int, n: int, amplitude: complex = 1.0) -> "PureState":
        if not 0 <= n < dim:
            raise DimMismatch(f"index {n} outside a {dim}-dimensional space")
        out = object.__new__(cls)
        out.dim = int(dim)
        out._amps = {int(n): complex(amplitude)} if amplitude != 0 else {}
        return out

    @classmethod
    def zero(cls, dim: int) -> "PureState":
        return cls(dim)

    @classmethod
    def from_vector(cls, vec) -> "PureState":
        vec = np.asarray(vec, dtype=complex)
        return cls(len(vec), {int(i): vec[i] for i in np.flatnonzero(vec)})

    @property
    def amplitudes(self) -> Mapping[int, complex]:
        return dict(self._amps)

    def items(self):
        return self._amps.items()

    def __getitem__(self, n: int) -> complex:
        return self._amps.get(n, 0j)

    def __len__(self):
        return len(self._amps)

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(abs(c) <= tol for c in self._amps.values())

    def norm(self) -> float:
        return float(np.sqrt(sum(abs(c) ** 2 for c in self._amps.values())))

    def inner(self, other: "PureState") -> complex:
        """<self|other>, conjugate-linear in ``self``."""
        _same_dim(self.dim, other.dim)
        return sum((c.conjugate() * other[i] for i, c in self._amps.items()), 0j)

    def to_vector(self) -> np.ndarray:
        vec = np.zeros(self.dim, dtype=complex)
        for i, c in self._amps.items():
            vec[i] = c
        return vec

    def single(self) -> tuple[int, complex]:
        """The (index, amplitude) of a one-term state."""
        if len(self._amps) != 1:
            raise ValueError(f"state has {len(self._amps)} nonzero components, expected 1")
        return next(iter(self._amps.items()))

    def allclose(self, other: "PureState", tol: float = DEFAULT.amplitude) -> bool:
        _same_dim(self.dim, other.dim)
        keys = set(self._amps) | set(other._amps)
        return all(abs(self[i] - other[i]) <= tol for i in keys)

    def __add__(self, other: "PureState") -> "PureState":
        _same_dim(self.dim, other.dim)
        return PureState(self.dim, list(self._amps.items()) + list(other._amps.items()))

    def __sub__(self, other: "PureState") -> "PureState":
        return self + other * -1

    def __mul__(self, scalar: complex) -> "PureState":
        return PureState(self.dim, {i: scalar * c for i, c in self._amps.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, PureState) and self.dim == other.dim and self._amps == other._amps

    def __repr__(self):
        if not self._amps:
            return f"PureState(dim={self.dim}, 0)"
        terms = " + ".join(f"{c:.6g}|{i}>" for i, c in self._amps.items())
        return f"PureState(dim={self.dim}, {terms})"


def _same_dim(a: int, b: int) -> None:
    if a != b:
        raise DimMismatch(f"dimension {a} != {b}")


Column = Callable[[int], PureState]


class LinearOperator:
    """Linear map fixed by its action on basis columns.

    ``adjoint`` may be supplied as a zero-argument factory returning the
    adjoint operator; otherwise the adjoint is the conjugate transpose of
    the materialized matrix.  Columns are memoized on first use.
    """

    def __init__(self, dim: int, column: Column, name: str = "A",
                 adjoint: Callable[[], "LinearOperator"] | None = None):
        self.dim = int(dim)
        self.name = name
        self._column = column
        self._adjoint_factory = adjoint
        self._adjoint = None
        self._columns: dict[int, PureState] = {}
        self._matrix = None

    def column(self, j: int) -> PureState:
        col = self._columns.get(j)
        if col is None:
            if not 0 <= j < self.dim:
                raise DimMismatch(f"column {j} outside a {self.dim}-dimensional space")
            col = self._column(j)
            if col.dim != self.dim:
                raise DimMismatch(f"{self.name}: column {j} has dimension {col.dim}")
            self._columns[j] = col
        return col

    def __call__(self, psi: PureState) -> PureState:
        return apply(self, psi)

    def adjoint(self) -> "LinearOperator":
        if self._adjoint is None:
            if self._adjoint_factory is not None:
                adj = self._adjoint_factory()
            else:
                adj = from_matrix(materialize(self).conj().T, name=f"{self.name}^+")
            adj._adjoint = self
            self._adjoint = adj
        return self._adjoint

    @property
    def dag(self) -> "LinearOperator":
        return self.adjoint()

    def matrix(self, cap: int = DEFAULT.matrix_cap) -> np.ndarray:
        return materialize(self, cap)

    def __matmul__(self, other: "LinearOperator") -> "LinearOperator":
        return compose(self, other)

    def __add__(self, other: "LinearOperator") -> "LinearOperator":
        return add(self, other)

    def __sub__(self, other: "LinearOperator") -> "LinearOperator":
        return add(self, scale(-1, other))

    def __rmul__(self, c: complex) -> "LinearOperator":
        return scale(c, self)

    def __repr__(self):
        return f"LinearOperator({self.name}, dim={self.dim})"


def apply(A: LinearOperator, psi: PureState) -> PureState:
    _same_dim(A.dim, psi.dim)
    if len(psi) == 1:
        (j, c), = psi.items()
        col = A.column(j)
        return col if c == 1 else col * c
    terms = []
    for j, c in psi.items():
        terms.extend((i, c * a) for i, a in A.column(j).items())
    return PureState(A.dim, terms)


def compose(A: LinearOperator, B: LinearOperator) -> LinearOperator:
    """A o B: apply B first."""
    _same_dim(A.dim, B.dim)
    return LinearOperator(
        A.dim, lambda j: apply(A, B.column(j)), f"{A.name}{B.name}",
        adjoint=lambda: compose(B.adjoint(), A.adjoint()),
    )


def compose_all(ops: Iterable[LinearOperator], dim: int) -> LinearOperator:
    """Product of ``ops`` written left to right; the last one acts first."""
    ops = list(ops)
    if not ops:
        return identity(dim)
    out = ops[-1]
    for op in reversed(ops[:-1]):
        out = compose(op, out)
    return out


def power(A: LinearOperator, p: int) -> LinearOperator:
    return compose_all([A] * p, A.dim)


def add(A: LinearOperator, B: LinearOperator) -> LinearOperator:
    _same_dim(A.dim, B.dim)
    return LinearOperator(
        A.dim, lambda j: A.column(j) + B.column(j), f"({A.name}+{B.name})",
        adjoint=lambda: add(A.adjoint(), B.adjoint()),
    )


def sum_operators(ops: Iterable[LinearOperator], dim: int) -> LinearOperator:
    ops = list(ops)
    if not ops:
        return zero(dim)
    out = ops[0]
    for op in ops[1:]:
        out = add(out, op)
    return out


def scale(c: complex, A: LinearOperator) -> LinearOperator:
    return LinearOperator(
        A.dim, lambda j: A.column(j) * c, f"{c}*{A.name}",
        adjoint=lambda: scale(complex(c).conjugate(), A.adjoint()),
    )


def adjoint(A: LinearOperator) -> LinearOperator:
    return A.adjoint()


def identity(dim: int) -> LinearOperator:
    op = LinearOperator(dim, lambda j: PureState.basis(dim, j), "I")
    op._adjoint = op
    return op


def zero(dim: int) -> LinearOperator:
    op = LinearOperator(dim, lambda j: PureState.zero(dim), "0")
    op._adjoint = op
    return op


def diagonal(values, name: str = "D") -> LinearOperator:
    """Diagonal operator; real ``values`` give a self-adjoint operator."""
    values = list(values)
    dim = len(values)
    op = LinearOperator(dim, lambda j: PureState.basis(dim, j, values[j]), name)
    if all(complex(v).imag == 0 for v in values):
        op._adjoint = op
    else:
        op._adjoint_factory = lambda: diagonal([complex(v).conjugate() for v in values], f"{name}^+")
    return op


def from_matrix(M, name: str = "M") -> LinearOperator:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimMismatch(f"expected a square matrix, got shape {M.shape}")
    op = LinearOperator(M.shape[0], lambda j: PureState.from_vector(M[:, j]), name)
    op._matrix = M
    return op


def materialize(A: LinearOperator, cap: int = DEFAULT.matrix_cap) -> np.ndarray:
    if A.dim > cap:
        raise DimTooLarge(f"{A.name} has dimension {A.dim} > cap {cap}")
    if A._matrix is None:
        M = np.zeros((A.dim, A.dim), dtype=complex)
        for j in range(A.dim):
            for i, c in A.column(j).items():
                M[i, j] = c
        A._matrix = M
    return A._matrix.copy()


def commutator(A: LinearOperator, B: LinearOperator, cap: int = DEFAULT.matrix_cap) -> LinearOperator:
    """[A, B] = AB - BA, assembled as a dense matrix."""
    _same_dim(A.dim, B.dim)
    a, b = materialize(A, cap), materialize(B, cap)
    return from_matrix(a @ b - b @ a, f"[{A.name},{B.name}]")


def commutator_action(A: LinearOperator, B: LinearOperator, psi: PureState) -> PureState:
    """[A, B] applied to ``psi`` without materializing anything."""
    return apply(A, apply(B, psi)) - apply(B, apply(A, psi))


def to_triplets(A: LinearOperator | np.ndarray, drop: float = DEFAULT.drop,
                cap: int = DEFAULT.matrix_cap) -> dict:
    """Sparse export ``{"dim": d, "entries": [[row, col, re, im], ...]}`` in row-major order."""
    M = materialize(A, cap) if isinstance(A, LinearOperator) else np.asarray(A, dtype=complex)
    entries = []
    for r, c in zip(*np.nonzero(np.abs(M) >= drop)):
        z = M[r, c]
        entries.append([int(r), int(c), float(z.real), float(z.imag)])
    return {"dim": int(M.shape[0]), "entries": entries}


def triplets_to_matrix(obj: dict) -> np.ndarray:
    M = np.zeros((obj["dim"], obj["dim"]), dtype=complex)
    for r, c, re, im in obj["entries"]:
        M[r, c] = complex(re, im)
    return M


def triplets_to_csv(obj: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["row", "col", "re", "im"])
    for r, c, re, im in obj["entries"]:
        w.writerow([r, c, repr(re), repr(im)])
    return buf.getvalue()
