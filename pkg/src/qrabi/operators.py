"""Dense operator algebra on a truncated qubit (x) Fock space.

Operators are plain dense complex matrices carrying the ordered list of
subsystem dimensions they act on.  The qubit factor always comes first in
composite spaces, so the flat index of basis state |s, n> is
``s * n_max + n`` with s = 0 for the excited qubit state and s = 1 for the
ground state.  hbar = 1 throughout; frequencies are in units of the cavity
frequency, so all matrix entries are dimensionless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "FockTruncation",
    "Operator",
    "annihilation",
    "creation",
    "number",
    "pauli",
    "identity",
    "tensor",
    "dagger",
    "is_hermitian",
]


@dataclass(frozen=True)
class FockTruncation:
    """Number of Fock states retained in the simulation basis |0> .. |n_max-1>."""

    n_max: int

    def __post_init__(self) -> None:
        if int(self.n_max) != self.n_max or self.n_max < 2:
            raise ValueError(f"n_max must be an integer >= 2, got {self.n_max!r}")
        object.__setattr__(self, "n_max", int(self.n_max))


@dataclass(frozen=True)
class Operator:
    """Square dense complex matrix with subsystem-dimension metadata.

    The matrix side must equal the product of ``dims``.  The stored array
    is made read-only, so instances are safe to share across threads.
    """

    data: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        data = np.array(self.data, dtype=complex, order="C")
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise ValueError(f"subsystem dims must all be >= 1, got {dims}")
        side = math.prod(dims)
        if data.ndim != 2 or data.shape != (side, side):
            raise ValueError(
                f"matrix shape {data.shape} does not match dims {dims} "
                f"(expected {side}x{side})"
            )
        data.setflags(write=False)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def _require_same_dims(self, other: "Operator") -> None:
        if self.dims != other.dims:
            raise ValueError(f"dims mismatch: {self.dims} vs {other.dims}")

    def __add__(self, other: "Operator") -> "Operator":
        self._require_same_dims(other)
        return Operator(self.data + other.data, self.dims)

    def __sub__(self, other: "Operator") -> "Operator":
        self._require_same_dims(other)
        return Operator(self.data - other.data, self.dims)

    def __mul__(self, scalar: complex) -> "Operator":
        return Operator(self.data * scalar, self.dims)

    __rmul__ = __mul__

    def __neg__(self) -> "Operator":
        return Operator(-self.data, self.dims)

    def __matmul__(self, other: "Operator") -> "Operator":
        self._require_same_dims(other)
        return Operator(self.data @ other.data, self.dims)

    def dagger(self) -> "Operator":
        return Operator(self.data.conj().T, self.dims)


def annihilation(trunc: FockTruncation) -> Operator:
    """Truncated bosonic annihilation operator: <n-1|a|n> = sqrt(n)."""
    n = trunc.n_max
    return Operator(np.diag(np.sqrt(np.arange(1, n)), k=1), (n,))


def creation(trunc: FockTruncation) -> Operator:
    """Truncated bosonic creation operator, the adjoint of ``annihilation``."""
    return annihilation(trunc).dagger()


def number(trunc: FockTruncation) -> Operator:
    """Photon number operator a†a (exactly diag(0, 1, ..., n_max-1))."""
    return creation(trunc) @ annihilation(trunc)


_PAULI = {
    "x": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}


def pauli(which: str) -> Operator:
    """Standard 2x2 Pauli matrix; index 0 is the excited state |e>, so
    sigma_z = diag(+1, -1)."""
    try:
        return Operator(_PAULI[which], (2,))
    except KeyError:
        raise ValueError(f"axis must be one of 'x', 'y', 'z', got {which!r}") from None


def identity(*dims: int) -> Operator:
    """Identity operator on the space with the given subsystem dims."""
    return Operator(np.eye(math.prod(dims)), tuple(dims))


def tensor(left: Operator, right: Operator) -> Operator:
    """Kronecker product; dims concatenate, left factor varies slowest."""
    return Operator(np.kron(left.data, right.data), left.dims + right.dims)


def dagger(op: Operator) -> Operator:
    """Conjugate transpose, dims preserved."""
    return op.dagger()


def is_hermitian(op: Operator, tol: float) -> bool:
    """True iff the max-abs entry of (op - op†) is at most ``tol``."""
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    return bool(np.max(np.abs(op.data - op.data.conj().T)) <= tol)
