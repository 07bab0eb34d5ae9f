"""Ground-state extraction, partial trace, and von Neumann entropy.

Entropy is measured in bits (log base 2), so a maximally entangled
qubit-cavity state has S = 1 exactly.
"""

from __future__ import annotations

import dataclasses
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .model import ModelConfig, build_full, with_coupling
from .operators import Operator
from .spectra import Hamiltonian, SweepError, eigensystem

__all__ = [
    "PureState",
    "DensityMatrix",
    "EntropySweep",
    "ground_state",
    "partial_trace",
    "von_neumann_entropy",
    "entropy_sweep",
    "expectation",
]

# eigenvalues of a reduced state in [-CLAMP_NEGATIVE, 0) are treated as
# roundoff and clamped; anything below -REJECT_NEGATIVE is a broken input
CLAMP_NEGATIVE = 1e-10
REJECT_NEGATIVE = 1e-8

DEGENERACY_RTOL = 1e-10


@dataclass(frozen=True)
class PureState:
    """Normalized state vector over the composite qubit (x) cavity basis.

    ``quasi_degenerate`` is set when the state was extracted from a
    nearly degenerate ground doublet, in which case observables derived
    from it are sensitive to tiny perturbations.
    """

    amplitudes: np.ndarray
    dims: tuple[int, ...]
    energy: float | None = None
    quasi_degenerate: bool = False

    def __post_init__(self) -> None:
        amp = np.array(self.amplitudes, dtype=complex)
        if abs(np.linalg.norm(amp) - 1.0) > 1e-10:
            raise ValueError("state vector is not normalized within 1e-10")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))

    def to_density(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()), self.dims)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace complex matrix over one or more subsystems.

    Hermiticity and trace are validated on construction; positivity is
    enforced where eigenvalues are actually consumed (entropy).
    """

    data: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        data = np.array(self.data, dtype=complex)
        if np.max(np.abs(data - data.conj().T)) > 1e-10:
            raise ValueError("density matrix is not Hermitian within 1e-10")
        if abs(np.trace(data).real - 1.0) > 1e-10:
            raise ValueError("density matrix trace differs from 1 by more than 1e-10")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))


def ground_state(h: Hamiltonian) -> PureState:
    """Eigenvector of the smallest eigenvalue, with the global phase fixed
    by making the largest-magnitude amplitude real and positive.

    When the two lowest eigenvalues agree to within 1e-10 relative (the
    large-g parity doublet), the strict lowest vector is still returned
    and the quasi-degeneracy flag is set.
    """
    es = eigensystem(h)
    amp = es.vectors[:, 0].copy()
    k = int(np.argmax(np.abs(amp)))
    amp *= np.abs(amp[k]) / amp[k]
    amp /= np.linalg.norm(amp)
    e0, e1 = float(es.values[0]), float(es.values[1])
    flagged = (e1 - e0) < DEGENERACY_RTOL * (1.0 + abs(e0))
    return PureState(amp, h.op.dims, energy=e0, quasi_degenerate=flagged)


def partial_trace(rho: DensityMatrix, keep: str) -> DensityMatrix:
    """Reduced density matrix of one subsystem of a bipartite state.

    Parameters
    ----------
    rho : DensityMatrix
        State over [qubit, cavity] (dims of length 2, qubit first).
    keep : {'qubit', 'cavity'}
        Subsystem to keep; the other one is traced out.
    """
    if len(rho.dims) != 2:
        raise ValueError(f"partial trace needs a bipartite state, got dims {rho.dims}")
    d0, d1 = rho.dims
    blocks = rho.data.reshape(d0, d1, d0, d1)
    if keep == "qubit":
        reduced = np.trace(blocks, axis1=1, axis2=3)
        return DensityMatrix(reduced, (d0,))
    if keep == "cavity":
        reduced = np.trace(blocks, axis1=0, axis2=2)
        return DensityMatrix(reduced, (d1,))
    raise ValueError(f"keep must be 'qubit' or 'cavity', got {keep!r}")


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S = -sum_k lambda_k log2 lambda_k, with 0 log 0 := 0."""
    lam = np.linalg.eigvalsh(rho.data)
    if lam[0] < -REJECT_NEGATIVE:
        raise ValueError(
            f"density matrix has eigenvalue {lam[0]:.3e} < -{REJECT_NEGATIVE:g}; not PSD"
        )
    lam = lam[lam > 0.0]
    if lam.size == 0:
        return 0.0
    # clamp at 0: eigenvalues a rounding step above 1 would otherwise
    # produce a tiny negative entropy
    return float(max(0.0, -(lam * np.log2(lam)).sum()))


@dataclass(frozen=True)
class EntropySweep:
    """Ground-state qubit entropy (bits) of both model variants per
    coupling grid point, with per-point quasi-degeneracy flags."""

    g_grid: np.ndarray
    s_qrm: np.ndarray
    s_qrma: np.ndarray
    degenerate_qrm: np.ndarray
    degenerate_qrma: np.ndarray

    def rows(self):
        """Iterate (g, S_QRM, S_QRMA) tuples in grid order."""
        return zip(self.g_grid, self.s_qrm, self.s_qrma)


def _point_entropy(base: ModelConfig, g: float, dia: bool) -> tuple[float, bool]:
    cfg = dataclasses.replace(with_coupling(base, g), include_diamagnetic=dia)
    try:
        state = ground_state(build_full(cfg))
        reduced = partial_trace(state.to_density(), keep="qubit")
        return von_neumann_entropy(reduced), state.quasi_degenerate
    except SweepError:
        raise
    except Exception as exc:
        raise SweepError(g, exc) from exc


def entropy_sweep(base: ModelConfig, g_grid, workers: int | None = None) -> EntropySweep:
    """Entanglement entropy of the ground state for both model variants.

    ``base.include_diamagnetic`` is ignored: the table always contains one
    column per variant, computed from the same remaining parameters.
    """
    grid = np.asarray(g_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("g_grid must be a non-empty 1-D sequence")

    def point(g: float) -> tuple[float, bool, float, bool]:
        s0, f0 = _point_entropy(base, g, dia=False)
        s1, f1 = _point_entropy(base, g, dia=True)
        return s0, f0, s1, f1

    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(point, grid))
    else:
        results = [point(g) for g in grid]

    s_qrm, flag_qrm, s_qrma, flag_qrma = map(np.array, zip(*results))
    return EntropySweep(grid, s_qrm, s_qrma, flag_qrm.astype(bool), flag_qrma.astype(bool))


def expectation(op: Operator, state: PureState) -> complex:
    """<psi|O|psi> for a pure state over the same space as ``op``."""
    if op.dims != state.dims:
        raise ValueError(f"dims mismatch: operator {op.dims} vs state {state.dims}")
    return complex(np.vdot(state.amplitudes, op.data @ state.amplitudes))
