"""Hermitian eigendecomposition, coupling sweeps, and avoided-crossing
detection.

Sweeps are data parallel across grid points: each point is an independent
dense diagonalization, and rows are assembled in grid order regardless of
scheduling, so results are reproducible bit for bit for a given build.
"""

from __future__ import annotations

import dataclasses
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .model import Hamiltonian, ModelConfig, build_full, model_tag, with_coupling
from .operators import FockTruncation, Operator, is_hermitian

__all__ = [
    "EigenSystem",
    "SpectrumSweep",
    "CrossingReport",
    "TruncationCheck",
    "SweepError",
    "eigensystem",
    "sweep_spectrum",
    "find_avoided_crossings",
    "check_truncation",
]


class SweepError(RuntimeError):
    """Failure of one grid point of a parameter sweep."""

    def __init__(self, g: float, cause: Exception):
        super().__init__(f"sweep failed at g = {g!r}: {cause}")
        self.g = g
        self.cause = cause


@dataclass(frozen=True)
class EigenSystem:
    """Full real spectrum (ascending) and the matching orthonormal
    eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray


@dataclass(frozen=True)
class SpectrumSweep:
    """Lowest ``k`` eigenvalues per coupling grid point.

    ``levels[i]`` holds the sorted lowest eigenvalues at ``g_grid[i]``.
    """

    g_grid: np.ndarray
    levels: np.ndarray
    model_tag: str


@dataclass(frozen=True)
class CrossingReport:
    """Location and size of the minimal gap between two adjacent levels.

    ``at_boundary`` is set when the minimum sits at a sweep endpoint, in
    which case no parabolic refinement was applied and the gap may still
    be decreasing beyond the window.
    """

    level_pair: tuple[int, int]
    g_at_min: float
    min_gap: float
    at_boundary: bool


@dataclass(frozen=True)
class TruncationCheck:
    """Change in the lowest eigenvalues when the Fock cutoff is doubled."""

    n_max: int
    n_max_doubled: int
    max_shift: float
    converged: bool


def _matrix_of(h: Hamiltonian | Operator) -> np.ndarray:
    op = h.op if isinstance(h, Hamiltonian) else h
    if not is_hermitian(op, 1e-10):
        raise ValueError("matrix is not Hermitian within 1e-10")
    return op.data


def eigensystem(h: Hamiltonian | Operator) -> EigenSystem:
    """Dense Hermitian eigendecomposition, eigenvalues ascending."""
    values, vectors = scipy.linalg.eigh(_matrix_of(h))
    return EigenSystem(values, vectors)


def _lowest_levels(cfg: ModelConfig, g: float, k: int) -> np.ndarray:
    try:
        h = build_full(with_coupling(cfg, g))
        return scipy.linalg.eigvalsh(h.op.data)[:k]
    except Exception as exc:  # re-raise with the offending grid point
        raise SweepError(g, exc) from exc


def sweep_spectrum(
    base: ModelConfig,
    g_grid,
    k_levels: int,
    workers: int | None = None,
) -> SpectrumSweep:
    """Lowest ``k_levels`` eigenvalues of the full model at each coupling.

    Parameters
    ----------
    base : ModelConfig
        Configuration whose ``g`` is replaced by each grid value.
    g_grid : array_like
        Strictly ascending, non-empty coupling values (units of omega_c).
    k_levels : int
        Number of levels per grid point; at most 2 * n_max.
    workers : int, optional
        Thread count for the data-parallel sweep; None or 1 runs serially.
    """
    grid = np.asarray(g_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("g_grid must be a non-empty 1-D sequence")
    if grid.size > 1 and not np.all(np.diff(grid) > 0):
        raise ValueError("g_grid must be strictly ascending")
    dim = 2 * base.trunc.n_max
    if not 1 <= k_levels <= dim:
        raise ValueError(f"k_levels must be in [1, {dim}], got {k_levels}")

    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda g: _lowest_levels(base, g, k_levels), grid))
    else:
        rows = [_lowest_levels(base, g, k_levels) for g in grid]

    return SpectrumSweep(grid, np.vstack(rows), model_tag(base))


def _parabola_min(xs: np.ndarray, ys: np.ndarray, i: int) -> tuple[float, float]:
    """Vertex of the parabola through points i-1, i, i+1, clamped to the
    bracketing interval.  Falls back to the grid point when the three
    points are collinear."""
    x0, x1, x2 = xs[i - 1], xs[i], xs[i + 1]
    y0, y1, y2 = ys[i - 1], ys[i], ys[i + 1]
    d1, d2 = x1 - x0, x1 - x2
    den = d1 * (y1 - y2) - d2 * (y1 - y0)
    if den == 0.0:
        return float(x1), float(y1)
    xv = x1 - 0.5 * (d1 * d1 * (y1 - y2) - d2 * d2 * (y1 - y0)) / den
    xv = float(min(max(xv, x0), x2))
    l0 = (xv - x1) * (xv - x2) / ((x0 - x1) * (x0 - x2))
    l1 = (xv - x0) * (xv - x2) / ((x1 - x0) * (x1 - x2))
    l2 = (xv - x0) * (xv - x1) / ((x2 - x0) * (x2 - x1))
    yv = float(y0 * l0 + y1 * l1 + y2 * l2)
    return xv, max(yv, 0.0)


def find_avoided_crossings(sweep: SpectrumSweep, pair: tuple[int, int]) -> CrossingReport:
    """Minimal gap between the adjacent levels ``pair = (k, k+1)``.

    Interior minima are refined by three-point parabolic interpolation of
    the gap; a minimum at a grid endpoint is reported unrefined with
    ``at_boundary`` set.
    """
    k, k1 = pair
    if k1 != k + 1:
        raise ValueError(f"pair must be adjacent levels (k, k+1), got {pair}")
    n_rows, n_levels = sweep.levels.shape
    if n_rows < 3:
        raise ValueError("sweep needs at least 3 grid points")
    if k < 0 or k1 >= n_levels:
        raise ValueError(f"pair {pair} outside the {n_levels} swept levels")

    gap = sweep.levels[:, k1] - sweep.levels[:, k]
    i = int(np.argmin(gap))
    if i == 0 or i == n_rows - 1:
        return CrossingReport((k, k1), float(sweep.g_grid[i]), float(gap[i]), True)
    g_min, gap_min = _parabola_min(sweep.g_grid, gap, i)
    return CrossingReport((k, k1), g_min, gap_min, False)


def check_truncation(cfg: ModelConfig, k_levels: int, tol: float) -> TruncationCheck:
    """Compare the lowest ``k_levels`` eigenvalues at n_max and 2 n_max.

    The basis is considered converged when no level moves by more than
    ``tol`` under doubling.
    """
    n = cfg.trunc.n_max
    doubled = dataclasses.replace(cfg, trunc=FockTruncation(2 * n))
    lo = scipy.linalg.eigvalsh(build_full(cfg).op.data)[:k_levels]
    hi = scipy.linalg.eigvalsh(build_full(doubled).op.data)[:k_levels]
    shift = float(np.max(np.abs(lo - hi)))
    return TruncationCheck(n, 2 * n, shift, shift < tol)
