"""Wigner quasi-probability distribution of a cavity density matrix on a
quadrature grid.

Conventions: hbar = 1 and alpha = (q + i p) / sqrt(2), i.e. the quadratures
are q = (a + a†)/sqrt(2) and p = -i (a - a†)/sqrt(2).  With this choice the
vacuum Wigner function is W(q, p) = (1/pi) exp(-q^2 - p^2), the
normalization integral over dq dp is 1, and |W| <= 1/pi everywhere.

The Fock-basis series over displaced-parity matrix elements is summed with
a Clenshaw recurrence over associated Laguerre polynomials, which stays
stable for any practical cutoff (no factorials are formed).  A direct
characteristic-function quadrature is provided as a slow cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .entanglement import DensityMatrix, ground_state, partial_trace
from .model import ModelConfig, build_full

__all__ = [
    "QuadratureGrid",
    "WignerGrid",
    "wigner",
    "wigner_normalization",
    "wigner_marginal",
    "marginal_variance",
    "ground_state_wigner",
    "wigner_characteristic",
]

WIGNER_BOUND = 1.0 / np.pi
WIGNER_BOUND_TOL = 1e-8

# |2 alpha|^n_max must stay representable; beyond this the recurrence
# would overflow before the Gaussian envelope is applied
_LOG_OVERFLOW = 700.0


@dataclass(frozen=True)
class QuadratureGrid:
    """Rectangular (q, p) evaluation grid."""

    q_min: float = -6.0
    q_max: float = 6.0
    p_min: float = -6.0
    p_max: float = 6.0
    n_q: int = 201
    n_p: int = 201

    def __post_init__(self) -> None:
        if not (self.q_min < self.q_max and self.p_min < self.p_max):
            raise ValueError("grid bounds must satisfy q_min < q_max and p_min < p_max")
        if self.n_q < 2 or self.n_p < 2:
            raise ValueError("grid needs at least 2 points per axis")

    def q_axis(self) -> np.ndarray:
        return np.linspace(self.q_min, self.q_max, self.n_q)

    def p_axis(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.n_p)


@dataclass(frozen=True)
class WignerGrid:
    """Real Wigner values on a quadrature grid; ``values[i, j]`` is
    W(q_axis[j], p_axis[i])."""

    grid: QuadratureGrid
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.n_p, self.grid.n_q):
            raise ValueError(
                f"values shape {values.shape} != (n_p, n_q) = "
                f"({self.grid.n_p}, {self.grid.n_q})"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("Wigner values contain non-finite entries")
        if np.max(np.abs(values)) > WIGNER_BOUND + WIGNER_BOUND_TOL:
            raise ValueError("Wigner values exceed the 1/pi extremal bound")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)


def _laguerre_series(level: int, x: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """Clenshaw evaluation of

        sum_n coeffs[n] (-1)^n sqrt(level! n! / (level+n)!) L_n^level(x)

    without forming factorials or individual polynomials.
    """
    if len(coeffs) == 1:
        y0, y1 = coeffs[0], 0.0
    elif len(coeffs) == 2:
        y0, y1 = coeffs[0], coeffs[1]
    else:
        k = len(coeffs)
        y0, y1 = coeffs[-2], coeffs[-1]
        for i in range(3, len(coeffs) + 1):
            k -= 1
            y0, y1 = (
                coeffs[-i] - y1 * np.sqrt(((k - 1.0) * (level + k - 1.0)) / ((level + k) * k)),
                y0 - y1 * ((level + 2.0 * k - 1.0) - x) / np.sqrt((level + k) * k),
            )
    return y0 - y1 * ((level + 1.0) - x) / np.sqrt(level + 1.0)


def wigner(rho: DensityMatrix, grid: QuadratureGrid) -> WignerGrid:
    """Wigner function of a cavity-only density matrix.

    Parameters
    ----------
    rho : DensityMatrix
        State over the cavity alone (dims of length 1).  Composite states
        must be reduced with ``partial_trace`` first.
    grid : QuadratureGrid
        Evaluation grid; the row index runs over p, the column over q.
    """
    if len(rho.dims) != 1:
        raise ValueError(
            f"wigner expects a cavity-only density matrix, got dims {rho.dims}; "
            "apply partial_trace(..., keep='cavity') first"
        )
    n = rho.dims[0]
    if n < 2:
        raise ValueError(f"cavity dimension must be >= 2, got {n}")

    q = grid.q_axis()
    p = grid.p_axis()
    amax = np.sqrt(2.0 * (max(abs(grid.q_min), abs(grid.q_max)) ** 2
                          + max(abs(grid.p_min), abs(grid.p_max)) ** 2))
    if n * np.log(max(amax, 1.0)) > _LOG_OVERFLOW:
        raise ValueError(
            f"grid extent {amax:.3g} with n_max {n} would overflow the "
            "Laguerre recurrence; shrink the grid or the cutoff"
        )

    qq, pp = np.meshgrid(q, p)
    a2 = np.sqrt(2.0) * (qq + 1j * pp)  # 2 alpha
    b = a2.real**2 + a2.imag**2

    # off-diagonals enter twice (rho is Hermitian); the real part at the
    # end supplies the conjugate diagonals
    scaled = rho.data * (2.0 - np.eye(n))
    w = np.full(a2.shape, scaled[0, n - 1], dtype=complex)
    for level in range(n - 2, -1, -1):
        w = _laguerre_series(level, b, np.diag(scaled, level)) + w * a2 / np.sqrt(level + 1.0)

    values = w.real * np.exp(-0.5 * b) / np.pi
    return WignerGrid(grid, values)


def wigner_normalization(w: WignerGrid) -> float:
    """Trapezoidal integral of W over the grid; approaches 1 when the grid
    covers the state's support."""
    inner = np.trapezoid(w.values, w.grid.q_axis(), axis=1)
    return float(np.trapezoid(inner, w.grid.p_axis()))


def wigner_marginal(w: WignerGrid, axis: str) -> np.ndarray:
    """Marginal distribution along one quadrature.

    ``axis='q'`` integrates over p and approximates the position density
    <q|rho|q>; ``axis='p'`` integrates over q.
    """
    if axis == "q":
        return np.trapezoid(w.values, w.grid.p_axis(), axis=0)
    if axis == "p":
        return np.trapezoid(w.values, w.grid.q_axis(), axis=1)
    raise ValueError(f"axis must be 'q' or 'p', got {axis!r}")


def marginal_variance(w: WignerGrid, axis: str) -> float:
    """Variance of the (renormalized) marginal along one quadrature."""
    coords = w.grid.q_axis() if axis == "q" else w.grid.p_axis()
    m = wigner_marginal(w, axis)
    total = np.trapezoid(m, coords)
    mean = np.trapezoid(coords * m, coords) / total
    return float(np.trapezoid((coords - mean) ** 2 * m, coords) / total)


def ground_state_wigner(cfg: ModelConfig, grid: QuadratureGrid) -> WignerGrid:
    """Wigner function of the reduced cavity ground state of the model."""
    state = ground_state(build_full(cfg))
    reduced = partial_trace(state.to_density(), keep="cavity")
    return wigner(reduced, grid)


def wigner_characteristic(
    rho: DensityMatrix,
    points,
    lam_max: float = 6.0,
    n_radial: int = 64,
    n_angular: int = 128,
) -> np.ndarray:
    """W at a handful of (q, p) points via the characteristic function
    chi(lam) = Tr(rho D(lam)).

    Evaluates (1/(2 pi^2)) * integral of chi(lam) exp(lam* gamma - lam gamma*)
    d^2 lam with gamma = (q + i p)/sqrt(2), over a disk |lam| <= lam_max in
    polar coordinates (Gauss-Legendre radially, uniform angularly).  The
    displacement operators are matrix exponentials in an enlarged Fock
    space so their low-index block matches the untruncated operator, and
    rotation of lam through a phase is applied analytically.  Much slower
    per value than ``wigner``; intended as an independent spot check.
    """
    if len(rho.dims) != 1:
        raise ValueError("cavity-only density matrix required")
    n = rho.dims[0]
    # a displaced |k> with k < n needs Fock indices up to roughly
    # lam_max^2 + O(lam_max) before its tail is negligible
    embed = n + int(np.ceil(lam_max**2 + 4.0 * lam_max)) + 10
    ladder = np.diag(np.sqrt(np.arange(1, embed, dtype=float)), k=1)
    generator = ladder.T - ladder  # D(r) = expm(r * generator) for real r

    nodes, gl_weights = np.polynomial.legendre.leggauss(n_radial)
    radii = 0.5 * lam_max * (nodes + 1.0)
    weights = 0.5 * lam_max * gl_weights

    theta = np.linspace(0.0, 2.0 * np.pi, n_angular, endpoint=False)
    ks, ms = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    # chi(r e^{i th}) = sum_{m,k} rho[m,k] e^{i th (k-m)} <k|D(r)|m>
    phase_pow = (ks - ms)[None, :, :] * theta[:, None, None]
    phases = np.exp(1j * phase_pow)

    chis = np.empty((n_radial, n_angular), dtype=complex)
    for i, r in enumerate(radii):
        block = scipy.linalg.expm(r * generator)[:n, :n]
        chis[i] = np.einsum("km,tkm->t", rho.data.T * block, phases)

    cos_t, sin_t = np.cos(theta), np.sin(theta)
    out = np.empty(len(points))
    for idx, (q, p) in enumerate(points):
        gamma = (q + 1j * p) / np.sqrt(2.0)
        # lam* gamma - lam gamma* = 2 i r (Im(gamma) cos th - Re(gamma) sin th)
        osc = np.exp(2j * np.outer(radii, gamma.imag * cos_t - gamma.real * sin_t))
        angular = (chis * osc).mean(axis=1) * 2.0 * np.pi
        val = np.sum(angular * radii * weights)
        out[idx] = val.real / (2.0 * np.pi**2)
    return out
