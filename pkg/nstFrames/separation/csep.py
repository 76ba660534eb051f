"""csep

Per-scale geometric separation by analysis l1 minimisation:

    min_W  |A W|_1 + |B (f - W)|_1,    S = f - W

with A the Meyer wavelet and B the shearlet analysis operator, both
Parseval on the corona of f.  Solved with the primal-dual (Chambolle-Pock)
iteration; the dual variables live in the two coefficient spaces and
their prox is the projection onto the l_inf unit ball.

The problem is positively homogeneous; it is solved for f / rms(f) and
the split scaled back.  Iteration stops on the relative primal change
|W_k - W_(k-1)| / |W_k|.

"""

from dataclasses import dataclass, field
import logging
import math
from typing import List
import numpy as np

from ..transform.grid import FrequencyGrid
from ..transform.tiles import FrameSpec
from ..transform.transform import analyze, synthesize
from ..utils.constants import solver_max_iter, solver_rel_tol

log = logging.getLogger(__name__)

@dataclass(frozen=True)
class SolverParams():
    max_iter: int = solver_max_iter
    rel_tol: float = solver_rel_tol
    step: float = 0.99 / math.sqrt(2.0)     # tau = sigma, tau * sigma * |K|^2 < 1

    def __post_init__(self):
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1, got %s" % self.max_iter)
        if not 0.0 < self.step <= 1.0 / math.sqrt(2.0):
            raise ValueError("step must be in (0, 1/sqrt(2)], got %s" % self.step)

@dataclass
class SolveResult():
    W: np.ndarray
    S: np.ndarray
    objective: float
    iterations: int
    converged: bool
    trace: List[float] = field(default_factory=list)
    residual: float = 0.0       # last relative primal change

def separation_frames(j, grid):
    """Wavelet and shearlet frames over scales j-1..j+1, clipped to the grid."""
    top = min(j + 1, grid.max_scale())
    lo = max(j - 1, 0)
    if top < j:
        log.warning("scale %d: frames stop at %d on %r, corona not fully covered", j, top, grid)
    return FrameSpec("wavelet", lo, top), FrameSpec("shearlet", lo, top)

def l1(coeffs):
    return float(np.sum(np.abs(coeffs.to_vector())))

def objective(W, S, wavelets, shearlets):
    return l1(analyze(W, wavelets)) + l1(analyze(S, shearlets))

def csep_solve(f_j, j, params=None, frames=None, workers=1):
    """Split f_j into (W_j, S_j) with W_j + S_j = f_j exactly."""
    params = params or SolverParams()
    f_j = np.asarray(f_j, dtype=float)
    grid = FrequencyGrid(f_j.shape[0])
    wavelets, shearlets = frames or separation_frames(j, grid)
    if not np.any(f_j):
        zero = np.zeros_like(f_j)
        return SolveResult(zero, zero.copy(), 0.0, 0, True, [0.0])

    def A(x):
        return analyze(x, wavelets, workers=workers)

    def B(x):
        return analyze(x, shearlets, workers=workers)

    unit = float(np.linalg.norm(f_j)) / math.sqrt(f_j.size)
    tau = sigma = params.step
    Bf = B(f_j / unit)
    W = np.zeros_like(f_j)
    W_bar = W.copy()
    qA = A(W)
    qB = Bf.map(np.zeros_like)

    best_W = W.copy()
    best = l1(qA) + l1(Bf)
    trace = [best]
    residual = np.inf
    converged = False
    iteration = 0
    for iteration in range(1, params.max_iter + 1):
        qA = (qA + sigma * A(W_bar)).map(lambda v: np.clip(v, -1.0, 1.0))
        qB = (qB + sigma * (B(W_bar) - Bf)).map(lambda v: np.clip(v, -1.0, 1.0))
        W_old = W
        W = W - tau * (synthesize(qA, workers=workers) + synthesize(qB, workers=workers))
        W_bar = 2.0 * W - W_old

        value = l1(A(W)) + l1(Bf - B(W))
        if value < best:
            best = value
            best_W = W.copy()
        trace.append(best)
        residual = float(np.linalg.norm(W - W_old)) / max(float(np.linalg.norm(W)), 1e-300)
        log.debug("scale %d iteration %d objective %.12g step %.3g", j, iteration, value, residual)
        if residual <= params.rel_tol:
            converged = True
            break

    if not converged:
        log.warning("scale %d: no convergence after %d iterations (step %.3g), returning best iterate",
                    j, iteration, residual)
    W = best_W * unit
    return SolveResult(W, f_j - W, best * unit, iteration, converged, [t * unit for t in trace], residual)
