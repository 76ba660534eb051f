"""separate

Per-scale separation of a point + curve mixture: corona filtering, the l1
split, the separation error ratio and the cluster diagnostics (delta_j,
cluster coherence and the resulting error bound).

"""

from dataclasses import dataclass, field
import logging
from typing import List
import numpy as np

from ..transform.grid import FrequencyGrid
from ..transform.transform import analyze
from ..utils.errors import GridMismatch
from ..utils.parallel import ordered_map
from .coherence import curve_cluster, delta_j, error_bound, frame_cluster_coherence, point_cluster
from .corona import corona_decompose
from .csep import SolverParams, csep_solve, separation_frames

log = logging.getLogger(__name__)

@dataclass
class SeparationResult():
    j: int
    W: np.ndarray = field(repr=False)
    S: np.ndarray = field(repr=False)
    P: np.ndarray = field(repr=False)
    C: np.ndarray = field(repr=False)
    ratio: float
    point_error: float
    curve_error: float
    feasibility: float
    iterations: int
    objective: float
    converged: bool
    trace: List[float] = field(default_factory=list, repr=False)
    delta: float = np.nan
    mu_c: float = np.nan
    bound: float = np.nan
    bound_holds: bool = None
    residual: float = np.nan

    def ratio_row(self):
        return {"j": self.j, "ratio": self.ratio, "point_error": self.point_error,
                "curve_error": self.curve_error, "iterations": self.iterations,
                "objective": self.objective, "converged": self.converged}

    def coherence_row(self):
        return {"j": self.j, "delta": self.delta, "mu_c": self.mu_c, "bound": self.bound,
                "measured_error": self.point_error + self.curve_error, "bound_holds": self.bound_holds}

    def solver_log(self):
        return {"j": self.j, "iterations": self.iterations, "objective": self.objective,
                "converged": self.converged, "residual": self.residual, "feasibility": self.feasibility,
                "trace": self.trace}

def separation_ratio(W, S, P, C):
    point_error = float(np.linalg.norm(W - P))
    curve_error = float(np.linalg.norm(S - C))
    scale = float(np.linalg.norm(P) + np.linalg.norm(C))
    ratio = (point_error + curve_error) / scale if scale > 0 else 0.0
    return ratio, point_error, curve_error

def separate_scale(mix, j, params=None, coherence=True):
    """Filter the mixture to corona j, split it and measure the result."""
    f = mix.image
    (_, f_j), = corona_decompose(f, [j])
    (_, P), = corona_decompose(mix.points, [j])
    (_, C), = corona_decompose(mix.curve, [j])
    grid = FrequencyGrid(mix.n)
    wavelets, shearlets = separation_frames(j, grid)
    solved = csep_solve(f_j, j, params, (wavelets, shearlets))
    ratio, point_error, curve_error = separation_ratio(solved.W, solved.S, P, C)
    norm = np.linalg.norm(f_j)
    feasibility = float(np.linalg.norm(solved.W + solved.S - f_j) / norm) if norm > 0 else 0.0
    result = SeparationResult(j, solved.W, solved.S, P, C, ratio, point_error, curve_error,
                              feasibility, solved.iterations, solved.objective, solved.converged,
                              solved.trace)
    result.residual = solved.residual
    if coherence:
        point_coeffs = analyze(P, wavelets, workers=1)
        curve_coeffs = analyze(C, shearlets, workers=1)
        point_mask = point_cluster(mix.spec.points, point_coeffs, j)
        curve_mask = curve_cluster(mix.spec.curve, curve_coeffs, j)
        result.delta = delta_j(point_coeffs, curve_coeffs, point_mask, curve_mask)
        result.mu_c = frame_cluster_coherence(point_mask, curve_mask)
        result.bound = error_bound(result.delta, result.mu_c)
        result.bound_holds = bool(point_error + curve_error <= result.bound)
    log.info("scale %d: ratio %.6g after %d iterations", j, ratio, solved.iterations)
    return result

def separation_ratio_curve(mix, j_list, params=None, coherence=True, workers=None, progress=False):
    """SeparationResult for each scale of j_list, in order."""
    grid = FrequencyGrid(mix.n)
    for j in j_list:
        if not grid.fits(j):
            raise GridMismatch("scale %d exceeds Nyquist on %r" % (j, grid))
    params = params or SolverParams()

    def run(j):
        return separate_scale(mix, j, params, coherence)

    return [result for _, result in ordered_map(run, j_list, workers, progress, "separate")]
