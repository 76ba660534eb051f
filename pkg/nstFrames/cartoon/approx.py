"""approx

Nonlinear N-term approximation of cartoons: error curves per frame, rate
fits against N^-2 (log N)^a, coefficient decay and l_p sparsity ratios.

The frames start at a fixed coarse scale and a matching low-pass window
takes the rest.  Rates are fitted to the error on the part the frame
reconstructs; the full-image error |f - low - f_N|^2, which also carries
the uncovered (near Nyquist) part, is kept next to it.

"""

from dataclasses import dataclass, field
import logging
from typing import List, Tuple
import numpy as np

from ..transform.grid import FrequencyGrid
from ..transform.tiles import FrameSpec, lowpass_window
from ..transform.transform import (analyze, n_term_truncate, sorted_magnitudes, synthesize,
                                   tail_energy)
from ..utils.constants import approx_grid, approx_lowpass_scale, approx_n_list, lp_exponent
from ..utils.parallel import ordered_map
from .cartoon import make_cartoon

log = logging.getLogger(__name__)

@dataclass
class RateCurve():
    frame: str
    seed: int
    points: List[Tuple[int, float]]
    tails: List[float]
    slope: float = np.nan
    log_exponent: float = np.nan
    loglog_slope: float = np.nan
    lowpass_energy: float = 0.0
    uncovered_energy: float = 0.0
    decay_exponent: float = np.nan
    full_errors: List[float] = field(default_factory=list)    # |f - low - f_N|^2
    full_slope: float = np.nan

    @property
    def counts(self):
        return [n for n, _ in self.points]

    @property
    def errors(self):
        return [e for _, e in self.points]

    def rows(self):
        full = self.full_errors or [np.nan] * len(self.points)
        return [{"frame": self.frame, "seed": self.seed, "N": n, "sq_error": e, "full_sq_error": g, "tail": t}
                for (n, e), g, t in zip(self.points, full, self.tails)]

    def summary(self):
        return {"frame": self.frame, "seed": self.seed, "slope": self.slope,
                "log_exponent": self.log_exponent, "loglog_slope": self.loglog_slope,
                "lowpass_energy": self.lowpass_energy, "uncovered_energy": self.uncovered_energy,
                "decay_exponent": self.decay_exponent, "full_slope": self.full_slope}

def _check_spread(counts):
    counts = np.asarray(counts, dtype=float)
    if len(counts) < 6:
        raise ValueError("rate fit needs at least 6 points, got %d" % len(counts))
    if np.min(counts) <= np.e:
        raise ValueError("rate fit needs N > e for log log N, got %g" % np.min(counts))
    if np.log10(np.max(counts) / np.min(counts)) < 2.0:
        raise ValueError("rate fit needs N spanning 2 decades, got %g..%g" % (np.min(counts), np.max(counts)))
    return counts

def rate_fit(counts, errors):
    """Least squares of log error on [1, log N, log log N]: (slope, log_exponent)."""
    counts = _check_spread(counts)
    errors = np.asarray(errors, dtype=float)
    if np.any(errors <= 0):
        raise ValueError("rate fit needs positive errors")
    log_n = np.log(counts)
    design = np.column_stack([np.ones_like(log_n), log_n, np.log(log_n)])
    coef, _, rank, _ = np.linalg.lstsq(design, np.log(errors), rcond=None)
    if rank < 3:
        raise ValueError("degenerate spread of N for rate fit")
    return float(coef[1]), float(coef[2])

def loglog_slope(counts, values):
    counts = np.asarray(counts, dtype=float)
    values = np.asarray(values, dtype=float)
    keep = (counts > 0) & (values > 0)
    slope, _ = np.polyfit(np.log(counts[keep]), np.log(values[keep]), 1)
    return float(slope)

def lowpass_part(f, spec):
    grid = FrequencyGrid(np.shape(f)[0])
    low = lowpass_window(grid, spec)
    return np.fft.ifft2(np.fft.fft2(f) * low**2).real

def approximation_curve(image, frame, n_list=approx_n_list, grid=approx_grid,
                        lowpass_scale=approx_lowpass_scale, workers=None):
    """Squared error of the N-term approximation for each N in n_list."""
    spec = FrameSpec(frame, j_min=lowpass_scale)
    f = image.render(grid)
    coeffs = analyze(f, spec, workers=workers)
    projected = synthesize(coeffs, workers=workers)
    low = lowpass_part(f, spec)
    points = []
    tails = []
    full = []
    for count in n_list:
        approx = synthesize(n_term_truncate(coeffs, count), workers=workers)
        points.append((int(count), float(np.sum((projected - approx)**2))))
        full.append(float(np.sum((f - low - approx)**2)))
        tails.append(tail_energy(coeffs, count))
    errors = [e for _, e in points]
    if any(b > a * (1.0 + 1e-9) for a, b in zip(errors, errors[1:])):
        log.warning("%s error curve of seed %s is not monotone", frame, image.seed)
    curve = RateCurve(frame, image.seed, points, tails,
                      full_errors=full,
                      lowpass_energy=float(np.sum(low**2)),
                      uncovered_energy=float(np.sum((f - projected - low)**2)))
    if coeffs.energy() > 0.0 and len(n_list) > 1 and min(n_list) >= 1:
        curve.decay_exponent = coefficient_decay(coeffs, (min(n_list), max(n_list)))
    try:
        curve.slope, curve.log_exponent = rate_fit(curve.counts, errors)
        curve.loglog_slope = loglog_slope(curve.counts, errors)
        curve.full_slope = loglog_slope(curve.counts, full)
    except ValueError as err:
        log.info("no rate fit for %s seed %s: %s", frame, image.seed, err)
    return curve

def approximation_study(seeds, frames, nu, n_list=approx_n_list, grid=approx_grid,
                        lowpass_scale=approx_lowpass_scale, workers=None, progress=False):
    """Error curves for every (seed, frame); images are rendered once per seed."""
    images = {seed: make_cartoon(seed, nu) for seed in seeds}
    jobs = [(seed, frame) for seed in seeds for frame in frames]

    def run(job):
        seed, frame = job
        return approximation_curve(images[seed], frame, n_list, grid, lowpass_scale, workers=1)

    for seed in seeds:
        images[seed].render(grid)
    return [curve for _, curve in ordered_map(run, jobs, workers, progress, "approx")]

def _magnitudes(c):
    if hasattr(c, "to_vector"):
        return np.abs(c.to_vector())
    return np.abs(np.asarray(c)).ravel()

def lp_norm(c, p=lp_exponent):
    """(sum |c|^p)^(1/p); a quasi-norm for p < 1."""
    if p <= 0:
        raise ValueError("p must be > 0, got %s" % p)
    mags = _magnitudes(c)
    return float(np.sum(mags**p)**(1.0 / p))

def lp_ratio(c_a, c_b, p=lp_exponent):
    return lp_norm(c_a, p) / lp_norm(c_b, p)

def coefficient_decay(c, n_range):
    """Fitted exponent of the n-th largest coefficient magnitude over n_range."""
    lo, hi = n_range
    if not 1 <= lo < hi:
        raise ValueError("n_range must satisfy 1 <= lo < hi, got %s" % (n_range,))
    mags = sorted_magnitudes(c) if hasattr(c, "to_vector") else np.sort(_magnitudes(c))[::-1]
    hi = min(hi, len(mags))
    n = np.arange(lo, hi + 1)
    return loglog_slope(n, mags[n - 1])

def sparsity_ratios(seeds, nu, grids, p=lp_exponent, lowpass_scale=approx_lowpass_scale,
                    frames=("shearlet", "curvelet"), workers=None):
    """l_p ratio of two frames' coefficients of one cartoon, per seed and grid size."""
    rows = []
    for seed in seeds:
        image = make_cartoon(seed, nu)
        for n in grids:
            f = image.render(n)
            a = analyze(f, FrameSpec(frames[0], j_min=lowpass_scale), workers=workers)
            b = analyze(f, FrameSpec(frames[1], j_min=lowpass_scale), workers=workers)
            rows.append({"seed": seed, "grid": n, "p": p, "ratio": lp_ratio(a, b, p)})
    return rows
