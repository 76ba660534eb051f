"""corona

Band-pass filters F_j with transfer function W(|xi|_inf / 2^j), supported
on the corona 2^(j-1) < |xi|_inf < 2^(j+1).  Their squares telescope, so
sum_j F_j * (F_j * f) returns the covered band of f.

"""

import numpy as np

from ..frames.windows import make_meyer_windows
from ..transform.grid import FrequencyGrid
from ..utils.errors import GridMismatch

def scale_filter(grid, j, windows=None):
    w = windows or make_meyer_windows()
    K1, K2 = grid.mesh()
    return w.W(np.maximum(np.abs(K1), np.abs(K2)) / 2.0**j)

def corona_decompose(f, scales=None, windows=None):
    """[(j, F_j * f)] for the requested scales (all that fit by default)."""
    grid = FrequencyGrid(np.shape(f)[0])
    grid.check(f)
    scales = list(range(grid.max_scale() + 1)) if scales is None else list(scales)
    for j in scales:
        if not grid.fits(j):
            raise GridMismatch("scale %d exceeds Nyquist on %r" % (j, grid))
    F = np.fft.fft2(f)
    return [(j, np.fft.ifft2(F * scale_filter(grid, j, windows)).real) for j in scales]

def corona_reconstruct(parts, windows=None):
    """sum_j F_j * f_j."""
    parts = list(parts)
    if not parts:
        raise ValueError("no corona parts to reconstruct")
    grid = FrequencyGrid(np.shape(parts[0][1])[0])
    total = np.zeros((grid.n, grid.n), dtype=complex)
    for j, part in parts:
        grid.check(part)
        total += np.fft.fft2(part) * scale_filter(grid, j, windows)
    return np.fft.ifft2(total).real
