"""tiles

Sparse frequency windows of the discrete frames.  A tile stores the grid
pixels where its window is nonzero, the window values there, and where
those pixels land on the tile's own decimated M1 x M2 lattice.

The lattice is the smallest power of 2 rectangle the support folds onto
without aliasing: one axis spans the whole support, the other only its
longest line.  Sheared and rotated tiles are thin along their lines, so
the lattice follows the parabolic shape of the tile and the redundancy
of every frame stays bounded across scales.

Tile windows are the atom amplitudes without their scale normalisation,
so squares of all windows of one frame sum to the Calderon partial sum.

"""

from dataclasses import dataclass
from functools import lru_cache
import logging
import math
from typing import Tuple
import numpy as np

from ..frames.atoms import (CurveletIndex, ShearletIndex, WaveletIndex,
                            atom_amplitude, orientation_count, shear_range)
from ..frames.windows import make_meyer_windows
from .grid import FrequencyGrid

log = logging.getLogger(__name__)

FRAMES = ("curvelet", "shearlet", "wavelet")

@dataclass(frozen=True)
class FrameSpec():
    kind: str
    j_min: int = 0
    j_max: int = None           # None: largest scale under Nyquist
    order: int = 3

    def __post_init__(self):
        if self.kind not in FRAMES:
            raise ValueError("frame must be one of %s, got %s" % (", ".join(FRAMES), self.kind))
        if self.j_min < 0:
            raise ValueError("j_min must be >= 0, got %s" % self.j_min)

    @property
    def windows(self):
        return make_meyer_windows(self.order)

    def scales(self, grid):
        top = grid.max_scale() if self.j_max is None else self.j_max
        return list(range(self.j_min, top + 1))

    def to_dict(self):
        return {"kind": self.kind, "j_min": self.j_min, "j_max": self.j_max, "order": self.order}

@dataclass(frozen=True, eq=False)
class Tile():
    kind: str
    key: Tuple[int, ...]
    j: int
    idx: np.ndarray             # flat indices into the N x N grid
    window: np.ndarray          # window values at idx
    target: np.ndarray          # flat indices into the M1 x M2 lattice
    shape: Tuple[int, int]      # (M1, M2), powers of 2
    n: int                      # grid size N

    @property
    def size(self):
        return self.shape[0] * self.shape[1]

    @property
    def spacing(self):
        """Pixels between neighbouring lattice points, (N / M1, N / M2)."""
        return self.n // self.shape[0], self.n // self.shape[1]

    @property
    def scale(self):
        """sqrt(M1 M2) / N, the analysis factor (synthesis uses its inverse)."""
        return math.sqrt(self.size) / self.n

    def norm(self):
        """l2 norm of every atom of the tile."""
        return math.sqrt(float(np.sum(self.window**2)) / self.size)

    def index(self, n1, n2):
        n = (int(n1), int(n2))
        if self.kind == "curvelet":
            return CurveletIndex(self.j, self.key[1], n)
        elif self.kind == "shearlet":
            return ShearletIndex(self.j, self.key[1], n, self.key[2])
        return WaveletIndex(self.key[1], self.j, n)

    def dense_window(self, n):
        w = np.zeros(n * n)
        w[self.idx] = self.window
        return w.reshape(n, n)

def tile_keys(kind, j):
    if kind == "curvelet":
        return [(j, ell) for ell in range(orientation_count(j))]
    elif kind == "shearlet":
        return [(j, k, cone) for k in range(-shear_range(j), shear_range(j) + 1) for cone in (1, 2)]
    return [(j, h) for h in (1, 2, 3)]

def key_index(kind, key):
    if kind == "curvelet":
        return CurveletIndex(key[0], key[1])
    elif kind == "shearlet":
        return ShearletIndex(key[0], key[1], (0, 0), key[2])
    return WaveletIndex(key[1], key[0])

def _pow2(count):
    return 1 << (int(count) - 1).bit_length()

# longest max - min + 1 of inner over the lines of constant outer
def _line_span(outer, inner):
    order = np.lexsort((inner, outer))
    outer = outer[order]
    inner = inner[order]
    first = np.r_[0, np.flatnonzero(np.diff(outer)) + 1]
    last = np.r_[first[1:] - 1, len(outer) - 1]
    return int(np.max(inner[last] - inner[first])) + 1

def lattice_shape(k1, k2):
    """Smallest power of 2 lattice (M1, M2) that folds the support k1, k2 one to one.

    k1 mod M1 separates the lines of constant k1 when M1 covers the k1
    extent, and k2 mod M2 separates points on one line when M2 covers its
    longest line; the same holds with the axes swapped.  The smaller of
    the two lattices is used.
    """
    k1 = np.asarray(k1, dtype=int)
    k2 = np.asarray(k2, dtype=int)
    if k1.size == 0:
        return (1, 1)
    along1 = (_pow2(np.ptp(k1) + 1), _pow2(_line_span(k1, k2)))
    along2 = (_pow2(_line_span(k2, k1)), _pow2(np.ptp(k2) + 1))
    return along1 if along1[0] * along1[1] <= along2[0] * along2[1] else along2

def make_tile(grid, kind, key, windows=None):
    j = key[0]
    # every window of scale j vanishes outside the box |k|_inf < 2^(j+1)
    freqs = grid.freqs
    band = np.flatnonzero(np.abs(freqs) < 2**(j + 1))
    K1, K2 = np.meshgrid(freqs[band], freqs[band], indexing="ij")
    index = key_index(kind, key)
    norm = 2.0**j if kind == "wavelet" else 2.0**(0.75 * j)
    w = norm * atom_amplitude(index, K1, K2, windows, tiling=True)
    i1, i2 = np.nonzero(w)
    k1 = K1[i1, i2].astype(int)
    k2 = K2[i1, i2].astype(int)
    flat = band[i1] * grid.n + band[i2]
    M1, M2 = lattice_shape(k1, k2)
    target = (k1 % M1) * M2 + (k2 % M2)
    return Tile(kind, tuple(key), j, flat, w[i1, i2], target, (M1, M2), grid.n)

@lru_cache(maxsize=16)
def build_tiles(n, spec):
    """All tiles of a frame on an n x n grid, sorted by key; skipped scales listed."""
    grid = FrequencyGrid(n)
    windows = make_meyer_windows(spec.order)
    tiles = []
    skipped = []
    for j in spec.scales(grid):
        if not grid.fits(j):
            log.warning("%s scale %d exceeds Nyquist on a %d grid, skipped", spec.kind, j, n)
            skipped.append(j)
            continue
        for key in sorted(tile_keys(spec.kind, j)):
            tile = make_tile(grid, spec.kind, key, windows)
            if len(tile.idx):
                tiles.append(tile)
    return tuple(tiles), tuple(skipped)

def coverage(grid, spec):
    """Sum of squared windows, 1 on the band the frame reconstructs."""
    tiles, _ = build_tiles(grid.n, spec)
    total = np.zeros(grid.n * grid.n)
    for tile in tiles:
        total[tile.idx] += tile.window**2
    return total.reshape(grid.n, grid.n)

def lowpass_window(grid, spec):
    """Low-pass complement of the frame below its first scale.

    low^2 + coverage = 1 from DC up to the top scale.
    """
    windows = make_meyer_windows(spec.order)
    K1, K2 = grid.mesh()
    scale = 2.0**spec.j_min
    if spec.kind == "curvelet":
        return windows.phi(np.hypot(K1, K2) / scale)
    elif spec.kind == "shearlet":
        return windows.phi(np.maximum(np.abs(K1), np.abs(K2)) / scale)
    return windows.phi(K1 / scale) * windows.phi(K2 / scale)
