"""transform

Discrete analysis and synthesis of the curvelet, shearlet and Meyer
wavelet frames on an N x N grid.

Analysis multiplies the unnormalised FFT of f by a tile window, folds the
tile support onto its M1 x M2 lattice (one to one, see tiles) and inverse
transforms there:

    c_tile[n] = (M1 M2)^(-1/2) sum_k fhat(k) w(k) exp(2 pi i (k1 n1 / M1 + k2 n2 / M2))

with fhat the orthonormal DFT.  Synthesis is the exact adjoint, so with
windows whose squares sum to one the pair is a Parseval frame on the
covered band.  Curvelet tiles are not symmetric under k -> -k and keep
complex coefficients; shearlet and wavelet coefficients of real input
are real.

"""

import logging
import math
import numpy as np

from ..frames.atoms import CurveletIndex, ShearletIndex, validate_index
from ..utils.errors import GridMismatch
from ..utils.parallel import ordered_map
from .grid import FrequencyGrid
from .tiles import FrameSpec, build_tiles, make_tile

log = logging.getLogger(__name__)

def _index_kind(index):
    if isinstance(index, CurveletIndex):
        return "curvelet"
    elif isinstance(index, ShearletIndex):
        return "shearlet"
    return "wavelet"

def _index_key(index):
    if isinstance(index, CurveletIndex):
        return (index.j, index.ell), index.m
    elif isinstance(index, ShearletIndex):
        return (index.j, index.k, index.cone), index.m
    return (index.j, index.h), index.n

class CoefficientSet():
    """Coefficients of one frame on one grid, one M1 x M2 array per tile."""

    def __init__(self, grid, spec, values, skipped=()):
        self.grid = grid
        self.spec = spec
        self.values = values
        self.skipped = tuple(skipped)

    @property
    def kind(self):
        return self.spec.kind

    @property
    def keys(self):
        return sorted(self.values)

    @property
    def size(self):
        return sum(v.size for v in self.values.values())

    def __len__(self):
        return self.size

    def __repr__(self):
        return "CoefficientSet(%s, %r, %d tiles)" % (self.kind, self.grid, len(self.values))

    def _check(self, other):
        if not isinstance(other, CoefficientSet):
            raise TypeError("expected a CoefficientSet, got %s" % type(other).__name__)
        if other.grid != self.grid or other.spec != self.spec:
            raise GridMismatch("coefficients of %s on %r and %s on %r cannot be combined"
                               % (self.spec, self.grid, other.spec, other.grid))

    def map(self, func):
        return CoefficientSet(self.grid, self.spec, {k: func(v) for k, v in self.values.items()},
                              self.skipped)

    def __add__(self, other):
        self._check(other)
        return CoefficientSet(self.grid, self.spec,
                              {k: v + other.values[k] for k, v in self.values.items()}, self.skipped)

    def __sub__(self, other):
        self._check(other)
        return CoefficientSet(self.grid, self.spec,
                              {k: v - other.values[k] for k, v in self.values.items()}, self.skipped)

    def __mul__(self, scalar):
        return self.map(lambda v: scalar * v)

    __rmul__ = __mul__

    def __neg__(self):
        return self.map(lambda v: -v)

    def to_vector(self):
        """All coefficients, tiles in sorted key order, each tile row-major."""
        if not self.values:
            return np.zeros(0)
        return np.concatenate([self.values[k].ravel() for k in self.keys])

    def from_vector(self, vector):
        out = {}
        offset = 0
        for key in self.keys:
            shape = self.values[key].shape
            count = self.values[key].size
            out[key] = np.asarray(vector[offset:offset + count]).reshape(shape)
            offset += count
        return CoefficientSet(self.grid, self.spec, out, self.skipped)

    def energy(self):
        return float(sum(np.sum(np.abs(v)**2) for v in self.values.values()))

    def get(self, index):
        key, n = _index_key(index)
        return self.values[key][n[0], n[1]]

    def items(self):
        """(AtomIndex, value) for every nonzero coefficient."""
        tiles, _ = build_tiles(self.grid.n, self.spec)
        for tile in tiles:
            block = self.values[tile.key]
            for n1, n2 in zip(*np.nonzero(block)):
                yield tile.index(n1, n2), block[n1, n2]

    def provenance(self):
        return {"grid": self.grid.to_dict(), "frame": self.spec.to_dict(),
                "skipped_scales": list(self.skipped)}

def as_grid(f):
    f = np.asarray(f)
    if f.ndim != 2 or f.shape[0] != f.shape[1]:
        raise GridMismatch("expected a square 2-D grid, got shape %s" % (f.shape,))
    return FrequencyGrid(f.shape[0])

def _frame_spec(frame):
    return frame if isinstance(frame, FrameSpec) else FrameSpec(frame)

def analyze(f, frame, workers=None, progress=False):
    """Frame coefficients of the real grid f."""
    spec = _frame_spec(frame)
    grid = as_grid(f)
    F = np.fft.fft2(np.asarray(f, dtype=float)).ravel()
    tiles, skipped = build_tiles(grid.n, spec)
    real = spec.kind != "curvelet"

    def tile_coefficients(tile):
        G = np.zeros(tile.size, dtype=complex)
        G[tile.target] = F[tile.idx] * tile.window
        c = np.fft.ifft2(G.reshape(tile.shape)) * tile.scale
        return c.real if real else c

    values = {tile.key: c for tile, c in ordered_map(tile_coefficients, tiles, workers, progress, spec.kind)}
    log.debug("analyzed %r with %d %s tiles", grid, len(tiles), spec.kind)
    return CoefficientSet(grid, spec, values, skipped)

def synthesize(coeffs, workers=None, progress=False):
    """Adjoint of analyze; a real grid."""
    grid = coeffs.grid
    tiles, _ = build_tiles(grid.n, coeffs.spec)
    missing = set(t.key for t in tiles) ^ set(coeffs.values)
    if missing:
        raise GridMismatch("coefficient tiles do not match %s on %r" % (coeffs.kind, grid))

    def tile_spectrum(tile):
        C = np.fft.fft2(coeffs.values[tile.key]).ravel()
        return tile.window * C[tile.target] / tile.scale

    F = np.zeros(grid.n * grid.n, dtype=complex)
    for tile, part in ordered_map(tile_spectrum, tiles, workers, progress, coeffs.kind):
        F[tile.idx] += part
    return np.fft.ifft2(F.reshape(grid.n, grid.n)).real

def n_term_truncate(coeffs, count):
    """Keep the count largest magnitudes; ties go to the earlier (key, n1, n2)."""
    if count < 0:
        raise ValueError("count must be >= 0, got %s" % count)
    vector = coeffs.to_vector()
    kept = np.zeros_like(vector)
    if count > 0:
        order = np.argsort(-np.abs(vector), kind="stable")[:count]
        kept[order] = vector[order]
    return coeffs.from_vector(kept)

def sorted_magnitudes(coeffs):
    return np.sort(np.abs(coeffs.to_vector()))[::-1]

def tail_energy(coeffs, count):
    """sum_{n > count} |c_(n)|^2, the Parseval bound for the count-term error."""
    mags = sorted_magnitudes(coeffs)
    return float(np.sum(mags[count:]**2))

def grid_inner_product(f, index, frame_order=3):
    """<f, atom> for one discrete atom by a direct sum over its window."""
    index = validate_index(index)
    grid = as_grid(f)
    kind = _index_kind(index)
    key, n = _index_key(index)
    tile = make_tile(grid, kind, key, FrameSpec(kind, order=frame_order).windows)
    F = np.fft.fft2(np.asarray(f, dtype=float), norm="ortho").ravel()[tile.idx]
    k1, k2 = np.divmod(tile.idx, grid.n)
    freqs = grid.freqs
    M1, M2 = tile.shape
    phase = np.exp(2j * np.pi * (freqs[k1] * n[0] / M1 + freqs[k2] * n[1] / M2))
    value = np.sum(F * tile.window * phase) / math.sqrt(tile.size)
    return value.real if kind != "curvelet" else value

def render_atom(index, n, domain="space", frame_order=3):
    """One discrete frame element on an n x n grid.

    The index position is a point of the tile's M1 x M2 lattice.  "frequency"
    returns the orthonormal spectrum, "space" the pixel values (real for
    shearlets and wavelets).
    """
    index = validate_index(index)
    grid = FrequencyGrid(n)
    kind = _index_kind(index)
    key, m = _index_key(index)
    if not grid.fits(key[0]):
        raise GridMismatch("scale %d exceeds Nyquist on %r" % (key[0], grid))
    tile = make_tile(grid, kind, key, FrameSpec(kind, order=frame_order).windows)
    k1, k2 = np.divmod(tile.idx, grid.n)
    freqs = grid.freqs
    F = np.zeros(grid.n * grid.n, dtype=complex)
    M1, M2 = tile.shape
    phase = np.exp(-2j * np.pi * (freqs[k1] * m[0] / M1 + freqs[k2] * m[1] / M2))
    F[tile.idx] = tile.window * phase / math.sqrt(tile.size)
    F = F.reshape(grid.n, grid.n)
    if domain == "frequency":
        return F
    elif domain == "space":
        atom = np.fft.ifft2(F, norm="ortho")
        return atom if kind == "curvelet" else atom.real
    raise ValueError("domain must be 'space' or 'frequency', got %s" % domain)
