"""coherence

Clusters of significant wavelet and shearlet coefficients around the
point and curve singularities, the cluster coherence between the two
frames and the out-of-cluster l1 mass.

Clusters are masks shaped like a CoefficientSet (one boolean M1 x M2 array
per tile).  The discrete atom at lattice point n of a tile is centred at
pixel (n1 d1, n2 d2), d = N / M, i.e. at ((n d + 1/2) / N) in unit
coordinates.

The Grammian between a wavelet tile t and a shearlet tile s depends only
on the pixel offset of the two atoms:

    <psi_(t,n), sigma_(s,m)> = K_ts(n d_t - m d_s),
    K_ts(D) = N^2 / sqrt(|M_t| |M_s|) * ifft2(w_t w_s)[D]

with |M| = M1 M2 the lattice size of a tile

so sums over a cluster are convolutions of the cluster mask with |K_ts|.

"""

from dataclasses import dataclass
import logging
import math
from typing import List
import numpy as np
from scipy.spatial import cKDTree

from ..frames.atoms import ShearletIndex, WaveletIndex
from ..transform.tiles import build_tiles
from ..transform.transform import analyze, render_atom
from ..utils.constants import cluster_angle_factor, cluster_position_factor

log = logging.getLogger(__name__)

def _wrap(x):
    x = np.mod(np.asarray(x, dtype=float), 1.0)
    return np.where(x >= 1.0, 0.0, x)

def lattice_positions(tile, n):
    """Unit-square centres of the M1 x M2 atoms of a tile, shape (M1, M2, 2)."""
    d1, d2 = tile.spacing
    x1 = ((np.arange(tile.shape[0]) * d1 + 0.5) / n) % 1.0
    x2 = ((np.arange(tile.shape[1]) * d2 + 0.5) / n) % 1.0
    X1, X2 = np.meshgrid(x1, x2, indexing="ij")
    return np.stack([X1, X2], axis=-1)

def shearlet_direction(j, k, cone):
    """Angle of the frequency direction a shearlet tile responds to."""
    angle = np.arctan(-k * 2.0**(-0.5 * j))
    return angle if cone == 1 else 0.5 * np.pi - angle

def _empty_mask(coeffs):
    return coeffs.map(lambda v: np.zeros(v.shape, dtype=bool))

def point_cluster(points, template, j, radius_factor=cluster_position_factor):
    """Wavelet atoms of scales j-1..j+1 within radius_factor 2^-j of a point."""
    mask = _empty_mask(template)
    if len(points) == 0:
        return mask
    tree = cKDTree(_wrap(points), boxsize=1.0)
    radius = radius_factor * 2.0**(-j)
    tiles, _ = build_tiles(template.grid.n, template.spec)
    for tile in tiles:
        if abs(tile.j - j) > 1:
            continue
        pos = lattice_positions(tile, template.grid.n).reshape(-1, 2)
        dist, _ = tree.query(pos)
        mask.values[tile.key] = (dist <= radius).reshape(tile.shape)
    return mask

def curve_cluster(curve, template, j, samples=4096, radius_factor=cluster_position_factor,
                  angle_factor=cluster_angle_factor):
    """Shearlet atoms of scales j-1..j+1 near the curve and aligned with its normal."""
    mask = _empty_mask(template)
    if curve is None:
        return mask
    t = np.arange(samples) / samples
    x1, x2 = curve(t)
    d1, d2 = curve.derivative(t)
    normal = np.arctan2(d2, d1) + 0.5 * np.pi
    tree = cKDTree(_wrap(np.stack([x1, x2], axis=-1)), boxsize=1.0)
    radius = radius_factor * 2.0**(-j)
    tolerance = angle_factor * 2.0**(-0.5 * j)
    tiles, _ = build_tiles(template.grid.n, template.spec)
    for tile in tiles:
        if abs(tile.j - j) > 1:
            continue
        _, k, cone = tile.key
        direction = shearlet_direction(tile.j, k, cone)
        pos = lattice_positions(tile, template.grid.n).reshape(-1, 2)
        near = tree.query_ball_point(pos, radius)
        hit = np.zeros(len(pos), dtype=bool)
        for i, ids in enumerate(near):
            if ids:
                diff = (normal[ids] - direction + 0.5 * np.pi) % np.pi - 0.5 * np.pi
                hit[i] = np.any(np.abs(diff) <= tolerance)
        mask.values[tile.key] = hit.reshape(tile.shape)
    return mask

def masked_l1(coeffs, mask, inside=True):
    total = 0.0
    for key, block in coeffs.values.items():
        m = mask.values[key] if inside else ~mask.values[key]
        total += float(np.sum(np.abs(block[m])))
    return total

def delta_j(point_coeffs, curve_coeffs, point_mask, curve_mask):
    """Out-of-cluster l1 mass of the true components."""
    return masked_l1(point_coeffs, point_mask, inside=False) + masked_l1(curve_coeffs, curve_mask, inside=False)

def error_bound(delta, mu_c):
    """2 delta / (1 - 2 mu_c), infinite once mu_c >= 1/2."""
    if mu_c >= 0.5:
        return np.inf
    return 2.0 * delta / (1.0 - 2.0 * mu_c)

@dataclass
class FrameGram():
    rows: List[WaveletIndex]
    cols: List[ShearletIndex]
    matrix: np.ndarray

def frame_cross_gram(n, wavelets, shearlets, threshold=0.0):
    """Dense Grammian <psi_nu, sigma_eta> between two discrete frames (small grids)."""
    zero = np.zeros((n, n))
    wave_template = analyze(zero, wavelets)
    shear_template = analyze(zero, shearlets)
    rows = [index for index, _ in wave_template.map(np.ones_like).items()]
    cols = [index for index, _ in shear_template.map(np.ones_like).items()]
    matrix = np.zeros((len(rows), len(cols)))
    for r, index in enumerate(rows):
        matrix[r] = analyze(render_atom(index, n), shearlets).to_vector()
    matrix[np.abs(matrix) < threshold] = 0.0
    return FrameGram(rows, cols, matrix)

def cluster_coherence(point_mask, curve_mask, gram):
    """max(max_eta sum_{nu in S1} |G|, max_nu sum_{eta in S2} |G|), 0 for empty clusters."""
    s1 = point_mask.to_vector().astype(bool)
    s2 = curve_mask.to_vector().astype(bool)
    G = np.abs(gram.matrix)
    first = float(G[s1].sum(axis=0).max()) if s1.any() else 0.0
    second = float(G[:, s2].sum(axis=1).max()) if s2.any() else 0.0
    return max(first, second)

def _placed(mask_block, tile, n):
    img = np.zeros((n, n))
    n1, n2 = np.nonzero(mask_block)
    d1, d2 = tile.spacing
    img[n1 * d1, n2 * d2] = 1.0
    return img

def frame_cluster_coherence(point_mask, curve_mask):
    """cluster_coherence by FFT convolution with the Grammian kernels."""
    n = point_mask.grid.n
    wave_tiles, _ = build_tiles(n, point_mask.spec)
    shear_tiles, _ = build_tiles(n, curve_mask.spec)
    dense = {}

    def window(tile):
        if (tile.kind, tile.key) not in dense:
            dense[(tile.kind, tile.key)] = tile.dense_window(n)
        return dense[(tile.kind, tile.key)]

    placed_points = {t.key: np.fft.fft2(_placed(point_mask.values[t.key], t, n))
                     for t in wave_tiles if point_mask.values[t.key].any()}
    placed_curve = {s.key: np.fft.fft2(_placed(curve_mask.values[s.key], s, n))
                    for s in shear_tiles if curve_mask.values[s.key].any()}
    sums_at_shear = {s.key: np.zeros((n, n)) for s in shear_tiles}
    sums_at_wave = {t.key: np.zeros((n, n)) for t in wave_tiles}
    for t in wave_tiles:
        for s in shear_tiles:
            product = window(t) * window(s)
            if not product.any():
                continue
            kernel = np.abs(np.fft.ifft2(product).real) * n * n / math.sqrt(t.size * s.size)
            K = np.fft.fft2(kernel)
            if t.key in placed_points:
                sums_at_shear[s.key] += np.fft.ifft2(placed_points[t.key] * K).real
            if s.key in placed_curve:
                sums_at_wave[t.key] += np.fft.ifft2(placed_curve[s.key] * K).real

    def sampled_max(sums, tiles):
        best = 0.0
        for tile in tiles:
            d1, d2 = tile.spacing
            grid_vals = sums[tile.key][::d1, ::d2]
            best = max(best, float(grid_vals.max()))
        return best

    first = sampled_max(sums_at_shear, shear_tiles) if placed_points else 0.0
    second = sampled_max(sums_at_wave, wave_tiles) if placed_curve else 0.0
    return max(first, second)
