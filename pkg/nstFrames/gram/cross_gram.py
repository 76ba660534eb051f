"""cross_gram

Cross-Grammian of the shearlet (rows) and curvelet (columns) systems on
finite truncations: sparse assembly, the Op,p norm, the streaming norm
sweep over nested truncations and the decay fit of single slices.

A slice is one (j, k, cone) x (jt, l) block; its entries for every pair
of positions (m, mt) share one amplitude product and differ only in the
phase, so they are computed together.

"""

from dataclasses import dataclass
import logging
import math
from typing import List, NamedTuple
import numpy as np
from scipy import sparse

from ..frames.atoms import (CurveletIndex, ShearletIndex, atom_position,
                            orientation_count, shear_range, supports_intersect)
from ..frames.geometry import bracket
from ..utils.constants import decay_ray_points, decay_ray_start, decay_ray_stop, gram_threshold
from ..utils.errors import SliceError
from ..utils.parallel import ordered_map
from .index_sets import b_norms, k_set, l_set
from .quadrature import Quadrature, batched_phases, box_product, overlap_boxes, inner_product

log = logging.getLogger(__name__)

@dataclass(frozen=True)
class TruncationSpec():
    j_max: int
    m_radius: int
    p: float = 1.0

    def __post_init__(self):
        if self.j_max < 0:
            raise ValueError("j_max must be >= 0, got %s" % self.j_max)
        if self.m_radius < 0:
            raise ValueError("m_radius must be >= 0, got %s" % self.m_radius)
        if not 0.0 < self.p <= 1.0:
            raise ValueError("p must be in (0, 1], got %s" % self.p)

def positions(radius):
    r = np.arange(-radius, radius + 1)
    m1, m2 = np.meshgrid(r, r, indexing="ij")
    return np.stack([m1.ravel(), m2.ravel()], axis=-1)

def shearlet_family(spec):
    rows = []
    for j in range(spec.j_max + 1):
        for k in range(-shear_range(j), shear_range(j) + 1):
            for m in positions(spec.m_radius):
                for cone in (1, 2):
                    rows.append(ShearletIndex(j, k, (int(m[0]), int(m[1])), cone))
    return sorted(rows)

def curvelet_family(spec):
    cols = []
    for j in range(spec.j_max + 1):
        for ell in range(orientation_count(j)):
            for m in positions(spec.m_radius):
                cols.append(CurveletIndex(j, ell, (int(m[0]), int(m[1]))))
    return sorted(cols)

def format_index(index):
    if isinstance(index, ShearletIndex):
        return "S(%d,%d,%d,%d,%d)" % (index.j, index.k, index.m[0], index.m[1], index.cone)
    elif isinstance(index, CurveletIndex):
        return "C(%d,%d,%d,%d)" % (index.j, index.ell, index.m[0], index.m[1])
    return "W(%d,%d,%d,%d)" % (index.h, index.j, index.n[0], index.n[1])

class SliceKey(NamedTuple):
    j: int
    k: int
    cone: int
    jt: int
    ell: int

# (j, k, cone) x (jt, l) blocks passing |j - jt| <= 2, k in K and l in L
def gram_slices(row_j_max, col_j_max):
    keys = []
    for j in range(row_j_max + 1):
        for cone in (1, 2):
            for k in range(-shear_range(j), shear_range(j) + 1):
                for jt in range(max(0, j - 2), min(col_j_max, j + 2) + 1):
                    for ell in l_set(j, jt, k, cone):
                        if k not in k_set(j, jt, ell, cone):
                            continue
                        if not supports_intersect(ShearletIndex(j, k, (0, 0), cone), CurveletIndex(jt, ell)):
                            continue
                        keys.append(SliceKey(j, k, cone, jt, ell))
    return keys

def slice_values(key, m_radius, mt_radius, quad=None, windows=None):
    """Entries <sigma_(j,k,m,cone), gamma_(jt,l,mt)> for all m, mt of one slice.

    Returns a complex array of shape (len(positions(m_radius)), len(positions(mt_radius))).
    """
    quad = quad or Quadrature()
    eta = ShearletIndex(key.j, key.k, (0, 0), key.cone)
    mu = CurveletIndex(key.jt, key.ell)
    ms = positions(m_radius)
    mts = positions(mt_radius)
    p = np.array([atom_position(ShearletIndex(key.j, key.k, (int(a), int(b)), key.cone)) for a, b in ms])
    q = np.array([atom_position(CurveletIndex(key.jt, key.ell, (int(a), int(b)))) for a, b in mts])
    d1 = (p[:, None, 0] - q[None, :, 0]).ravel()
    d2 = (p[:, None, 1] - q[None, :, 1]).ravel()
    values = np.zeros(len(d1), dtype=complex)
    for box in overlap_boxes(eta, mu):
        n1 = quad.axis_samples(box[1] - box[0], np.max(np.abs(d1)))
        n2 = quad.axis_samples(box[3] - box[2], np.max(np.abs(d2)))
        x, y, B = box_product(eta, mu, box, n1, n2, windows)
        values += batched_phases(x, y, B, d1, d2)
    return values.reshape(len(ms), len(mts))

def _sparse(M):
    if isinstance(M, CrossGram):
        return M.matrix
    if sparse.issparse(M):
        return M.tocsr()
    return sparse.csr_matrix(np.atleast_2d(np.asarray(M)))

def row_sup(M, p):
    A = _sparse(M)
    if A.nnz == 0:
        return 0.0
    sums = np.asarray(abs(A).power(p).sum(axis=1)).ravel()
    return float(sums.max()**(1.0 / p))

def col_sup(M, p):
    return row_sup(_sparse(M).T, p)

def op_p_norm(M, p):
    """max{(sup_i sum_j |m_ij|^p)^(1/p), (sup_j sum_i |m_ij|^p)^(1/p)}"""
    if not 0.0 < p <= 1.0:
        raise ValueError("p must be in (0, 1], got %s" % p)
    return max(row_sup(M, p), col_sup(M, p))

def transfer_check(M, c, p):
    """Return (||M^T c||_p^p, ||M||_Op,p^p ||c||_p^p); the first never exceeds the second."""
    A = _sparse(M)
    c = np.asarray(c)
    lhs = float(np.sum(np.abs(A.T @ c)**p))
    rhs = op_p_norm(A, p)**p * float(np.sum(np.abs(c)**p))
    return lhs, rhs

@dataclass
class CrossGram():
    rows: List[tuple]
    cols: List[tuple]
    matrix: sparse.csr_matrix
    threshold: float

    @property
    def nnz(self):
        return self.matrix.nnz

    def entries(self):
        coo = self.matrix.tocoo()
        order = np.lexsort((coo.col, coo.row))
        for i in order:
            yield self.rows[coo.row[i]], self.cols[coo.col[i]], complex(coo.data[i])

    def get(self, row, col):
        r = self.rows.index(row)
        c = self.cols.index(col)
        return complex(self.matrix[r, c])

    def op_p_norm(self, p):
        return op_p_norm(self.matrix, p)

    def transpose(self):
        return CrossGram(self.cols, self.rows, self.matrix.T.tocsr(), self.threshold)

def assemble_cross_gram(rows, cols, threshold=gram_threshold, quad=None, workers=None,
                        windows=None, progress=False):
    """Materialised cross-Grammian between two truncations (rows shearlets, columns curvelets)."""
    row_list = shearlet_family(rows)
    col_list = curvelet_family(cols)
    row_pos = {index: i for i, index in enumerate(row_list)}
    col_pos = {index: i for i, index in enumerate(col_list)}
    ms = positions(rows.m_radius)
    mts = positions(cols.m_radius)
    keys = gram_slices(rows.j_max, cols.j_max)
    log.info("assembling %d x %d cross-Grammian from %d slices", len(row_list), len(col_list), len(keys))

    def compute(key):
        return slice_values(key, rows.m_radius, cols.m_radius, quad, windows)

    r_idx = []
    c_idx = []
    data = []
    for key, values in ordered_map(compute, keys, workers, progress, "gram"):
        keep = (np.abs(values) >= threshold) & (values != 0)
        for a, b in zip(*np.nonzero(keep)):
            eta = ShearletIndex(key.j, key.k, (int(ms[a][0]), int(ms[a][1])), key.cone)
            mu = CurveletIndex(key.jt, key.ell, (int(mts[b][0]), int(mts[b][1])))
            r_idx.append(row_pos[eta])
            c_idx.append(col_pos[mu])
            data.append(values[a, b])
    matrix = sparse.csr_matrix((np.asarray(data, dtype=complex), (r_idx, c_idx)),
                               shape=(len(row_list), len(col_list)))
    return CrossGram(row_list, col_list, matrix, threshold)

class ConvergenceRow(NamedTuple):
    j_max: int
    m_radius: int
    p: float
    op_p_norm: float
    row_sup: float
    col_sup: float

class GramSweep():
    """Row and column p-sums of nested truncations from one pass over the slices.

    Truncation t = (j_max, m_radius) applies to rows and columns alike.  The
    entries with |m|, |mt| <= entries_radius are kept for the CSV output.
    """

    def __init__(self, truncations, p_values, threshold=gram_threshold, entries_radius=0,
                 quad=None, windows=None):
        self.truncations = [tuple(t) for t in truncations]
        self.p_values = list(p_values)
        self.threshold = threshold
        self.entries_radius = entries_radius
        self.quad = quad or Quadrature()
        self.windows = windows
        self.j_max = max(t[0] for t in self.truncations)
        self.m_radius = max(max(t[1] for t in self.truncations), entries_radius)
        self.ms = positions(self.m_radius)
        self.row_sums = {}
        self.col_sums = {}
        self.records = []

    def slices(self):
        return gram_slices(self.j_max, self.j_max)

    def compute(self, key):
        return slice_values(key, self.m_radius, self.m_radius, self.quad, self.windows)

    def update(self, key, values):
        mags = np.abs(values)
        mags[mags < self.threshold] = 0.0
        box = np.max(np.abs(self.ms), axis=1)
        for t in self.truncations:
            J, R = t
            if key.j > J or key.jt > J:
                continue
            inside = box <= R
            block = mags[np.ix_(inside, inside)]
            for p in self.p_values:
                bp = block**p
                rk = (t, p, key.j, key.k, key.cone)
                ck = (t, p, key.jt, key.ell)
                self.row_sums[rk] = self.row_sums.get(rk, 0.0) + bp.sum(axis=1)
                self.col_sums[ck] = self.col_sums.get(ck, 0.0) + bp.sum(axis=0)
        if self.entries_radius >= 0:
            near = np.nonzero(box <= self.entries_radius)[0]
            b = b_norms(key.j, key.k, key.jt, key.ell, self.ms[near][:, None, :],
                        self.ms[near][None, :, :], key.cone)
            for ia, a in enumerate(near):
                for ib, c in enumerate(near):
                    v = values[a, c]
                    if v == 0 or abs(v) < self.threshold:
                        continue
                    eta = ShearletIndex(key.j, key.k, tuple(int(x) for x in self.ms[a]), key.cone)
                    mu = CurveletIndex(key.jt, key.ell, tuple(int(x) for x in self.ms[c]))
                    self.records.append((eta, mu, complex(v), float(b[ia, ib])))

    def run(self, workers=None, progress=False):
        keys = self.slices()
        log.info("gram sweep over %d slices, truncation up to j_max=%d m_radius=%d",
                 len(keys), self.j_max, self.m_radius)
        for key, values in ordered_map(self.compute, keys, workers, progress, "gram"):
            self.update(key, values)
        return self.table()

    def table(self):
        rows = []
        for t in self.truncations:
            for p in self.p_values:
                r = max([s.max() for k, s in self.row_sums.items() if k[0] == t and k[1] == p] or [0.0])
                c = max([s.max() for k, s in self.col_sums.items() if k[0] == t and k[1] == p] or [0.0])
                rs = r**(1.0 / p)
                cs = c**(1.0 / p)
                rows.append(ConvergenceRow(t[0], t[1], p, max(rs, cs), rs, cs))
        return rows

def sweep_truncations(j_sweep, r_sweep):
    j_sweep = list(j_sweep)
    r_sweep = list(r_sweep)
    if len(j_sweep) == 1:
        j_sweep = j_sweep * len(r_sweep)
    if len(r_sweep) == 1:
        r_sweep = r_sweep * len(j_sweep)
    if len(j_sweep) != len(r_sweep):
        raise ValueError("j_max and m_radius sweeps must have equal length (or length 1)")
    truncations = list(zip(j_sweep, r_sweep))
    for a, b in zip(truncations, truncations[1:]):
        if b[0] < a[0] or b[1] < a[1]:
            raise ValueError("truncation sweeps must be nondecreasing")
    return truncations

def saturation_ratio(values):
    """Last increment over the last value of a norm sequence."""
    if len(values) < 2 or values[-1] == 0.0:
        return 0.0
    return (values[-1] - values[-2]) / values[-1]

def op_norm_convergence(p, j_sweep, r_sweep, threshold=gram_threshold, quad=None,
                        workers=None, windows=None, progress=False):
    p_values = [p] if np.isscalar(p) else list(p)
    sweep = GramSweep(sweep_truncations(j_sweep, r_sweep), p_values, threshold,
                      entries_radius=-1, quad=quad, windows=windows)
    return sweep.run(workers, progress)

class DecayFit(NamedTuple):
    slope: float
    intercept: float
    residual: float
    r2: float
    count: int

def decay_fit(entries):
    """Least squares slope of log|<sigma, gamma>| against log <|b|>."""
    data = np.asarray([(b, v) for b, v in entries], dtype=float).reshape(-1, 2)
    good = data[:, 1] > 0.0
    if not np.any(good):
        raise SliceError("no overlap in slice")
    if np.count_nonzero(good) < 10:
        raise SliceError("decay fit needs at least 10 nonzero entries, got %d" % np.count_nonzero(good))
    x = np.log(bracket(data[good, 0]))
    y = np.log(data[good, 1])
    A = np.stack([x, np.ones_like(x)], axis=1)
    coef, _, _, _ = np.linalg.lstsq(A, y, rcond=None)
    fit = A @ coef
    ss_res = float(np.sum((y - fit)**2))
    ss_tot = float(np.sum((y - y.mean())**2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0.0 else 1.0
    return DecayFit(float(coef[0]), float(coef[1]), math.sqrt(ss_res / len(y)), r2, len(y))

def decay_ray(start=decay_ray_start, stop=decay_ray_stop, count=decay_ray_points, axis=0):
    """Shearlet positions (t, 0) or (0, t), t geometrically spaced from start to stop."""
    if not 1 <= start <= stop or count < 1:
        raise ValueError("decay ray needs 1 <= start <= stop and count >= 1, got %s %s %s"
                         % (start, stop, count))
    steps = np.unique(np.rint(np.geomspace(start, stop, count)).astype(int))
    return [(int(t), 0) if axis == 0 else (0, int(t)) for t in steps]

def decay_entries(j, k, jt, ell, ms, mt=(0, 0), cone=1, quad=None, floor=1e-13):
    """(|b|, |<sigma, gamma>|) along a list of shearlet positions, one slice."""
    mu = CurveletIndex(jt, ell, tuple(mt))
    entries = []
    for m in ms:
        eta = ShearletIndex(j, k, tuple(int(x) for x in m), cone)
        v = abs(inner_product(eta, mu, quad))
        b = float(b_norms(j, k, jt, ell, np.asarray(m), np.asarray(mt), cone))
        entries.append((b, v))
    top = max(v for _, v in entries) if entries else 0.0
    # values at the quadrature noise floor carry no decay information
    return [(b, v) for b, v in entries if v > floor * top]
