"""quadrature

Frequency domain inner products <a, b> = int a_hat(xi) conj(b_hat(xi)) dxi
between band-limited atoms.  The integrand is amp_a * amp_b * exp(i <dp, xi>)
with dp the difference of the two position vectors; it is integrated with
a tensor trapezoid rule over every overlap of the two supports' boxes.

A rule that cannot resolve the phase oscillation is refused instead of
returning a wrong number.

"""

from dataclasses import dataclass
import logging
import math
import numpy as np

from ..frames.atoms import atom_amplitude, atom_position, box_overlaps, support_box, supports_intersect
from ..utils.constants import quad_max_samples, quad_min_samples, quad_samples_per_oscillation
from ..utils.errors import UnderResolvedQuadrature

log = logging.getLogger(__name__)

@dataclass(frozen=True)
class Quadrature():
    samples: int = None         # fixed samples per axis (None: adaptive)
    max_samples: int = quad_max_samples
    samples_per_oscillation: float = quad_samples_per_oscillation
    min_samples: int = quad_min_samples

    def required(self, length, frequency):
        """Samples per axis needed on an interval of this length for a phase frequency."""
        return int(math.ceil(self.samples_per_oscillation * length * abs(frequency) / (2.0 * math.pi))) + 1

    def axis_samples(self, length, frequency):
        need = self.required(length, frequency)
        if self.samples is not None:
            if self.samples < need:
                raise UnderResolvedQuadrature(need, self.samples, frequency)
            return self.samples
        n = max(need, self.min_samples)
        if n > self.max_samples:
            raise UnderResolvedQuadrature(n, self.max_samples, frequency)
        return n

    def doubled(self):
        n = 2 * (self.samples or self.min_samples) - 1
        return Quadrature(samples=None if self.samples is None else n,
                          max_samples=2 * self.max_samples,
                          samples_per_oscillation=2 * self.samples_per_oscillation,
                          min_samples=2 * self.min_samples - 1)

def trapezoid_axis(lo, hi, n):
    x = np.linspace(lo, hi, n)
    w = np.full(n, (hi - lo) / (n - 1))
    w[0] *= 0.5
    w[-1] *= 0.5
    return x, w

# sample grid plus weighted amplitude product for one overlap box
def box_product(first, second, box, n1, n2, windows=None, tiling=False):
    x, wx = trapezoid_axis(box[0], box[1], n1)
    y, wy = trapezoid_axis(box[2], box[3], n2)
    X, Y = np.meshgrid(x, y, indexing="ij")
    A = atom_amplitude(first, X, Y, windows, tiling) * atom_amplitude(second, X, Y, windows, tiling)
    return x, y, A * np.outer(wx, wy)

def overlap_boxes(first, second, tiling=False):
    return box_overlaps(support_box(first, tiling).boxes, support_box(second, tiling).boxes)

def direct_quadrature(first, second, quad=None, windows=None, tiling=False):
    """Tensor trapezoid over the box overlaps, no support short-cut."""
    quad = quad or Quadrature()
    dp = atom_position(first, tiling) - atom_position(second, tiling)
    total = 0j
    for box in overlap_boxes(first, second, tiling):
        n1 = quad.axis_samples(box[1] - box[0], dp[0])
        n2 = quad.axis_samples(box[3] - box[2], dp[1])
        x, y, B = box_product(first, second, box, n1, n2, windows, tiling)
        total += np.exp(1j * dp[0] * x) @ B @ np.exp(1j * dp[1] * y)
    return complex(total)

def inner_product(first, second, quad=None, windows=None, tiling=False):
    if not supports_intersect(first, second, tiling):
        return 0j
    return direct_quadrature(first, second, quad, windows, tiling)

def batched_phases(x, y, B, d1, d2, chunk=4096):
    """sum_ab B[a, b] exp(i (d1 x_a + d2 y_b)) for many phase pairs (d1, d2).

    The axis with fewer distinct phase values is contracted first.
    """
    d1 = np.asarray(d1, dtype=float).ravel()
    d2 = np.asarray(d2, dtype=float).ravel()
    out = np.empty(len(d1), dtype=complex)
    u1, inv1 = np.unique(d1, return_inverse=True)
    u2, inv2 = np.unique(d2, return_inverse=True)
    if len(u1) <= len(u2):
        T = np.exp(1j * np.outer(u1, x)) @ B
        for s in range(0, len(d1), chunk):
            e = np.exp(1j * np.outer(d2[s:s+chunk], y))
            out[s:s+chunk] = np.einsum("pb,pb->p", T[inv1[s:s+chunk]], e)
    else:
        T = B @ np.exp(1j * np.outer(y, u2))
        for s in range(0, len(d1), chunk):
            e = np.exp(1j * np.outer(d1[s:s+chunk], x))
            out[s:s+chunk] = np.einsum("pa,ap->p", e, T[:, inv2[s:s+chunk]])
    return out
