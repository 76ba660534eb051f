"""atoms

Fourier transforms of the band-limited curvelet, shearlet and Meyer
wavelet atoms, their exact frequency supports and the support
intersection predicate used by the Grammian code.

Every atom is written as amplitude(xi) * exp(i <p, xi>) with a real
amplitude and a position vector p, so quadrature and FFT code can treat
the three systems the same way.

"""

from dataclasses import dataclass, field
import math
from typing import NamedTuple, Tuple, Union
import numpy as np

from ..utils.constants import two_pi
from .geometry import parabolic_scaling, polar, rotation, sector_box, wrap_angle
from .windows import make_meyer_windows

class CurveletIndex(NamedTuple):
    j: int
    ell: int
    m: Tuple[int, int] = (0, 0)

class ShearletIndex(NamedTuple):
    j: int
    k: int
    m: Tuple[int, int] = (0, 0)
    cone: int = 1

class WaveletIndex(NamedTuple):
    h: int
    j: int
    n: Tuple[int, int] = (0, 0)

AtomIndex = Union[CurveletIndex, ShearletIndex, WaveletIndex]

# ceil(2^(j/2)): curvelet orientations per scale and the shear range of a cone
def orientation_count(j):
    return int(math.ceil(2.0**(0.5 * j)))

def shear_range(j):
    return orientation_count(j)

def curvelet_angle(j, ell, tiling=False):
    if tiling:
        return two_pi * ell / orientation_count(j)
    return two_pi * ell / 2.0**(0.5 * j)

# half width of the closed angular support of a curvelet wedge
def curvelet_half_width(j, tiling=False):
    if tiling:
        count = orientation_count(j)
        if count == 1:
            return math.pi
        return two_pi / count
    return 2.0**(-0.5 * j)

def validate_index(index):
    if isinstance(index, CurveletIndex):
        if index.j < 0:
            raise ValueError("curvelet scale j must be >= 0, got %d" % index.j)
        if not 0 <= index.ell < orientation_count(index.j):
            raise ValueError("curvelet orientation %d outside [0, %d)"
                             % (index.ell, orientation_count(index.j)))
    elif isinstance(index, ShearletIndex):
        if index.j < 0:
            raise ValueError("shearlet scale j must be >= 0, got %d" % index.j)
        if abs(index.k) > shear_range(index.j):
            raise ValueError("shear %d outside |k| <= %d" % (index.k, shear_range(index.j)))
        if index.cone not in (1, 2):
            raise ValueError("cone must be 1 or 2, got %s" % index.cone)
    elif isinstance(index, WaveletIndex):
        if index.h not in (1, 2, 3):
            raise ValueError("wavelet type h must be 1, 2 or 3, got %s" % index.h)
    else:
        raise TypeError("not an atom index: %r" % (index,))
    return index

def _split(xi):
    xi = np.asarray(xi, dtype=float)
    if xi.shape[-1] != 2:
        raise ValueError("frequency points must have a trailing axis of length 2")
    return xi[..., 0], xi[..., 1]

def curvelet_amplitude(index, xi1, xi2, windows=None, tiling=False):
    w = windows or make_meyer_windows()
    j = index.j
    r, omega = polar(xi1, xi2)
    radial = w.W(r / 2.0**j)
    theta = curvelet_angle(j, index.ell, tiling)
    if tiling:
        count = orientation_count(j)
        if count == 1:
            angular = np.ones_like(r)
        else:
            angular = w.V(wrap_angle(omega - theta) * count / two_pi)
    else:
        angular = w.V(wrap_angle(omega - theta) * 2.0**(0.5 * j))
    return 2.0**(-0.75 * j) * radial * angular

# cone 1 profile in the (a, b) = (xi1, xi2) frame, zero where a == 0
def _cone_profile(w, j, k, a, b, strict):
    nonzero = a != 0.0
    safe = np.where(nonzero, a, 1.0)
    slope = np.where(nonzero, b / safe, 0.0)
    if strict:
        inside = np.abs(b) < np.abs(a)
    else:
        inside = np.abs(b) <= np.abs(a)
    amp = w.W(a / 2.0**j) * w.V(k + 2.0**(0.5 * j) * slope)
    return np.where(nonzero & inside, amp, 0.0)

def shearlet_amplitude(index, xi1, xi2, windows=None):
    w = windows or make_meyer_windows()
    xi1 = np.asarray(xi1, dtype=float)
    xi2 = np.asarray(xi2, dtype=float)
    if index.cone == 1:
        amp = _cone_profile(w, index.j, index.k, xi1, xi2, strict=False)
    else:
        # coordinate swap; the open cone keeps the seam in cone 1
        amp = _cone_profile(w, index.j, index.k, xi2, xi1, strict=True)
    return 2.0**(-0.75 * index.j) * amp

def wavelet_amplitude(index, xi1, xi2, windows=None):
    w = windows or make_meyer_windows()
    x1 = np.asarray(xi1, dtype=float) / 2.0**index.j
    x2 = np.asarray(xi2, dtype=float) / 2.0**index.j
    if index.h == 1:
        amp = w.phi(x1) * w.W(x2)
    elif index.h == 2:
        amp = w.W(x1) * w.phi(x2)
    else:
        amp = w.W(x1) * w.W(x2)
    return 2.0**(-index.j) * amp

def atom_amplitude(index, xi1, xi2, windows=None, tiling=False):
    if isinstance(index, CurveletIndex):
        return curvelet_amplitude(index, xi1, xi2, windows, tiling)
    elif isinstance(index, ShearletIndex):
        return shearlet_amplitude(index, xi1, xi2, windows)
    elif isinstance(index, WaveletIndex):
        return wavelet_amplitude(index, xi1, xi2, windows)
    raise TypeError("not an atom index: %r" % (index,))

def atom_position(index, tiling=False):
    """Position vector p with hat(xi) = amplitude(xi) exp(i <p, xi>)."""
    if isinstance(index, CurveletIndex):
        theta = curvelet_angle(index.j, index.ell, tiling)
        return rotation(theta) @ parabolic_scaling(2.0**(-index.j)) @ np.asarray(index.m, dtype=float)
    elif isinstance(index, ShearletIndex):
        m1, m2 = index.m
        p1 = 2.0**(-index.j) * m1
        p2 = index.k * 2.0**(-index.j) * m1 + 2.0**(-0.5 * index.j) * m2
        if index.cone == 1:
            return np.array([p1, p2])
        return np.array([p2, p1])
    elif isinstance(index, WaveletIndex):
        return np.asarray(index.n, dtype=float) / 2.0**index.j
    raise TypeError("not an atom index: %r" % (index,))

def atom_hat(index, xi, windows=None, tiling=False):
    xi1, xi2 = _split(xi)
    amp = atom_amplitude(index, xi1, xi2, windows, tiling)
    p = atom_position(index, tiling)
    value = amp * np.exp(1j * (p[0] * xi1 + p[1] * xi2))
    return value[()] if np.ndim(value) == 0 else value

def curvelet_hat(mu, xi, windows=None, tiling=False):
    return atom_hat(validate_index(mu), xi, windows, tiling)

def shearlet_hat(eta, xi, windows=None):
    return atom_hat(validate_index(eta), xi, windows)

def wavelet_hat(nu, xi, windows=None):
    return atom_hat(validate_index(nu), xi, windows)

@dataclass(frozen=True)
class SupportRegion():
    """Closed frequency support of an atom.

    radial:  [lo, hi] for r (curvelet), |xi_axis| (shearlet) or the scale
             box edge (wavelet)
    angular: curvelet angle interval, unwrapped around its centre
    slope:   shearlet slope interval (xi_other / xi_axis), within [-1, 1]
    axis:    1 or 2, the shearlet cone axis
    boxes:   disjoint (x_lo, x_hi, y_lo, y_hi) boxes covering the support
    """
    index: tuple
    radial: Tuple[float, float]
    angular: Tuple[float, float] = None
    slope: Tuple[float, float] = None
    axis: int = None
    boxes: tuple = field(default_factory=tuple)

    def contains(self, xi1, xi2):
        xi1 = np.asarray(xi1, dtype=float)
        xi2 = np.asarray(xi2, dtype=float)
        lo, hi = self.radial
        if self.angular is not None:
            r, omega = polar(xi1, xi2)
            centre = 0.5 * (self.angular[0] + self.angular[1])
            half = 0.5 * (self.angular[1] - self.angular[0])
            return (r >= lo) & (r <= hi) & (np.abs(wrap_angle(omega - centre)) <= half + 1e-15)
        if self.slope is not None:
            a, b = (xi1, xi2) if self.axis == 1 else (xi2, xi1)
            nonzero = a != 0.0
            s = np.where(nonzero, b / np.where(nonzero, a, 1.0), np.inf)
            return (np.abs(a) >= lo) & (np.abs(a) <= hi) & (s >= self.slope[0]) & (s <= self.slope[1])
        inside = np.zeros(np.broadcast(xi1, xi2).shape, dtype=bool)
        for x0, x1, y0, y1 in self.boxes:
            inside |= (xi1 >= x0) & (xi1 <= x1) & (xi2 >= y0) & (xi2 <= y1)
        return inside

def support_box(index, tiling=False):
    validate_index(index)
    j = index.j
    a = 2.0**(j - 1)
    b = 2.0**(j + 1)
    if isinstance(index, CurveletIndex):
        theta = curvelet_angle(j, index.ell, tiling)
        half = curvelet_half_width(j, tiling)
        box = sector_box(a, b, theta - half, theta + half)
        return SupportRegion(index, (a, b), angular=(theta - half, theta + half), boxes=(box,))
    elif isinstance(index, ShearletIndex):
        scale = 2.0**(-0.5 * j)
        s_lo = max(-1.0, scale * (-1.0 - index.k))
        s_hi = min(1.0, scale * (1.0 - index.k))
        y_lo = min(a * s_lo, b * s_lo)
        y_hi = max(a * s_hi, b * s_hi)
        boxes = [(a, b, y_lo, y_hi), (-b, -a, -y_hi, -y_lo)]
        if index.cone == 2:
            boxes = [(y0, y1, x0, x1) for x0, x1, y0, y1 in boxes]
        return SupportRegion(index, (a, b), slope=(s_lo, s_hi), axis=index.cone, boxes=tuple(boxes))
    else:
        low = (-2.0**j, 2.0**j)
        bands = [(a, b), (-b, -a)]
        if index.h == 1:
            boxes = [(low[0], low[1], y0, y1) for y0, y1 in bands]
        elif index.h == 2:
            boxes = [(x0, x1, low[0], low[1]) for x0, x1 in bands]
        else:
            boxes = [(x0, x1, y0, y1) for x0, x1 in bands for y0, y1 in bands]
        return SupportRegion(index, (a, b), boxes=tuple(boxes))

# intersections of two box lists with positive area
def box_overlaps(boxes_a, boxes_b):
    result = []
    for ax0, ax1, ay0, ay1 in boxes_a:
        for bx0, bx1, by0, by1 in boxes_b:
            x0 = max(ax0, bx0)
            x1 = min(ax1, bx1)
            y0 = max(ay0, by0)
            y1 = min(ay1, by1)
            if x0 < x1 and y0 < y1:
                result.append((x0, x1, y0, y1))
    return result

# shearlet (cone 1 frame after any swap) against a wedge [u, v] x radial [c, d]
def _shear_wedge_meet(shear_region, u, v, c, d):
    a, b = shear_region.radial
    lo_angle = math.atan(shear_region.slope[0])
    hi_angle = math.atan(shear_region.slope[1])
    for offset in (0.0, math.pi):
        s0 = lo_angle + offset
        s1 = hi_angle + offset
        for n in range(-2, 3):
            lo = max(s0, u + two_pi * n)
            hi = min(s1, v + two_pi * n)
            if lo >= hi:
                continue
            candidates = [lo, hi]
            q = math.ceil(lo / math.pi)
            while q * math.pi <= hi:
                candidates.append(q * math.pi)
                q += 1
            cosines = [abs(math.cos(t)) for t in candidates]
            sec_min = 1.0 / max(cosines)
            sec_max = 1.0 / min(cosines)
            # r = |xi_axis| sec(omega) must reach [c, d]
            if sec_min < d / a and sec_max > c / b:
                return True
    return False

def supports_intersect(first, second, tiling=False):
    ra = support_box(first, tiling)
    rb = support_box(second, tiling)
    if not box_overlaps(ra.boxes, rb.boxes):
        return False
    pair = {type(first), type(second)}
    if pair == {ShearletIndex, CurveletIndex}:
        shear, wedge = (ra, rb) if isinstance(first, ShearletIndex) else (rb, ra)
        u, v = wedge.angular
        if shear.axis == 2:
            u, v = 0.5 * math.pi - v, 0.5 * math.pi - u
        c, d = wedge.radial
        return _shear_wedge_meet(shear, u, v, c, d)
    return True
