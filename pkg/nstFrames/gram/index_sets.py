"""index_sets

Shear and orientation index sets whose supports can meet, the counting
bounds that go with them, and the displacement vector b that controls
the off-diagonal decay of the shearlet/curvelet Grammian.

The sets hold the integers inside the closed real intervals

  K = [-2^(j/2) tan(theta + w) - 1, -2^(j/2) tan(theta - w) + 1]
  L = {l : 2 pi l - 2^(jt/2) c pi in [2^(jt/2) atan(2^(-j/2)(-1-k)) - 1,
                                     2^(jt/2) atan(2^(-j/2)(1-k)) + 1]}

with w = 2^(-jt/2) the curvelet half width and theta its angle.  Wedge
angles are taken modulo pi since both supports are symmetric under
xi -> -xi.

"""

import math
import numpy as np

from ..frames.atoms import (CurveletIndex, ShearletIndex, atom_position,
                            curvelet_angle, curvelet_half_width,
                            orientation_count, shear_range)
from ..frames.geometry import parabolic_scaling, reduce_half_turn

# the wedge angle as seen from a cone (cone 2 by the xi1 <-> xi2 swap)
def cone_angle(theta, cone):
    if cone == 1:
        return theta
    return 0.5 * math.pi - theta

# real k interval for a wedge, None if the wedge straddles the vertical axis
def k_interval(j, jt, theta, w=None):
    if w is None:
        w = curvelet_half_width(jt)
    t = reduce_half_turn(theta)
    if t - w <= -0.5 * math.pi or t + w >= 0.5 * math.pi:
        return None
    scale = 2.0**(0.5 * j)
    return (-scale * math.tan(t + w) - 1.0, -scale * math.tan(t - w) + 1.0)

def k_set_for_angle(j, jt, theta, w=None):
    if w is None:
        w = curvelet_half_width(jt)
    limit = shear_range(j)
    interval = k_interval(j, jt, theta, w)
    if interval is None:
        # a narrow wedge around the vertical axis stays clear of |slope| <= 1
        if 2.0 * w < 0.25 * math.pi:
            return []
        return list(range(-limit, limit + 1))
    lo = max(math.ceil(interval[0]), -limit)
    hi = min(math.floor(interval[1]), limit)
    return list(range(lo, hi + 1))

def k_set(j, jt, ell, cone=1):
    theta = cone_angle(curvelet_angle(jt, ell), cone)
    return k_set_for_angle(j, jt, theta)

# cardinality of the K interval before the |k| <= ceil(2^(j/2)) cap
def k_count(j, jt, ell, cone=1):
    interval = k_interval(j, jt, cone_angle(curvelet_angle(jt, ell), cone))
    if interval is None:
        return len(k_set(j, jt, ell, cone))
    return max(0, math.floor(interval[1]) - math.ceil(interval[0]) + 1)

def l_set(j, jt, k, cone=1):
    scale = 2.0**(0.5 * jt)
    inv = 2.0**(-0.5 * j)
    lo = scale * math.atan(inv * (-1.0 - k)) - 1.0
    hi = scale * math.atan(inv * (1.0 - k)) + 1.0
    result = []
    for ell in range(orientation_count(jt)):
        # 2 pi l expressed through the (cone) angle of the wedge
        a = scale * cone_angle(curvelet_angle(jt, ell), cone)
        for c in (-1, 0, 1, 2):
            x = a - scale * c * math.pi
            if lo <= x <= hi:
                result.append(ell)
                break
    return result

def l_count(j, jt, k, cone=1):
    return len(l_set(j, jt, k, cone))

def corner_l(j):
    """Orientation whose wedge edge sits on the cone diagonal."""
    return int(round((2.0**(0.5 * j) * math.pi / 4.0 - 1.0) / (2.0 * math.pi)))

def k_count_bound(j):
    s = 2.0**(0.5 * j)
    return s * (1.0 - math.tan(math.pi / 4.0 - 2.0 / s)) + 3.0

def l_count_bound(j):
    s = 2.0**(0.5 * j)
    return (s * math.atan(1.0 / s) - 1.0) / math.pi + 3.0

def b_vector(j, k, m, jt, ell, mt, cone=1):
    """b = A_{2^j}(S_k^T A_{2^-j} m - R_theta A_{2^-jt} mt) in the frame of the cone."""
    p = atom_position(ShearletIndex(j, k, tuple(m), cone))
    q = atom_position(CurveletIndex(jt, ell, tuple(mt)))
    d = p - q
    if cone == 2:
        d = d[::-1]
    return parabolic_scaling(2.0**j) @ d

# vectorised |b| over arrays of m (shape (..., 2)) and mt (shape (..., 2))
def b_norms(j, k, jt, ell, m, mt, cone=1):
    m = np.asarray(m, dtype=float)
    mt = np.asarray(mt, dtype=float)
    theta = curvelet_angle(jt, ell)
    c = math.cos(theta)
    s = math.sin(theta)
    u1 = 2.0**(-jt) * mt[..., 0]
    u2 = 2.0**(-0.5 * jt) * mt[..., 1]
    q1 = c * u1 + s * u2
    q2 = -s * u1 + c * u2
    p1 = 2.0**(-j) * m[..., 0]
    p2 = k * 2.0**(-j) * m[..., 0] + 2.0**(-0.5 * j) * m[..., 1]
    if cone == 2:
        q1, q2 = q2, q1
    b1 = 2.0**j * (p1 - q1)
    b2 = 2.0**(0.5 * j) * (p2 - q2)
    return np.hypot(b1, b2)
