# planar geometry helpers for parabolic scaling, shearing and rotation

import math
import numpy as np

from ..utils.constants import two_pi

def parabolic_scaling(a):
    """Return A_a = diag(a, sqrt(a)).

    >>> np.allclose(parabolic_scaling(4.0) @ parabolic_scaling(0.25), np.eye(2))
    True

    """
    return np.array([[a, 0.0], [0.0, math.sqrt(a)]], dtype=np.float64)

def shear(k):
    """Return S_k = [[1, k], [0, 1]].

    >>> np.allclose(shear(2) @ shear(-3), shear(-1))
    True

    """
    return np.array([[1.0, k], [0.0, 1.0]], dtype=np.float64)

def rotation(theta):
    """Return R_theta, the planar rotation by -theta.

    >>> np.allclose(rotation(math.pi/2) @ [0.0, 1.0], [1.0, 0.0])
    True

    """
    c = math.cos(theta)
    s = math.sin(theta)
    return np.array([[c, s], [-s, c]], dtype=np.float64)

def bracket(y):
    """Return <y> = (1 + y^2)^(1/2).

    >>> float(bracket(0.0))
    1.0

    """
    return np.sqrt(1.0 + np.square(y))

# polar coordinates with the angle in [0, 2pi)
def polar(xi1, xi2):
    xi1 = np.asarray(xi1, dtype=float)
    xi2 = np.asarray(xi2, dtype=float)
    r = np.hypot(xi1, xi2)
    omega = np.mod(np.arctan2(xi2, xi1), two_pi)
    return r, omega

# wrap an angle (or angle difference) into [-pi, pi)
def wrap_angle(x):
    return np.mod(np.asarray(x, dtype=float) + math.pi, two_pi) - math.pi

# reduce an angle into [-pi/2, pi/2) modulo pi
def reduce_half_turn(x):
    return (x + 0.5 * math.pi) % math.pi - 0.5 * math.pi

# radial interval [a, b] x angular interval [u, v] -> axis aligned bounding box
def sector_box(a, b, u, v):
    if v - u >= two_pi:
        return (-b, b, -b, b)
    angles = [u, v]
    q = math.ceil(u / (0.5 * math.pi))
    while q * 0.5 * math.pi < v:
        angles.append(q * 0.5 * math.pi)
        q += 1
    xs = []
    ys = []
    for t in angles:
        for r in (a, b):
            xs.append(r * math.cos(t))
            ys.append(r * math.sin(t))
    return (min(xs), max(xs), min(ys), max(ys))
