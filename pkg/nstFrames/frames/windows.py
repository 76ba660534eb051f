"""windows

Band-limited Meyer profiles generating every atom in the package: the
radial (wavelet) window W, the angular bump V and the low-pass scaling
profile phi that W is derived from.

Squares of W over dyadic dilations and squares of V over integer shifts
both sum to one, which is what makes the discrete frames built from
them tight.

"""

from dataclasses import dataclass
from functools import lru_cache
import numpy as np
from scipy.special import comb

from ..utils.constants import meyer_order

# nu(t) = t^(n+1) sum_{k=0..n} C(n+k, k) (1-t)^k, clipped to [0, 1].  For any
# order nu(t) + nu(1-t) = 1.
def meyer_ramp(t, order=meyer_order):
    t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
    s = np.zeros_like(t)
    for k in range(order + 1):
        s = s + comb(order + k, k, exact=True) * (1.0 - t)**k
    return t**(order + 1) * s

@dataclass(frozen=True)
class WindowPair():
    order: int = meyer_order

    def ramp(self, t):
        return meyer_ramp(t, self.order)

    def phi(self, x):
        """Low-pass profile: 1 on |x| <= 1/2, rolls off to 0 at |x| = 1."""
        ax = np.abs(np.asarray(x, dtype=float))
        roll = np.cos(0.5 * np.pi * self.ramp(2.0 * ax - 1.0))
        return np.where(ax <= 0.5, 1.0, np.where(ax < 1.0, roll, 0.0))

    # phi(x)^2 + sum_{j>=0} W(x/2^j)^2 = 1
    def meyer_scaling(self, x):
        return self.phi(x)

    def W(self, x):
        """Radial window, W(x)^2 = phi(x/2)^2 - phi(x)^2, support 1/2 < |x| < 2."""
        ax = np.abs(np.asarray(x, dtype=float))
        inner = np.sin(0.5 * np.pi * self.ramp(2.0 * ax - 1.0))
        outer = np.cos(0.5 * np.pi * self.ramp(ax - 1.0))
        # cos(pi/2) is not exactly zero in floating point
        return np.where((ax > 0.5) & (ax <= 1.0), inner,
                        np.where((ax > 1.0) & (ax < 2.0), outer, 0.0))

    def V(self, t):
        """Angular bump, V(t)^2 + V(t-1)^2 = 1 on [0, 1], support |t| < 1."""
        at = np.abs(np.asarray(t, dtype=float))
        return np.where(at < 1.0, np.cos(0.5 * np.pi * self.ramp(at)), 0.0)

    def calderon_sum(self, r, j_max):
        """sum_{j=0..j_max} W(r/2^j)^2; equals 1 on 1 <= |r| <= 2^j_max."""
        r = np.asarray(r, dtype=float)
        total = np.zeros_like(r)
        for j in range(j_max + 1):
            total = total + self.W(r / 2.0**j)**2
        return total

    def angular_sum(self, t, reach=3):
        """sum_k V(t+k)^2 over the shifts that can be nonzero."""
        t = np.asarray(t, dtype=float)
        total = np.zeros_like(t)
        base = np.floor(t)
        for k in range(-reach, reach + 1):
            total = total + self.V(t - base + k)**2
        return total

@lru_cache(maxsize=None)
def make_meyer_windows(smoothness_order=meyer_order):
    if int(smoothness_order) != smoothness_order or smoothness_order < 1:
        raise ValueError("smoothness_order must be an integer >= 1, got %s" % smoothness_order)
    return WindowPair(int(smoothness_order))
