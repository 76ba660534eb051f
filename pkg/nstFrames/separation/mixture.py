"""mixture

Point and curve singularities on the unit square and their grid
renderings: P = sum_i |x - x_i|^(-3/2), clipped inside two pixels of each
x_i, and C = the arc-length measure of a closed curve deposited
bilinearly onto pixel centres (grid mass = curve length).

"""

from dataclasses import dataclass, field
import json
import logging
from typing import Tuple
import numpy as np

from ..transform.grid import FrequencyGrid
from ..utils.constants import point_clip_px, point_exponent, two_pi

log = logging.getLogger(__name__)

@dataclass(frozen=True)
class CurveDescriptor():
    """tau(t) = center + sum_k z_k exp(2 pi i k t), t in [0, 1), as x1 + i x2."""
    center: Tuple[float, float]
    coefficients: Tuple[Tuple[int, float, float], ...]

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        z = np.full(t.shape, complex(*self.center))
        for k, re, im in self.coefficients:
            z = z + complex(re, im) * np.exp(1j * two_pi * k * t)
        return z.real, z.imag

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        z = np.zeros(t.shape, dtype=complex)
        for k, re, im in self.coefficients:
            z = z + 1j * two_pi * k * complex(re, im) * np.exp(1j * two_pi * k * t)
        return z.real, z.imag

    def polyline(self, samples):
        t = np.arange(samples) / samples
        return self(t)

    def length(self, samples=4096):
        x1, x2 = self.polyline(samples)
        return float(np.sum(np.hypot(np.roll(x1, -1) - x1, np.roll(x2, -1) - x2)))

    @classmethod
    def circle(cls, center, radius):
        return cls(tuple(center), ((1, float(radius), 0.0),))

def _segments_cross(p, q, r, s):
    # proper crossings of segments pq and rs, all arguments (..., 2)
    def orient(a, b, c):
        return np.sign((b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1])
                       - (b[..., 1] - a[..., 1]) * (c[..., 0] - a[..., 0]))
    return ((orient(p, q, r) * orient(p, q, s) < 0) & (orient(r, s, p) * orient(r, s, q) < 0))

def self_intersects(curve, samples=256):
    # half-step offset keeps crossings off the polyline vertices
    x1, x2 = curve((np.arange(samples) + 0.5) / samples)
    pts = np.stack([x1, x2], axis=-1)
    nxt = np.roll(pts, -1, axis=0)
    i, j = np.triu_indices(samples, k=2)
    keep = ~((i == 0) & (j == samples - 1))
    i, j = i[keep], j[keep]
    return bool(np.any(_segments_cross(pts[i], nxt[i], pts[j], nxt[j])))

@dataclass(frozen=True)
class MixtureSpec():
    points: Tuple[Tuple[float, float], ...] = ()
    curve: CurveDescriptor = None
    curve_samples: int = 4096

    def __post_init__(self):
        for x in self.points:
            if not (0.0 <= x[0] <= 1.0 and 0.0 <= x[1] <= 1.0):
                raise ValueError("point %s outside the unit square" % (x,))

    @classmethod
    def from_dict(cls, d):
        curve = None
        if d.get("curve"):
            c = d["curve"]
            curve = CurveDescriptor(tuple(c["center"]),
                                    tuple((int(k), float(re), float(im)) for k, re, im in c["coefficients"]))
        return cls(tuple(tuple(float(v) for v in p) for p in d.get("points", [])), curve,
                   int(d.get("curve_samples", 4096)))

    @classmethod
    def load(cls, path):
        with open(path, "r") as f:
            return cls.from_dict(json.load(f))

    def to_dict(self):
        d = {"points": [list(p) for p in self.points], "curve_samples": self.curve_samples}
        if self.curve is not None:
            d["curve"] = {"center": list(self.curve.center),
                          "coefficients": [list(c) for c in self.curve.coefficients]}
        return d

def default_mixture():
    return MixtureSpec(points=((0.3, 0.72), (0.72, 0.28), (0.22, 0.2)),
                       curve=CurveDescriptor((0.55, 0.55), ((1, 0.2, 0.0), (-1, 0.05, 0.0))))

def render_points(points, n, exponent=point_exponent, clip_px=point_clip_px):
    x = (np.arange(n) + 0.5) / n
    X1, X2 = np.meshgrid(x, x, indexing="ij")
    out = np.zeros((n, n))
    floor = clip_px / n
    for p1, p2 in points:
        r = np.hypot(X1 - p1, X2 - p2)
        out += np.maximum(r, floor)**(-exponent)
    return out

def render_curve(curve, n, samples=4096):
    """Line measure as a density: sum(grid) / n^2 equals the polyline length."""
    samples = max(int(samples), 8 * n)
    x1, x2 = curve.polyline(samples)
    d1 = np.roll(x1, -1) - x1
    d2 = np.roll(x2, -1) - x2
    mass = np.hypot(d1, d2)
    u1 = (x1 + 0.5 * d1) * n - 0.5
    u2 = (x2 + 0.5 * d2) * n - 0.5
    i1 = np.floor(u1).astype(int)
    i2 = np.floor(u2).astype(int)
    f1 = u1 - i1
    f2 = u2 - i2
    out = np.zeros((n, n))
    for a, wa in ((0, 1.0 - f1), (1, f1)):
        for b, wb in ((0, 1.0 - f2), (1, f2)):
            np.add.at(out, ((i1 + a) % n, (i2 + b) % n), mass * wa * wb)
    return out * n * n

@dataclass
class MixtureModel():
    spec: MixtureSpec
    n: int
    points: np.ndarray
    curve: np.ndarray
    _image: np.ndarray = field(default=None, repr=False)

    @property
    def image(self):
        if self._image is None:
            self._image = self.points + self.curve
        return self._image

def render_mixture(spec, n):
    grid = FrequencyGrid(n)
    points = render_points(spec.points, grid.n)
    if spec.curve is None:
        curve = np.zeros((grid.n, grid.n))
    else:
        if self_intersects(spec.curve):
            log.warning("mixture curve intersects itself")
        curve = render_curve(spec.curve, grid.n, spec.curve_samples)
    log.debug("rendered mixture with %d points on %r", len(spec.points), grid)
    return MixtureModel(spec, grid.n, points, curve)
