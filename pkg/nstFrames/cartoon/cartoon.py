"""cartoon

Cartoon-like test images f = f0 + f1 * chi_B on the unit square: two C^2
profiles and a star-shaped region B whose boundary is a short radial
Fourier series with bounded curvature.

"""

from dataclasses import dataclass, field
import logging
from typing import Tuple
import numpy as np

from ..utils.constants import (cartoon_attempts, cartoon_c2_target, cartoon_curvature_samples,
                               cartoon_harmonics, cartoon_margin, cartoon_radius, cartoon_supersample,
                               two_pi)
from ..utils.errors import CartoonRejected

log = logging.getLogger(__name__)

@dataclass(frozen=True)
class RadialBoundary():
    """rho(theta) = r0 + sum_m a_m cos(m theta) + b_m sin(m theta) around center."""
    center: Tuple[float, float]
    r0: float
    a: Tuple[float, ...] = ()
    b: Tuple[float, ...] = ()

    def radius(self, theta, derivative=0):
        theta = np.asarray(theta, dtype=float)
        value = np.full_like(theta, self.r0 if derivative == 0 else 0.0)
        for m, (am, bm) in enumerate(zip(self.a, self.b), start=1):
            # d^k/dtheta^k of cos, sin cycles with period 4
            c = np.cos(m * theta + 0.5 * np.pi * derivative)
            s = np.sin(m * theta + 0.5 * np.pi * derivative)
            value = value + m**derivative * (am * c + bm * s)
        return value

    def curvature(self, theta):
        r = self.radius(theta)
        r1 = self.radius(theta, 1)
        r2 = self.radius(theta, 2)
        return (r**2 + 2.0 * r1**2 - r * r2) / (r**2 + r1**2)**1.5

    def max_curvature(self, samples=cartoon_curvature_samples):
        theta = np.linspace(0.0, two_pi, samples, endpoint=False)
        return float(np.max(np.abs(self.curvature(theta))))

    def extent(self, samples=cartoon_curvature_samples):
        theta = np.linspace(0.0, two_pi, samples, endpoint=False)
        r = self.radius(theta)
        return float(r.min()), float(r.max())

    def point(self, theta):
        r = self.radius(theta)
        return self.center[0] + r * np.cos(theta), self.center[1] + r * np.sin(theta)

    def contains(self, x1, x2):
        d1 = np.asarray(x1) - self.center[0]
        d2 = np.asarray(x2) - self.center[1]
        theta = np.arctan2(d2, d1)
        return np.hypot(d1, d2) <= self.radius(theta)

    def length(self, samples=cartoon_curvature_samples):
        theta = np.linspace(0.0, two_pi, samples, endpoint=False)
        speed = np.hypot(self.radius(theta), self.radius(theta, 1))
        return float(np.sum(speed) * two_pi / samples)

@dataclass(frozen=True)
class SmoothProfile():
    """amplitude * sin^4(pi x1) sin^4(pi x2) * (1 + sum c cos(2 pi (p x1 + q x2) + phase))."""
    amplitude: float
    modes: Tuple[Tuple[int, int, float, float], ...] = ()

    def __call__(self, x1, x2):
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        modulation = np.ones(np.broadcast(x1, x2).shape)
        for p, q, c, phase in self.modes:
            modulation = modulation + c * np.cos(two_pi * (p * x1 + q * x2) + phase)
        return self.amplitude * np.sin(np.pi * x1)**4 * np.sin(np.pi * x2)**4 * modulation

    def c2_norm(self, samples=257):
        """sum over |alpha| <= 2 of sup |D^alpha f|, by finite differences."""
        x = np.linspace(0.0, 1.0, samples)
        h = x[1] - x[0]
        X1, X2 = np.meshgrid(x, x, indexing="ij")
        f = self(X1, X2)
        f1, f2 = np.gradient(f, h)
        f11, f12 = np.gradient(f1, h)
        _, f22 = np.gradient(f2, h)
        return float(sum(np.max(np.abs(d)) for d in (f, f1, f2, f11, f12, f22)))

    def scaled(self, target):
        norm = self.c2_norm()
        if norm == 0.0:
            return self
        return SmoothProfile(self.amplitude * target / norm, self.modes)

ZERO_PROFILE = SmoothProfile(0.0)

@dataclass(frozen=True)
class CartoonImage():
    f0: SmoothProfile
    f1: SmoothProfile
    boundary: RadialBoundary
    nu: float
    seed: int = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def indicator(self, n, supersample=cartoon_supersample):
        """Area fraction of B in every pixel, from supersample^2 subpixels."""
        s = int(supersample)
        sub = (np.arange(n * s) + 0.5) / (n * s)
        X1, X2 = np.meshgrid(sub, sub, indexing="ij")
        inside = self.boundary.contains(X1, X2).astype(float)
        return inside.reshape(n, s, n, s).mean(axis=(1, 3))

    def render(self, n, supersample=cartoon_supersample):
        """Pixel values on an n x n grid; axis 0 is x1, pixel centres at (i + 1/2)/n."""
        key = (int(n), int(supersample))
        if key not in self._cache:
            x = (np.arange(n) + 0.5) / n
            X1, X2 = np.meshgrid(x, x, indexing="ij")
            image = self.f0(X1, X2) + self.f1(X1, X2) * self.indicator(n, supersample)
            self._cache[key] = image
        return self._cache[key]

    def smooth_part(self):
        return CartoonImage(self.f0, ZERO_PROFILE, self.boundary, self.nu, self.seed)

    def to_dict(self):
        return {"seed": self.seed, "nu": self.nu,
                "center": list(self.boundary.center), "r0": self.boundary.r0,
                "a": list(self.boundary.a), "b": list(self.boundary.b),
                "f0": {"amplitude": self.f0.amplitude, "modes": [list(m) for m in self.f0.modes]},
                "f1": {"amplitude": self.f1.amplitude, "modes": [list(m) for m in self.f1.modes]}}

def random_profile(rng, modes=3, target=cartoon_c2_target):
    terms = []
    for _ in range(modes):
        p, q = (int(v) for v in rng.integers(0, 3, 2))
        terms.append((p, q, float(rng.uniform(-0.3, 0.3)), float(rng.uniform(0.0, two_pi))))
    return SmoothProfile(1.0, tuple(terms)).scaled(target)

def random_boundary(rng, harmonics=cartoon_harmonics, margin=cartoon_margin):
    r0 = float(rng.uniform(*cartoon_radius))
    m = np.arange(1, harmonics + 1)
    a = tuple(float(v) for v in rng.uniform(-1.0, 1.0, harmonics) * 0.15 * r0 / m**2)
    b = tuple(float(v) for v in rng.uniform(-1.0, 1.0, harmonics) * 0.15 * r0 / m**2)
    reach = r0 + sum(abs(v) for v in a) + sum(abs(v) for v in b)
    lo = margin + reach
    hi = 1.0 - margin - reach
    center = tuple(float(v) for v in rng.uniform(lo, hi, 2))
    return RadialBoundary(center, r0, a, b)

def make_cartoon(seed, nu, harmonics=cartoon_harmonics, attempts=cartoon_attempts, smooth_only=False):
    """Random cartoon with boundary curvature |kappa| <= nu; deterministic per seed."""
    if nu <= 0:
        raise ValueError("curvature bound nu must be > 0, got %s" % nu)
    rng = np.random.default_rng(seed)
    f0 = random_profile(rng)
    f1 = random_profile(rng)
    if smooth_only:
        f1 = ZERO_PROFILE
    best = np.inf
    for attempt in range(attempts):
        boundary = random_boundary(rng, harmonics)
        low, _ = boundary.extent()
        kappa = boundary.max_curvature() if low > 0 else np.inf
        best = min(best, kappa)
        if kappa <= nu:
            log.debug("cartoon seed %s accepted after %d attempts, max curvature %.4g", seed, attempt + 1, kappa)
            return CartoonImage(f0, f1, boundary, nu, seed)
    raise CartoonRejected(seed, attempts, best, nu)

def disc_cartoon(radius, center=(0.5, 0.5), nu=None, f0=ZERO_PROFILE, f1=None):
    """Cartoon whose region is a disc; curvature 1/radius."""
    f1 = f1 if f1 is not None else SmoothProfile(1.0).scaled(cartoon_c2_target)
    return CartoonImage(f0, f1, RadialBoundary(tuple(center), float(radius)),
                        nu if nu is not None else 1.0 / radius)
