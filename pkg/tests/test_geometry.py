import doctest
import math
import numpy as np
import pytest

from nstFrames.frames import geometry
from nstFrames.frames.geometry import (bracket, parabolic_scaling, polar, rotation,
                                       sector_box, shear, wrap_angle)

def test_doctests():
    failures, _ = doctest.testmod(geometry)
    assert failures == 0

@pytest.mark.parametrize("a,b", [(2.0, 0.5), (0.125, 8.0), (3.0, 7.0)])
def test_scaling_composes(a, b):
    np.testing.assert_allclose(parabolic_scaling(a) @ parabolic_scaling(b), parabolic_scaling(a * b))

def test_shear_composes():
    for k in range(-3, 4):
        for kk in range(-3, 4):
            np.testing.assert_allclose(shear(k) @ shear(kk), shear(k + kk))

def test_rotation_orthogonal(rng):
    for theta in rng.uniform(-10, 10, 20):
        R = rotation(theta)
        np.testing.assert_allclose(R @ R.T, np.eye(2), atol=1e-14)
        assert np.linalg.det(R) == pytest.approx(1.0)

def test_bracket():
    assert bracket(0.0) == 1.0
    assert bracket(3.0) == pytest.approx(math.sqrt(10.0))

def test_polar_and_wrap():
    r, omega = polar([1.0, 0.0, -1.0, 0.0], [0.0, 1.0, 0.0, -1.0])
    np.testing.assert_allclose(r, 1.0)
    np.testing.assert_allclose(omega, [0.0, 0.5*math.pi, math.pi, 1.5*math.pi])
    w = wrap_angle(np.array([0.0, math.pi, -math.pi, 3.5*math.pi]))
    assert np.all(w >= -math.pi) and np.all(w < math.pi)
    assert w[3] == pytest.approx(-0.5*math.pi)

def test_sector_box_contains_sector(rng):
    for _ in range(20):
        a = rng.uniform(0.5, 2.0)
        b = a * rng.uniform(1.5, 4.0)
        u = rng.uniform(-7.0, 7.0)
        v = u + rng.uniform(0.01, 3.0)
        x0, x1, y0, y1 = sector_box(a, b, u, v)
        rr, tt = np.meshgrid(np.linspace(a, b, 50), np.linspace(u, v, 200))
        x = rr * np.cos(tt)
        y = rr * np.sin(tt)
        eps = 1e-12
        assert np.all((x >= x0 - eps) & (x <= x1 + eps) & (y >= y0 - eps) & (y <= y1 + eps))
        assert x.max() == pytest.approx(x1, abs=0.05 * b)
