import numpy as np
import pytest

from nstFrames.frames.windows import make_meyer_windows, meyer_ramp

def test_ramp_order_three_polynomial():
    t = np.linspace(0.0, 1.0, 101)
    expected = t**4 * (35 - 84*t + 70*t**2 - 20*t**3)
    np.testing.assert_allclose(meyer_ramp(t, 3), expected, atol=1e-13)

def test_ramp_symmetry():
    t = np.linspace(-0.5, 1.5, 401)
    for order in (1, 2, 3, 5):
        np.testing.assert_allclose(meyer_ramp(t, order) + meyer_ramp(1.0 - t, order), 1.0, atol=1e-13)

def test_supports(windows):
    assert windows.W(0.25) == 0.0
    assert windows.V(1.5) == 0.0
    x = np.linspace(-10.0, 10.0, 20001)
    outside = (np.abs(x) <= 0.5) | (np.abs(x) >= 2.0)
    assert np.all(windows.W(x)[outside] == 0.0)
    assert np.all(windows.V(x)[np.abs(x) >= 1.0] == 0.0)
    assert np.all(windows.phi(x)[np.abs(x) >= 1.0] == 0.0)

def test_calderon_sum(windows):
    assert windows.calderon_sum(3.0, 10) == pytest.approx(1.0, abs=1e-10)
    r = np.linspace(1.0, 2.0**10, 20000)
    np.testing.assert_allclose(windows.calderon_sum(r, 10), 1.0, atol=1e-10)

def test_scaling_completes_calderon(windows):
    x = np.linspace(-300.0, 300.0, 12001)
    total = windows.meyer_scaling(x)**2 + windows.calderon_sum(x, 10)
    np.testing.assert_allclose(total, 1.0, atol=1e-10)

def test_angular_partition(windows):
    t = np.linspace(-4.0, 4.0, 16001)
    np.testing.assert_allclose(windows.angular_sum(t), 1.0, atol=1e-12)

def test_radial_square_identity(windows):
    x = np.linspace(-3.0, 3.0, 6001)
    np.testing.assert_allclose(windows.W(x)**2, windows.phi(x / 2)**2 - windows.phi(x)**2, atol=1e-12)

def test_finite_differences_bounded(windows):
    h = 1e-3
    x = np.arange(-3.0, 3.0, h)
    for profile in (windows.W(x), windows.V(x), windows.phi(x)):
        d = profile
        for order in range(1, 5):
            d = np.diff(d) / h
            assert np.all(np.isfinite(d))
            assert np.max(np.abs(d)) < 1e6

def test_bad_order():
    with pytest.raises(ValueError):
        make_meyer_windows(0)
