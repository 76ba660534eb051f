import numpy as np
import pytest

from nstFrames.frames.windows import make_meyer_windows

@pytest.fixture
def windows():
    return make_meyer_windows(3)

@pytest.fixture
def rng():
    return np.random.default_rng(20240716)

# band-pass noise on an n x n grid, restricted to 2^(j_lo) <= |xi|_inf <= 2^(j_hi)
@pytest.fixture
def bandpass_noise(rng):
    def make(n, lo, hi):
        f = rng.standard_normal((n, n))
        k = np.fft.fftfreq(n, 1.0 / n)
        k1, k2 = np.meshgrid(k, k, indexing="ij")
        sup = np.maximum(np.abs(k1), np.abs(k2))
        F = np.fft.fft2(f)
        F[(sup < lo) | (sup > hi)] = 0.0
        return np.fft.ifft2(F).real
    return make
