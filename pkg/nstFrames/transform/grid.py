"""grid

N x N frequency grid and the flat binary + JSON sidecar exchange format
for gridded data.

Array axis 0 is xi1 and axis 1 is xi2.  Frequencies are the integers of
np.fft.fftfreq(N, 1/N): DC sits at index (0, 0) (no fftshift) and the
range is [-N/2, N/2) cycles per unit square.

"""

import json
import logging
import math
from pathlib import Path
import numpy as np

from ..utils.errors import GridMismatch

log = logging.getLogger(__name__)

def is_power_of_two(n):
    return isinstance(n, (int, np.integer)) and n > 0 and (n & (n - 1)) == 0

class FrequencyGrid():
    def __init__(self, n):
        if not is_power_of_two(n):
            raise ValueError("grid must be a power of 2")
        self.n = int(n)

    def __eq__(self, other):
        return isinstance(other, FrequencyGrid) and other.n == self.n

    def __hash__(self):
        return hash(self.n)

    def __repr__(self):
        return "FrequencyGrid(%d)" % self.n

    @property
    def freqs(self):
        return np.fft.fftfreq(self.n, 1.0 / self.n)

    def mesh(self):
        k = self.freqs
        return np.meshgrid(k, k, indexing="ij")

    # largest scale whose band [-2^(j+1), 2^(j+1)] fits under Nyquist
    def max_scale(self):
        return int(math.log2(self.n)) - 2

    def fits(self, j):
        return 2**(j + 1) <= self.n // 2

    # physical frequency of a pixel and back
    def frequency(self, i1, i2):
        k = self.freqs
        return k[i1], k[i2]

    def pixel(self, xi1, xi2):
        return int(xi1) % self.n, int(xi2) % self.n

    def check(self, array):
        if np.shape(array)[-2:] != (self.n, self.n):
            raise GridMismatch("array of shape %s does not match %r" % (np.shape(array), self))

    def to_dict(self):
        return {"n": self.n, "frequency_range": [-self.n // 2, self.n // 2], "dc_index": [0, 0]}

def write_grid(path, array, domain="space", provenance=None):
    """Write <path>.f64 (little-endian float64, row-major) and <path>.json."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    array = np.asarray(array)
    if np.iscomplexobj(array):
        data = np.stack([array.real, array.imag])
        components = ["re", "im"]
    else:
        data = array[None, ...]
        components = ["re"]
    data.astype("<f8").tofile(path.with_suffix(".f64"))
    sidecar = {
        "shape": list(array.shape),
        "dtype": "float64",
        "byteorder": "little",
        "order": "C",
        "domain": domain,
        "components": components,
        "provenance": provenance or {},
    }
    with open(path.with_suffix(".json"), "w") as f:
        json.dump(sidecar, f, indent=2, sort_keys=True)
    log.debug("wrote grid %s %s", path, array.shape)
    return sidecar

def read_grid(path):
    path = Path(path)
    with open(path.with_suffix(".json"), "r") as f:
        sidecar = json.load(f)
    shape = tuple(sidecar["shape"])
    count = len(sidecar["components"])
    data = np.fromfile(path.with_suffix(".f64"), dtype="<f8")
    if data.size != count * int(np.prod(shape)):
        raise GridMismatch("%s holds %d values, sidecar expects %d x %s" % (path, data.size, count, shape))
    data = data.reshape((count,) + shape)
    if count == 2:
        return data[0] + 1j * data[1], sidecar
    return data[0], sidecar
