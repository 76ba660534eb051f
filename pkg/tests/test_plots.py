from types import SimpleNamespace
import numpy as np

from nstFrames.cartoon.approx import RateCurve
from nstFrames.gram.cross_gram import ConvergenceRow
from nstFrames.lib.plots import plot_convergence, plot_rate_curves, plot_separation

def test_plot_files(tmp_path):
    table = [ConvergenceRow(1, 1, 1.0, 2.0, 2.0, 1.5), ConvergenceRow(2, 2, 1.0, 2.1, 2.1, 1.6),
             ConvergenceRow(1, 1, 0.5, 3.0, 3.0, 2.5), ConvergenceRow(2, 2, 0.5, 3.3, 3.3, 2.6)]
    assert plot_convergence(table, tmp_path / "c.png").stat().st_size > 0

    results = [SimpleNamespace(j=j, ratio=0.5 / j, mu_c=0.2 / j) for j in (3, 4, 5)]
    assert plot_separation(results, tmp_path / "sub" / "s.png").exists()

    counts = [2**i for i in range(3, 10)]
    curve = RateCurve("shearlet", 1, [(n, n**-2.0) for n in counts], [0.0] * len(counts), slope=-2.0)
    empty = RateCurve("wavelet", 1, [(n, 0.0) for n in counts], [0.0] * len(counts))
    assert plot_rate_curves([curve, empty], tmp_path / "r.png").exists()
    assert np.isnan(empty.slope)
