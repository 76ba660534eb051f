import math
import numpy as np
import pytest
from scipy import sparse

from nstFrames.frames.atoms import CurveletIndex, ShearletIndex
from nstFrames.gram.cross_gram import (GramSweep, TruncationSpec, assemble_cross_gram, curvelet_family,
                                       decay_entries, decay_fit, decay_ray, gram_slices, op_norm_convergence, op_p_norm,
                                       saturation_ratio, shearlet_family, sweep_truncations,
                                       transfer_check)
from nstFrames.gram.quadrature import inner_product
from nstFrames.utils.errors import SliceError

def test_op_norm_examples():
    assert op_p_norm(np.eye(5), 1.0) == pytest.approx(1.0)
    assert op_p_norm(np.eye(5), 0.3) == pytest.approx(1.0)
    M = np.array([[1.0, 0.5], [0.5, 1.0]])
    assert op_p_norm(M, 1.0) == pytest.approx(1.5)
    assert op_p_norm(M, 0.5) == pytest.approx((1.0 + math.sqrt(0.5))**2)
    assert op_p_norm(M, 0.5) == pytest.approx(2.914, abs=1e-3)
    assert op_p_norm(sparse.csr_matrix((3, 4)), 1.0) == 0.0
    with pytest.raises(ValueError):
        op_p_norm(M, 1.5)

def test_op_norm_transpose_symmetric(rng):
    M = rng.standard_normal((7, 11)) * (rng.uniform(size=(7, 11)) < 0.3)
    for p in (1.0, 0.5, 2.0 / 3.0):
        assert op_p_norm(M, p) == pytest.approx(op_p_norm(M.T, p))

def test_family_sizes():
    rows = shearlet_family(TruncationSpec(4, 2))
    assert len(rows) == 29 * 25 * 2
    assert len(set(rows)) == len(rows)
    cols = curvelet_family(TruncationSpec(4, 2))
    assert len(cols) == (1 + 2 + 2 + 3 + 4) * 25

def test_truncation_validation():
    with pytest.raises(ValueError):
        TruncationSpec(-1, 2)
    with pytest.raises(ValueError):
        TruncationSpec(2, 2, p=0.0)

def test_slices_respect_scale_gap():
    for key in gram_slices(6, 6):
        assert abs(key.j - key.jt) <= 2

@pytest.fixture(scope="module")
def small_gram():
    return assemble_cross_gram(TruncationSpec(2, 1), TruncationSpec(5, 1), threshold=0.0)

def test_assembled_entries(small_gram):
    assert small_gram.nnz > 0
    for eta, mu, value in small_gram.entries():
        assert abs(eta.j - mu.j) <= 2
        assert value != 0
    eta = ShearletIndex(2, 0, (1, 0), 1)
    mu = CurveletIndex(2, 0, (0, 1))
    direct = inner_product(eta, mu)
    assert abs(small_gram.get(eta, mu) - direct) <= 1e-6 * max(abs(direct), 1e-3)

def test_threshold_changes_norm_negligibly(small_gram):
    coarse = assemble_cross_gram(TruncationSpec(2, 1), TruncationSpec(5, 1), threshold=1e-14)
    assert abs(coarse.op_p_norm(1.0) - small_gram.op_p_norm(1.0)) < 1e-10
    assert all(abs(v) >= 1e-14 for _, _, v in coarse.entries())

def test_transpose_and_transfer(small_gram, rng):
    for p in (1.0, 0.5):
        assert small_gram.transpose().op_p_norm(p) == pytest.approx(small_gram.op_p_norm(p))
        for _ in range(10):
            c = rng.standard_normal(len(small_gram.rows)) * (rng.uniform(size=len(small_gram.rows)) < 0.2)
            lhs, rhs = transfer_check(small_gram, c, p)
            assert lhs <= rhs * (1.0 + 1e-12)

def test_sweep_matches_assembled_norms():
    truncations = [(1, 1), (2, 1), (2, 2)]
    table = GramSweep(truncations, [1.0, 0.5], threshold=0.0, entries_radius=-1).run()
    by_key = {(r.j_max, r.m_radius, r.p): r for r in table}
    for J, R in truncations:
        gram = assemble_cross_gram(TruncationSpec(J, R), TruncationSpec(J, R), threshold=0.0)
        for p in (1.0, 0.5):
            assert by_key[(J, R, p)].op_p_norm == pytest.approx(gram.op_p_norm(p), rel=1e-5)
    for p in (1.0, 0.5):
        values = [by_key[(J, R, p)].op_p_norm for J, R in truncations]
        assert all(b >= a for a, b in zip(values, values[1:]))
    assert by_key[(2, 2, 0.5)].op_p_norm > by_key[(2, 2, 1.0)].op_p_norm

def test_sweep_is_worker_independent():
    a = op_norm_convergence(1.0, [1, 2], [1], workers=1)
    b = op_norm_convergence(1.0, [1, 2], [1], workers=4)
    assert a == b

def test_sweep_entries_within_radius():
    sweep = GramSweep([(1, 1)], [1.0], entries_radius=1)
    sweep.run()
    assert sweep.records
    for eta, mu, value, b in sweep.records:
        assert max(abs(x) for x in eta.m) <= 1 and max(abs(x) for x in mu.m) <= 1
        assert b >= 0.0

def test_sweep_shapes():
    assert sweep_truncations([3, 4, 5], [8]) == [(3, 8), (4, 8), (5, 8)]
    assert sweep_truncations([5], [12, 16]) == [(5, 12), (5, 16)]
    with pytest.raises(ValueError):
        sweep_truncations([3, 4], [1, 2, 3])
    with pytest.raises(ValueError):
        sweep_truncations([4, 3], [1])
    assert saturation_ratio([1.0, 2.0, 2.1]) == pytest.approx(0.1 / 2.1)

def test_decay_fit_planted(rng):
    b = rng.uniform(0.0, 50.0, 40)
    v = (1.0 + b**2)**-3.0
    fit = decay_fit(list(zip(b, v)))
    assert fit.slope == pytest.approx(-6.0, abs=1e-6)
    assert fit.r2 == pytest.approx(1.0)
    order = rng.permutation(len(b))
    shuffled = decay_fit(list(zip(b[order], v[order])))
    assert shuffled.slope == pytest.approx(fit.slope, abs=1e-12)

def test_decay_fit_errors():
    with pytest.raises(SliceError, match="no overlap in slice"):
        decay_fit([(float(i), 0.0) for i in range(12)])
    with pytest.raises(SliceError):
        decay_fit([(float(i), 1.0 / (i + 1)) for i in range(5)])

def test_decay_ray():
    ray = decay_ray()
    assert ray[0] == (16, 0) and ray[-1] == (256, 0)
    assert len(ray) == 13
    assert all(a[0] < b[0] for a, b in zip(ray, ray[1:]))
    assert decay_ray(1, 4, 10, axis=1) == [(0, 1), (0, 2), (0, 3), (0, 4)]
    with pytest.raises(ValueError):
        decay_ray(8, 4, 5)

def test_default_slice_decays_fast():
    entries = decay_entries(4, 0, 4, 0, decay_ray())
    fit = decay_fit(entries)
    assert fit.count == 13
    assert fit.slope <= -4.0
    assert fit.r2 >= 0.9
    # entries near the origin sit on a plateau with a much flatter fit
    near = decay_fit(decay_entries(4, 0, 4, 0, [(t, 0) for t in range(1, 25)]))
    assert near.slope > fit.slope
