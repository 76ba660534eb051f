import logging
import numpy as np
import pytest

from nstFrames.frames.atoms import CurveletIndex, ShearletIndex, WaveletIndex
from nstFrames.transform.grid import FrequencyGrid
from nstFrames.transform.tiles import FrameSpec, build_tiles, coverage, lattice_shape, lowpass_window
from nstFrames.transform.transform import (analyze, grid_inner_product, n_term_truncate,
                                           render_atom, synthesize, tail_energy)
from nstFrames.utils.errors import GridMismatch

FRAMES = ["curvelet", "shearlet", "wavelet"]

def _unit(coeffs, index):
    c = coeffs.map(np.zeros_like)
    key = [k for k in c.keys if k == _key(index)][0]
    n = index.n if isinstance(index, WaveletIndex) else index.m
    c.values[key][n] = 1.0
    return c

def _key(index):
    if isinstance(index, CurveletIndex):
        return (index.j, index.ell)
    elif isinstance(index, ShearletIndex):
        return (index.j, index.k, index.cone)
    return (index.j, index.h)

def test_frame_spec_validation():
    with pytest.raises(ValueError):
        FrameSpec("ridgelet")
    with pytest.raises(ValueError):
        FrameSpec("wavelet", j_min=-1)
    assert FrameSpec("shearlet").scales(FrequencyGrid(64)) == [0, 1, 2, 3, 4]

@pytest.mark.parametrize("kind", FRAMES)
def test_coverage_is_one_on_band(kind):
    grid = FrequencyGrid(32)
    total = coverage(grid, FrameSpec(kind))
    assert np.all(total <= 1.0 + 1e-12)
    K1, K2 = grid.mesh()
    sup = np.maximum(np.abs(K1), np.abs(K2))
    band = (sup >= 1) & (np.hypot(K1, K2) <= 8)
    np.testing.assert_allclose(total[band], 1.0, atol=1e-12)

@pytest.mark.parametrize("kind", FRAMES)
def test_lowpass_completes_coverage(kind):
    grid = FrequencyGrid(32)
    spec = FrameSpec(kind, j_min=2)
    total = coverage(grid, spec) + lowpass_window(grid, spec)**2
    K1, K2 = grid.mesh()
    inside = np.hypot(K1, K2) <= 8
    np.testing.assert_allclose(total[inside], 1.0, atol=1e-12)

@pytest.mark.parametrize("kind", FRAMES)
def test_zero_input(kind):
    c = analyze(np.zeros((32, 32)), kind)
    assert c.energy() == 0.0
    np.testing.assert_array_equal(synthesize(c), 0.0)

@pytest.mark.parametrize("kind", FRAMES)
def test_parseval_on_band(kind, bandpass_noise):
    f = bandpass_noise(32, 1, 5)
    c = analyze(f, kind)
    assert c.energy() == pytest.approx(np.sum(f**2), rel=1e-10)

@pytest.mark.parametrize("kind", FRAMES)
def test_round_trip(kind, bandpass_noise):
    f = bandpass_noise(64, 1, 11)
    g = synthesize(analyze(f, kind, workers=2))
    assert np.linalg.norm(g - f) <= 1e-10 * np.linalg.norm(f)

def test_coefficient_types(rng):
    f = rng.standard_normal((32, 32))
    assert np.iscomplexobj(analyze(f, "curvelet").to_vector())
    assert not np.iscomplexobj(analyze(f, "shearlet").to_vector())
    assert not np.iscomplexobj(analyze(f, "wavelet").to_vector())
    # imaginary parts dropped for the symmetric frames are zero
    spec = FrameSpec("shearlet")
    tiles, _ = build_tiles(32, spec)
    F = np.fft.fft2(f).ravel()
    tile = tiles[len(tiles) // 2]
    G = np.zeros(tile.size, dtype=complex)
    G[tile.target] = F[tile.idx] * tile.window
    assert np.max(np.abs(np.fft.ifft2(G.reshape(tile.shape)).imag)) < 1e-12

@pytest.mark.parametrize("index", [ShearletIndex(2, 1, (3, 5), 1), ShearletIndex(3, -2, (7, 1), 2),
                                   CurveletIndex(3, 1, (2, 9)), WaveletIndex(3, 2, (4, 4))])
def test_analyze_matches_direct_sum(index, rng):
    f = rng.standard_normal((32, 32))
    kind = {CurveletIndex: "curvelet", ShearletIndex: "shearlet", WaveletIndex: "wavelet"}[type(index)]
    c = analyze(f, kind)
    assert abs(c.get(index) - grid_inner_product(f, index)) <= 1e-8

@pytest.mark.parametrize("index", [ShearletIndex(3, 0, (5, 7), 1), ShearletIndex(3, 2, (1, 12), 2),
                                   WaveletIndex(1, 3, (5, 7)), WaveletIndex(3, 2, (3, 2))])
def test_single_atom_is_largest_coefficient(index):
    kind = "shearlet" if isinstance(index, ShearletIndex) else "wavelet"
    atom = render_atom(index, 64)
    assert not np.iscomplexobj(atom)
    c = analyze(atom, kind)
    mags = np.abs(c.to_vector())
    assert abs(c.get(index)) == pytest.approx(mags.max())
    assert c.get(index) == pytest.approx(np.sum(atom**2))

@pytest.mark.parametrize("index", [ShearletIndex(2, 1, (3, 5), 1), CurveletIndex(3, 2, (1, 6)),
                                   WaveletIndex(2, 3, (0, 5))])
def test_rendered_atom_is_synthesized_unit(index):
    kind = {CurveletIndex: "curvelet", ShearletIndex: "shearlet", WaveletIndex: "wavelet"}[type(index)]
    zero = analyze(np.zeros((32, 32)), kind)
    g = synthesize(_unit(zero, index))
    atom = render_atom(index, 32)
    np.testing.assert_allclose(g, atom.real, atol=1e-14)

def test_render_atom_domains():
    index = ShearletIndex(2, 0, (0, 0), 1)
    F = render_atom(index, 32, domain="frequency")
    space = render_atom(index, 32, domain="space")
    np.testing.assert_allclose(np.fft.fft2(space, norm="ortho"), F, atol=1e-13)
    with pytest.raises(ValueError):
        render_atom(index, 32, domain="wavenumber")
    with pytest.raises(GridMismatch):
        render_atom(ShearletIndex(4, 0), 32)

def test_synthesis_is_linear(rng):
    f = rng.standard_normal((32, 32))
    for kind in FRAMES:
        a = analyze(f, kind)
        b = a.from_vector(rng.standard_normal(a.size))
        lhs = synthesize(a + b)
        rhs = synthesize(a) + synthesize(b)
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)
        np.testing.assert_allclose(synthesize(2.0 * a - a), synthesize(a), atol=1e-12)

def test_n_term_extremes(rng):
    c = analyze(rng.standard_normal((32, 32)), "shearlet")
    np.testing.assert_array_equal(n_term_truncate(c, c.size).to_vector(), c.to_vector())
    np.testing.assert_array_equal(n_term_truncate(c, c.size + 10).to_vector(), c.to_vector())
    assert not np.any(n_term_truncate(c, 0).to_vector())
    with pytest.raises(ValueError):
        n_term_truncate(c, -1)

def test_n_term_matches_sort_oracle(rng):
    c = analyze(rng.standard_normal((32, 32)), "wavelet")
    # plant ties
    v = np.round(rng.standard_normal(c.size), 1)
    c = c.from_vector(v)
    for count in (1, 17, 200):
        oracle = sorted(range(len(v)), key=lambda i: (-abs(v[i]), i))[:count]
        kept = np.flatnonzero(n_term_truncate(c, count).to_vector() != 0)
        expected = [i for i in oracle if v[i] != 0]
        assert sorted(kept) == sorted(expected)

@pytest.mark.parametrize("kind", FRAMES)
def test_truncation_error_below_tail(kind, rng):
    f = rng.standard_normal((32, 32))
    c = analyze(f, kind)
    projected = synthesize(c)
    previous = np.inf
    for count in (0, 10, 100, 400, 1000):
        err = np.sum((projected - synthesize(n_term_truncate(c, count)))**2)
        tail = tail_energy(c, count)
        assert err <= tail * (1.0 + 1e-10) + 1e-12
        assert tail <= previous
        previous = tail

def test_grid_mismatch(rng):
    a = analyze(rng.standard_normal((32, 32)), "wavelet")
    b = analyze(rng.standard_normal((64, 64)), "wavelet")
    with pytest.raises(GridMismatch):
        a + b
    with pytest.raises(GridMismatch):
        analyze(rng.standard_normal((32, 16)), "wavelet")
    with pytest.raises(ValueError, match="grid must be a power of 2"):
        analyze(rng.standard_normal((24, 24)), "wavelet")

def test_scales_past_nyquist_skipped(caplog):
    build_tiles.cache_clear()
    with caplog.at_level(logging.WARNING):
        c = analyze(np.zeros((16, 16)), FrameSpec("shearlet", 0, 4))
    assert c.skipped == (3, 4)
    assert c.provenance()["skipped_scales"] == [3, 4]
    assert "Nyquist" in caplog.text
    assert all(key[0] <= 2 for key in c.keys)

def test_items_lists_nonzero_indices():
    index = WaveletIndex(3, 1, (2, 3))
    zero = analyze(np.zeros((16, 16)), "wavelet")
    items = list(_unit(zero, index).items())
    assert items == [(index, 1.0)]

@pytest.mark.parametrize("kind", FRAMES)
def test_lattice_folds_support_one_to_one(kind):
    tiles, _ = build_tiles(64, FrameSpec(kind))
    for tile in tiles:
        M1, M2 = tile.shape
        assert M1 & (M1 - 1) == 0 and M2 & (M2 - 1) == 0
        assert M1 <= 64 and M2 <= 64
        assert np.unique(tile.target).size == tile.target.size
        assert tile.norm() <= 1.0 + 1e-12

@pytest.mark.parametrize("kind,per_scale", [("shearlet", 96), ("curvelet", 48), ("wavelet", 32)])
def test_redundancy_bounded_across_scales(kind, per_scale):
    n = 256
    tiles, _ = build_tiles(n, FrameSpec(kind))
    sizes = {}
    for tile in tiles:
        sizes[tile.j] = sizes.get(tile.j, 0) + tile.size
    assert sorted(sizes) == list(range(7))
    for j in range(1, 7):
        assert sizes[j] <= per_scale * 4**j
    assert sum(sizes.values()) <= 6 * n * n

def test_lattice_shape():
    assert lattice_shape([], []) == (1, 1)
    # a thin horizontal strip keeps a short second axis
    k1, k2 = np.meshgrid(np.arange(-8, 9), np.arange(-1, 2), indexing="ij")
    assert lattice_shape(k1.ravel(), k2.ravel()) == (32, 4)
    assert lattice_shape(k2.ravel(), k1.ravel()) == (4, 32)
    # a sheared strip: every line of constant k1 is short
    k1 = np.repeat(np.arange(8, 16), 3)
    k2 = k1 + np.tile([0, 1, 2], 8)
    assert lattice_shape(k1, k2) == (8, 4)
