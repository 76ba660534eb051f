import math
import numpy as np
import pytest

from nstFrames.frames.atoms import CurveletIndex, ShearletIndex, curvelet_angle, support_box
from nstFrames.frames.geometry import parabolic_scaling, rotation, shear
from nstFrames.gram.index_sets import (b_norms, b_vector, corner_l, k_count, k_count_bound,
                                       k_set, l_count, l_count_bound, l_set)

def test_k_set_coarsest():
    assert k_set(0, 0, 0) == [-1, 0, 1]

@pytest.mark.parametrize("j", [16, 18, 20])
def test_k_count_at_corner(j):
    ell = corner_l(j)
    assert ell == 2**(j // 2) // 8
    count = k_count(j, j, ell)
    assert count == 6
    assert abs(count - 7) <= 1
    assert count <= k_count_bound(j)

@pytest.mark.parametrize("j", [16, 18, 20])
def test_l_count_at_zero_shear(j):
    count = l_count(j, j, 0)
    assert count == 2
    assert abs(count - 3) <= 1
    assert count <= l_count_bound(j)
    assert l_set(j, j, 0) == [0, 2**(j // 2) // 2]

def test_k_set_capped():
    for j in range(0, 9):
        for jt in range(max(0, j - 2), j + 3):
            for ell in range(int(math.ceil(2**(jt / 2)))):
                for cone in (1, 2):
                    ks = k_set(j, jt, ell, cone)
                    assert all(abs(k) <= math.ceil(2**(j / 2)) for k in ks)

def _l_margin(j, jt, k, ell):
    w = 2.0**(-jt / 2)
    lo = math.atan(2.0**(-j / 2) * (-1 - k)) - w
    hi = math.atan(2.0**(-j / 2) * (1 - k)) + w
    theta = curvelet_angle(jt, ell)
    return min(min(abs(theta - c * math.pi - lo), abs(theta - c * math.pi - hi)) for c in (-1, 0, 1, 2))

def test_l_set_matches_angular_overlap(rng):
    tested = 0
    while tested < 200:
        j = int(rng.choice([2, 4, 6, 8]))
        s = 2**(j // 2)
        k = int(rng.integers(-(s - 1), s))
        ell = int(rng.integers(0, s))
        w = 2.0**(-j / 2)
        if _l_margin(j, j, k, ell) < w / 200:
            continue
        region = support_box(ShearletIndex(j, k))
        theta = curvelet_angle(j, ell)
        omega = np.linspace(theta - w, theta + w, 4001)
        r = 2.0**j
        overlap = bool(np.any(region.contains(r * np.cos(omega), r * np.sin(omega))))
        assert (ell in l_set(j, j, k)) == overlap
        tested += 1

def test_b_vector_examples():
    for j in (0, 3, 6):
        np.testing.assert_allclose(b_vector(j, 0, (3, 5), j, 0, (0, 0)), [3.0, 5.0], atol=1e-12)
    for j, k, m in [(4, 2, (3, -1)), (5, -3, (2, 7)), (2, 1, (-4, 4))]:
        lhs = parabolic_scaling(2.0**j) @ shear(k).T @ parabolic_scaling(2.0**-j) @ np.array(m, float)
        np.testing.assert_allclose(lhs, [m[0], 2.0**(-j / 2) * k * m[0] + m[1]], atol=1e-12)

def test_b_vector_matrix_oracle(rng):
    for _ in range(100):
        j = int(rng.integers(0, 8))
        jt = int(rng.integers(max(0, j - 2), j + 3))
        k = int(rng.integers(-math.ceil(2**(j / 2)), math.ceil(2**(j / 2)) + 1))
        ell = int(rng.integers(0, math.ceil(2**(jt / 2))))
        m = rng.integers(-9, 10, 2)
        mt = rng.integers(-9, 10, 2)
        theta = 2 * math.pi * ell / 2**(jt / 2)
        step1 = parabolic_scaling(2.0**-j) @ m
        step2 = shear(k).T @ step1
        step3 = parabolic_scaling(2.0**-jt) @ mt
        step4 = rotation(theta) @ step3
        expected = parabolic_scaling(2.0**j) @ (step2 - step4)
        got = b_vector(j, k, tuple(m), jt, ell, tuple(mt))
        np.testing.assert_allclose(got, expected, atol=1e-10)
        assert b_norms(j, k, jt, ell, m, mt) == pytest.approx(np.linalg.norm(expected), abs=1e-10)

def test_cone_two_uses_swapped_frame():
    b1 = b_vector(4, 1, (2, 3), 4, 2, (1, -1), cone=1)
    b2 = b_vector(4, 1, (2, 3), 4, 2, (1, -1), cone=2)
    assert np.all(np.isfinite(b2))
    assert b_norms(4, 1, 4, 2, np.array([2, 3]), np.array([1, -1]), 2) == pytest.approx(np.linalg.norm(b2))
    assert not np.allclose(b1, b2)

def test_cone_two_sets_follow_swap():
    # the wedge at pi/2 is to cone 2 what the wedge at 0 is to cone 1
    for j in (4, 6, 8):
        quarter = 2**(j // 2) // 4
        assert k_set(j, j, quarter, cone=2) == k_set(j, j, 0, cone=1)
        assert 0 in l_set(j, j, 0, cone=1)
        assert quarter in l_set(j, j, 0, cone=2)

def test_sets_are_sound_on_coarse_scales():
    # every shear/orientation pair with intersecting supports is in both sets
    from nstFrames.frames.atoms import supports_intersect
    for j in range(0, 6):
        for jt in range(max(0, j - 2), j + 3):
            for cone in (1, 2):
                for k in range(-math.ceil(2**(j / 2)), math.ceil(2**(j / 2)) + 1):
                    for ell in range(math.ceil(2**(jt / 2))):
                        if supports_intersect(ShearletIndex(j, k, (0, 0), cone), CurveletIndex(jt, ell)):
                            assert k in k_set(j, jt, ell, cone)
                            assert ell in l_set(j, jt, k, cone)
