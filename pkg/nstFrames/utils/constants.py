from math import pi

two_pi = 2.0 * pi

# Meyer ramp order: 3 gives nu(t) = t^4 (35 - 84t + 70t^2 - 20t^3)
meyer_order = 3

# cross-Grammian truncation defaults
gram_j_max = 6
gram_m_radius = 16
gram_threshold = 1e-12
gram_entries_radius = 2

# quadrature resolution (per axis)
quad_samples_per_oscillation = 8
quad_min_samples = 64
quad_max_samples = 4096

# decay slice and the geometric ray of positions it is sampled on
decay_scale = 4
decay_ray_start = 16
decay_ray_stop = 256
decay_ray_points = 13

# n-term approximation
approx_grid = 512
approx_n_list = [2**i for i in range(4, 15)]
approx_lowpass_scale = 2
lp_exponent = 2.0 / 3.0 + 0.05

# cartoon model
cartoon_harmonics = 5
cartoon_attempts = 200
cartoon_curvature_samples = 4096
cartoon_c2_target = 0.95
cartoon_supersample = 4
cartoon_nu = 25.0
cartoon_radius = (0.15, 0.3)
cartoon_margin = 0.05

# geometric separation
point_exponent = 1.5
point_clip_px = 2.0
cluster_position_factor = 2.0
cluster_angle_factor = 2.0
solver_max_iter = 2000
solver_rel_tol = 1e-6
solver_feasibility = 1e-5

# text output precision (significant digits)
float_digits = 17

# CLI exit codes
exit_ok = 0
exit_refused = 1
exit_usage = 2
