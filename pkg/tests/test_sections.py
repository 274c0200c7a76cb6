import numpy as np
import pytest

from shiftlab import (
    NotFredholm,
    RootOnCircle,
    SamplerConfig,
    adjoint_kernel_basis,
    decay_profile,
    epsilon_sweep,
    fredholm_index,
    from_roots,
    scalar_poly,
    subspace_index_sample,
)
from shiftlab.sections import decay_profile_csv, sweep_csv

from util import random_monic


# ---------------------------------------------------------------------------
# decay profiles
# ---------------------------------------------------------------------------


def test_decay_single_inside_root_rate():
    profile = decay_profile(scalar_poly([-0.5]), [12, 18, 24, 30])
    assert profile.decaying_count == 1
    assert profile.decaying[0]
    assert abs(profile.fitted_rates[0] - 0.5) <= 0.1


def test_decay_no_inside_roots():
    profile = decay_profile(scalar_poly([2.0]), [16, 64, 256])  # root at -2
    assert profile.decaying_count == 0
    assert profile.sigma_tails.min() >= 0.5


def test_decay_two_inside_roots():
    profile = decay_profile(from_roots([0.5, 0.6]), [16, 24, 32, 40])
    assert profile.decaying_count == 2
    assert profile.decaying[0] and profile.decaying[1] and not profile.decaying[2]


def test_decay_counts_conjugate_pair():
    profile = decay_profile(from_roots([0.7j, -0.7j]), [24, 36, 48])
    assert profile.decaying_count == 2
    assert abs(profile.fitted_rates[0] - 0.7) <= 0.1
    assert abs(profile.fitted_rates[1] - 0.7) <= 0.1


def test_decay_saturated_tracks_still_classified():
    # 0.5^64 is far below the SVD roundoff floor at every requested size;
    # the track must still count as decaying
    profile = decay_profile(scalar_poly([-0.5]), [64, 128, 256])
    assert profile.decaying_count == 1
    assert profile.sigma_tails[:, 0].max() <= profile.noise_floor


def test_decay_rejects_matrix_polynomial():
    with pytest.raises(ValueError):
        decay_profile(random_monic(np.random.default_rng(1), 2, 2), [16, 32])


def test_decay_rejects_circle_root():
    with pytest.raises(NotFredholm):
        decay_profile(scalar_poly([-1.0]), [16, 32])


def test_decay_rejects_bad_sizes():
    p = scalar_poly([-0.5, 0.0])  # degree 2
    with pytest.raises(ValueError):
        decay_profile(p, [32, 16])
    with pytest.raises(ValueError):
        decay_profile(p, [4, 16])  # below 4 * degree


def test_decay_csv_layout():
    profile = decay_profile(scalar_poly([-0.5]), [12, 18])
    lines = decay_profile_csv(profile).strip().splitlines()
    assert lines[0] == "N,track,sigma,fitted_rate,decaying"
    assert len(lines) == 1 + 2 * 3  # (sizes) x (n + 2 tracks)


# ---------------------------------------------------------------------------
# adjoint kernel vectors
# ---------------------------------------------------------------------------


def test_adjoint_kernel_single_root():
    basis = adjoint_kernel_basis(scalar_poly([-0.5]), 64)
    assert len(basis.vectors) == 1
    v = basis.vectors[0]
    expected = 0.5 ** np.arange(64)
    expected /= np.linalg.norm(expected)
    np.testing.assert_allclose(v, expected, atol=1e-14)
    assert basis.residuals[0] <= 1e-15
    assert basis.residuals[0] <= basis.bound_constant * 0.5 ** (64 - 1)


def test_adjoint_kernel_empty_for_outside_roots():
    basis = adjoint_kernel_basis(scalar_poly([2.0]), 32)
    assert basis.vectors == ()


def test_adjoint_kernel_pair_angle():
    basis = adjoint_kernel_basis(scalar_poly([-0.25, 0.0]), 48)  # roots +-0.5
    assert len(basis.vectors) == 2
    cosang = abs(np.vdot(basis.vectors[0], basis.vectors[1]))
    assert cosang <= 0.75  # geometric vectors at +-0.5 have cos angle 0.6


def test_adjoint_kernel_residual_bound_random():
    rng = np.random.default_rng(51)
    for _ in range(5):
        inside = rng.uniform(0.3, 0.8) * np.exp(2j * np.pi * rng.uniform())
        outside = rng.uniform(1.3, 2.0) * np.exp(2j * np.pi * rng.uniform())
        p = from_roots([inside, outside])
        N = 40
        basis = adjoint_kernel_basis(p, N)
        assert len(basis.vectors) == 1
        assert basis.residuals[0] <= basis.bound_constant * abs(inside) ** (N - p.degree)


def test_adjoint_kernel_rejects_circle_root():
    with pytest.raises(RootOnCircle):
        adjoint_kernel_basis(from_roots([1.0, 0.3]), 32)


# ---------------------------------------------------------------------------
# eps sweeps
# ---------------------------------------------------------------------------


def test_sweep_single_crossing():
    # witness at 2: the scaled root 2*eps crosses the circle at eps = 0.5
    result = epsilon_sweep(scalar_poly([-2.0]), [0.1, 0.25, 0.4, 0.6, 0.9])
    assert len(result.critical_eps) == 1
    crit = result.critical_eps[0]
    assert abs(crit - 0.5) <= 1e-6
    lo, hi = result.critical_brackets[0]
    assert (hi - lo) <= 1e-6 * 0.5 * (hi + lo)
    for eps, rep in zip(result.eps_values, result.indices):
        assert rep.index_winding == (-1 if eps < crit else 0)


def test_sweep_small_eps_reaches_minus_n_d():
    rng = np.random.default_rng(52)
    p = random_monic(rng, 3, 2)
    result = epsilon_sweep(p, [1e-3, 0.01])
    first = result.indices[0]
    assert first.fredholm
    assert first.index_winding == -p.degree * p.dim


def test_sweep_grid_beyond_all_criticals():
    p = from_roots([1.5, 2.0, -3.0])  # no roots inside
    result = epsilon_sweep(p, [0.7, 0.8, 0.9])
    assert max(result.critical_eps) < 0.7
    assert all(r.index_winding == 0 for r in result.indices)


def test_sweep_piecewise_constant_between_criticals():
    p = from_roots([2.0, 0.4])  # criticals at 0.5 and 2.5
    grid = np.linspace(0.05, 3.0, 24)
    result = epsilon_sweep(p, grid)
    crits = sorted(result.critical_eps)
    assert len(crits) == 2
    edges = [grid[0]] + crits + [grid[-1]]
    for lo, hi in zip(edges, edges[1:]):
        mid_report = fredholm_index(p, 0.5 * (lo + hi))
        for eps, rep in zip(result.eps_values, result.indices):
            if lo < eps < hi and rep.fredholm:
                assert rep.index_winding == mid_report.index_winding


def test_sweep_parallel_matches_serial():
    p = from_roots([2.0, 0.4])
    grid = [0.1, 0.3, 0.6, 1.0]
    serial = epsilon_sweep(p, grid, parallel=False)
    threaded = epsilon_sweep(p, grid, parallel=True)
    assert [r.index_winding for r in serial.indices] == [
        r.index_winding for r in threaded.indices
    ]


def test_sweep_rejects_bad_grids():
    p = scalar_poly([-2.0])
    with pytest.raises(ValueError):
        epsilon_sweep(p, [])
    with pytest.raises(ValueError):
        epsilon_sweep(p, [-0.1, 0.5])
    with pytest.raises(ValueError):
        epsilon_sweep(p, [0.5, 0.3])


def test_sweep_csv_one_row_per_eps():
    result = epsilon_sweep(scalar_poly([-2.0]), [0.1, 0.9])
    lines = sweep_csv(result).strip().splitlines()
    assert len(lines) == 3
    assert lines[0].startswith("eps,fredholm,index_winding")


# ---------------------------------------------------------------------------
# bounded-index sampler
# ---------------------------------------------------------------------------


def test_sampler_degree_one_two_regimes():
    # S_1 - lambda admits exactly the indices -1 (inside) and 0 (outside)
    rng = np.random.default_rng(53)
    seen = set()
    for _ in range(60):
        mod = rng.uniform(0.0, 2.0)
        if abs(mod - 1.0) < 0.1:
            continue
        lam = mod * np.exp(2j * np.pi * rng.uniform())
        report = fredholm_index(scalar_poly([-lam]))
        assert report.fredholm
        seen.add(report.index_winding)
    assert seen == {-1, 0}

    hist = subspace_index_sample(1, 100, SamplerConfig(seed=5))
    assert set(hist.counts) <= {-1, 0}


def test_sampler_histogram_bounds_degree_three():
    hist = subspace_index_sample(3, 120, SamplerConfig(seed=9))
    assert hist.trials == 120
    assert sum(hist.counts.values()) + hist.non_fredholm_count == 120
    assert all(-3 <= k <= 0 for k in hist.counts)


def test_sampler_zero_scale_gives_pure_shift():
    hist = subspace_index_sample(1, 1, SamplerConfig(seed=1, coeff_scale=0.0))
    assert hist.counts == {-1: 1}
    assert hist.non_fredholm_count == 0


def test_sampler_general_mode_stays_bounded():
    hist = subspace_index_sample(2, 80, SamplerConfig(seed=17, monic=False))
    assert sum(hist.counts.values()) + hist.non_fredholm_count == 80
    assert all(-2 <= k <= 0 for k in hist.counts)


def test_sampler_rejects_bad_arguments():
    with pytest.raises(ValueError):
        subspace_index_sample(3, 0, SamplerConfig(seed=1))
    with pytest.raises(ValueError):
        subspace_index_sample(0, 5, SamplerConfig(seed=1))


def test_sampler_json_shape():
    doc = subspace_index_sample(2, 10, SamplerConfig(seed=3)).to_jsonable()
    assert set(doc) == {"trials", "counts", "non_fredholm_count"}
    assert all(isinstance(k, str) for k in doc["counts"])
