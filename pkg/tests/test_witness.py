import numpy as np
import pytest

from shiftlab import (
    MonicPolynomial,
    NonMonicPencil,
    TheoremViolation,
    companion_linearize,
    eigenvalues,
    evaluate,
    find_witnesses,
    nonmonic_scan,
    scalar_poly,
    scale_transform,
    sigma_min,
)

from util import assert_multiset_close, random_element, random_monic


def test_companion_scalar_quadratic():
    C = companion_linearize(scalar_poly([-1.0, 0.0]))  # z^2 - 1
    assert C.shape == (2, 2)
    assert_multiset_close(np.linalg.eigvals(C), [1.0, -1.0], 1e-12)


def test_companion_degree_one_is_negated_coefficient():
    rng = np.random.default_rng(41)
    A = random_element(rng, 3)
    p = MonicPolynomial((-A,))  # p(z) = z I - A
    np.testing.assert_array_equal(companion_linearize(p), A)


def test_companion_charpoly_matches_det_oracle():
    rng = np.random.default_rng(42)
    p = random_monic(rng, 3, 2)
    C = companion_linearize(p)
    eye = np.eye(C.shape[0], dtype=complex)
    for _ in range(7):
        z = complex(rng.standard_normal(), rng.standard_normal())
        char = complex(np.linalg.det(z * eye - C))
        direct = complex(np.linalg.det(evaluate(p, z)))
        assert abs(char - direct) <= 1e-8 * max(1.0, abs(direct))


def test_eigenvalues_diagonal():
    assert_multiset_close(eigenvalues(np.diag([2.0, 3.0])), [2.0, 3.0], 1e-12)


def test_eigenvalues_rotation():
    M = np.array([[0.0, 1.0], [-1.0, 0.0]])
    assert_multiset_close(eigenvalues(M), [1j, -1j], 1e-12)


def test_eigenvalues_vieta_trace_det():
    rng = np.random.default_rng(43)
    M = random_element(rng, 8)
    vals = eigenvalues(M)
    assert abs(np.sum(vals) - np.trace(M)) <= 1e-8 * max(1.0, abs(np.trace(M)))
    det = complex(np.linalg.det(M))
    assert abs(np.prod(vals) - det) <= 1e-8 * max(1.0, abs(det))


def test_eigenvalues_rejects_nonsquare():
    with pytest.raises(ValueError):
        eigenvalues(np.ones((2, 3)))


def test_witnesses_diagonal_spectrum():
    p = MonicPolynomial((np.diag([-2.0, -3.0]).astype(complex),))  # z I - diag(2, 3)
    report = find_witnesses(p, 1e-8)
    assert report.count == 2
    assert_multiset_close([z for z, _ in report.witnesses], [2.0, 3.0], 1e-10)


def test_witnesses_classical_quadratic():
    report = find_witnesses(scalar_poly([1.0, 0.0]), 1e-8)  # z^2 + 1
    assert_multiset_close([z for z, _ in report.witnesses], [1j, -1j], 1e-10)
    assert all(r <= 1e-8 * (1 + abs(z)) ** 2 for z, r in report.witnesses)


def test_witnesses_random_counts_and_residuals():
    rng = np.random.default_rng(44)
    for _ in range(10):
        n = int(rng.integers(1, 6))
        d = int(rng.integers(1, 5))
        p = random_monic(rng, n, d)
        report = find_witnesses(p, 1e-6)
        assert report.count == n * d
        for z, residual in report.witnesses:
            assert residual <= 1e-6 * (1 + abs(z)) ** n


def test_witnesses_sorted_deterministically():
    report = find_witnesses(scalar_poly([1.0, 0.0]), 1e-8)
    mods = [abs(z) for z, _ in report.witnesses]
    assert mods == sorted(mods)
    doc = report.to_jsonable()
    assert doc["count"] == len(doc["witnesses"])
    assert set(doc["witnesses"][0]) == {"z", "residual"}


def test_witnesses_absurd_tolerance_is_theorem_violation():
    # a tolerance below resolvable residuals must fail loudly, not return empty
    with pytest.raises(TheoremViolation):
        find_witnesses(scalar_poly([1.0, 0.0]), 1e-300)


def test_witnesses_invariant_under_conjugation():
    rng = np.random.default_rng(45)
    p = random_monic(rng, 3, 3)
    while True:
        T = random_element(rng, 3)
        if np.linalg.cond(T) < 50:
            break
    Tinv = np.linalg.inv(T)
    conjugated = MonicPolynomial(tuple(T @ a @ Tinv for a in p.coeffs))
    base = [z for z, _ in find_witnesses(p, 1e-6).witnesses]
    moved = [z for z, _ in find_witnesses(conjugated, 1e-6).witnesses]
    assert_multiset_close(base, moved, 1e-6)


def test_degree_one_witnesses_are_the_spectrum():
    rng = np.random.default_rng(46)
    for d in (2, 4, 6):
        a = random_element(rng, d)
        p = MonicPolynomial((-a,))
        ws = [z for z, _ in find_witnesses(p, 1e-8).witnesses]
        assert_multiset_close(ws, eigenvalues(a), 1e-8)


def test_witnesses_scale_with_transform():
    rng = np.random.default_rng(47)
    p = random_monic(rng, 3, 2)
    base = [z for z, _ in find_witnesses(p, 1e-6).witnesses]
    for eps in (0.5, 0.1):
        scaled = [z for z, _ in find_witnesses(scale_transform(p, eps), 1e-6).witnesses]
        assert_multiset_close(scaled, [eps * z for z in base], 1e-6 * max(abs(z) for z in base))


def test_nonmonic_nilpotent_has_unit_determinant():
    pencil = NonMonicPencil(np.array([[0.0, 1.0], [0.0, 0.0]]))
    grid = [complex(x, y) for x in np.linspace(-50, 50, 7) for y in np.linspace(-50, 50, 7)]
    scan = nonmonic_scan(pencil, grid)
    assert scan.singularities == ()
    for det in scan.det_values:
        assert det == 1.0 + 0.0j


def test_nonmonic_zero_matrix():
    pencil = NonMonicPencil(np.zeros((3, 3)))
    scan = nonmonic_scan(pencil, [0.0, 1.0, 5.0 + 2.0j])
    assert scan.min_sigma == pytest.approx(1.0)
    assert scan.singularities == ()


def test_nonmonic_reports_reciprocal_eigenvalue():
    pencil = NonMonicPencil(np.diag([2.0, 0.0]))
    scan = nonmonic_scan(pencil, [0.3, -0.7, 1.0])
    assert_multiset_close(scan.singularities, [-0.5], 1e-12)
    assert sigma_min(pencil.at(-0.5)) <= 1e-12


def test_nonmonic_rejects_empty_grid():
    with pytest.raises(ValueError):
        nonmonic_scan(NonMonicPencil(np.eye(2)), [])
