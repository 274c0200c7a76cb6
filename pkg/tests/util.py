"""Shared helpers for the test suite: oracles, random instances, matchers."""

import numpy as np

from shiftlab import MonicPolynomial, scalar_poly


def random_element(rng, d, scale=1.0):
    """Standard complex normal entries, scaled."""
    return scale * (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)


def random_monic(rng, n, d, scale=1.0):
    return MonicPolynomial(tuple(random_element(rng, d, scale) for _ in range(n)))


def unit_disc_element(rng, d):
    """Entries with modulus <= 1 (uniform on the disc)."""
    mod = np.sqrt(rng.uniform(0.0, 1.0, (d, d)))
    arg = rng.uniform(0.0, 2 * np.pi, (d, d))
    return mod * np.exp(1j * arg)


def unit_disc_poly(rng, n, d):
    return MonicPolynomial(tuple(unit_disc_element(rng, d) for _ in range(n)))


def naive_evaluate(p, z):
    """Power-sum evaluation z^n I + sum z^i a_i; independent of Horner."""
    z = complex(z)
    acc = z ** p.degree * np.eye(p.dim, dtype=complex)
    for i, a in enumerate(p.coeffs):
        acc = acc + z ** i * a
    return acc


def roots_off_circle(rng, n, inner=(0.1, 0.95), outer=(1.05, 2.5)):
    """n random complex roots with ||r| - 1| >= 0.05 by construction."""
    mods = np.where(
        rng.uniform(size=n) < 0.5,
        rng.uniform(inner[0], inner[1], size=n),
        rng.uniform(outer[0], outer[1], size=n),
    )
    return mods * np.exp(2j * np.pi * rng.uniform(size=n))


def poly_descending(p):
    """Scalar polynomial as descending-coefficient array [1, a_{n-1}, ..., a_0]."""
    assert p.dim == 1
    return np.array([1.0 + 0j] + [complex(c[0, 0]) for c in p.coeffs[::-1]])


def poly_product(g, h):
    """Monic scalar product g*h via coefficient convolution."""
    desc = np.polymul(poly_descending(g), poly_descending(h))
    return scalar_poly(desc[::-1][:-1])


def block_diag_poly(p, q):
    """Block-diagonal polynomial diag(p, q); degrees must match."""
    assert p.degree == q.degree
    coeffs = []
    for a, b in zip(p.coeffs, q.coeffs):
        d1, d2 = a.shape[0], b.shape[0]
        c = np.zeros((d1 + d2, d1 + d2), dtype=complex)
        c[:d1, :d1] = a
        c[d1:, d1:] = b
        coeffs.append(c)
    return MonicPolynomial(tuple(coeffs))


def assert_multiset_close(xs, ys, tol):
    """Match two complex multisets greedily; fail if any pair exceeds tol."""
    xs = [complex(x) for x in xs]
    remaining = [complex(y) for y in ys]
    assert len(xs) == len(remaining), f"sizes differ: {len(xs)} vs {len(remaining)}"
    for x in xs:
        j = min(range(len(remaining)), key=lambda i: abs(remaining[i] - x))
        dist = abs(remaining[j] - x)
        assert dist <= tol, f"{x} has no partner within {tol} (closest at {dist:.3e})"
        remaining.pop(j)
