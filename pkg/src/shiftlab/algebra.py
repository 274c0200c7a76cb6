"""Matrix algebra M_d(C), monic polynomials over it, and the eps-scaling map.

The algebra element type is a plain (d, d) complex ndarray; the algebra norm
is the spectral norm (largest singular value), which is submultiplicative and
gives the identity norm 1. Scalars are ordinary Python/numpy complex numbers.
All public values are immutable after construction and every operation here
is a pure function, so concurrent reads need no coordination.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "MonicPolynomial",
    "NonMonicPencil",
    "algebra_norm",
    "sigma_min",
    "is_invertible",
    "evaluate",
    "evaluate_many",
    "scale_transform",
    "scalar_poly",
    "shift_poly",
    "from_roots",
    "identity",
    "as_element",
    "polynomial_to_jsonable",
    "polynomial_from_jsonable",
    "load_polynomial",
    "save_polynomial",
    "matrix_to_jsonable",
    "matrix_from_jsonable",
    "load_matrix",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=complex)
    out.setflags(write=False)
    return out


def as_element(a, dim: int | None = None) -> np.ndarray:
    """Coerce ``a`` to a finite square (d, d) complex array.

    Scalars become 1x1 matrices. Raises ValueError on NaN/Inf entries or a
    non-square shape; no public operation admits non-finite values.
    """
    arr = np.atleast_2d(np.asarray(a, dtype=complex))
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"algebra element must be square, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("algebra element contains NaN/Inf entries")
    if dim is not None and arr.shape[0] != dim:
        raise ValueError(f"expected dim {dim}, got {arr.shape[0]}")
    return _frozen(arr)


def identity(dim: int) -> np.ndarray:
    return _frozen(np.eye(dim, dtype=complex))


@dataclass(frozen=True)
class MonicPolynomial:
    """Monic polynomial p(z) = z^n I + sum_{i<n} z^i a_i over M_d(C).

    ``coeffs[i]`` is the coefficient of z^i; the leading identity coefficient
    is implicit and never stored. Degree n >= 1.
    """

    coeffs: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise ValueError("degree must be >= 1")
        first = as_element(self.coeffs[0])
        d = first.shape[0]
        object.__setattr__(
            self, "coeffs", tuple(as_element(c, dim=d) for c in self.coeffs)
        )

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    @property
    def dim(self) -> int:
        return self.coeffs[0].shape[0]


@dataclass(frozen=True)
class NonMonicPencil:
    """The non-monic pencil p(z) = z*a + I used by the quasinilpotent scan."""

    a: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", as_element(self.a))

    @property
    def dim(self) -> int:
        return self.a.shape[0]

    def at(self, z: complex) -> np.ndarray:
        return z * self.a + np.eye(self.dim, dtype=complex)


def algebra_norm(a) -> float:
    """Spectral norm (largest singular value) of an algebra element."""
    return float(np.linalg.norm(as_element(a), 2))


def sigma_min(a) -> float:
    """Smallest singular value of an algebra element."""
    return float(np.linalg.svd(as_element(a), compute_uv=False)[-1])


def is_invertible(a, tol: float) -> tuple[bool, float]:
    """Scale-aware singularity test: invertible iff sigma_min > tol*max(1, |a|).

    Returns (verdict, sigma_min). The threshold scales with the spectral norm
    so badly scaled inputs do not defeat an absolute cutoff.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    arr = as_element(a)
    svals = np.linalg.svd(arr, compute_uv=False)
    smin = float(svals[-1])
    smax = float(svals[0])
    return smin > tol * max(1.0, smax), smin


def evaluate(p: MonicPolynomial, z: complex) -> np.ndarray:
    """Evaluate p(z) by Horner's scheme.

    acc starts at the identity (the leading coefficient) and folds in one
    stored coefficient per step; the operation order is fixed so results are
    bit-identical across calls regardless of degree.
    """
    z = complex(z)
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise ValueError("z must be finite")
    acc = np.eye(p.dim, dtype=complex)
    for a_i in reversed(p.coeffs):
        acc = z * acc + a_i
    return acc


def evaluate_many(p: MonicPolynomial, zs: np.ndarray) -> np.ndarray:
    """Vectorized Horner evaluation: returns a stacked (len(zs), d, d) array."""
    zs = np.asarray(zs, dtype=complex).ravel()
    d = p.dim
    acc = np.broadcast_to(np.eye(d, dtype=complex), (zs.size, d, d)).copy()
    zcol = zs[:, None, None]
    for a_i in reversed(p.coeffs):
        acc = zcol * acc + a_i
    return acc


def scale_transform(p: MonicPolynomial, eps: complex) -> MonicPolynomial:
    """Return q_eps with the coefficient of z^i scaled to eps^(n-i) * a_i.

    eps = 1 is the identity map, eps = 0 collapses to z^n. The map composes
    multiplicatively: scaling by eps then eps' equals scaling by eps*eps'.
    """
    eps = complex(eps)
    n = p.degree
    return MonicPolynomial(
        tuple(eps ** (n - i) * a_i for i, a_i in enumerate(p.coeffs))
    )


def scalar_poly(coeffs) -> MonicPolynomial:
    """Monic scalar polynomial (d = 1) from ascending coefficients a_0..a_{n-1}."""
    return MonicPolynomial(tuple(np.array([[c]], dtype=complex) for c in coeffs))


def shift_poly(m: int, dim: int = 1) -> MonicPolynomial:
    """p(z) = z^m over M_dim(C); its operator is the m-shift."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return MonicPolynomial(tuple(np.zeros((dim, dim), dtype=complex) for _ in range(m)))


def from_roots(roots) -> MonicPolynomial:
    """Monic scalar polynomial with the given root multiset.

    Coefficients come from expanding the product of linear factors
    (numpy.poly), independent of any eigenvalue computation.
    """
    roots = np.asarray(list(roots), dtype=complex)
    if roots.size < 1:
        raise ValueError("need at least one root")
    desc = np.poly(roots)  # [1, c_{n-1}, ..., c_0], descending powers
    asc = desc[::-1][:-1]  # a_0 .. a_{n-1}
    return scalar_poly(asc)


# ---------------------------------------------------------------------------
# JSON polynomial / matrix file format
# ---------------------------------------------------------------------------
# A polynomial document has fields `degree`, `dim`, and `coeffs`: a list of
# length `degree` (ascending powers), each entry a dim x dim array of
# [re, im] cell pairs. A bare matrix document uses the same cell format with
# `degree` absent: fields `dim` and `matrix`.


def _cells_to_matrix(cells, dim: int) -> np.ndarray:
    arr = np.asarray(cells, dtype=float)
    if arr.shape != (dim, dim, 2):
        raise ValueError(f"expected {dim}x{dim} array of [re, im] pairs, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def _matrix_to_cells(a: np.ndarray) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in np.asarray(a, dtype=complex)]


def polynomial_to_jsonable(p: MonicPolynomial) -> dict:
    return {
        "degree": p.degree,
        "dim": p.dim,
        "coeffs": [_matrix_to_cells(c) for c in p.coeffs],
    }


def polynomial_from_jsonable(doc: dict) -> MonicPolynomial:
    try:
        degree = int(doc["degree"])
        dim = int(doc["dim"])
        cells = doc["coeffs"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed polynomial document: {exc}") from exc
    if degree < 1 or dim < 1:
        raise ValueError("degree and dim must be positive")
    if len(cells) != degree:
        raise ValueError(f"coeffs has length {len(cells)}, expected degree {degree}")
    return MonicPolynomial(tuple(_cells_to_matrix(c, dim) for c in cells))


def load_polynomial(path) -> MonicPolynomial:
    with open(path) as fh:
        return polynomial_from_jsonable(json.load(fh))


def save_polynomial(p: MonicPolynomial, path) -> None:
    Path(path).write_text(json.dumps(polynomial_to_jsonable(p)) + "\n")


def matrix_to_jsonable(a) -> dict:
    arr = as_element(a)
    return {"dim": arr.shape[0], "matrix": _matrix_to_cells(arr)}


def matrix_from_jsonable(doc: dict) -> np.ndarray:
    try:
        dim = int(doc["dim"])
        cells = doc["matrix"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix document: {exc}") from exc
    return as_element(_cells_to_matrix(cells, dim))


def load_matrix(path) -> np.ndarray:
    with open(path) as fh:
        return matrix_from_jsonable(json.load(fh))
