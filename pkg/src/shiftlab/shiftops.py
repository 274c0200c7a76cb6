"""Finite truncations of shift-polynomial operators on l1(A).

The operator attached to a monic polynomial p and a scale eps is

    Q_eps = S_n + sum_{i<n} eps^(n-i) a_i S_i,

where S_m prepends m zeros and a_i acts by left multiplication on each
sequence entry. Because the band is lower triangular of width n, the
rectangular (N+n) x N block section represents Q_eps exactly on sequences
supported in the first N coordinates; square N x N sections exist for the
finite-section singular-value experiments.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .algebra import MonicPolynomial, algebra_norm, as_element

__all__ = [
    "FiniteSequence",
    "TruncationMatrix",
    "apply_shift",
    "apply_operator",
    "assemble_truncation",
    "injectivity_certificate",
]


@dataclass(frozen=True)
class FiniteSequence:
    """Finitely supported representative of an element of l1(A).

    ``items[j]`` is the j-th sequence entry, a (d, d) complex matrix. The l1
    norm sums the algebra (spectral) norm per entry; the l2 norm combines the
    same per-entry norms in quadrature.
    """

    items: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.items) < 1:
            raise ValueError("sequence needs at least one entry")
        d = np.atleast_2d(np.asarray(self.items[0])).shape[0]
        object.__setattr__(
            self, "items", tuple(as_element(a, dim=d) for a in self.items)
        )

    @property
    def dim(self) -> int:
        return self.items[0].shape[0]

    def __len__(self) -> int:
        return len(self.items)

    def norm_l1(self) -> float:
        return float(sum(algebra_norm(a) for a in self.items))

    def norm_l2(self) -> float:
        return float(np.sqrt(sum(algebra_norm(a) ** 2 for a in self.items)))

    def stack(self) -> np.ndarray:
        """Stacked coordinate form: entries vertically concatenated, shape (len*d, d)."""
        return np.vstack(self.items)

    @classmethod
    def from_stacked(cls, data: np.ndarray, dim: int) -> "FiniteSequence":
        data = np.asarray(data, dtype=complex)
        if data.shape[0] % dim != 0 or data.shape[1] != dim:
            raise ValueError(f"stacked data of shape {data.shape} is not a multiple of dim {dim}")
        n = data.shape[0] // dim
        return cls(tuple(data[j * dim:(j + 1) * dim] for j in range(n)))

    @classmethod
    def unit(cls, dim: int, position: int, length: int | None = None) -> "FiniteSequence":
        """Sequence with the identity at ``position`` and zeros elsewhere."""
        if position < 0:
            raise ValueError("position must be >= 0")
        length = position + 1 if length is None else length
        items = [np.zeros((dim, dim), dtype=complex) for _ in range(length)]
        items[position] = np.eye(dim, dtype=complex)
        return cls(tuple(items))

    @classmethod
    def from_scalars(cls, values) -> "FiniteSequence":
        return cls(tuple(np.array([[v]], dtype=complex) for v in values))


def apply_shift(m: int, x: FiniteSequence) -> FiniteSequence:
    """m-shift: prepend m zero entries. Exactly preserves the l1 norm."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return x
    zero = np.zeros((x.dim, x.dim), dtype=complex)
    return FiniteSequence(tuple([zero] * m) + x.items)


def _band_blocks(p: MonicPolynomial, eps: complex) -> list[np.ndarray]:
    """Blocks on diagonal offsets 0..n: eps^(n-k) a_k for k < n, identity at n."""
    n, d = p.degree, p.dim
    eps = complex(eps)
    blocks = [eps ** (n - k) * p.coeffs[k] for k in range(n)]
    blocks.append(np.eye(d, dtype=complex))
    return blocks


def apply_operator(p: MonicPolynomial, eps: complex, x: FiniteSequence) -> FiniteSequence:
    """Apply Q_eps to a finite sequence; output support grows by the degree n."""
    if x.dim != p.dim:
        raise ValueError(f"dim mismatch: polynomial dim {p.dim}, sequence dim {x.dim}")
    n, d = p.degree, p.dim
    blocks = _band_blocks(p, eps)
    out = [np.zeros((d, d), dtype=complex) for _ in range(len(x) + n)]
    for j, xj in enumerate(x.items):
        for k, b in enumerate(blocks):
            out[j + k] = out[j + k] + b @ xj
    return FiniteSequence(tuple(out))


@dataclass(frozen=True)
class TruncationMatrix:
    """Dense banded lower block-Toeplitz section of Q_eps.

    Block (i, j) is nonzero only for 0 <= i-j <= n and depends only on i-j.
    ``shape`` is "square" (N x N blocks) or "rect" ((N+n) x N blocks, the
    exact representation on sequences supported in the first N coordinates).
    """

    rows: int
    cols: int
    dim: int
    shape: str
    data: np.ndarray

    def __post_init__(self):
        if self.shape not in ("square", "rect"):
            raise ValueError(f"shape must be 'square' or 'rect', got {self.shape!r}")
        data = np.asarray(self.data, dtype=complex)
        if data.shape != (self.rows * self.dim, self.cols * self.dim):
            raise ValueError("data shape does not match block counts")
        data = data.copy()
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    def block(self, i: int, j: int) -> np.ndarray:
        d = self.dim
        return self.data[i * d:(i + 1) * d, j * d:(j + 1) * d]

    def to_csv(self) -> str:
        """One header line `rows,cols,dim,shape`, then row-major "re,im" cell pairs."""
        buf = io.StringIO()
        buf.write(f"{self.rows},{self.cols},{self.dim},{self.shape}\n")
        for row in self.data:
            buf.write(",".join(f"{v.real:.17g},{v.imag:.17g}" for v in row))
            buf.write("\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "TruncationMatrix":
        lines = [ln for ln in text.strip().splitlines() if ln]
        rows_s, cols_s, dim_s, shape = lines[0].split(",")
        rows, cols, dim = int(rows_s), int(cols_s), int(dim_s)
        data = np.empty((rows * dim, cols * dim), dtype=complex)
        if len(lines) - 1 != rows * dim:
            raise ValueError(f"expected {rows * dim} data rows, got {len(lines) - 1}")
        for r, ln in enumerate(lines[1:]):
            vals = [float(t) for t in ln.split(",")]
            if len(vals) != 2 * cols * dim:
                raise ValueError(f"row {r} has {len(vals)} values, expected {2 * cols * dim}")
            arr = np.asarray(vals).reshape(-1, 2)
            data[r] = arr[:, 0] + 1j * arr[:, 1]
        return cls(rows=rows, cols=cols, dim=dim, shape=shape, data=data)


def assemble_truncation(
    p: MonicPolynomial, eps: complex, N: int, shape: str = "rect"
) -> TruncationMatrix:
    """Assemble the N-column block section of Q_eps.

    "square" gives the N x N block leading principal section; "rect" gives
    (N+n) x N blocks with no truncation error on the first N coordinates.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    n, d = p.degree, p.dim
    rows = N if shape == "square" else N + n
    blocks = _band_blocks(p, eps)
    data = np.zeros((rows * d, N * d), dtype=complex)
    for j in range(N):
        for k, b in enumerate(blocks):
            i = j + k
            if i < rows:
                data[i * d:(i + 1) * d, j * d:(j + 1) * d] = b
    return TruncationMatrix(rows=rows, cols=N, dim=d, shape=shape, data=data)


def injectivity_certificate(p: MonicPolynomial, eps: complex) -> float | None:
    """Lower bound for |Q_eps x|_1 / |x|_1 from the isometry-perturbation argument.

    The perturbation budget is B = sum_{i<n} |eps|^(n-i) |a_i|. When B < 1,
    k = 1 - B certifies |Q_eps x|_1 >= k |x|_1 because S_n is an l1 isometry
    and left multiplication by a is bounded by |a|. B >= 1 yields no
    certificate, which is not a claim of non-injectivity.
    """
    n = p.degree
    mag = abs(complex(eps))
    budget = sum(mag ** (n - i) * algebra_norm(a_i) for i, a_i in enumerate(p.coeffs))
    if budget < 1.0:
        return 1.0 - budget
    return None
