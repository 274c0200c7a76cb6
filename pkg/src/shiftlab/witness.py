"""Singularity witnesses of monic matrix polynomials.

Every monic p over M_d(C) has at least one z where p(z) is singular; the
block companion linearization delivers all n*d of them (with multiplicity)
as eigenvalues of a single dense matrix, and each one is re-verified against
p itself before it is reported.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .algebra import MonicPolynomial, NonMonicPencil, evaluate, is_invertible, sigma_min
from .errors import NonConvergence, TheoremViolation

__all__ = [
    "companion_linearize",
    "eigenvalues",
    "WitnessReport",
    "find_witnesses",
    "ScanResult",
    "nonmonic_scan",
]

#: Residual bound for the eigensolver contract: for each returned lambda,
#: sigma_min(M - lambda*I) <= EIG_RESIDUAL_TOL * |M|.
EIG_RESIDUAL_TOL = 1e-8


def companion_linearize(p: MonicPolynomial) -> np.ndarray:
    """Block companion matrix whose eigenvalues are the z with det p(z) = 0.

    Top n-1 block rows carry identity blocks on the superdiagonal; the bottom
    block row is [-a_0, -a_1, ..., -a_{n-1}]. For n = 1 this degenerates to
    -a_0, so p(z) = z I + a_0 is singular exactly on the spectrum of -a_0.
    """
    n, d = p.degree, p.dim
    size = n * d
    C = np.zeros((size, size), dtype=complex)
    for i in range(n - 1):
        C[i * d:(i + 1) * d, (i + 1) * d:(i + 2) * d] = np.eye(d)
    for j in range(n):
        C[(n - 1) * d:, j * d:(j + 1) * d] = -p.coeffs[j]
    return C


def eigenvalues(M: np.ndarray) -> np.ndarray:
    """All eigenvalues of a dense complex matrix, with algebraic multiplicity.

    Each returned lambda is certified by sigma_min(M - lambda I) <= 1e-8 |M|;
    a backward-stable solve always satisfies this, so a violation (or a LAPACK
    convergence failure) raises NonConvergence with the matrix attached.
    """
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("matrix must be square")
    try:
        vals = np.linalg.eigvals(M)
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(f"eigensolver failed: {exc}", matrix=M) from exc
    norm = float(np.linalg.norm(M, 2))
    eye = np.eye(M.shape[0])
    for lam in vals:
        resid = float(np.linalg.svd(M - lam * eye, compute_uv=False)[-1])
        if resid > EIG_RESIDUAL_TOL * norm:
            raise NonConvergence(
                f"eigenvalue {lam} failed the residual certificate "
                f"({resid:.3e} > {EIG_RESIDUAL_TOL * norm:.3e})",
                matrix=M,
            )
    return vals


def _witness_sort_key(z: complex):
    return (abs(z), cmath.phase(z))


@dataclass(frozen=True)
class WitnessReport:
    """Verified singularity witnesses, sorted by modulus then argument."""

    witnesses: tuple[tuple[complex, float], ...]
    count: int

    def to_jsonable(self) -> dict:
        return {
            "count": self.count,
            "witnesses": [
                {"z": [z.real, z.imag], "residual": r} for z, r in self.witnesses
            ],
        }


def find_witnesses(p: MonicPolynomial, tol: float) -> WitnessReport:
    """All z where p(z) is singular, each verified against p itself.

    A candidate eigenvalue z of the companion is accepted when is_invertible
    rejects p(z) or when sigma_min(p(z)) <= tol*(1+|z|)^n. Zero accepted
    witnesses is a TheoremViolation: existence is guaranteed, so an empty
    report always means the numerics failed.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = p.degree
    candidates = eigenvalues(companion_linearize(p))
    kept: list[tuple[complex, float]] = []
    for z in candidates:
        z = complex(z)
        invertible, smin = is_invertible(evaluate(p, z), tol)
        if (not invertible) or smin <= tol * (1.0 + abs(z)) ** n:
            kept.append((z, smin))
    if not kept:
        raise TheoremViolation(
            f"no witness of degree-{n} dim-{p.dim} polynomial survived verification "
            f"at tol={tol}; this signals a numerical failure"
        )
    kept.sort(key=lambda pair: _witness_sort_key(pair[0]))
    return WitnessReport(witnesses=tuple(kept), count=len(kept))


@dataclass(frozen=True)
class ScanResult:
    """Grid scan of the pencil z*a + I plus its exact singularities.

    ``singularities`` holds z = -1/lambda for every eigenvalue lambda of a
    deemed nonzero; it is computed from the spectrum of a, not from the grid.
    Empty singularities means no witness exists (a is nilpotent), which is
    exactly why monicness cannot be dropped.
    """

    min_sigma: float
    argmin: complex
    det_values: tuple[complex, ...]
    singularities: tuple[complex, ...]

    def to_jsonable(self) -> dict:
        return {
            "min_sigma": self.min_sigma,
            "argmin": [self.argmin.real, self.argmin.imag],
            "det_values": [[v.real, v.imag] for v in self.det_values],
            "singularities": [[s.real, s.imag] for s in self.singularities],
        }


def nonmonic_scan(
    pencil: NonMonicPencil, grid, nilpotency_tol: float = 1e-8
) -> ScanResult:
    """Evaluate sigma_min and det of z*a + I over a grid of complex z.

    Eigenvalues of a with |lambda| <= nilpotency_tol * max(1, |a|) count as
    zero (in M_d quasinilpotent means nilpotent, where the whole spectrum is
    0); each remaining lambda contributes the singularity z = -1/lambda.
    """
    grid = [complex(z) for z in grid]
    if not grid:
        raise ValueError("grid must be nonempty")
    dets = []
    best = (float("inf"), grid[0])
    for z in grid:
        m = pencil.at(z)
        dets.append(complex(np.linalg.det(m)))
        s = sigma_min(m)
        if s < best[0]:
            best = (s, z)
    anorm = float(np.linalg.norm(pencil.a, 2))
    cutoff = nilpotency_tol * max(1.0, anorm)
    sings = [
        -1.0 / lam
        for lam in (complex(v) for v in np.linalg.eigvals(pencil.a))
        if abs(lam) > cutoff
    ]
    sings.sort(key=_witness_sort_key)
    return ScanResult(
        min_sigma=best[0],
        argmin=best[1],
        det_values=tuple(dets),
        singularities=tuple(sings),
    )
