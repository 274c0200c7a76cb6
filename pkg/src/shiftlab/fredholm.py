"""Fredholm index of truncated shift-polynomial operators, two independent ways.

The operator attached to a monic p is Fredholm exactly when det p has no
root on the unit circle, and its index is minus the number of roots inside.
This module computes the index (a) as the negated winding number of the
determinant symbol on the circle and (b) as the negated inside-root count
from the companion linearization, and reports both without reconciling them.
For d > 1 the index is *defined* here as -(winding of the det symbol); the
dual eigenvalue count keeps that definition honest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .algebra import MonicPolynomial, evaluate, evaluate_many, scale_transform
from .errors import NonConvergent, RoundingAmbiguous, VanishingSymbol
from .witness import companion_linearize, eigenvalues

__all__ = [
    "symbol_det",
    "symbol_det_many",
    "Winding",
    "winding_number",
    "RootCount",
    "count_roots_in_disc",
    "IndexReport",
    "fredholm_index",
    "CIRCLE_MARGIN",
]

#: Roots whose modulus is within this distance of 1 make Fredholmness
#: numerically undecidable; such instances are reported non-Fredholm.
CIRCLE_MARGIN = 1e-8

_INITIAL_SAMPLES = 64
_MAX_SAMPLES = 2 ** 20
_REFINE_THRESHOLD = math.pi / 2
_ROUNDING_SLACK = 0.01


def symbol_det(p: MonicPolynomial, theta: float) -> complex:
    """det p(e^{i theta}), via LU factorization with partial pivoting."""
    return complex(np.linalg.det(evaluate(p, np.exp(1j * theta))))


def symbol_det_many(p: MonicPolynomial, thetas: np.ndarray) -> np.ndarray:
    """Vectorized determinant symbol on a batch of angles."""
    zs = np.exp(1j * np.asarray(thetas, dtype=float))
    return np.linalg.det(evaluate_many(p, zs))


class Winding(NamedTuple):
    w: int
    min_modulus: float
    samples: int


def winding_number(f: Callable[[np.ndarray], np.ndarray]) -> Winding:
    """Winding number of a closed nonvanishing curve given as theta -> f(theta).

    ``f`` must accept an ndarray of angles and is expected to be continuous
    on [0, 2*pi] with f(0) = f(2*pi); violations surface as errors below.

    Starts from 64 uniform samples and, while any consecutive principal-branch
    argument increment exceeds pi/2 in magnitude, doubles the density locally
    by inserting segment midpoints (this rules out branch-jump aliasing for
    sampled continuous curves while keeping sample counts small). The summed
    increments divided by 2*pi must land within 0.01 of an integer.

    Raises VanishingSymbol when min |f| < 1e-12 * max |f| over the samples,
    NonConvergent past 2**20 samples, RoundingAmbiguous when the pre-rounding
    sum is not close to any integer.
    """
    thetas = np.linspace(0.0, 2.0 * math.pi, _INITIAL_SAMPLES + 1)
    vals = np.asarray(f(thetas), dtype=complex)
    while True:
        mods = np.abs(vals)
        vmax = float(mods.max())
        vmin = float(mods.min())
        if vmin < 1e-12 * vmax:
            raise VanishingSymbol(
                f"symbol modulus {vmin:.3e} below 1e-12 of max {vmax:.3e}; "
                "winding number undefined"
            )
        dargs = np.angle(vals[1:] / vals[:-1])
        bad = np.abs(dargs) > _REFINE_THRESHOLD
        if not bad.any():
            break
        mids = 0.5 * (thetas[:-1][bad] + thetas[1:][bad])
        if thetas.size + mids.size > _MAX_SAMPLES:
            raise NonConvergent(
                f"winding refinement needs more than {_MAX_SAMPLES} samples"
            )
        thetas = np.concatenate([thetas, mids])
        vals = np.concatenate([vals, np.asarray(f(mids), dtype=complex)])
        order = np.argsort(thetas, kind="stable")
        thetas = thetas[order]
        vals = vals[order]
    total = float(dargs.sum()) / (2.0 * math.pi)
    nearest = round(total)
    if abs(total - nearest) > _ROUNDING_SLACK:
        raise RoundingAmbiguous(
            f"argument sum {total} is farther than {_ROUNDING_SLACK} from every integer"
        )
    return Winding(w=int(nearest), min_modulus=vmin, samples=int(thetas.size))


class RootCount(NamedTuple):
    k: int
    min_circle_margin: float
    reliable: bool


def count_roots_in_disc(p: MonicPolynomial, margin: float = 0.0) -> RootCount:
    """Number of roots of det p strictly inside the unit disc, with multiplicity.

    Roots are the eigenvalues of the block companion linearization, counted
    with algebraic multiplicity as the eigensolver returns them (clusters are
    never merged). ``min_circle_margin`` is the smallest ||root| - 1|; when it
    falls below ``margin`` the count is flagged unreliable.
    """
    if margin < 0:
        raise ValueError("margin must be >= 0")
    roots = eigenvalues(companion_linearize(p))
    moduli = np.abs(roots)
    k = int(np.sum(moduli < 1.0))
    min_margin = float(np.min(np.abs(moduli - 1.0)))
    return RootCount(k=k, min_circle_margin=min_margin, reliable=min_margin >= margin)


@dataclass(frozen=True)
class IndexReport:
    """Dual-route index report; disagreement is reported, never reconciled.

    When the instance is not Fredholm (a root within CIRCLE_MARGIN of the
    circle), the winding is not computed and the index fields are absent
    from the serialized form.
    """

    fredholm: bool
    index_winding: int | None
    k_roots_inside: int
    min_circle_margin: float
    agreement: bool
    samples_used: int

    def to_jsonable(self) -> dict:
        doc = {
            "fredholm": self.fredholm,
            "k_roots_inside": self.k_roots_inside,
            "min_circle_margin": self.min_circle_margin,
        }
        if self.fredholm:
            doc["index_winding"] = self.index_winding
            doc["agreement"] = self.agreement
            doc["samples_used"] = self.samples_used
        return doc


def fredholm_index(p: MonicPolynomial, eps: complex = 1.0) -> IndexReport:
    """Index of the operator attached to q_eps, computed both ways.

    eps != 1 applies the scaling transform first. The winding route and the
    root-count route share no intermediate results; ``agreement`` records
    whether index_winding == -k_roots_inside.
    """
    q = p if complex(eps) == 1.0 + 0.0j else scale_transform(p, eps)
    rc = count_roots_in_disc(q, margin=CIRCLE_MARGIN)
    if not rc.reliable:
        return IndexReport(
            fredholm=False,
            index_winding=None,
            k_roots_inside=rc.k,
            min_circle_margin=rc.min_circle_margin,
            agreement=False,
            samples_used=0,
        )
    winding = winding_number(lambda thetas: symbol_det_many(q, thetas))
    index = -winding.w
    return IndexReport(
        fredholm=True,
        index_winding=index,
        k_roots_inside=rc.k,
        min_circle_margin=rc.min_circle_margin,
        agreement=index == -rc.k,
        samples_used=winding.samples,
    )
