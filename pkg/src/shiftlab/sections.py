"""Desk-scale operator experiments on finite sections.

Four experiments: singular-value decay signatures of the index on square
N-sections, explicit adjoint-kernel vectors from inside-disc roots, index
invariance under the eps-scaling sweep (with bisected critical values), and
the bounded-index histogram over the span of the first n+1 shifts.
Every experiment is deterministic given its inputs (sampling is driven by an
explicit seed) and grid points / trials / section sizes are independent, so
they may be scheduled in parallel with results keyed by input order.
"""

from __future__ import annotations

import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .algebra import MonicPolynomial, algebra_norm, scalar_poly, scale_transform
from .errors import NotFredholm, RootOnCircle
from .fredholm import CIRCLE_MARGIN, IndexReport, fredholm_index
from .shiftops import assemble_truncation
from .witness import companion_linearize, eigenvalues

__all__ = [
    "DecayProfile",
    "decay_profile",
    "KernelBasis",
    "adjoint_kernel_basis",
    "SweepResult",
    "epsilon_sweep",
    "SamplerConfig",
    "IndexHistogram",
    "subspace_index_sample",
    "decay_profile_csv",
    "sweep_csv",
    "DECAY_RATE_THRESHOLD",
]

#: Tracks with fitted geometric rate below this are classified "decaying".
DECAY_RATE_THRESHOLD = 0.95

#: Singular values below NOISE_FLOOR_FACTOR * max(1, sigma_max) have hit the
#: double-precision roundoff floor of the dense SVD. They are excluded from
#: the rate fit and mark their track as decayed beyond resolution (a track
#: that crashed into the floor cannot be anything else).
NOISE_FLOOR_FACTOR = 1e-13


@dataclass(frozen=True)
class DecayProfile:
    """Smallest n+2 singular values per section size, with per-track rate fits."""

    sizes: tuple[int, ...]
    sigma_tails: np.ndarray  # (len(sizes), n+2), ascending per row
    fitted_rates: tuple[float, ...]
    decaying: tuple[bool, ...]
    noise_floor: float

    @property
    def decaying_count(self) -> int:
        return sum(self.decaying)

    def to_jsonable(self) -> dict:
        return {
            "sizes": list(self.sizes),
            "sigma_tails": [[float(s) for s in row] for row in self.sigma_tails],
            "fitted_rates": list(self.fitted_rates),
            "decaying": list(self.decaying),
            "decaying_count": self.decaying_count,
            "noise_floor": self.noise_floor,
        }


def decay_profile(p: MonicPolynomial, sizes) -> DecayProfile:
    """Track the smallest n+2 singular values of square N-sections across sizes.

    For a Fredholm scalar instance with k roots strictly inside the disc,
    exactly k tracks decay geometrically in N while the (k+1)-th stays
    bounded away from zero. Rates are least-squares slopes of log sigma vs N
    over the samples still above the SVD roundoff floor; a track with any
    sample at or below the floor is decaying by definition.
    """
    if p.dim != 1:
        raise ValueError("decay_profile is defined for scalar (d = 1) instances")
    n = p.degree
    sizes = tuple(int(N) for N in sizes)
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be strictly increasing")
    if sizes and sizes[0] < 4 * n:
        raise ValueError(f"sizes must be >= 4*degree = {4 * n}")
    report = fredholm_index(p)
    if not report.fredholm:
        raise NotFredholm(
            f"a root of det p sits within {CIRCLE_MARGIN} of the unit circle "
            f"(margin {report.min_circle_margin:.3e}); no decay profile"
        )
    tracks = n + 2
    tails = np.empty((len(sizes), tracks))
    sigma_max = 0.0
    for row, N in enumerate(sizes):
        section = assemble_truncation(p, 1.0, N, "square")
        svals = np.linalg.svd(section.data, compute_uv=False)
        sigma_max = max(sigma_max, float(svals[0]))
        tails[row] = np.sort(svals)[:tracks]
    floor = NOISE_FLOOR_FACTOR * max(1.0, sigma_max)
    rates: list[float] = []
    decaying: list[bool] = []
    ns = np.asarray(sizes, dtype=float)
    for t in range(tracks):
        y = tails[:, t]
        usable = y > floor
        if int(usable.sum()) >= 2:
            slope = np.polyfit(ns[usable], np.log(y[usable]), 1)[0]
            rate = float(np.exp(slope))
        else:
            rate = 0.0
        saturated = bool((~usable).any())
        rates.append(rate)
        decaying.append(saturated or rate < DECAY_RATE_THRESHOLD)
    return DecayProfile(
        sizes=sizes,
        sigma_tails=tails,
        fitted_rates=tuple(rates),
        decaying=tuple(decaying),
        noise_floor=floor,
    )


@dataclass(frozen=True)
class KernelBasis:
    """Approximate cokernel directions of the square N-section.

    One normalized vector ((conj r)^j)_{j<N} per inside-disc root r; the
    measured adjoint residual per vector obeys
    residual <= bound_constant * |r|^(N - n).
    """

    vectors: tuple[np.ndarray, ...]
    residuals: tuple[float, ...]
    inside_roots: tuple[complex, ...]
    bound_constant: float


def adjoint_kernel_basis(
    p: MonicPolynomial, N: int, margin: float = CIRCLE_MARGIN
) -> KernelBasis:
    """Geometric-vector cokernel basis for a scalar N-section.

    Requires every root of p to keep ||r| - 1| >= margin (RootOnCircle
    otherwise); roots outside the disc contribute nothing, so an instance
    with no inside roots yields an empty basis.
    """
    if p.dim != 1:
        raise ValueError("adjoint_kernel_basis is defined for scalar (d = 1) instances")
    if N < p.degree + 1:
        raise ValueError("N must exceed the degree")
    roots = [complex(r) for r in eigenvalues(companion_linearize(p))]
    offenders = [r for r in roots if abs(abs(r) - 1.0) < margin]
    if offenders:
        raise RootOnCircle(f"root {offenders[0]} has modulus within {margin} of 1")
    inside = sorted((r for r in roots if abs(r) < 1.0), key=lambda r: (abs(r), r.real, r.imag))
    n = p.degree
    coeff_mass = 1.0 + sum(algebra_norm(a) for a in p.coeffs)
    bound = math.sqrt(n) * coeff_mass
    section = assemble_truncation(p, 1.0, N, "square").data
    adjoint = section.conj().T
    vectors: list[np.ndarray] = []
    residuals: list[float] = []
    for r in inside:
        v = np.conj(r) ** np.arange(N)
        v = v / np.linalg.norm(v)
        v.setflags(write=False)
        vectors.append(v)
        residuals.append(float(np.linalg.norm(adjoint @ v)))
    return KernelBasis(
        vectors=tuple(vectors),
        residuals=tuple(residuals),
        inside_roots=tuple(inside),
        bound_constant=bound,
    )


@dataclass(frozen=True)
class SweepResult:
    """Index reports along an eps grid, plus bisected critical eps values.

    The index is constant between consecutive critical values; each critical
    is the midpoint of a bracket of relative width <= 1e-6 on which the
    outside-root count of q_eps changes.
    """

    eps_values: tuple[float, ...]
    indices: tuple[IndexReport, ...]
    critical_eps: tuple[float, ...]
    critical_brackets: tuple[tuple[float, float], ...] = field(repr=False)

    def to_jsonable(self) -> dict:
        return {
            "eps_values": list(self.eps_values),
            "indices": [r.to_jsonable() for r in self.indices],
            "critical_eps": list(self.critical_eps),
        }


_BRACKET_REL_WIDTH = 1e-6


def _outside_count(p: MonicPolynomial, eps: float) -> int:
    roots = eigenvalues(companion_linearize(scale_transform(p, eps)))
    return int(np.sum(np.abs(roots) > 1.0))


def _bisect_critical(p: MonicPolynomial, candidate: float) -> tuple[float, float]:
    lo, hi = candidate * 0.99, candidate * 1.01
    for _ in range(200):
        if _outside_count(p, lo) != _outside_count(p, hi):
            break
        lo *= 0.95
        hi *= 1.05
    else:
        raise RuntimeError(f"failed to bracket critical eps near {candidate}")
    c_lo = _outside_count(p, lo)
    while (hi - lo) > _BRACKET_REL_WIDTH * 0.5 * (hi + lo):
        mid = 0.5 * (lo + hi)
        if _outside_count(p, mid) == c_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def epsilon_sweep(p: MonicPolynomial, eps_grid, parallel: bool = False) -> SweepResult:
    """Index of q_eps across an ascending positive grid, with critical eps.

    Every root w of det p yields a root eps*w of det q_eps, so each distinct
    nonzero root modulus produces one crossing of the unit circle near
    eps = 1/|w|; the crossings are located by bisection on the outside-root
    count of q_eps recomputed from scratch, which validates the scaling
    numerically instead of assuming it. Non-Fredholm grid points are recorded
    in-band (fredholm = false in their report).
    """
    grid = tuple(float(e) for e in eps_grid)
    if not grid:
        raise ValueError("eps grid must be nonempty")
    if any(e <= 0 for e in grid):
        raise ValueError("eps grid must be positive")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("eps grid must be strictly ascending")

    if parallel:
        with ThreadPoolExecutor() as pool:
            reports = tuple(pool.map(lambda e: fredholm_index(p, e), grid))
    else:
        reports = tuple(fredholm_index(p, e) for e in grid)

    moduli = sorted(
        abs(complex(r)) for r in eigenvalues(companion_linearize(p)) if abs(r) > 0.0
    )
    distinct: list[float] = []
    for m in moduli:
        if not distinct or abs(m - distinct[-1]) > 1e-9 * m:
            distinct.append(m)
    criticals: list[float] = []
    brackets: list[tuple[float, float]] = []
    for m in sorted(distinct, reverse=True):  # largest root crosses first
        lo, hi = _bisect_critical(p, 1.0 / m)
        criticals.append(0.5 * (lo + hi))
        brackets.append((lo, hi))
    return SweepResult(
        eps_values=grid,
        indices=reports,
        critical_eps=tuple(criticals),
        critical_brackets=tuple(brackets),
    )


@dataclass(frozen=True)
class SamplerConfig:
    """Reproducible sampling of scalar elements of span{S_0, ..., S_n}.

    monic=True pins the top coefficient to 1; otherwise all n+1 coefficients
    are drawn and the draw is normalized so the top nonzero coefficient has
    modulus 1 (the index is invariant under nonzero scalar multiples).
    """

    seed: int
    monic: bool = True
    coeff_scale: float = 1.0


@dataclass(frozen=True)
class IndexHistogram:
    trials: int
    counts: dict[int, int]
    non_fredholm_count: int

    def __post_init__(self):
        if sum(self.counts.values()) + self.non_fredholm_count != self.trials:
            raise ValueError("histogram counts do not add up to trials")

    def to_jsonable(self) -> dict:
        return {
            "trials": self.trials,
            "counts": {str(k): self.counts[k] for k in sorted(self.counts)},
            "non_fredholm_count": self.non_fredholm_count,
        }


def subspace_index_sample(n: int, trials: int, config: SamplerConfig) -> IndexHistogram:
    """Histogram of Fredholm indices over random draws from span{S_0..S_n}.

    Coefficients are complex-normal with scale config.coeff_scale. Monic-
    normalized draws can only produce indices in [-n, 0]; non-Fredholm draws
    (a root too close to the circle) are tallied separately.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(config.seed)
    scale = config.coeff_scale

    def draw() -> np.ndarray:
        count = n if config.monic else n + 1
        return scale * (
            rng.standard_normal(count) + 1j * rng.standard_normal(count)
        ) / math.sqrt(2.0)

    counts: dict[int, int] = {}
    non_fredholm = 0
    for _ in range(trials):
        c = draw()
        if config.monic:
            poly = scalar_poly(c)
        else:
            nonzero = np.flatnonzero(np.abs(c) > 0.0)
            while nonzero.size == 0:  # measure-zero, but stay total
                c = draw()
                nonzero = np.flatnonzero(np.abs(c) > 0.0)
            top = int(nonzero[-1])
            if top == 0:
                counts[0] = counts.get(0, 0) + 1  # scalar multiple of S_0
                continue
            poly = scalar_poly(c[:top] / c[top])
        report = fredholm_index(poly)
        if report.fredholm:
            counts[report.index_winding] = counts.get(report.index_winding, 0) + 1
        else:
            non_fredholm += 1
    return IndexHistogram(trials=trials, counts=counts, non_fredholm_count=non_fredholm)


# ---------------------------------------------------------------------------
# CSV exports (one row per (N, track), one row per eps)
# ---------------------------------------------------------------------------


def decay_profile_csv(profile: DecayProfile) -> str:
    buf = io.StringIO()
    buf.write("N,track,sigma,fitted_rate,decaying\n")
    for row, N in enumerate(profile.sizes):
        for t in range(profile.sigma_tails.shape[1]):
            buf.write(
                f"{N},{t},{profile.sigma_tails[row, t]:.17g},"
                f"{profile.fitted_rates[t]:.17g},{int(profile.decaying[t])}\n"
            )
    return buf.getvalue()


def sweep_csv(sweep: SweepResult) -> str:
    buf = io.StringIO()
    buf.write("eps,fredholm,index_winding,k_roots_inside,min_circle_margin,agreement,samples_used\n")
    for eps, rep in zip(sweep.eps_values, sweep.indices):
        if rep.fredholm:
            buf.write(
                f"{eps:.17g},1,{rep.index_winding},{rep.k_roots_inside},"
                f"{rep.min_circle_margin:.17g},{int(rep.agreement)},{rep.samples_used}\n"
            )
        else:
            buf.write(
                f"{eps:.17g},0,,{rep.k_roots_inside},{rep.min_circle_margin:.17g},,\n"
            )
    return buf.getvalue()
