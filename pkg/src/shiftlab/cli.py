"""Command-line front end: every experiment as a reproducible subcommand.

Each run writes one JSON result document {"manifest": ..., "result": ...}
to --out (stdout by default); some subcommands also write CSV or rendered
figures next to it. Exit codes: 0 success, 2 usage error, 3 numerical
failure, 4 non-Fredholm input where Fredholmness was required.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .algebra import (
    NonMonicPencil,
    load_matrix,
    load_polynomial,
    scalar_poly,
    scale_transform,
    shift_poly,
)
from .errors import NotFredholm, ShiftlabError
from .fredholm import CIRCLE_MARGIN, fredholm_index
from .sections import (
    SamplerConfig,
    decay_profile,
    decay_profile_csv,
    epsilon_sweep,
    subspace_index_sample,
    sweep_csv,
)
from .serialize import dumps, sha256_bytes, sha256_file
from .shiftops import assemble_truncation
from .witness import companion_linearize, eigenvalues, find_witnesses, nonmonic_scan

__all__ = ["main", "build_parser"]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="shiftlab",
        description="Singularity witnesses and Fredholm indices of shift-polynomial operators.",
    )
    ap.add_argument("--version", action="version", version=f"shiftlab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    witness = sub.add_parser("witness", help="find all z where p(z) is singular")
    witness.add_argument("--poly", required=True, help="polynomial JSON file")
    witness.add_argument("--tol", type=float, default=1e-8, help="verification tolerance")
    _output_flags(witness, figures=True)

    index = sub.add_parser("index", help="Fredholm index by winding and by root count")
    index.add_argument("--poly", required=True, help="polynomial JSON file")
    index.add_argument("--eps", type=float, default=1.0, help="apply the eps-scaling first")
    _output_flags(index)

    sweep = sub.add_parser("sweep", help="index along an eps grid with critical values")
    sweep.add_argument("--poly", required=True, help="polynomial JSON file")
    sweep.add_argument("--eps-min", type=float, required=True)
    sweep.add_argument("--eps-max", type=float, required=True)
    sweep.add_argument("--steps", type=int, required=True)
    sweep.add_argument("--parallel", action="store_true", help="evaluate grid points concurrently")
    sweep.add_argument("--csv", help="also export one row per eps as CSV")
    _output_flags(sweep, figures=True)

    decay = sub.add_parser("decay", help="singular-value decay profile of square sections")
    decay.add_argument("--poly", required=True, help="scalar polynomial JSON file")
    decay.add_argument("--sizes", required=True, help="comma-separated section sizes, ascending")
    decay.add_argument("--csv", help="also export one row per (N, track) as CSV")
    _output_flags(decay, figures=True)

    truncate = sub.add_parser("truncate", help="export a finite section as CSV")
    truncate.add_argument("--poly", required=True, help="polynomial JSON file")
    truncate.add_argument("--n", type=int, required=True, help="number of block columns")
    truncate.add_argument("--shape", choices=("square", "rect"), required=True)
    truncate.add_argument("--eps", type=float, default=1.0)
    truncate.add_argument("--out", required=True, help="CSV destination")

    scan = sub.add_parser("scan-nonmonic", help="scan the pencil z*a + I over a disc grid")
    scan.add_argument("--matrix", required=True, help="matrix JSON file (polynomial cell format, degree absent)")
    scan.add_argument("--grid-radius", type=float, required=True)
    scan.add_argument("--grid-steps", type=int, required=True, help="lattice steps per axis (>= 2)")
    _output_flags(scan, figures=True)

    sample = sub.add_parser("sample-index", help="histogram of indices over random shift spans")
    sample.add_argument("--degree", type=int, required=True)
    sample.add_argument("--trials", type=int, required=True)
    sample.add_argument("--seed", type=int, required=True)
    sample.add_argument("--general", action="store_true",
                        help="draw all coefficients instead of pinning the top one to 1")
    _output_flags(sample, figures=True)

    demo = sub.add_parser("demo", help="golden cases: shift indices, perturbed shift, nilpotent scan")
    _output_flags(demo)

    return ap


def _output_flags(parser: argparse.ArgumentParser, figures: bool = False) -> None:
    parser.add_argument("--out", help="write the JSON result document here instead of stdout")
    if figures:
        parser.add_argument("--figures", help="directory for rendered figure files")


def _figures_dir(args) -> Path | None:
    target = getattr(args, "figures", None)
    if not target:
        return None
    d = Path(target)
    d.mkdir(parents=True, exist_ok=True)
    return d


def _load_poly(path):
    try:
        return load_polynomial(path)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from exc


def _load_matrix(path):
    try:
        return load_matrix(path)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from exc


def _offending_root(q) -> complex:
    roots = eigenvalues(companion_linearize(q))
    dist = np.abs(np.abs(roots) - 1.0)
    return complex(roots[int(np.argmin(dist))])


def _disc_grid(radius: float, steps: int) -> list[complex]:
    if radius <= 0:
        raise ValueError("grid radius must be positive")
    if steps < 2:
        raise ValueError("grid steps must be >= 2")
    axis = np.linspace(-radius, radius, steps)
    return [
        complex(x, y)
        for y in axis
        for x in axis
        if abs(complex(x, y)) <= radius + 1e-12
    ]


# ---------------------------------------------------------------------------
# subcommand handlers: return (result payload, exit code)
# ---------------------------------------------------------------------------


def _cmd_witness(args):
    p = _load_poly(args.poly)
    report = find_witnesses(p, args.tol)
    figdir = _figures_dir(args)
    if figdir is not None:
        from .figures import render_witnesses

        render_witnesses(report, figdir / "witness.png")
    return report.to_jsonable(), 0


def _cmd_index(args):
    p = _load_poly(args.poly)
    report = fredholm_index(p, args.eps)
    if not report.fredholm:
        q = p if args.eps == 1.0 else scale_transform(p, args.eps)
        z = _offending_root(q)
        print(
            f"index: polynomial {args.poly} (eps={args.eps}) is not Fredholm: "
            f"root {z} has modulus within {CIRCLE_MARGIN} of the unit circle",
            file=sys.stderr,
        )
        return report.to_jsonable(), 4
    return report.to_jsonable(), 0


def _cmd_sweep(args):
    p = _load_poly(args.poly)
    if args.steps < 1:
        raise ValueError("steps must be >= 1")
    if args.steps == 1:
        grid = [args.eps_min]
    else:
        grid = np.linspace(args.eps_min, args.eps_max, args.steps)
    result = epsilon_sweep(p, grid, parallel=args.parallel)
    if args.csv:
        Path(args.csv).write_text(sweep_csv(result))
    figdir = _figures_dir(args)
    if figdir is not None:
        from .figures import render_sweep

        render_sweep(result, figdir / "sweep.png")
    return result.to_jsonable(), 0


def _cmd_decay(args):
    p = _load_poly(args.poly)
    sizes = [int(tok) for tok in args.sizes.split(",") if tok.strip()]
    profile = decay_profile(p, sizes)
    if args.csv:
        Path(args.csv).write_text(decay_profile_csv(profile))
    figdir = _figures_dir(args)
    if figdir is not None:
        from .figures import render_decay_profile

        render_decay_profile(profile, figdir / "decay.png")
    return profile.to_jsonable(), 0


def _cmd_truncate(args):
    p = _load_poly(args.poly)
    section = assemble_truncation(p, args.eps, args.n, args.shape)
    Path(args.out).write_text(section.to_csv())
    payload = {
        "rows": section.rows,
        "cols": section.cols,
        "dim": section.dim,
        "shape": section.shape,
        "csv": str(args.out),
    }
    return payload, 0


def _cmd_scan_nonmonic(args):
    a = _load_matrix(args.matrix)
    pencil = NonMonicPencil(a)
    grid = _disc_grid(args.grid_radius, args.grid_steps)
    scan = nonmonic_scan(pencil, grid)
    figdir = _figures_dir(args)
    if figdir is not None:
        from .figures import render_nonmonic_scan

        render_nonmonic_scan(scan, grid, figdir / "scan.png")
    payload = scan.to_jsonable()
    payload["grid_points"] = len(grid)
    return payload, 0


def _cmd_sample_index(args):
    config = SamplerConfig(seed=args.seed, monic=not args.general)
    hist = subspace_index_sample(args.degree, args.trials, config)
    figdir = _figures_dir(args)
    if figdir is not None:
        from .figures import render_histogram

        render_histogram(hist, figdir / "histogram.png")
    return hist.to_jsonable(), 0


def _cmd_demo(args):
    shift_indices = {
        str(m): fredholm_index(shift_poly(m)).to_jsonable() for m in (1, 2, 3, 4)
    }
    perturbed = {
        "0.5": fredholm_index(scalar_poly([-0.5])).to_jsonable(),
        "2": fredholm_index(scalar_poly([-2.0])).to_jsonable(),
    }
    pencil = NonMonicPencil(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))
    grid = _disc_grid(3.0, 9)
    scan = nonmonic_scan(pencil, grid)
    payload = {
        "shift_indices": shift_indices,
        "perturbed_shift": perturbed,
        "nilpotent_scan": scan.to_jsonable(),
    }
    return payload, 0


_HANDLERS = {
    "witness": _cmd_witness,
    "index": _cmd_index,
    "sweep": _cmd_sweep,
    "decay": _cmd_decay,
    "truncate": _cmd_truncate,
    "scan-nonmonic": _cmd_scan_nonmonic,
    "sample-index": _cmd_sample_index,
    "demo": _cmd_demo,
}


def _input_digest(args) -> str:
    poly = getattr(args, "poly", None)
    if poly:
        return sha256_file(poly)
    matrix = getattr(args, "matrix", None)
    if matrix:
        return sha256_file(matrix)
    if args.command == "sample-index":
        key = f"degree={args.degree},trials={args.trials},seed={args.seed},general={args.general}"
        return sha256_bytes(key.encode())
    return sha256_bytes(args.command.encode())


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else int(exc.code)
    started = time.perf_counter()
    try:
        digest = _input_digest(args)
        payload, code = _HANDLERS[args.command](args)
    except ValueError as exc:
        print(f"{args.command}: usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"{args.command}: cannot read input: {exc}", file=sys.stderr)
        return 2
    except NotFredholm as exc:
        print(f"{args.command}: input is not Fredholm: {exc}", file=sys.stderr)
        return 4
    except ShiftlabError as exc:
        source = getattr(args, "poly", None) or getattr(args, "matrix", None)
        where = f" on {source}" if source else ""
        print(
            f"{args.command}{where}: numerical failure ({type(exc).__name__}): {exc}",
            file=sys.stderr,
        )
        return 3
    manifest = {
        "subcommand": args.command,
        "input_digest": digest,
        "tool_version": __version__,
        "wall_time": time.perf_counter() - started,
    }
    seed = getattr(args, "seed", None)
    if seed is not None:
        manifest["seed"] = seed
    text = dumps({"manifest": manifest, "result": payload})
    out = getattr(args, "out", None)
    if out and args.command != "truncate":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
