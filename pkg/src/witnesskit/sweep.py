"""Parameter sweeps over the Choi family, one CSV row per grid point."""
from __future__ import annotations

import csv
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .densecore import DEFAULT_TOL, min_eigenvalue
from .superops import inverse_reduction_map, maximally_entangled_projector
from .verify import blockpos_min, certify_via_map
from .witnessfam import ChoiFamilyParams, build_wtilde, build_witness

FIELDS = ("d", "a", "x", "wtilde_min_eig", "w_min_eig", "certified", "blockpos_min", "detect_maxent")


class GridError(ValueError):
    pass


@dataclass
class SweepRow:
    d: int
    a: str
    x: float
    wtilde_min_eig: float
    w_min_eig: float
    certified: int
    blockpos_min: float
    detect_maxent: float


def parse_range(spec: str) -> list[float]:
    """``"v"`` -> [v]; ``"start:stop:step"`` -> start, start+step, ... (stop excluded).

    Points are computed as ``start + i*step`` and rounded to 12 decimals so
    that e.g. 0.0 and -0.5 come out exact.
    """
    parts = spec.strip().split(":")
    try:
        nums = [float(p) for p in parts]
    except ValueError:
        raise GridError(f"malformed grid component {spec!r}") from None
    if not all(math.isfinite(v) for v in nums):
        raise GridError(f"non-finite value in {spec!r}")
    if len(nums) == 1:
        return nums
    if len(nums) != 3:
        raise GridError(f"grid component {spec!r} must be 'value' or 'start:stop:step'")
    start, stop, step = nums
    if step <= 0:
        raise GridError(f"step must be positive in {spec!r}")
    count = max(0, math.ceil((stop - start) / step - 1e-9))
    return [round(start + i * step, 12) + 0.0 for i in range(count)]


def parse_a_grid(spec: str, d: int) -> list[tuple[float, ...]]:
    comps = [c for c in spec.split(",")]
    if len(comps) != d:
        raise GridError(f"a-grid needs {d} comma-separated components, got {len(comps)}")
    ranges = [parse_range(c) for c in comps]
    return list(itertools.product(*ranges))


def grid_points(d: int, a_spec: str, x_spec: str) -> list[ChoiFamilyParams]:
    a_values = parse_a_grid(a_spec, d)
    x_values = parse_range(x_spec)
    points = [ChoiFamilyParams(d, a, x) for a in a_values for x in x_values]
    if not points:
        raise GridError("grid is empty")
    return points


def evaluate_point(params: ChoiFamilyParams, restarts: int = 30, iters: int = 50, seed: int = 1,
                   tol: float = DEFAULT_TOL) -> SweepRow:
    d = params.d
    wt = build_wtilde(params)
    w = build_witness(params)
    verdict = certify_via_map(w, inverse_reduction_map(d), tol)
    bp, _ = blockpos_min(w, restarts, iters, seed)
    maxent = float(np.trace(w.matrix @ maximally_entangled_projector(d).matrix).real)
    return SweepRow(
        d=d,
        a=";".join(repr(v) for v in params.a),
        x=params.x,
        wtilde_min_eig=min_eigenvalue(wt),
        w_min_eig=verdict.min_eigenvalue,
        certified=int(verdict.certified),
        blockpos_min=bp,
        detect_maxent=maxent,
    )


def _evaluate_star(args):
    return evaluate_point(*args)


def run_sweep(points: list[ChoiFamilyParams], restarts: int = 30, iters: int = 50, seed: int = 1,
              tol: float = DEFAULT_TOL, parallel: bool = False) -> list[SweepRow]:
    """Evaluate every point; output order is the input order either way."""
    jobs = [(p, restarts, iters, seed, tol) for p in points]
    if parallel and len(jobs) > 1:
        with ProcessPoolExecutor() as pool:
            return list(pool.map(_evaluate_star, jobs))
    return [_evaluate_star(j) for j in jobs]


def write_csv(rows: list[SweepRow], stream) -> None:
    writer = csv.DictWriter(stream, fieldnames=FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(asdict(r))
