"""Incremental straight-line construction of C(n,1,3) with a deterministic completion"""
import logging
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.optimize import bisect

from src.analysis.cyclic import multiplier_isomorphism, predicate_valid
from src.analysis.groups import transitive_isomorphism
from src.analysis.incidence import build_gen_cyclic
from src.models.configuration import GenCyclicParams, IncidenceStructure
from src.models.errors import ConstructionError, DomainError, StructuralError
from src.models.realization import GruenbaumOptions, Realization
from src.realizers.base_realizer import BaseRealizer, check_points, make_realization
from src.utils import geometry

logger = logging.getLogger(__name__)

# Geometric (n_3) configurations exist exactly for n >= 9
MIN_GEOMETRIC_N = 9

# Smallest |t| sampled on each ray of the completion line
SCAN_START = 1e-3


def fallback_slopes(epsilon: float, count: int = 4) -> List[float]:
    """eps, eps/2, 2*eps, eps/4, 4*eps, ..."""
    slopes = [epsilon]
    power = 1
    while len(slopes) < count:
        slopes.append(epsilon / 2 ** power)
        if len(slopes) < count:
            slopes.append(epsilon * 2 ** power)
        power += 1
    return slopes


def attempt_schedule(options: GruenbaumOptions) -> List[Tuple[float, float]]:
    """(slope, mark-3 offset) pairs in the order they are tried"""
    offset = options.point3_offset
    offsets = [offset, offset / 2, min(2.5 * offset, 0.5)]
    schedule = [(slope, o) for o in offsets for slope in fallback_slopes(options.slope_epsilon)]
    return schedule[:options.max_attempts]


def place_initial_points(n: int, slope: float, spacing: float, point3_offset: float = 0.1) -> np.ndarray:
    """
    Place marks 2..n-2; rows 0 (mark 1), n-2 and n-1 (marks n-1 and n) stay NaN
    Mark m >= 6 sits on line(m-3, m-2) at x = (m-4)*spacing, which covers block {m-3, m-2, m}.
    """
    points = np.full((n, 2), np.nan)
    points[1] = (0.0, 0.0)
    points[3] = (-spacing, 0.0)
    x3 = -point3_offset * spacing
    points[2] = (x3, slope * x3)
    points[4] = (spacing, slope * spacing)

    for mark in range(6, n - 1):
        a, b = points[mark - 4], points[mark - 3]
        x = (mark - 4) * spacing
        if a[0] == b[0]:
            raise ConstructionError(
                f"line({mark - 3},{mark - 2}) is vertical; cannot place mark {mark}",
                {"mark": mark, "slope": slope, "spacing": spacing},
            )
        points[mark - 1] = (x, a[1] + (x - a[0]) * (b[1] - a[1]) / (b[0] - a[0]))
    return points


def _scan_grid(options: GruenbaumOptions) -> np.ndarray:
    """Geometric samples on both rays, merged with a uniform grid around the segment"""
    ray = SCAN_START * options.scan_growth ** np.arange(options.scan_steps)
    uniform = np.linspace(-2.0, 3.0, 501)
    return np.unique(np.concatenate([-ray, ray, uniform]))


def _completion(points: np.ndarray, n: int) -> Callable[[float], Optional[Tuple[np.ndarray, np.ndarray, np.ndarray]]]:
    """Positions of marks n-1, n, 1 as a function of the parameter t along line(n-4, n-3)"""
    anchor, toward = points[n - 5], points[n - 4]
    p2 = points[1]
    axis = geometry.line_through(p2, points[3])
    last_line = geometry.line_through(points[n - 4], points[n - 3])

    def place(t: float):
        before_last = anchor + t * (toward - anchor)
        last = geometry.intersect(last_line, geometry.line_through(p2, before_last))
        first = geometry.intersect(axis, geometry.line_through(points[n - 3], before_last))
        if last is None or first is None:
            return None
        return before_last, last, first

    return place


def _completion_residual(points: np.ndarray, n: int) -> Callable[[float], float]:
    """
    Collinearity of marks n, 1 and 3 in homogeneous coordinates along the same parameter t
    Marks n and 1 may pass through infinity; the determinant stays finite and continuous there.
    """
    anchor, toward = points[n - 5], points[n - 4]
    p2 = np.append(points[1], 1.0)
    p3 = np.append(points[2], 1.0)
    before_first = np.append(points[n - 3], 1.0)
    axis = geometry.line_through(points[1], points[3])
    last_line = geometry.line_through(points[n - 4], points[n - 3])

    def residual(t: float) -> float:
        before_last = np.append(anchor + t * (toward - anchor), 1.0)
        last = geometry.meet(last_line, np.cross(p2, before_last))
        first = geometry.meet(axis, np.cross(before_first, before_last))
        return geometry.homogeneous_det(last, first, p3 / np.linalg.norm(p3))

    return residual


def _bisect(residual: Callable[[float], float], lo: float, hi: float, n: int) -> float:
    try:
        return bisect(residual, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=400, disp=False)
    except (ValueError, RuntimeError) as e:
        raise ConstructionError(
            f"bisection on [{lo:.6g}, {hi:.6g}] failed for n={n}: {str(e)}", {"n": n, "bracket": [lo, hi]}
        ) from e


def complete_last_three(
    points: np.ndarray,
    n: int,
    options: Optional[GruenbaumOptions] = None,
    structure: Optional[IncidenceStructure] = None,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Place marks n-1, n and 1 so that the six remaining blocks of C(n,1,3) hold
    Mark n-1 moves along line(n-4, n-3); mark n and mark 1 follow by intersection,
    and the residual of block {n, 1, 3} is bisected to machine precision.
    """
    options = options or GruenbaumOptions()
    structure = structure or build_gen_cyclic(GenCyclicParams(n=n, a=1, b=3))

    if geometry.line_through(points[1], points[3]) is None:
        raise ConstructionError("marks 2 and 4 coincide; line(2,4) is undefined", {"n": n})
    if geometry.line_through(points[n - 5], points[n - 4]) is None:
        raise ConstructionError(f"marks {n - 4} and {n - 3} coincide", {"n": n})
    if geometry.line_through(points[n - 4], points[n - 3]) is None:
        raise ConstructionError(f"marks {n - 3} and {n - 2} coincide", {"n": n})

    place = _completion(points, n)
    residual = _completion_residual(points, n)

    grid = _scan_grid(options)
    values = [residual(t) for t in grid]
    sign_changes = 0
    rejected = 0

    for (lo, f_lo), (hi, f_hi) in zip(zip(grid, values), zip(grid[1:], values[1:])):
        if f_lo * f_hi > 0:
            continue
        sign_changes += 1
        root = lo if f_lo == 0 else hi if f_hi == 0 else _bisect(residual, lo, hi, n)
        placed = place(root)
        if placed is None:
            # a point at infinity, or marks 2 and n-1 coincide
            rejected += 1
            continue

        candidate = points.copy()
        candidate[n - 2], candidate[n - 1], candidate[0] = placed
        check = check_points(structure, candidate, options.tolerance)
        if check.ok:
            logger.debug(f"Completion root t={root:.17g} accepted for n={n} (residual {check.max_residual:.3e})")
            return placed
        rejected += 1
        logger.warning(
            f"Rejected completion root t={root:.6g} for n={n}: residual {check.max_residual:.3e}, "
            f"points distinct {check.points_distinct}, lines distinct {check.lines_distinct}"
        )

    raise ConstructionError(
        f"no admissible completion root for n={n} over the scan window",
        {"n": n, "sign_changes": sign_changes, "rejected_roots": rejected, "scan_samples": len(grid)},
    )


class GruenbaumRealizer(BaseRealizer):
    """Realizes C(n,1,3) by placing marks left to right and completing the last three"""

    def __init__(self, n: int, options: Optional[GruenbaumOptions] = None):
        if n < MIN_GEOMETRIC_N:
            raise DomainError(f"geometric (n_3) configurations need n >= {MIN_GEOMETRIC_N}, got {n}")
        super().__init__("Gruenbaum", build_gen_cyclic(GenCyclicParams(n=n, a=1, b=3)))
        self.n = n
        self.options = options or GruenbaumOptions()

    def realize(self) -> Realization:
        attempts = []
        for slope, offset in attempt_schedule(self.options):
            try:
                points = place_initial_points(self.n, slope, self.options.spacing, offset)
                points[self.n - 2], points[self.n - 1], points[0] = complete_last_three(
                    points, self.n, self.options, self.structure
                )
                return make_realization(self.structure, points, self.options.tolerance)
            except ConstructionError as e:
                logger.warning(f"Slope {slope:g} with mark-3 offset {offset:g} failed for n={self.n}: {str(e)}")
                attempts.append({"slope": slope, "point3_offset": offset, **e.diagnostics})

        raise ConstructionError(
            f"Gruenbaum construction failed for n={self.n} after {len(attempts)} attempts",
            {"n": self.n, "attempts": attempts},
        )


def realize_gruenbaum(n: int, options: Optional[GruenbaumOptions] = None) -> Realization:
    return GruenbaumRealizer(n, options).run()


def realize_gen_cyclic(params: GenCyclicParams, options: Optional[GruenbaumOptions] = None) -> Realization:
    """
    Realize C(n,a,b) by relabelling the C(n,1,3) construction through an isomorphism
    A multiplier is tried first and a pinned Levi search second; tables outside the
    isomorphism class of C(n,1,3) are rejected.
    """
    valid, reasons = predicate_valid(params)
    if not valid:
        raise DomainError(f"{params.label()} is not a configuration ({', '.join(r.value for r in reasons)})")
    if params.n < MIN_GEOMETRIC_N:
        raise DomainError(f"geometric (n_3) configurations need n >= {MIN_GEOMETRIC_N}, got {params.n}")
    base_params = GenCyclicParams(n=params.n, a=1, b=3)
    target = build_gen_cyclic(params)

    found = multiplier_isomorphism(base_params, params)
    if found is not None:
        point_map = found.mark_map
        logger.info(f"{params.label()} is C({params.n},1,3) under multiplier z={found.z}")
    else:
        levi = transitive_isomorphism(build_gen_cyclic(base_params), target)
        if levi is None:
            raise StructuralError(f"{params.label()} is not isomorphic to C({params.n},1,3)")
        point_map = levi.point_map
        logger.info(f"{params.label()} is C({params.n},1,3) under a Levi graph isomorphism")

    options = options or GruenbaumOptions()
    base = geometry.as_array(realize_gruenbaum(params.n, options).points)
    points = np.empty_like(base)
    for mark, image in enumerate(point_map, start=1):
        points[image - 1] = base[mark - 1]

    check = check_points(target, points, options.tolerance)
    if not check.ok:
        raise ConstructionError(
            f"relabelled realization of {params.label()} fails verification",
            {"n": params.n, "max_residual": check.max_residual, "violating_blocks": check.violating_blocks},
        )
    return make_realization(target, points, options.tolerance)
