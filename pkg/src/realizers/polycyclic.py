"""Numerical search for realizations with m-fold rotational symmetry"""
import logging
from typing import Dict, List, Optional, Set, Tuple

import numpy as np
from scipy.optimize import least_squares

from src.analysis.groups import automorphisms, orbits
from src.models.configuration import IncidenceStructure
from src.models.errors import StructuralError
from src.models.group import AutomorphismGroup, ConfigAutomorphism
from src.models.realization import PolycyclicOptions, Realization
from src.realizers.base_realizer import BaseRealizer, check_points, make_realization
from src.utils import geometry

logger = logging.getLogger(__name__)


def acts_freely(element: ConfigAutomorphism, m: int) -> bool:
    """Every mark and every block lies on a cycle of length m"""
    lengths = element.point_cycle_lengths() + element.block_cycle_lengths()
    return all(length == m for length in lengths)


def _conjugate(h: ConfigAutomorphism, g: ConfigAutomorphism) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Key of h g h^-1"""
    product = h.compose(g).compose(h.inverse())
    return product.point_perm, product.block_perm


def rotation_candidates(group: AutomorphismGroup, m: int) -> List[ConfigAutomorphism]:
    """
    Order-m automorphisms acting freely on marks and blocks, one per conjugacy class
    Each generator of a cyclic subgroup is kept on its own: g and g^k pair with different
    rotation angles, so star-shaped layouts need their own candidate.
    """
    candidates = []
    covered: Set[Tuple[Tuple[int, ...], Tuple[int, ...]]] = set()
    for element in group.elements:
        key = (element.point_perm, element.block_perm)
        if key in covered or element.order() != m:
            continue
        if not acts_freely(element, m):
            continue
        candidates.append(element)
        for h in group.elements:
            covered.add(_conjugate(h, element))
    return candidates


class RotationLayout:
    """Positions of all marks from one seed point per orbit of a free order-m automorphism"""

    def __init__(self, structure: IncidenceStructure, generator: ConfigAutomorphism, m: int):
        self.structure = structure
        self.m = m
        self.representatives: List[int] = []
        self.placement: Dict[int, Tuple[int, int]] = {}

        for orbit in orbits([generator], structure.n):
            seed_index = len(self.representatives)
            start = orbit[0]
            self.representatives.append(start)
            current = start
            for exponent in range(m):
                self.placement[current] = (seed_index, exponent)
                current = generator.point_perm[current - 1]

        self.block_representatives = [
            structure.blocks[block_orbit[0] - 1]
            for block_orbit in orbits([generator], structure.n, on_blocks=True)
        ]
        self.rotations = np.stack([geometry.rotation_matrix(2 * np.pi * k / m) for k in range(m)])

    def points(self, seeds: np.ndarray) -> np.ndarray:
        seeds = seeds.reshape(-1, 2)
        points = np.empty((self.structure.n, 2))
        for mark, (seed_index, exponent) in self.placement.items():
            points[mark - 1] = self.rotations[exponent] @ seeds[seed_index]
        return points

    def residuals(self, seeds: np.ndarray) -> np.ndarray:
        """Sine of the angle at the first mark of each representative block, plus a scale anchor"""
        points = self.points(seeds)
        values = []
        for x, y, z in self.block_representatives:
            u = points[y - 1] - points[x - 1]
            v = points[z - 1] - points[x - 1]
            values.append((u[0] * v[1] - u[1] * v[0]) / (np.linalg.norm(u) * np.linalg.norm(v) + 1e-12))
        values.append(np.mean(np.sum(seeds.reshape(-1, 2) ** 2, axis=1)) - 1.0)
        return np.asarray(values)


class PolycyclicRealizer(BaseRealizer):
    """Least-squares search for a realization invariant under rotation by 2*pi/m about the origin"""

    def __init__(self, structure: IncidenceStructure, m: int, options: Optional[PolycyclicOptions] = None):
        super().__init__(f"{m}-fold polycyclic", structure)
        self.m = m
        self.options = options or PolycyclicOptions()

        if m < 2 or structure.n % m:
            raise StructuralError(f"rotation order m={m} must be at least 2 and divide n={structure.n}")
        self.candidates = rotation_candidates(automorphisms(structure), m)
        if not self.candidates:
            raise StructuralError(f"no automorphism of order {m} acts freely on the marks and blocks")
        self.restarts_used = 0

    def realize(self) -> Optional[Realization]:
        rng = np.random.default_rng(self.options.seed)
        best = float("inf")

        for generator in self.candidates:
            layout = RotationLayout(self.structure, generator, self.m)
            logger.debug(f"Trying rotation generator {generator.cycle_notation()}")
            for restart in range(self.options.restarts):
                self.restarts_used += 1
                x0 = rng.normal(size=2 * len(layout.representatives))
                result = least_squares(
                    layout.residuals, x0, method="trf", xtol=1e-15, ftol=1e-15, gtol=1e-15,
                    max_nfev=self.options.max_nfev,
                )
                points = layout.points(result.x)
                check = check_points(self.structure, points, self.options.tolerance)
                best = min(best, check.max_residual)
                if check.ok:
                    logger.info(f"Restart {restart} converged with max residual {check.max_residual:.3e}")
                    return make_realization(self.structure, points, self.options.tolerance)

        logger.warning(
            f"No restart reached tolerance {self.options.tolerance:g} "
            f"({self.restarts_used} restarts, best residual {best:.3e}); this is not evidence of non-existence"
        )
        return None


def realize_polycyclic(
    structure: IncidenceStructure, m: int, options: Optional[PolycyclicOptions] = None
) -> Optional[Realization]:
    return PolycyclicRealizer(structure, m, options).run()
