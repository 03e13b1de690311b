"""Detection of plane isometries preserving a realization"""
import logging
from itertools import combinations
from typing import List, Optional

import numpy as np
from scipy.spatial import cKDTree

from src.analysis.groups import generate_group, induced_automorphism, orbits
from src.models.group import ConfigAutomorphism
from src.models.realization import Realization, SymmetryOptions, SymmetryReport
from src.utils import geometry

logger = logging.getLogger(__name__)


class SymmetryDetector:
    """Matches transformed points back onto the realization and checks the induced permutation"""

    def __init__(self, realization: Realization, options: Optional[SymmetryOptions] = None):
        self.realization = realization
        self.structure = realization.structure
        self.options = options or SymmetryOptions()

        points = geometry.as_array(realization.points)
        self.center = points.mean(axis=0)
        self.centered = points - self.center
        self.scale = geometry.diameter(points)
        self.tree = cKDTree(self.centered)

    def match(self, matrix: np.ndarray) -> Optional[ConfigAutomorphism]:
        """Automorphism induced by a linear isometry about the center, if it maps the realization onto itself"""
        moved = self.centered @ matrix.T
        distances, indices = self.tree.query(moved)
        if distances.max() > self.options.tolerance * self.scale:
            return None
        if len(set(indices.tolist())) != len(indices):
            return None
        return induced_automorphism(self.structure, [int(i) + 1 for i in indices])

    def rotation(self) -> tuple:
        """Largest k with rotation by 2*pi/k a symmetry, and its induced automorphism"""
        for k in range(self.structure.n, 1, -1):
            element = self.match(geometry.rotation_matrix(2 * np.pi / k))
            if element is not None:
                return k, element
        return 1, None

    def axis_candidates(self) -> List[float]:
        """Mirror directions through the center: towards each point and along each perpendicular bisector"""
        radii = np.hypot(self.centered[:, 0], self.centered[:, 1])
        angles = np.arctan2(self.centered[:, 1], self.centered[:, 0])
        floor = self.options.tolerance * self.scale
        candidates = [angles[i] for i in range(len(angles)) if radii[i] > floor]
        for i, j in combinations(range(len(angles)), 2):
            if radii[i] > floor and abs(radii[i] - radii[j]) <= floor:
                candidates.append((angles[i] + angles[j]) / 2)
        return _distinct_angles(candidates, self.options.tolerance)

    def reflections(self) -> List[ConfigAutomorphism]:
        accepted = []
        for angle in self.axis_candidates():
            element = self.match(geometry.reflection_matrix(angle))
            if element is not None:
                accepted.append(element)
        return accepted


def _distinct_angles(angles: List[float], tolerance: float) -> List[float]:
    """Directions modulo pi, deduplicated, in increasing order"""
    reduced = sorted(float(a) % np.pi for a in angles)
    distinct: List[float] = []
    for angle in reduced:
        if distinct and angle - distinct[-1] <= tolerance:
            continue
        distinct.append(angle)
    if len(distinct) > 1 and distinct[0] + np.pi - distinct[-1] <= tolerance:
        distinct.pop()
    return distinct


def detect_symmetries(realization: Realization, options: Optional[SymmetryOptions] = None) -> SymmetryReport:
    """
    Cyclic or dihedral symmetry group of a realization about its centroid
    Every accepted isometry is returned with the automorphism it induces.
    """
    detector = SymmetryDetector(realization, options)
    n = realization.structure.n

    rotation_order, rotation = detector.rotation()
    reflections = detector.reflections()

    induced = ([rotation] if rotation is not None else []) + reflections
    group = generate_group(induced, n)
    point_orbit_count = len(orbits(group, n))
    block_orbit_count = len(orbits(group, n, on_blocks=True))
    nontrivial = len(group) > 1
    is_astral = nontrivial and point_orbit_count == block_orbit_count

    label = f"D_{rotation_order}" if reflections else f"C_{rotation_order}"
    logger.info(f"Symmetry group {label} with {len(reflections)} mirror lines for n={n}")
    return SymmetryReport(
        rotation_order=rotation_order,
        reflection_count=len(reflections),
        group_label=label,
        center=(float(detector.center[0]), float(detector.center[1])),
        induced_elements=induced,
        point_orbit_count=point_orbit_count,
        block_orbit_count=block_orbit_count,
        is_astral=is_astral,
        is_chiral=is_astral and not reflections,
    )
