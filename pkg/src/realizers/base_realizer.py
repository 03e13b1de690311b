"""Base realizer class and realization verification"""
import logging
from abc import ABC, abstractmethod
from typing import Optional

import numpy as np

from src.models.configuration import IncidenceStructure
from src.models.realization import Realization, RealizationCheck
from src.utils import geometry

logger = logging.getLogger(__name__)


def check_points(structure: IncidenceStructure, points: np.ndarray, tolerance: float) -> RealizationCheck:
    """Recompute every block residual and the distinctness conditions for raw coordinates"""
    scale = geometry.diameter(points)
    residuals = [
        geometry.normalized_residual(points[x - 1], points[y - 1], points[z - 1], scale)
        for x, y, z in structure.blocks
    ]
    return RealizationCheck(
        max_residual=max(residuals, default=0.0),
        residuals=residuals,
        violating_blocks=[j for j, residual in enumerate(residuals, start=1) if residual > tolerance],
        points_distinct=geometry.points_distinct(points, scale),
        lines_distinct=geometry.lines_distinct(points, structure.blocks, scale),
    )


def verify_realization(structure: IncidenceStructure, realization: Realization) -> RealizationCheck:
    """
    Certify a realization against a structure
    Report-style: problems are listed in the result, never raised.
    """
    if len(realization.points) != structure.n:
        logger.warning(f"Realization has {len(realization.points)} points for {structure.n} marks")
        return RealizationCheck(
            max_residual=float("inf"),
            residuals=[],
            violating_blocks=list(range(1, structure.n + 1)),
            points_distinct=False,
            lines_distinct=False,
        )
    return check_points(structure, geometry.as_array(realization.points), realization.tolerance)


def make_realization(structure: IncidenceStructure, points: np.ndarray, tolerance: float) -> Realization:
    check = check_points(structure, points, tolerance)
    return Realization(
        structure=structure,
        points=[(float(x), float(y)) for x, y in points],
        tolerance=tolerance,
        max_residual=check.max_residual,
    )


class BaseRealizer(ABC):
    """Abstract base class for geometric realizers"""

    def __init__(self, method_name: str, structure: IncidenceStructure):
        self.method_name = method_name
        self.structure = structure

    @abstractmethod
    def realize(self) -> Optional[Realization]:
        """Build a realization - must be implemented by subclasses"""
        pass

    def run(self) -> Optional[Realization]:
        """Execute the realizer and return its realization"""
        try:
            logger.info(f"Starting {self.method_name} realization for n={self.structure.n}")
            realization = self.realize()
            if realization is None:
                logger.warning(f"{self.method_name} realization did not reach tolerance for n={self.structure.n}")
            else:
                logger.info(
                    f"{self.method_name} realization for n={self.structure.n} "
                    f"reached max residual {realization.max_residual:.3e}"
                )
            return realization
        except Exception as e:
            logger.error(f"{self.method_name} realization failed for n={self.structure.n}: {str(e)}")
            raise
