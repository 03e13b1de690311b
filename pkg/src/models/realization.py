"""Geometric realization models and construction options"""
from typing import List, Tuple

from pydantic import BaseModel, Field

from src.models.configuration import IncidenceStructure
from src.models.group import ConfigAutomorphism

Point = Tuple[float, float]


class Realization(BaseModel):
    """Planar coordinates for every mark of a structure"""
    structure: IncidenceStructure
    points: List[Point] = Field(..., description="points[x-1] is the position of mark x")
    tolerance: float = Field(..., gt=0, description="Relative collinearity tolerance")
    max_residual: float = Field(..., ge=0, description="Largest normalized collinearity residual")


class RealizationCheck(BaseModel):
    """Recomputed certification of a realization"""
    max_residual: float
    residuals: List[float] = Field(..., description="Normalized residual of each block, in block order")
    violating_blocks: List[int] = Field(default_factory=list, description="1-based blocks above tolerance")
    points_distinct: bool
    lines_distinct: bool

    @property
    def ok(self) -> bool:
        return not self.violating_blocks and self.points_distinct and self.lines_distinct


class SymmetryReport(BaseModel):
    """Plane isometries mapping a realization onto itself"""
    rotation_order: int = Field(..., ge=1, description="Largest k with rotation by 2*pi/k a symmetry")
    reflection_count: int = Field(..., ge=0, description="Number of mirror lines")
    group_label: str = Field(..., description="C_k or D_k")
    center: Point
    induced_elements: List[ConfigAutomorphism] = Field(
        default_factory=list, description="Automorphisms induced by the rotation generator and each reflection"
    )
    point_orbit_count: int
    block_orbit_count: int
    is_astral: bool = Field(..., description="As many point orbits as line orbits")
    is_chiral: bool = Field(..., description="Astral with rotations only")


class GruenbaumOptions(BaseModel):
    """Options for the incremental construction of C(n,1,3)"""
    tolerance: float = Field(default=1e-9, gt=0)
    slope_epsilon: float = Field(default=0.1, gt=0, description="Slope of the line through points 2, 3, 5")
    spacing: float = Field(default=1.0, gt=0, description="x-distance between consecutive placed points")
    scan_steps: int = Field(default=120, ge=4, description="Geometric scan samples per ray")
    scan_growth: float = Field(default=1.2, gt=1.0, description="Ratio between consecutive scan samples")
    point3_offset: float = Field(
        default=0.1, gt=0, lt=1, description="x-distance of mark 3 to the left of mark 2, as a fraction of spacing"
    )
    max_attempts: int = Field(default=12, ge=1, description="Slope and offset fallbacks tried before giving up")


class PolycyclicOptions(BaseModel):
    """Options for the rotationally symmetric least-squares search"""
    restarts: int = Field(default=100, ge=1)
    seed: int = Field(default=0)
    tolerance: float = Field(default=1e-8, gt=0)
    max_nfev: int = Field(default=4000, ge=10)


class SymmetryOptions(BaseModel):
    """Options for isometry detection"""
    tolerance: float = Field(default=1e-6, gt=0, description="Matching tolerance relative to the diameter")


class SvgStyle(BaseModel):
    """Drawing style for SVG output"""
    size: float = Field(default=600.0, gt=0, description="Canvas width and height in px")
    margin: float = Field(default=30.0, ge=0)
    point_radius: float = Field(default=4.0, gt=0)
    line_width: float = Field(default=1.0, gt=0)
    line_extension: float = Field(default=0.08, ge=0, description="Segment overhang as a fraction of its length")
    point_color: str = "black"
    line_color: str = "#1f4e79"
    highlight_color: str = "#c0392b"
    font_size: float = Field(default=11.0, gt=0)
    labels: bool = True
