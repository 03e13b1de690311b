"""JSON realization documents with round-trip exact coordinates"""
import json
import logging
from typing import Dict, List

from pydantic import BaseModel, Field, ValidationError, model_validator

from src.models.configuration import IncidenceStructure
from src.models.errors import TableFormatError
from src.models.realization import Realization

logger = logging.getLogger(__name__)


class RealizationDocument(BaseModel):
    """On-disk layout of a realization"""
    n: int = Field(..., ge=1)
    blocks: List[List[int]]
    points: List[List[float]]
    tolerance: float = Field(..., gt=0)
    max_residual: float = Field(..., ge=0, alias="maxResidual")

    @model_validator(mode="after")
    def check_shape(self):
        if len(self.points) != self.n:
            raise ValueError(f"expected {self.n} points, found {len(self.points)}")
        for i, point in enumerate(self.points, start=1):
            if len(point) != 2:
                raise ValueError(f"point {i} must be an [x, y] pair")
        return self


def _number(value: float) -> str:
    """17 significant digits reproduce any double exactly"""
    return f"{value:.17g}"


def write_realization(realization: Realization) -> str:
    """
    Serialize to JSON with keys n, blocks, points, tolerance, maxResidual
    Written by hand so every float carries 17 significant digits.
    """
    blocks = ",\n    ".join(json.dumps(list(block)) for block in realization.structure.blocks)
    points = ",\n    ".join(f"[{_number(x)}, {_number(y)}]" for x, y in realization.points)
    return (
        "{\n"
        f'  "n": {realization.structure.n},\n'
        f'  "blocks": [\n    {blocks}\n  ],\n'
        f'  "points": [\n    {points}\n  ],\n'
        f'  "tolerance": {_number(realization.tolerance)},\n'
        f'  "maxResidual": {_number(realization.max_residual)}\n'
        "}\n"
    )


def parse_realization(text: str) -> Realization:
    try:
        raw: Dict = json.loads(text)
    except json.JSONDecodeError as e:
        raise TableFormatError(f"invalid JSON: {e.msg}", line=e.lineno, column=e.colno)

    try:
        document = RealizationDocument.model_validate(raw)
        structure = IncidenceStructure(n=document.n, blocks=[tuple(block) for block in document.blocks])
    except ValidationError as e:
        raise TableFormatError(f"invalid realization document: {e.errors()[0]['msg']}")

    return Realization(
        structure=structure,
        points=[(x, y) for x, y in document.points],
        tolerance=document.tolerance,
        max_residual=document.max_residual,
    )
