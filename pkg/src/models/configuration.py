"""Incidence data models for (n_3) configurations"""
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

Block = Tuple[int, int, int]


class IncidenceStructure(BaseModel):
    """n blocks of 3 marks on the marks 1..n"""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, description="Number of marks (equals the number of blocks)")
    blocks: Tuple[Block, ...] = Field(..., description="Blocks in column order; block j is blocks[j-1]")

    @model_validator(mode="after")
    def check_blocks(self) -> "IncidenceStructure":
        if len(self.blocks) != self.n:
            raise ValueError(f"expected {self.n} blocks, got {len(self.blocks)}")
        for index, block in enumerate(self.blocks, start=1):
            for mark in block:
                if not 1 <= mark <= self.n:
                    raise ValueError(f"block {index} has mark {mark} outside 1..{self.n}")
            if len(set(block)) != 3:
                raise ValueError(f"block {index} repeats a mark: {block}")
        return self

    def block_sets(self) -> List[FrozenSet[int]]:
        """Blocks as sets, in column order"""
        return [frozenset(block) for block in self.blocks]

    def blocks_through(self) -> Dict[int, List[int]]:
        """Map each mark to the 1-based indices of the blocks containing it"""
        incidence: Dict[int, List[int]] = {mark: [] for mark in range(1, self.n + 1)}
        for index, block in enumerate(self.blocks, start=1):
            for mark in block:
                incidence[mark].append(index)
        return incidence


class GenCyclicParams(BaseModel):
    """The (n, a, b) triple defining the generalized cyclic table C(n,a,b)"""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=3, description="Number of marks")
    a: int = Field(..., description="First row offset")
    b: int = Field(..., description="Second row offset")

    @model_validator(mode="after")
    def check_offsets(self) -> "GenCyclicParams":
        if not 1 <= self.a < self.b < self.n:
            raise ValueError(f"C({self.n},{self.a},{self.b}) needs 1 <= a < b < n")
        return self

    def label(self) -> str:
        return f"C({self.n},{self.a},{self.b})"


class IntersectionWitness(BaseModel):
    """Two blocks sharing two or more marks"""
    block_a: int = Field(..., description="1-based index of the first block")
    block_b: int = Field(..., description="1-based index of the second block")
    shared_marks: List[int] = Field(..., description="Marks common to both blocks, sorted")


class ValidityReport(BaseModel):
    """Result of the pairwise block intersection oracle"""
    valid: bool = Field(..., description="True iff no two blocks share two or more marks")
    witnesses: List[IntersectionWitness] = Field(default_factory=list, description="Every offending block pair")
    max_intersection: int = Field(..., ge=0, le=3, description="Largest intersection over all block pairs")

    def triple_intersections(self) -> List[IntersectionWitness]:
        return [w for w in self.witnesses if len(w.shared_marks) == 3]


class InvalidityReason(str, Enum):
    """Closed-form reasons why C(n,a,b) is not a configuration"""
    B_EQ_N_MINUS_A = "B_EQ_N_MINUS_A"
    B_EQ_HALF_N_PLUS_A_OVER_2 = "B_EQ_HALF_N_PLUS_A_OVER_2"
    B_EQ_HALF_N_PLUS_A = "B_EQ_HALF_N_PLUS_A"
    B_EQ_HALF_N = "B_EQ_HALF_N"
    B_EQ_2A = "B_EQ_2A"
    A_EQ_HALF_N = "A_EQ_HALF_N"

    @property
    def line_equation(self) -> str:
        """The locus line in the (a, b) plane this reason lies on"""
        return LINE_EQUATIONS[self]


LINE_EQUATIONS: Dict[InvalidityReason, str] = {
    InvalidityReason.B_EQ_N_MINUS_A: "n = a + b",
    InvalidityReason.B_EQ_HALF_N_PLUS_A_OVER_2: "n = 2b - a",
    InvalidityReason.B_EQ_HALF_N_PLUS_A: "n = 2b - 2a",
    InvalidityReason.B_EQ_HALF_N: "n = 2b",
    InvalidityReason.B_EQ_2A: "2a = b",
    InvalidityReason.A_EQ_HALF_N: "n = 2a",
}


class LocusEntry(BaseModel):
    """One invalid (a, b) pair of a locus sweep"""
    a: int
    b: int
    reasons: List[InvalidityReason] = Field(..., min_length=1, description="Every locus line the pair lies on")
    oracle_max_intersection: int = Field(..., ge=2, le=3, description="Largest block intersection found by the oracle")


class LocusReport(BaseModel):
    """Every invalid (a, b) pair for a fixed n, with locus geometry"""
    n: int
    entries: List[LocusEntry] = Field(default_factory=list)
    triple_intersection_point: Optional[Tuple[int, int]] = Field(
        None, description="(n/3, 2n/3) when 3 divides n"
    )
    triangle_vertices: Optional[List[Tuple[int, int]]] = Field(
        None, description="Vertices of the triangle bounded by n=2b-2a, n=2a, n=2b (even n)"
    )
    centroid_point: Optional[Tuple[int, int]] = Field(
        None, description="Centroid of that triangle when it is a lattice point (6 divides n)"
    )


class MultiplierIsomorphism(BaseModel):
    """Isomorphism of cyclic tables given by m -> z*m (mod n)"""
    n: int
    z: int = Field(..., ge=1, description="Multiplier, coprime to n")
    mark_map: Tuple[int, ...] = Field(..., description="mark_map[m-1] is the image of mark m")

    def apply(self, mark: int) -> int:
        return self.mark_map[mark - 1]


class IsomorphismClass(BaseModel):
    """Valid (a, b) pairs of one isomorphism class"""
    members: List[Tuple[int, int]] = Field(..., description="(a, b) pairs, first is the representative")
    representative: IncidenceStructure
    certificates: List[str] = Field(..., description="How each member was matched to the representative")


class ChiralAstralCandidacy(BaseModel):
    """Literal evaluation of the chiral astral realizability conditions"""
    n: int
    a: int
    b: int
    candidate: bool = Field(..., description="Whether the stated conditions hold")
    oracle_valid: bool = Field(..., description="Whether the normalized table {0,a,b} is a configuration")
    warning: Optional[str] = Field(None, description="Set when the conditions hold but the oracle disagrees")
