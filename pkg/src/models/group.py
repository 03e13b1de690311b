"""Levi graph and automorphism group models"""
from math import lcm
from typing import Dict, List, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field

BLACK = "black"
WHITE = "white"


class LeviGraph(BaseModel):
    """Bipartite incidence graph: marks 1..n are black, blocks n+1..2n are white"""
    n: int
    edges: List[Tuple[int, int]] = Field(..., description="(mark vertex, block vertex) pairs")

    @property
    def vertex_count(self) -> int:
        return 2 * self.n

    def color(self, vertex: int) -> str:
        return BLACK if vertex <= self.n else WHITE

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        for vertex in range(1, 2 * self.n + 1):
            graph.add_node(vertex, color=self.color(vertex))
        graph.add_edges_from(self.edges)
        return graph


def _cycle_lengths(perm: Tuple[int, ...]) -> List[int]:
    seen = set()
    lengths = []
    for start in range(1, len(perm) + 1):
        if start in seen:
            continue
        length = 0
        current = start
        while current not in seen:
            seen.add(current)
            current = perm[current - 1]
            length += 1
        lengths.append(length)
    return lengths


class ConfigAutomorphism(BaseModel):
    """Incidence-preserving pair of permutations on marks and blocks"""

    model_config = ConfigDict(frozen=True)

    point_perm: Tuple[int, ...] = Field(..., description="point_perm[x-1] is the image of mark x")
    block_perm: Tuple[int, ...] = Field(..., description="block_perm[j-1] is the image of block j")

    def compose(self, other: "ConfigAutomorphism") -> "ConfigAutomorphism":
        """self after other"""
        return ConfigAutomorphism(
            point_perm=tuple(self.point_perm[x - 1] for x in other.point_perm),
            block_perm=tuple(self.block_perm[j - 1] for j in other.block_perm),
        )

    def inverse(self) -> "ConfigAutomorphism":
        points = [0] * len(self.point_perm)
        for x, image in enumerate(self.point_perm, start=1):
            points[image - 1] = x
        blocks = [0] * len(self.block_perm)
        for j, image in enumerate(self.block_perm, start=1):
            blocks[image - 1] = j
        return ConfigAutomorphism(point_perm=tuple(points), block_perm=tuple(blocks))

    def is_identity(self) -> bool:
        return all(image == x for x, image in enumerate(self.point_perm, start=1))

    def fixed_points(self) -> List[int]:
        return [x for x, image in enumerate(self.point_perm, start=1) if image == x]

    def order(self) -> int:
        return lcm(*_cycle_lengths(self.point_perm), *_cycle_lengths(self.block_perm))

    def point_cycle_lengths(self) -> List[int]:
        return _cycle_lengths(self.point_perm)

    def block_cycle_lengths(self) -> List[int]:
        return _cycle_lengths(self.block_perm)

    def cycle_notation(self) -> str:
        """Point permutation in cycle notation, fixed points omitted"""
        seen = set()
        cycles = []
        for start in range(1, len(self.point_perm) + 1):
            if start in seen:
                continue
            cycle = []
            current = start
            while current not in seen:
                seen.add(current)
                cycle.append(current)
                current = self.point_perm[current - 1]
            if len(cycle) > 1:
                cycles.append("(" + " ".join(str(x) for x in cycle) + ")")
        return "".join(cycles) or "()"


class AutomorphismGroup(BaseModel):
    """Complete colour-preserving automorphism group of a configuration"""
    n: int
    elements: List[ConfigAutomorphism] = Field(..., description="All elements, sorted by point permutation")
    generators: List[ConfigAutomorphism] = Field(default_factory=list)
    order: int
    point_orbits: List[List[int]]
    block_orbits: List[List[int]]


class IsomorphismMap(BaseModel):
    """Incidence-preserving bijections between two structures"""
    point_map: Tuple[int, ...] = Field(..., description="point_map[x-1] is the image of mark x")
    block_map: Tuple[int, ...] = Field(..., description="block_map[j-1] is the image of block j")

    def inverse(self) -> "IsomorphismMap":
        inverted = ConfigAutomorphism(point_perm=self.point_map, block_perm=self.block_map).inverse()
        return IsomorphismMap(point_map=inverted.point_perm, block_map=inverted.block_perm)


class GroupReport(BaseModel):
    """Summary statistics of an automorphism group"""
    order: int
    is_point_transitive: bool
    max_element_order: int
    is_abelian: bool
    element_order_histogram: Dict[int, int] = Field(..., description="element order -> number of elements")
    point_orbit_sizes: List[int]


class Duality(BaseModel):
    """Colour-swapping Levi automorphism: marks to blocks and blocks to marks"""
    point_to_block: Tuple[int, ...]
    block_to_point: Tuple[int, ...]
