"""Colour refinement and backtracking search for incidence-preserving maps"""
import logging
from collections import Counter, deque
from itertools import combinations, permutations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple

from src.models.configuration import IncidenceStructure

logger = logging.getLogger(__name__)


class IncidenceIndex:
    """Collinearity lookup tables for one structure"""

    def __init__(self, structure: IncidenceStructure):
        self.structure = structure
        self.n = structure.n
        self.neighbors: List[Set[int]] = [set() for _ in range(self.n + 1)]
        self.third: Dict[Tuple[int, int], int] = {}
        self.block_index: Dict[FrozenSet[int], int] = {}

        for j, block in enumerate(structure.blocks, start=1):
            self.block_index[frozenset(block)] = j
            for x, y in permutations(block, 2):
                self.neighbors[x].add(y)
                (z,) = set(block) - {x, y}
                self.third[(x, y)] = z

    def distance_profile(self, mark: int) -> Tuple[int, ...]:
        """Number of marks at each distance from mark in the collinearity graph"""
        distance = {mark: 0}
        queue = deque([mark])
        while queue:
            current = queue.popleft()
            for other in self.neighbors[current]:
                if other not in distance:
                    distance[other] = distance[current] + 1
                    queue.append(other)
        counts = Counter(distance.values())
        unreachable = self.n - len(distance)
        return tuple(counts[d] for d in range(1, max(counts) + 1)) + (unreachable,)

    def triangle_count(self, mark: int) -> int:
        """Triangles through mark whose sides lie on three different blocks"""
        count = 0
        for y, z in combinations(sorted(self.neighbors[mark]), 2):
            if z in self.neighbors[y] and self.third[(mark, y)] != z:
                count += 1
        return count

    def initial_signature(self, mark: int) -> tuple:
        return (self.distance_profile(mark), self.triangle_count(mark))


def refine_colors(indices: List[IncidenceIndex]) -> List[List[int]]:
    """
    Jointly refine mark colours of several structures
    Colours are comparable across the structures: an incidence-preserving map
    can only send a mark to a mark of the same colour.
    """
    signatures = [[None] + [index.initial_signature(x) for x in range(1, index.n + 1)] for index in indices]
    colors = _relabel(signatures)
    class_count = len({c for coloring in colors for c in coloring[1:]})

    rounds = max(index.n for index in indices)
    for _ in range(rounds):
        signatures = [
            [None] + [
                (coloring[x], tuple(sorted(coloring[y] for y in index.neighbors[x])))
                for x in range(1, index.n + 1)
            ]
            for index, coloring in zip(indices, colors)
        ]
        colors = _relabel(signatures)
        refined_count = len({c for coloring in colors for c in coloring[1:]})
        if refined_count == class_count:
            break
        class_count = refined_count

    return colors


def _relabel(signatures: List[list]) -> List[List[int]]:
    palette = sorted({sig for sigs in signatures for sig in sigs[1:]}, key=repr)
    ids = {sig: i for i, sig in enumerate(palette)}
    return [[-1] + [ids[sig] for sig in sigs[1:]] for sigs in signatures]


class IncidenceSearch:
    """
    Backtracking search for point bijections carrying blocks onto blocks
    Both structures must be valid configurations (two marks share at most one block).
    """

    def __init__(self, source: IncidenceStructure, target: IncidenceStructure):
        self.source = IncidenceIndex(source)
        self.target = IncidenceIndex(target)
        self.n = source.n
        if source.n == target.n:
            self.source_colors, self.target_colors = refine_colors([self.source, self.target])
        else:
            self.source_colors, self.target_colors = [], []
        self.nodes = 0

    def compatible(self) -> bool:
        """Cheap necessary condition: equal size and equal colour histograms"""
        if self.source.n != self.target.n:
            return False
        return Counter(self.source_colors[1:]) == Counter(self.target_colors[1:])

    def maps(self) -> Iterator[Tuple[int, ...]]:
        """Yield every incidence-preserving point map"""
        if not self.compatible():
            return
        fmap = [0] * (self.n + 1)
        used = [False] * (self.n + 1)
        assigned: List[int] = []
        yield from self._search(fmap, used, assigned)
        logger.debug(f"Search over n={self.n} visited {self.nodes} nodes")

    def first_map(self, pinned: Optional[Tuple[int, int]] = None) -> Optional[Tuple[int, ...]]:
        """
        First map found, optionally forced to send pinned[0] to pinned[1]
        Pinning loses nothing when the target is point-transitive.
        """
        if pinned is None:
            return next(self.maps(), None)
        if not self.compatible():
            return None
        fmap = [0] * (self.n + 1)
        used = [False] * (self.n + 1)
        assigned: List[int] = []
        if self._extend(fmap, used, assigned, [pinned]) is None:
            return None
        return next(self._search(fmap, used, assigned), None)

    def block_map(self, point_map: Iterable[int]) -> Tuple[int, ...]:
        images = (0,) + tuple(point_map)
        return tuple(
            self.target.block_index[frozenset(images[x] for x in block)]
            for block in self.source.structure.blocks
        )

    def _search(self, fmap: List[int], used: List[bool], assigned: List[int]) -> Iterator[Tuple[int, ...]]:
        self.nodes += 1
        if len(assigned) == self.n:
            if self._preserves_blocks(fmap):
                yield tuple(fmap[1:])
            return

        x = self._next_mark(fmap)
        for y in range(1, self.n + 1):
            if used[y] or self.target_colors[y] != self.source_colors[x]:
                continue
            trail = self._extend(fmap, used, assigned, [(x, y)])
            if trail is None:
                continue
            yield from self._search(fmap, used, assigned)
            self._undo(fmap, used, assigned, trail)

    def _next_mark(self, fmap: List[int]) -> int:
        class_sizes = Counter(self.source_colors[1:])
        best = None
        best_key = None
        for x in range(1, self.n + 1):
            if fmap[x]:
                continue
            anchored = sum(1 for y in self.source.neighbors[x] if fmap[y])
            key = (anchored, -class_sizes[self.source_colors[x]], -x)
            if best_key is None or key > best_key:
                best, best_key = x, key
        return best

    def _extend(self, fmap, used, assigned, pairs) -> Optional[List[int]]:
        """Assign pairs and every image they force; undo and return None on conflict"""
        trail: List[int] = []
        queue = deque(pairs)
        while queue:
            x, y = queue.popleft()
            if fmap[x]:
                if fmap[x] != y:
                    self._undo(fmap, used, assigned, trail)
                    return None
                continue
            if used[y] or self.source_colors[x] != self.target_colors[y]:
                self._undo(fmap, used, assigned, trail)
                return None
            source_nbrs = self.source.neighbors[x]
            target_nbrs = self.target.neighbors[y]
            for other in assigned:
                if (other in source_nbrs) != (fmap[other] in target_nbrs):
                    self._undo(fmap, used, assigned, trail)
                    return None

            fmap[x] = y
            used[y] = True
            assigned.append(x)
            trail.append(x)

            for other in source_nbrs:
                if fmap[other]:
                    queue.append((self.source.third[(x, other)], self.target.third[(y, fmap[other])]))
        return trail

    @staticmethod
    def _undo(fmap, used, assigned, trail):
        for x in reversed(trail):
            used[fmap[x]] = False
            fmap[x] = 0
            assigned.pop()

    def _preserves_blocks(self, fmap: List[int]) -> bool:
        return all(
            frozenset(fmap[x] for x in block) in self.target.block_index
            for block in self.source.structure.blocks
        )
