"""Levi graphs, automorphism groups and configuration isomorphism"""
import logging
from collections import Counter
from itertools import permutations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.analysis.refinement import IncidenceSearch
from src.models.configuration import IncidenceStructure
from src.models.errors import CapacityError, DomainError
from src.models.group import (
    AutomorphismGroup,
    ConfigAutomorphism,
    Duality,
    GroupReport,
    IsomorphismMap,
    LeviGraph,
)
from src.utils.validator import ConfigurationValidator

logger = logging.getLogger(__name__)

MAX_SEARCH_N = 30
MAX_BRUTE_FORCE_N = 10
# Point-transitive tables pin one image, which keeps the search small up to here
MAX_TRANSITIVE_SEARCH_N = 50

Perm = Tuple[int, ...]


def build_levi(structure: IncidenceStructure) -> LeviGraph:
    """Levi graph with marks 1..n and block j as vertex n+j"""
    edges = [
        (mark, structure.n + j)
        for j, block in enumerate(structure.blocks, start=1)
        for mark in block
    ]
    return LeviGraph(n=structure.n, edges=edges)


def _require_configuration(structure: IncidenceStructure, what: str):
    is_valid, error = ConfigurationValidator.validate_structure(structure)
    if not is_valid:
        raise DomainError(f"{what} needs a valid (n_3) configuration: {error}")


def _compose(p: Perm, q: Perm) -> Perm:
    """p after q"""
    return tuple(p[x - 1] for x in q)


def _element_key(element: ConfigAutomorphism) -> Tuple[Perm, Perm]:
    return element.point_perm, element.block_perm


def _compose_elements(g: ConfigAutomorphism, h: ConfigAutomorphism) -> Tuple[Perm, Perm]:
    return _compose(g.point_perm, h.point_perm), _compose(g.block_perm, h.block_perm)


def identity_element(n: int) -> ConfigAutomorphism:
    identity = tuple(range(1, n + 1))
    return ConfigAutomorphism(point_perm=identity, block_perm=identity)


def generate_group(generators: Sequence[ConfigAutomorphism], n: int) -> List[ConfigAutomorphism]:
    """All elements of the group generated by generators, sorted"""
    identity = identity_element(n)
    known = {_element_key(identity): identity}
    frontier = [identity]
    while frontier:
        next_frontier = []
        for element in frontier:
            for generator in generators:
                key = _compose_elements(generator, element)
                if key not in known:
                    product = ConfigAutomorphism(point_perm=key[0], block_perm=key[1])
                    known[key] = product
                    next_frontier.append(product)
        frontier = next_frontier
    return [known[key] for key in sorted(known)]


def find_generators(elements: Sequence[ConfigAutomorphism], n: int) -> List[ConfigAutomorphism]:
    """Greedy generating subset: keep each element not already generated"""
    generators: List[ConfigAutomorphism] = []
    generated = {_element_key(identity_element(n))}
    for element in elements:
        if _element_key(element) in generated:
            continue
        generators.append(element)
        generated = {_element_key(e) for e in generate_group(generators, n)}
        if len(generated) == len(elements):
            break
    return generators


def orbits(elements: Iterable[ConfigAutomorphism], n: int, on_blocks: bool = False) -> List[List[int]]:
    """Orbits of the marks (or blocks) under a set of group elements"""
    perms = [e.block_perm if on_blocks else e.point_perm for e in elements]
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in perms:
        for x, image in enumerate(perm, start=1):
            root_x, root_image = find(x), find(image)
            if root_x != root_image:
                parent[max(root_x, root_image)] = min(root_x, root_image)

    groups: Dict[int, List[int]] = {}
    for x in range(1, n + 1):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


def stabilizer(group: AutomorphismGroup, mark: int) -> List[ConfigAutomorphism]:
    return [e for e in group.elements if e.point_perm[mark - 1] == mark]


def orbit_of(group: AutomorphismGroup, mark: int) -> List[int]:
    return sorted({e.point_perm[mark - 1] for e in group.elements})


def assemble_group(n: int, elements: Iterable[ConfigAutomorphism]) -> AutomorphismGroup:
    ordered = sorted(elements, key=_element_key)
    return AutomorphismGroup(
        n=n,
        elements=ordered,
        generators=find_generators(ordered, n),
        order=len(ordered),
        point_orbits=orbits(ordered, n),
        block_orbits=orbits(ordered, n, on_blocks=True),
    )


def cyclic_subgroup(element: ConfigAutomorphism) -> AutomorphismGroup:
    n = len(element.point_perm)
    return assemble_group(n, generate_group([element], n))


def subgroup(generators: Sequence[ConfigAutomorphism]) -> AutomorphismGroup:
    n = len(generators[0].point_perm)
    return assemble_group(n, generate_group(generators, n))


def automorphisms(structure: IncidenceStructure) -> AutomorphismGroup:
    """
    Complete colour-preserving automorphism group
    Backtracking over point images with refinement pruning; block images are induced.
    """
    if structure.n > MAX_SEARCH_N:
        raise CapacityError(f"automorphism search is limited to n <= {MAX_SEARCH_N}, got {structure.n}")
    _require_configuration(structure, "Automorphism search")

    search = IncidenceSearch(structure, structure)
    elements = [
        ConfigAutomorphism(point_perm=point_map, block_perm=search.block_map(point_map))
        for point_map in search.maps()
    ]
    group = assemble_group(structure.n, elements)
    logger.info(f"Automorphism group of order {group.order} found for n={structure.n} ({search.nodes} search nodes)")
    return group


def brute_force_automorphisms(structure: IncidenceStructure) -> AutomorphismGroup:
    """Independent oracle: try all n! point permutations"""
    n = structure.n
    if n > MAX_BRUTE_FORCE_N:
        raise CapacityError(f"brute-force enumeration is limited to n <= {MAX_BRUTE_FORCE_N}, got {n}")

    block_index = {frozenset(block): j for j, block in enumerate(structure.blocks, start=1)}
    blocks = structure.blocks
    elements = []
    for perm in permutations(range(1, n + 1)):
        images = (0,) + perm
        block_images = []
        for x, y, z in blocks:
            j = block_index.get(frozenset((images[x], images[y], images[z])))
            if j is None:
                break
            block_images.append(j)
        else:
            elements.append(ConfigAutomorphism(point_perm=perm, block_perm=tuple(block_images)))

    logger.info(f"Brute force found {len(elements)} automorphisms among {n}! permutations")
    return assemble_group(n, elements)


def is_isomorphic(first: IncidenceStructure, second: IncidenceStructure) -> Optional[IsomorphismMap]:
    """Incidence-preserving bijections from first onto second, or None"""
    if first.n != second.n:
        return None
    if first.n > MAX_SEARCH_N:
        raise CapacityError(f"isomorphism search is limited to n <= {MAX_SEARCH_N}, got {first.n}")
    _require_configuration(first, "Isomorphism search")
    _require_configuration(second, "Isomorphism search")

    search = IncidenceSearch(first, second)
    point_map = search.first_map()
    if point_map is None:
        return None
    return IsomorphismMap(point_map=point_map, block_map=search.block_map(point_map))


def transitive_isomorphism(first: IncidenceStructure, second: IncidenceStructure) -> Optional[IsomorphismMap]:
    """
    is_isomorphic for a point-transitive second structure, such as any C(n,a,b)
    Mark 1 is sent to mark 1; a target automorphism moves any other solution there.
    """
    if first.n != second.n:
        return None
    if first.n > MAX_TRANSITIVE_SEARCH_N:
        raise CapacityError(f"transitive isomorphism search is limited to n <= {MAX_TRANSITIVE_SEARCH_N}, got {first.n}")
    _require_configuration(first, "Isomorphism search")
    _require_configuration(second, "Isomorphism search")

    search = IncidenceSearch(first, second)
    point_map = search.first_map(pinned=(1, 1))
    logger.debug(f"Pinned isomorphism search over n={first.n} visited {search.nodes} nodes")
    if point_map is None:
        return None
    return IsomorphismMap(point_map=point_map, block_map=search.block_map(point_map))


def induced_automorphism(structure: IncidenceStructure, point_perm: Sequence[int]) -> Optional[ConfigAutomorphism]:
    """The automorphism with this point permutation, or None if blocks are not preserved"""
    if sorted(point_perm) != list(range(1, structure.n + 1)):
        return None
    block_index = {frozenset(block): j for j, block in enumerate(structure.blocks, start=1)}
    images = (0,) + tuple(point_perm)
    block_perm = []
    for block in structure.blocks:
        j = block_index.get(frozenset(images[x] for x in block))
        if j is None:
            return None
        block_perm.append(j)
    return ConfigAutomorphism(point_perm=tuple(point_perm), block_perm=tuple(block_perm))


def group_report(group: AutomorphismGroup) -> GroupReport:
    orders = Counter(element.order() for element in group.elements)
    is_abelian = all(
        _compose_elements(g, h) == _compose_elements(h, g)
        for i, g in enumerate(group.elements)
        for h in group.elements[i + 1:]
    )
    return GroupReport(
        order=group.order,
        is_point_transitive=len(group.point_orbits) == 1,
        max_element_order=max(orders),
        is_abelian=is_abelian,
        element_order_histogram=dict(sorted(orders.items())),
        point_orbit_sizes=[len(orbit) for orbit in group.point_orbits],
    )


def verify_group_axioms(group: AutomorphismGroup) -> bool:
    """Identity present, closed under composition and inverses"""
    keys = {_element_key(e) for e in group.elements}
    if _element_key(identity_element(group.n)) not in keys:
        return False
    for g in group.elements:
        if _element_key(g.inverse()) not in keys:
            return False
        for h in group.elements:
            if _compose_elements(g, h) not in keys:
                return False
    return True


def dual_structure(structure: IncidenceStructure) -> IncidenceStructure:
    """Swap roles: block j becomes mark j, mark x becomes the block of its three blocks"""
    through = structure.blocks_through()
    blocks = []
    for mark in range(1, structure.n + 1):
        if len(through[mark]) != 3:
            raise DomainError(f"mark {mark} lies on {len(through[mark])} blocks; the dual needs degree 3")
        blocks.append(tuple(through[mark]))
    return IncidenceStructure(n=structure.n, blocks=blocks)


def find_dualities(structure: IncidenceStructure) -> List[Duality]:
    """Colour-swapping Levi automorphisms, kept apart from the automorphism group"""
    if structure.n > MAX_SEARCH_N:
        raise CapacityError(f"duality search is limited to n <= {MAX_SEARCH_N}, got {structure.n}")
    _require_configuration(structure, "Duality search")
    dual = dual_structure(structure)
    search = IncidenceSearch(structure, dual)
    dualities = [
        Duality(point_to_block=point_map, block_to_point=search.block_map(point_map))
        for point_map in search.maps()
    ]
    logger.info(f"Found {len(dualities)} dualities for n={structure.n}")
    return sorted(dualities, key=lambda d: d.point_to_block)
