"""Grouping of generalized cyclic tables into isomorphism classes"""
import logging
from typing import Dict, List, Optional, Tuple

import networkx as nx

from src.analysis.cyclic import multiplier_isomorphism
from src.analysis.groups import transitive_isomorphism
from src.analysis.incidence import build_gen_cyclic
from src.analysis.refinement import IncidenceIndex
from src.models.configuration import GenCyclicParams, IncidenceStructure, IsomorphismClass

logger = logging.getLogger(__name__)


class ConfigurationClassifier:
    """Detects and groups isomorphic C(n,a,b) tables"""

    @staticmethod
    def classify(params_list: List[GenCyclicParams]) -> List[IsomorphismClass]:
        """
        Group parameter sets into isomorphism classes
        Each pair is matched by a multiplier first and by Levi graph search
        against classes sharing its invariant otherwise.
        """
        representatives: List[GenCyclicParams] = []
        invariants: List[tuple] = []
        members: List[List[GenCyclicParams]] = []
        certificates: List[List[str]] = []

        for params in params_list:
            structure = build_gen_cyclic(params)
            invariant = ConfigurationClassifier.invariant(structure)

            index, certificate = ConfigurationClassifier._match(params, structure, invariant, representatives, invariants)
            if index is None:
                representatives.append(params)
                invariants.append(invariant)
                members.append([params])
                certificates.append(["identity"])
            else:
                members[index].append(params)
                certificates[index].append(certificate)

        return [
            IsomorphismClass(
                members=[(p.a, p.b) for p in group],
                representative=build_gen_cyclic(group[0]),
                certificates=certs,
            )
            for group, certs in zip(members, certificates)
        ]

    @staticmethod
    def _match(
        params: GenCyclicParams,
        structure: IncidenceStructure,
        invariant: tuple,
        representatives: List[GenCyclicParams],
        invariants: List[tuple],
    ) -> Tuple[Optional[int], Optional[str]]:
        for i, rep in enumerate(representatives):
            found = multiplier_isomorphism(rep, params)
            if found is not None:
                return i, f"multiplier z={found.z}"

        for i, rep in enumerate(representatives):
            if invariants[i] != invariant:
                continue
            if transitive_isomorphism(build_gen_cyclic(rep), structure) is not None:
                logger.debug(f"{params.label()} matched {rep.label()} by Levi graph search")
                return i, "levi"

        return None, None

    @staticmethod
    def invariant(structure: IncidenceStructure) -> tuple:
        """
        Isomorphism invariant of a point-transitive structure, read off at mark 1
        Distance profile and triangle count in the collinearity graph, then the triangles
        through mark 1 and the component sizes of the non-collinearity graph.
        """
        index = IncidenceIndex(structure)
        graph = ConfigurationClassifier.non_collinearity_graph(structure)
        components = tuple(sorted(len(c) for c in nx.connected_components(graph)))
        return index.distance_profile(1), index.triangle_count(1), nx.triangles(graph, 1), components

    @staticmethod
    def non_collinearity_graph(structure: IncidenceStructure) -> nx.Graph:
        """Marks joined when no block contains both"""
        collinear = {frozenset((x, y)) for block in structure.blocks for x in block for y in block if x != y}
        graph = nx.Graph()
        graph.add_nodes_from(range(1, structure.n + 1))
        graph.add_edges_from(
            (x, y)
            for x in range(1, structure.n + 1)
            for y in range(x + 1, structure.n + 1)
            if frozenset((x, y)) not in collinear
        )
        return graph

    @staticmethod
    def class_index(classes: List[IsomorphismClass]) -> Dict[tuple, int]:
        """Map each (a, b) member to the index of its class"""
        return {member: i for i, cls in enumerate(classes) for member in cls.members}
