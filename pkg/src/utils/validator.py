"""Combinatorial validity checking for incidence structures"""
from itertools import combinations
from typing import List, Optional, Tuple

from src.models.configuration import IncidenceStructure, IntersectionWitness, ValidityReport


class ConfigurationValidator:
    """Validates and quality-checks incidence structures"""

    @staticmethod
    def check_incidence_structure(structure: IncidenceStructure) -> ValidityReport:
        """
        Brute-force oracle: compare every unordered pair of blocks
        Returns a report listing every pair sharing two or more marks
        """
        block_sets = structure.block_sets()
        witnesses = []
        max_intersection = 0

        for (i, first), (j, second) in combinations(enumerate(block_sets, start=1), 2):
            shared = first & second
            max_intersection = max(max_intersection, len(shared))
            if len(shared) >= 2:
                witnesses.append(IntersectionWitness(block_a=i, block_b=j, shared_marks=sorted(shared)))

        return ValidityReport(valid=not witnesses, witnesses=witnesses, max_intersection=max_intersection)

    @staticmethod
    def mark_degree_profile(structure: IncidenceStructure) -> List[Tuple[int, int]]:
        """Number of blocks containing each mark, as (mark, degree) pairs"""
        degrees = {mark: 0 for mark in range(1, structure.n + 1)}
        for block in structure.blocks:
            for mark in block:
                degrees[mark] += 1
        return sorted(degrees.items())

    @staticmethod
    def degree_defects(structure: IncidenceStructure) -> List[Tuple[int, int]]:
        """Marks whose degree is not 3"""
        return [(mark, degree) for mark, degree in ConfigurationValidator.mark_degree_profile(structure) if degree != 3]

    @staticmethod
    def validate_structure(structure: IncidenceStructure) -> Tuple[bool, Optional[str]]:
        """
        Validate that a structure is an (n_3) configuration
        Returns (is_valid, error_message)
        """
        defects = ConfigurationValidator.degree_defects(structure)
        if defects:
            mark, degree = defects[0]
            return False, f"Mark {mark} lies on {degree} blocks instead of 3"

        report = ConfigurationValidator.check_incidence_structure(structure)
        if not report.valid:
            witness = report.witnesses[0]
            return False, (
                f"Blocks {witness.block_a} and {witness.block_b} share marks {witness.shared_marks}"
            )

        return True, None
