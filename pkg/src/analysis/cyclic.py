"""Closed-form analysis of generalized cyclic tables C(n,a,b)"""
import logging
from fractions import Fraction
from math import gcd
from typing import List, Optional, Tuple

from src.analysis.groups import MAX_TRANSITIVE_SEARCH_N
from src.analysis.incidence import MIN_COMBINATORIAL_N, build_gen_cyclic, reduce_mark
from src.models.configuration import (
    ChiralAstralCandidacy,
    GenCyclicParams,
    IncidenceStructure,
    InvalidityReason,
    IsomorphismClass,
    LocusEntry,
    LocusReport,
    MultiplierIsomorphism,
)
from src.models.errors import CapacityError, DomainError
from src.utils.validator import ConfigurationValidator

logger = logging.getLogger(__name__)


def predicate_valid(params: GenCyclicParams) -> Tuple[bool, List[InvalidityReason]]:
    """
    Closed-form validity test
    b must avoid {n-a, (n+a)/2, n/2+a, n/2, 2a} and a must not be n/2;
    half-integer members of the forbidden set are skipped.
    """
    n, a, b = params.n, params.a, params.b
    reasons = []

    if b == n - a:
        reasons.append(InvalidityReason.B_EQ_N_MINUS_A)
    if (n + a) % 2 == 0 and b == (n + a) // 2:
        reasons.append(InvalidityReason.B_EQ_HALF_N_PLUS_A_OVER_2)
    if n % 2 == 0 and b == n // 2 + a:
        reasons.append(InvalidityReason.B_EQ_HALF_N_PLUS_A)
    if n % 2 == 0 and b == n // 2:
        reasons.append(InvalidityReason.B_EQ_HALF_N)
    if b == 2 * a:
        reasons.append(InvalidityReason.B_EQ_2A)
    if n % 2 == 0 and a == n // 2:
        reasons.append(InvalidityReason.A_EQ_HALF_N)

    return not reasons, reasons


def admissible_pairs(n: int) -> List[Tuple[int, int]]:
    return [(a, b) for a in range(1, n) for b in range(a + 1, n)]


def locus_triangle(n: int) -> List[Tuple[Fraction, Fraction]]:
    """Vertices of the triangle bounded by n = 2b - 2a, n = 2a and n = 2b"""
    half = Fraction(n, 2)
    return [(Fraction(0), half), (half, half), (half, Fraction(n))]


def triangle_centroid(n: int) -> Tuple[Fraction, Fraction]:
    vertices = locus_triangle(n)
    return (
        sum((v[0] for v in vertices), Fraction(0)) / 3,
        sum((v[1] for v in vertices), Fraction(0)) / 3,
    )


def invalid_locus(n: int) -> LocusReport:
    """Every (a, b) with 1 <= a < b < n for which C(n,a,b) fails the oracle"""
    if n < MIN_COMBINATORIAL_N:
        raise DomainError(f"locus needs n >= {MIN_COMBINATORIAL_N}, got {n}")

    entries = []
    for a, b in admissible_pairs(n):
        params = GenCyclicParams(n=n, a=a, b=b)
        report = ConfigurationValidator.check_incidence_structure(build_gen_cyclic(params))
        if report.valid:
            continue
        _, reasons = predicate_valid(params)
        if not reasons:
            raise AssertionError(f"{params.label()} fails the oracle but satisfies the closed-form predicate")
        entries.append(LocusEntry(a=a, b=b, reasons=reasons, oracle_max_intersection=report.max_intersection))

    triple_point = (n // 3, 2 * n // 3) if n % 3 == 0 else None

    triangle = None
    centroid = None
    if n % 2 == 0:
        triangle = [(int(x), int(y)) for x, y in locus_triangle(n)]
        cx, cy = triangle_centroid(n)
        if cx.denominator == 1 and cy.denominator == 1:
            centroid = (int(cx), int(cy))

    logger.info(f"Locus for n={n}: {len(entries)} invalid pairs, triple intersection {triple_point}")
    return LocusReport(
        n=n,
        entries=entries,
        triple_intersection_point=triple_point,
        triangle_vertices=triangle,
        centroid_point=centroid,
    )


def canonical_base_block(n: int, c: int, d: int) -> Tuple[int, int]:
    """
    Canonical form of the base block {0, c, d} mod n up to cyclic shift
    The lexicographically smallest of its three translation-normalized pairs.
    """
    c, d = sorted((c % n, d % n))
    return min((c, d), (d - c, n - c), (n - d, n - d + c))


def multiplier_isomorphism(first: GenCyclicParams, second: GenCyclicParams) -> Optional[MultiplierIsomorphism]:
    """Smallest z coprime to n with z*{0,a1,b1} a shift of {0,a2,b2}"""
    if first.n != second.n:
        raise DomainError(f"multiplier isomorphism needs equal n, got {first.n} and {second.n}")
    for params in (first, second):
        valid, reasons = predicate_valid(params)
        if not valid:
            raise DomainError(f"{params.label()} is not a configuration ({', '.join(r.value for r in reasons)})")

    n = first.n
    target = canonical_base_block(n, second.a, second.b)
    for z in range(1, n):
        if gcd(z, n) != 1:
            continue
        if canonical_base_block(n, z * first.a, z * first.b) != target:
            continue

        mark_map = tuple(reduce_mark(z * m, n) for m in range(1, n + 1))
        if not _maps_blocks_onto(build_gen_cyclic(first), build_gen_cyclic(second), mark_map):
            raise AssertionError(f"multiplier {z} does not carry {first.label()} onto {second.label()}")
        return MultiplierIsomorphism(n=n, z=z, mark_map=mark_map)

    return None


def _maps_blocks_onto(source: IncidenceStructure, target: IncidenceStructure, mark_map: Tuple[int, ...]) -> bool:
    mapped = sorted(tuple(sorted(mark_map[m - 1] for m in block)) for block in source.blocks)
    expected = sorted(tuple(sorted(block)) for block in target.blocks)
    return mapped == expected


def classify_all(n: int) -> List[IsomorphismClass]:
    """Partition all predicate-valid (a, b) pairs for n into isomorphism classes"""
    from src.utils.classifier import ConfigurationClassifier

    if n < MIN_COMBINATORIAL_N:
        raise DomainError(f"classification needs n >= {MIN_COMBINATORIAL_N}, got {n}")
    if n > MAX_TRANSITIVE_SEARCH_N:
        raise CapacityError(f"classification is limited to n <= {MAX_TRANSITIVE_SEARCH_N}, got {n}")

    valid_params = [
        GenCyclicParams(n=n, a=a, b=b)
        for a, b in admissible_pairs(n)
        if predicate_valid(GenCyclicParams(n=n, a=a, b=b))[0]
    ]
    classes = ConfigurationClassifier.classify(valid_params)
    logger.info(f"n={n}: {len(valid_params)} valid pairs in {len(classes)} isomorphism classes")
    return classes


def chiral_astral_candidate(n: int, a: int, b: int) -> ChiralAstralCandidacy:
    """
    Literal check of: n = 2m, a even, a < m, b odd, and 0 < b < a or m < b < a + m
    Advisory only; the oracle result on the normalized block {0, a, b} is attached.
    """
    if n % 2:
        raise DomainError(f"chiral astral candidacy needs even n, got {n}")
    m = n // 2
    candidate = a % 2 == 0 and a < m and b % 2 == 1 and (0 < b < a or m < b < a + m)

    low, high = sorted((a % n, b % n))
    oracle_valid = False
    if 0 < low < high:
        structure = build_gen_cyclic(GenCyclicParams(n=n, a=low, b=high))
        oracle_valid = ConfigurationValidator.check_incidence_structure(structure).valid

    warning = None
    if candidate and not oracle_valid:
        warning = f"conditions hold but C({n},{low},{high}) is not a combinatorial configuration"
        logger.warning(f"Chiral astral candidate ({n},{a},{b}): {warning}")

    return ChiralAstralCandidacy(n=n, a=a, b=b, candidate=candidate, oracle_valid=oracle_valid, warning=warning)
