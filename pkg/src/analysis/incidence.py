"""Generalized cyclic table construction"""
import logging

from src.models.configuration import GenCyclicParams, IncidenceStructure

logger = logging.getLogger(__name__)

# Combinatorial (n_3) configurations exist exactly for n >= 7
MIN_COMBINATORIAL_N = 7


def reduce_mark(value: int, n: int) -> int:
    """Reduce an integer to its representative in 1..n"""
    return ((value - 1) % n) + 1


def build_gen_cyclic(params: GenCyclicParams) -> IncidenceStructure:
    """
    Build C(n,a,b): block j is {j, j+a, j+b} reduced mod n, for j = 1..n
    """
    n, a, b = params.n, params.a, params.b
    if n < MIN_COMBINATORIAL_N:
        logger.debug(f"{params.label()} is below n = {MIN_COMBINATORIAL_N}; no (n_3) configuration exists")
    blocks = [(j, reduce_mark(j + a, n), reduce_mark(j + b, n)) for j in range(1, n + 1)]
    return IncidenceStructure(n=n, blocks=blocks)


def gen_cyclic(n: int, a: int, b: int) -> IncidenceStructure:
    """Shorthand for build_gen_cyclic(GenCyclicParams(n=n, a=a, b=b))"""
    return build_gen_cyclic(GenCyclicParams(n=n, a=a, b=b))
