"""Three-row table files: header n, then one row per block position"""
import logging
from typing import List

from pydantic import ValidationError

from src.models.configuration import IncidenceStructure
from src.models.errors import TableFormatError
from src.utils.validator import ConfigurationValidator

logger = logging.getLogger(__name__)


def _content_lines(text: str) -> List[tuple]:
    """(line number, stripped text) for every non-blank, non-comment line"""
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lines.append((number, line))
    return lines


def parse_table(text: str) -> IncidenceStructure:
    """
    Parse a table file into an incidence structure
    Column j of the three rows is block j. Rejects structures that break the (n_3) degree condition.
    """
    lines = _content_lines(text)
    if not lines:
        raise TableFormatError("empty table file")

    header_line, header = lines[0]
    try:
        n = int(header)
    except ValueError:
        raise TableFormatError(f"header must be a single integer n, got {header!r}", line=header_line, column=1)
    if n < 1:
        raise TableFormatError(f"n must be positive, got {n}", line=header_line, column=1)

    rows = lines[1:]
    if len(rows) != 3:
        location = rows[3][0] if len(rows) > 3 else None
        raise TableFormatError(f"expected exactly 3 rows after the header, found {len(rows)}", line=location)

    matrix = []
    for line_number, row in rows:
        fields = row.split()
        if len(fields) != n:
            raise TableFormatError(
                f"expected {n} entries, found {len(fields)}",
                line=line_number,
                column=min(len(fields), n) + 1,
            )
        values = []
        for column, field in enumerate(fields, start=1):
            try:
                mark = int(field)
            except ValueError:
                raise TableFormatError(f"entry {field!r} is not an integer", line=line_number, column=column)
            if not 1 <= mark <= n:
                raise TableFormatError(f"mark {mark} is outside 1..{n}", line=line_number, column=column)
            values.append(mark)
        matrix.append(values)

    blocks = [tuple(matrix[row][j] for row in range(3)) for j in range(n)]
    for j, block in enumerate(blocks, start=1):
        if len(set(block)) != 3:
            raise TableFormatError(f"block {j} repeats a mark: {list(block)}", line=rows[0][0], column=j)

    try:
        structure = IncidenceStructure(n=n, blocks=blocks)
    except ValidationError as e:
        raise TableFormatError(str(e))

    defects = ConfigurationValidator.degree_defects(structure)
    if defects:
        mark, degree = defects[0]
        raise TableFormatError(f"mark {mark} appears in {degree} blocks instead of 3")

    logger.debug(f"Parsed table with n={n}")
    return structure


def write_table(structure: IncidenceStructure) -> str:
    """Header line n, then three single-space-separated rows, newline-terminated"""
    rows = [" ".join(str(block[row]) for block in structure.blocks) for row in range(3)]
    return "\n".join([str(structure.n)] + rows) + "\n"
