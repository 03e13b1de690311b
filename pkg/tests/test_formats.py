import json
import xml.etree.ElementTree as ET

import pytest

from src.analysis.cyclic import invalid_locus
from src.analysis.incidence import gen_cyclic
from src.formats.realization_file import parse_realization, write_realization
from src.formats.svg import clip_to_parameter_triangle, write_locus_svg, write_svg
from src.formats.table import parse_table, write_table
from src.models.catalog import known_names, load_known
from src.models.errors import TableFormatError
from src.models.realization import SvgStyle
from src.realizers.base_realizer import verify_realization
from src.realizers.gruenbaum import realize_gruenbaum

SVG = "{http://www.w3.org/2000/svg}"


@pytest.fixture(scope="module")
def realization():
    return realize_gruenbaum(12)


def with_class(root, tag, name):
    return [e for e in root.iter(SVG + tag) if e.get("class") == name]


def test_parse_pappus_table(pappus_table_text, pappus):
    structure = parse_table(pappus_table_text)
    assert structure.n == 9
    assert structure.blocks[0] == (1, 4, 7)
    assert structure == pappus


@pytest.mark.parametrize("name", known_names())
def test_table_round_trip(name):
    structure = load_known(name)
    text = write_table(structure)
    assert parse_table(text) == structure
    assert write_table(parse_table(text)) == text


def test_write_table_layout():
    text = write_table(gen_cyclic(7, 1, 3))
    assert text == "7\n1 2 3 4 5 6 7\n2 3 4 5 6 7 1\n4 5 6 7 1 2 3\n"


def test_parse_ignores_comments_and_trailing_space():
    text = "# header\n\n7  \n1 2 3 4 5 6 7\n# middle\n2 3 4 5 6 7 1   \n4 5 6 7 1 2 3\n"
    assert parse_table(text) == gen_cyclic(7, 1, 3)


def test_fig_table_matches_cyclic_up_to_block_order():
    text = "10\n10 1 2 3 4 5 6 7 8 9\n1 2 3 4 5 6 7 8 9 10\n3 4 5 6 7 8 9 10 1 2\n"
    parsed = parse_table(text)
    assert set(parsed.block_sets()) == set(gen_cyclic(10, 1, 3).block_sets())


def test_parse_rejects_bad_header():
    with pytest.raises(TableFormatError) as error:
        parse_table("nine\n1 2 3\n")
    assert error.value.line == 1
    assert error.value.column == 1


def test_parse_rejects_wrong_row_count():
    with pytest.raises(TableFormatError, match="expected exactly 3 rows"):
        parse_table("7\n1 2 3 4 5 6 7\n2 3 4 5 6 7 1\n")


def test_parse_rejects_ragged_row():
    with pytest.raises(TableFormatError) as error:
        parse_table("7\n1 2 3 4 5 6 7\n2 3 4\n4 5 6 7 1 2 3\n")
    assert (error.value.line, error.value.column) == (3, 4)


def test_parse_rejects_out_of_range_mark():
    with pytest.raises(TableFormatError) as error:
        parse_table("7\n1 2 3 4 5 6 7\n2 3 4 5 6 7 8\n4 5 6 7 1 2 3\n")
    assert (error.value.line, error.value.column) == (3, 7)
    assert "mark 8 is outside 1..7" in str(error.value)


def test_parse_rejects_non_integer():
    with pytest.raises(TableFormatError) as error:
        parse_table("7\n1 2 3 4 5 6 7\n2 3 x 5 6 7 1\n4 5 6 7 1 2 3\n")
    assert (error.value.line, error.value.column) == (3, 3)


def test_parse_rejects_repeated_mark_in_block():
    with pytest.raises(TableFormatError, match="block 1 repeats a mark"):
        parse_table("7\n1 2 3 4 5 6 7\n1 3 4 5 6 7 1\n4 5 6 7 1 2 3\n")


def test_parse_names_mark_with_wrong_degree():
    with pytest.raises(TableFormatError, match="mark 1 appears in 4 blocks instead of 3"):
        parse_table("4\n1 1 1 1\n2 2 3 2\n3 4 4 3\n")


def test_realization_round_trip(realization):
    text = write_realization(realization)
    parsed = parse_realization(text)
    assert parsed.points == realization.points
    assert parsed.structure == realization.structure
    assert parsed.max_residual == realization.max_residual
    check = verify_realization(parsed.structure, parsed)
    assert abs(check.max_residual - realization.max_residual) <= 1e-12


def test_realization_document_keys(realization):
    document = json.loads(write_realization(realization))
    assert set(document) == {"n", "blocks", "points", "tolerance", "maxResidual"}
    assert document["n"] == 12
    assert len(document["points"]) == 12


def test_parse_realization_rejects_bad_json():
    with pytest.raises(TableFormatError) as error:
        parse_realization('{"n": 3,\n  "blocks": ]')
    assert error.value.line == 2


def test_parse_realization_rejects_missing_points(realization):
    document = json.loads(write_realization(realization))
    document["points"] = document["points"][:-1]
    with pytest.raises(TableFormatError, match="expected 12 points"):
        parse_realization(json.dumps(document))


def test_svg_counts(realization):
    root = ET.fromstring(write_svg(realization))
    assert len(with_class(root, "circle", "mark")) == 12
    assert len(with_class(root, "line", "block")) == 12


def test_svg_is_deterministic(realization):
    assert write_svg(realization) == write_svg(realization)


def test_svg_without_labels(realization):
    root = ET.fromstring(write_svg(realization, SvgStyle(labels=False)))
    assert list(root.iter(SVG + "text")) == []


def test_locus_svg_highlights_triple_point():
    root = ET.fromstring(write_locus_svg(invalid_locus(30)))
    (highlight,) = with_class(root, "circle", "triple-intersection")
    pairs = with_class(root, "circle", "invalid-pair")
    assert len(pairs) == len(invalid_locus(30).entries)
    assert any(p.get("cx") == highlight.get("cx") and p.get("cy") == highlight.get("cy") for p in pairs)
    assert len(with_class(root, "polygon", "locus-triangle")) == 1


def test_locus_svg_without_triple_point():
    root = ET.fromstring(write_locus_svg(invalid_locus(43)))
    assert with_class(root, "circle", "triple-intersection") == []
    assert with_class(root, "polygon", "locus-triangle") == []
    assert len(with_class(root, "line", "locus-line")) == 6


def test_clip_to_parameter_triangle():
    # n = 2a, the vertical line a = n/2
    start, end = clip_to_parameter_triangle((5.0, 0.0), (0.0, 1.0), 10.0)
    assert start == pytest.approx((5.0, 5.0))
    assert end == pytest.approx((5.0, 10.0))
    assert clip_to_parameter_triangle((20.0, 0.0), (0.0, 1.0), 10.0) is None
