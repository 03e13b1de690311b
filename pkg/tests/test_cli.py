import json
import xml.etree.ElementTree as ET

import pytest
from click.testing import CliRunner

from src.analysis.incidence import gen_cyclic
from src.cli.main import cli
from src.formats.realization_file import parse_realization
from src.formats.table import write_table
from src.realizers.base_realizer import verify_realization


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture(scope="module")
def realization_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("realize") / "twelve.json"
    result = CliRunner().invoke(cli, ["-q", "realize", "12", "--json", str(path)])
    assert result.exit_code == 0, result.output
    return path


def test_gen_prints_table(runner):
    result = runner.invoke(cli, ["-q", "gen", "9", "1", "3"])
    assert result.exit_code == 0
    assert result.stdout == write_table(gen_cyclic(9, 1, 3))


def test_gen_warns_below_seven(runner, tmp_path):
    out = tmp_path / "small.txt"
    result = runner.invoke(cli, ["gen", "5", "1", "2", "-o", str(out)])
    assert result.exit_code == 0
    assert out.read_text().startswith("5\n")


def test_gen_rejects_bad_offsets(runner):
    assert runner.invoke(cli, ["gen", "9", "5", "3"]).exit_code == 2


def test_validate_valid(runner):
    result = runner.invoke(cli, ["-q", "validate", "9", "1", "3"])
    assert result.exit_code == 0
    assert "C(9,1,3): valid" in result.output


def test_validate_names_triple_intersection(runner):
    result = runner.invoke(cli, ["-q", "validate", "9", "3", "6"])
    assert result.exit_code == 1
    assert "triple intersection" in result.output


def test_validate_json(runner):
    result = runner.invoke(cli, ["-q", "validate", "9", "1", "8", "--json"])
    assert result.exit_code == 1
    document = json.loads(result.stdout)
    assert document["valid"] is False
    assert document["predicate"]["reasons"] == ["B_EQ_N_MINUS_A"]
    assert document["oracle"]["max_intersection"] == 2


def test_validate_table_file(runner, tmp_path, pappus_table_text):
    table = tmp_path / "pappus.txt"
    table.write_text(pappus_table_text)
    assert runner.invoke(cli, ["-q", "validate", "-f", str(table)]).exit_code == 0
    assert runner.invoke(cli, ["-q", "validate", "-f", str(table), "--method", "predicate"]).exit_code == 2


def test_validate_known(runner):
    assert runner.invoke(cli, ["-q", "validate", "--known", "desargues"]).exit_code == 0


def test_validate_needs_one_source(runner, tmp_path, pappus_table_text):
    table = tmp_path / "pappus.txt"
    table.write_text(pappus_table_text)
    assert runner.invoke(cli, ["validate", "9", "1", "3", "-f", str(table)]).exit_code == 2
    assert runner.invoke(cli, ["validate"]).exit_code == 2


def test_validate_malformed_table(runner, tmp_path):
    table = tmp_path / "bad.txt"
    table.write_text("7\n1 2 3\n")
    result = runner.invoke(cli, ["validate", "-f", str(table)])
    assert result.exit_code == 2
    assert "error:" in result.output


def test_missing_file_and_unknown_flag(runner, tmp_path):
    assert runner.invoke(cli, ["validate", "-f", str(tmp_path / "none.txt")]).exit_code == 2
    assert runner.invoke(cli, ["validate", "9", "1", "3", "--bogus"]).exit_code == 2


def test_iso_multiplier(runner):
    result = runner.invoke(cli, ["-q", "iso", "9", "1", "3", "2", "6"])
    assert result.exit_code == 0
    assert "z=2" in result.output


def test_iso_json(runner):
    result = runner.invoke(cli, ["-q", "iso", "10", "1", "3", "3", "9", "--json"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["multiplier"]["z"] == 3


def test_iso_rejects_invalid_table(runner):
    assert runner.invoke(cli, ["iso", "9", "1", "3", "3", "6"]).exit_code == 2


def test_classify_json(runner):
    result = runner.invoke(cli, ["-q", "classify", "9", "--json"])
    assert result.exit_code == 0
    classes = json.loads(result.stdout)
    assert len(classes) == 1
    assert [1, 3] in classes[0]["members"]


def test_aut_known(runner):
    result = runner.invoke(cli, ["-q", "aut", "--known", "fano"])
    assert result.exit_code == 0
    assert "order: 168" in result.output
    assert "transitive on points: yes" in result.output


def test_aut_json_with_dualities(runner):
    result = runner.invoke(cli, ["-q", "aut", "9", "1", "3", "--dualities", "--json"])
    assert result.exit_code == 0
    document = json.loads(result.stdout)
    assert document["group"]["order"] % 9 == 0
    assert document["dualities"]


def test_aut_capacity_limit(runner):
    assert runner.invoke(cli, ["aut", "31", "1", "3"]).exit_code == 2


def test_locus_outputs(runner, tmp_path):
    svg, report = tmp_path / "locus.svg", tmp_path / "locus.json"
    result = runner.invoke(cli, ["-q", "locus", "30", "--svg", str(svg), "--json", str(report)])
    assert result.exit_code == 0
    assert "triple intersection: (10, 20)" in result.output
    ET.parse(svg)
    assert json.loads(report.read_text())["triple_intersection_point"] == [10, 20]


def test_realize_outputs(runner, tmp_path):
    svg, document = tmp_path / "twelve.svg", tmp_path / "twelve.json"
    result = runner.invoke(cli, ["-q", "realize", "12", "--svg", str(svg), "--json", str(document)])
    assert result.exit_code == 0
    ET.parse(svg)
    realization = parse_realization(document.read_text())
    check = verify_realization(realization.structure, realization)
    assert abs(check.max_residual - realization.max_residual) <= 1e-12


def test_realize_prints_document_without_json(runner):
    result = runner.invoke(cli, ["-q", "realize", "9"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["n"] == 9


def test_realize_rejects_eight(runner):
    result = runner.invoke(cli, ["realize", "8"])
    assert result.exit_code == 2
    assert "n >= 9" in result.output


def test_render(runner, tmp_path, realization_file):
    out = tmp_path / "render.svg"
    result = runner.invoke(cli, ["-q", "render", "-f", str(realization_file), "-o", str(out)])
    assert result.exit_code == 0
    root = ET.parse(out).getroot()
    assert root.tag.endswith("svg")


def test_sym_json(runner, realization_file):
    result = runner.invoke(cli, ["-q", "sym", "-f", str(realization_file), "--json"])
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["group_label"] == "C_1"


def test_polycyclic_structural_error(runner):
    assert runner.invoke(cli, ["polycyclic", "--known", "pappus", "-m", "2"]).exit_code == 2


def test_polycyclic_writes_realization(runner, tmp_path):
    out = tmp_path / "pappus.json"
    result = runner.invoke(cli, ["-q", "polycyclic", "--known", "pappus", "-m", "3", "--json", str(out)])
    assert result.exit_code == 0
    assert parse_realization(out.read_text()).structure.n == 9


@pytest.mark.parametrize("args,code", [(["10", "4", "3"], 0), (["10", "3", "4"], 1), (["9", "2", "3"], 2)])
def test_chiral_exit_codes(runner, args, code):
    assert runner.invoke(cli, ["-q", "chiral", *args]).exit_code == code


def test_log_file(runner, tmp_path):
    log = tmp_path / "run.log"
    result = runner.invoke(cli, ["--log-file", str(log), "aut", "--known", "pappus"])
    assert result.exit_code == 0
    assert "Automorphism group of order 108" in log.read_text()


def test_gen_validate_aut_pipeline_is_reproducible(tmp_path):
    def run_once(directory):
        directory.mkdir()
        table = directory / "table.txt"
        runner = CliRunner()
        outputs = [runner.invoke(cli, ["-q", "gen", "10", "1", "3", "-o", str(table)])]
        outputs.append(runner.invoke(cli, ["-q", "validate", "-f", str(table), "--json"]))
        outputs.append(runner.invoke(cli, ["-q", "aut", "-f", str(table), "--json"]))
        assert [r.exit_code for r in outputs] == [0, 0, 0]
        return table.read_bytes(), [r.stdout_bytes for r in outputs]

    assert run_once(tmp_path / "first") == run_once(tmp_path / "second")


def test_realize_multiplier_image(runner, tmp_path):
    document = tmp_path / "nine.json"
    result = runner.invoke(cli, ["-q", "realize", "9", "2", "6", "--json", str(document)])
    assert result.exit_code == 0
    assert "C(9,2,6) realized" in result.output
    realization = parse_realization(document.read_text())
    assert realization.structure == gen_cyclic(9, 2, 6)
    assert '"maxResidual"' in document.read_text()


def test_realize_rejects_two_values(runner):
    assert runner.invoke(cli, ["realize", "9", "2"]).exit_code == 2


def test_locus_prints_triangle_for_even_n(runner):
    result = runner.invoke(cli, ["-q", "locus", "8"])
    assert result.exit_code == 0
    assert "centroid (8/3, 16/3)" in result.output
