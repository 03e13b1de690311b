"""Command-line interface for building, checking and drawing (n_3) configurations"""
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Tuple

import click
from pydantic import ValidationError

from src.analysis.cyclic import (
    chiral_astral_candidate,
    classify_all,
    invalid_locus,
    multiplier_isomorphism,
    predicate_valid,
    triangle_centroid,
)
from src.analysis.groups import (
    automorphisms,
    brute_force_automorphisms,
    find_dualities,
    group_report,
    is_isomorphic,
)
from src.analysis.incidence import MIN_COMBINATORIAL_N, build_gen_cyclic
from src.formats.realization_file import parse_realization, write_realization
from src.formats.svg import write_locus_svg, write_svg
from src.formats.table import parse_table, write_table
from src.models.catalog import known_names, load_known
from src.models.configuration import GenCyclicParams, IncidenceStructure
from src.models.errors import ConfigurationError, ConstructionError
from src.models.realization import GruenbaumOptions, PolycyclicOptions, SymmetryOptions
from src.realizers.base_realizer import verify_realization
from src.realizers.gruenbaum import realize_gen_cyclic, realize_gruenbaum
from src.realizers.polycyclic import realize_polycyclic
from src.realizers.symmetry import detect_symmetries
from src.utils.validator import ConfigurationValidator

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


def configure_logging(verbose: bool, quiet: bool, log_file: Optional[str]):
    """Log to stderr (stdout carries command output), optionally also to a file"""
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


class ConfigurationsGroup(click.Group):
    """Maps library errors onto exit codes: construction failures 1, everything else 2"""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except ConstructionError as e:
            logger.error(f"Construction failed: {str(e)}")
            click.echo(f"error: {e}", err=True)
            if e.diagnostics:
                click.echo(f"diagnostics: {json.dumps(e.diagnostics, default=str)}", err=True)
            ctx.exit(EXIT_NEGATIVE)
        except (ConfigurationError, ValidationError) as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(EXIT_USAGE)


def _params(values: Tuple[int, ...]) -> GenCyclicParams:
    if len(values) != 3:
        raise click.UsageError(f"expected n a b, got {len(values)} integers")
    return GenCyclicParams(n=values[0], a=values[1], b=values[2])


def _load_structure(values: Tuple[int, ...], table_file: Optional[str], known: Optional[str]) -> IncidenceStructure:
    """Structure from exactly one of: positional n a b, a table file, a catalog name"""
    sources = sum([bool(values), table_file is not None, known is not None])
    if sources != 1:
        raise click.UsageError("give exactly one of: n a b, -f FILE, --known NAME")
    if table_file is not None:
        return parse_table(Path(table_file).read_text())
    if known is not None:
        return load_known(known)
    return build_gen_cyclic(_params(values))


def _emit(text: str, output: Optional[str]):
    if output:
        Path(output).write_text(text)
        logger.info(f"Wrote {output}")
    else:
        click.echo(text, nl=False)


table_option = click.option("-f", "--file", "table_file", type=click.Path(exists=True, dir_okay=False), help="Table file")
known_option = click.option("--known", type=click.Choice(known_names()), help="Named configuration from the catalog")


@click.group(cls=ConfigurationsGroup)
@click.option("-v", "--verbose", is_flag=True, help="Debug logging")
@click.option("-q", "--quiet", is_flag=True, help="Warnings and errors only")
@click.option("--log-file", type=click.Path(dir_okay=False), help="Also write the log to this file")
def cli(verbose, quiet, log_file):
    """Build, validate, classify and realize (n_3) configurations."""
    configure_logging(verbose, quiet, log_file)


@cli.command()
@click.argument("n", type=int)
@click.argument("a", type=int)
@click.argument("b", type=int)
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Write the table here instead of stdout")
def gen(n, a, b, output):
    """Write the table C(n,a,b)."""
    params = GenCyclicParams(n=n, a=a, b=b)
    if n < MIN_COMBINATORIAL_N:
        logger.warning(f"combinatorial (n_3) configurations exist only for n >= {MIN_COMBINATORIAL_N}")
    _emit(write_table(build_gen_cyclic(params)), output)


@cli.command()
@click.argument("values", nargs=-1, type=int)
@table_option
@known_option
@click.option("--method", type=click.Choice(["predicate", "oracle", "both"]), default="both", show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output")
def validate(values, table_file, known, method, as_json):
    """Check whether a table is a combinatorial configuration."""
    structure = _load_structure(values, table_file, known)
    params = _params(values) if values else None
    if params is None and method == "predicate":
        raise click.UsageError("--method predicate needs n a b")

    predicate = None
    if params is not None and method in ("predicate", "both"):
        predicate = predicate_valid(params)

    report = None
    if method in ("oracle", "both"):
        report = ConfigurationValidator.check_incidence_structure(structure)

    if predicate is not None and report is not None and predicate[0] != report.valid:
        click.echo(
            f"error: closed-form predicate says {'valid' if predicate[0] else 'invalid'} "
            f"but the oracle says {'valid' if report.valid else 'invalid'}",
            err=True,
        )
        sys.exit(EXIT_USAGE)

    valid = report.valid if report is not None else predicate[0]

    if as_json:
        document = {
            "valid": valid,
            "predicate": None if predicate is None else {"valid": predicate[0], "reasons": [r.value for r in predicate[1]]},
            "oracle": None if report is None else report.model_dump(),
        }
        click.echo(json.dumps(document, indent=2))
    else:
        label = params.label() if params else f"table with n={structure.n}"
        click.echo(f"{label}: {'valid' if valid else 'invalid'}")
        if predicate is not None:
            for reason in predicate[1]:
                click.echo(f"  predicate: {reason.value} ({reason.line_equation})")
        if report is not None:
            click.echo(f"  oracle: max intersection {report.max_intersection}")
            for witness in report.witnesses:
                kind = " (triple intersection)" if len(witness.shared_marks) == 3 else ""
                click.echo(f"  blocks {witness.block_a} and {witness.block_b} share marks {witness.shared_marks}{kind}")

    sys.exit(EXIT_OK if valid else EXIT_NEGATIVE)


@cli.command()
@click.argument("n", type=int)
@click.option("--svg", "svg_path", type=click.Path(dir_okay=False), help="Write the locus drawing here")
@click.option("--json", "json_path", type=click.Path(dir_okay=False), help="Write the locus report here")
def locus(n, svg_path, json_path):
    """List every invalid (a, b) for n with the lines it lies on."""
    report = invalid_locus(n)
    for entry in report.entries:
        equations = ", ".join(reason.line_equation for reason in entry.reasons)
        click.echo(f"({entry.a},{entry.b}) max intersection {entry.oracle_max_intersection}: {equations}")
    if report.triple_intersection_point:
        click.echo(f"triple intersection: {report.triple_intersection_point}")
    if report.triangle_vertices:
        cx, cy = triangle_centroid(n)
        click.echo(f"triangle {report.triangle_vertices} centroid ({cx}, {cy})")
    if svg_path:
        Path(svg_path).write_text(write_locus_svg(report))
    if json_path:
        Path(json_path).write_text(report.model_dump_json(indent=2) + "\n")


@cli.command()
@click.argument("n", type=int)
@click.argument("a1", type=int)
@click.argument("b1", type=int)
@click.argument("a2", type=int)
@click.argument("b2", type=int)
@click.option("--deep", is_flag=True, help="Fall back to Levi graph search when no multiplier exists")
@click.option("--json", "as_json", is_flag=True)
def iso(n, a1, b1, a2, b2, deep, as_json):
    """Decide whether C(n,a1,b1) and C(n,a2,b2) are isomorphic."""
    first = GenCyclicParams(n=n, a=a1, b=b1)
    second = GenCyclicParams(n=n, a=a2, b=b2)
    multiplier = multiplier_isomorphism(first, second)

    levi = None
    if multiplier is None and deep:
        levi = is_isomorphic(build_gen_cyclic(first), build_gen_cyclic(second))

    isomorphic = multiplier is not None or levi is not None
    if as_json:
        click.echo(json.dumps({
            "isomorphic": isomorphic,
            "multiplier": None if multiplier is None else multiplier.model_dump(),
            "levi": None if levi is None else levi.model_dump(),
        }, indent=2))
    elif multiplier is not None:
        click.echo(f"{first.label()} ~ {second.label()}: z={multiplier.z}")
    elif levi is not None:
        click.echo(f"{first.label()} ~ {second.label()}: Levi map {list(levi.point_map)}")
    else:
        suffix = "" if deep else " (no multiplier; try --deep)"
        click.echo(f"{first.label()} and {second.label()} are not isomorphic{suffix}")

    sys.exit(EXIT_OK if isomorphic else EXIT_NEGATIVE)


@cli.command()
@click.argument("n", type=int)
@click.option("--json", "as_json", is_flag=True)
def classify(n, as_json):
    """Partition all valid C(n,a,b) into isomorphism classes."""
    classes = classify_all(n)
    if as_json:
        click.echo(json.dumps([cls.model_dump() for cls in classes], indent=2))
        return
    for index, cls in enumerate(classes, start=1):
        members = " ".join(f"({a},{b})" for a, b in cls.members)
        click.echo(f"class {index}: {members}")


@cli.command()
@click.argument("values", nargs=-1, type=int)
@table_option
@known_option
@click.option("--brute", is_flag=True, help="Enumerate all n! point permutations instead")
@click.option("--dualities", is_flag=True, help="Also list the colour-swapping Levi automorphisms")
@click.option("--json", "as_json", is_flag=True)
def aut(values, table_file, known, brute, dualities, as_json):
    """Print the automorphism group of a configuration."""
    structure = _load_structure(values, table_file, known)
    group = brute_force_automorphisms(structure) if brute else automorphisms(structure)
    report = group_report(group)
    found_dualities = find_dualities(structure) if dualities else None

    if as_json:
        document = {"group": group.model_dump(mode="json"), "report": report.model_dump(mode="json")}
        if found_dualities is not None:
            document["dualities"] = [d.model_dump(mode="json") for d in found_dualities]
        click.echo(json.dumps(document, indent=2))
        return

    click.echo(f"order: {group.order}")
    click.echo(f"point orbits: {group.point_orbits}")
    click.echo(f"block orbits: {group.block_orbits}")
    click.echo(f"transitive on points: {'yes' if report.is_point_transitive else 'no'}")
    click.echo(f"abelian: {'yes' if report.is_abelian else 'no'}")
    click.echo(f"element orders: {report.element_order_histogram}")
    click.echo("generators:")
    for generator in group.generators:
        click.echo(f"  {generator.cycle_notation()}")
    if found_dualities is not None:
        click.echo(f"dualities: {len(found_dualities)}")


@cli.command()
@click.argument("values", nargs=-1, type=int, required=True)
@click.option("--svg", "svg_path", type=click.Path(dir_okay=False))
@click.option("--json", "json_path", type=click.Path(dir_okay=False), help="Write the realization here")
@click.option("--tol", type=float, default=GruenbaumOptions().tolerance, show_default=True)
@click.option("--slope", type=float, default=GruenbaumOptions().slope_epsilon, show_default=True)
@click.option("--spacing", type=float, default=GruenbaumOptions().spacing, show_default=True)
def realize(values, svg_path, json_path, tol, slope, spacing):
    """Construct a straight-line realization of C(n,1,3), or of C(n,a,b) isomorphic to it."""
    options = GruenbaumOptions(tolerance=tol, slope_epsilon=slope, spacing=spacing)
    if len(values) == 1:
        realization = realize_gruenbaum(values[0], options)
        label = f"C({values[0]},1,3)"
    elif len(values) == 3:
        params = _params(values)
        realization = realize_gen_cyclic(params, options)
        label = params.label()
    else:
        raise click.UsageError("expected n, or n a b")
    document = write_realization(realization)
    if svg_path:
        Path(svg_path).write_text(write_svg(realization))
    if json_path:
        Path(json_path).write_text(document)
        click.echo(f"{label} realized: max residual {realization.max_residual:.3e}")
    else:
        click.echo(document, nl=False)


@cli.command()
@table_option
@known_option
@click.option("-m", "order", type=int, required=True, help="Rotation order")
@click.option("--restarts", type=int, default=PolycyclicOptions().restarts, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--tol", type=float, default=PolycyclicOptions().tolerance, show_default=True)
@click.option("--svg", "svg_path", type=click.Path(dir_okay=False))
@click.option("--json", "json_path", type=click.Path(dir_okay=False), help="Write the realization here")
def polycyclic(table_file, known, order, restarts, seed, tol, svg_path, json_path):
    """Search for a realization with m-fold rotational symmetry."""
    structure = _load_structure((), table_file, known)
    options = PolycyclicOptions(restarts=restarts, seed=seed, tolerance=tol)
    realization = realize_polycyclic(structure, order, options)
    if realization is None:
        click.echo(f"no {order}-fold realization reached tolerance {tol:g} in {restarts} restarts")
        sys.exit(EXIT_NEGATIVE)

    document = write_realization(realization)
    if svg_path:
        Path(svg_path).write_text(write_svg(realization))
    if json_path:
        Path(json_path).write_text(document)
        click.echo(f"{order}-fold realization: max residual {realization.max_residual:.3e}")
    else:
        click.echo(document, nl=False)


@cli.command()
@click.option("-f", "--file", "realization_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--tol", type=float, default=SymmetryOptions().tolerance, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def sym(realization_file, tol, as_json):
    """Detect the isometries of a realization."""
    realization = parse_realization(Path(realization_file).read_text())
    check = verify_realization(realization.structure, realization)
    if not check.ok:
        logger.warning(f"Realization fails verification (max residual {check.max_residual:.3e})")
    report = detect_symmetries(realization, SymmetryOptions(tolerance=tol))
    if as_json:
        click.echo(report.model_dump_json(indent=2))
        return
    click.echo(f"group: {report.group_label}")
    click.echo(f"rotation order: {report.rotation_order}")
    click.echo(f"mirror lines: {report.reflection_count}")
    click.echo(f"orbits: {report.point_orbit_count} point, {report.block_orbit_count} line")
    click.echo(f"astral: {'yes' if report.is_astral else 'no'}, chiral: {'yes' if report.is_chiral else 'no'}")
    for element in report.induced_elements:
        click.echo(f"  {element.cycle_notation()}")


@cli.command()
@click.option("-f", "--file", "realization_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="SVG file; stdout when omitted")
def render(realization_file, output):
    """Draw a realization file as SVG."""
    realization = parse_realization(Path(realization_file).read_text())
    _emit(write_svg(realization), output)


@cli.command()
@click.argument("n", type=int)
@click.argument("a", type=int)
@click.argument("b", type=int)
@click.option("--json", "as_json", is_flag=True)
def chiral(n, a, b, as_json):
    """Evaluate the chiral astral realizability conditions for (n, a, b)."""
    result = chiral_astral_candidate(n, a, b)
    if as_json:
        click.echo(result.model_dump_json(indent=2))
    else:
        click.echo(f"({n},{a},{b}): {'candidate' if result.candidate else 'not a candidate'}")
        if result.warning:
            click.echo(f"  warning: {result.warning}")
    sys.exit(EXIT_OK if result.candidate else EXIT_NEGATIVE)


def main():
    cli()


if __name__ == "__main__":
    main()
