import numpy as np
import pytest

from src.analysis.cyclic import classify_all
from src.analysis.groups import automorphisms, induced_automorphism
from src.analysis.incidence import gen_cyclic
from src.models.configuration import GenCyclicParams
from src.models.errors import ConstructionError, DomainError, StructuralError
from src.models.realization import GruenbaumOptions, PolycyclicOptions, Realization
from src.realizers.base_realizer import BaseRealizer, check_points, verify_realization
from src.realizers.gruenbaum import (
    _completion_residual,
    attempt_schedule,
    complete_last_three,
    fallback_slopes,
    place_initial_points,
    realize_gen_cyclic,
    realize_gruenbaum,
)
from src.realizers.polycyclic import PolycyclicRealizer, acts_freely, realize_polycyclic, rotation_candidates
from src.realizers.symmetry import detect_symmetries
from src.utils import geometry


def element_keys(group):
    return {(e.point_perm, e.block_perm) for e in group.elements}


def transformed(realization, matrix, offset=(0.0, 0.0)):
    points = geometry.as_array(realization.points) @ np.asarray(matrix).T + np.asarray(offset)
    return realization.model_copy(update={"points": [(float(x), float(y)) for x, y in points]})


@pytest.fixture(scope="module")
def gruenbaum_twelve():
    return realize_gruenbaum(12)


@pytest.fixture(scope="module")
def pappus_threefold():
    from src.models.catalog import load_known
    return realize_polycyclic(load_known("pappus"), 3)


@pytest.fixture(scope="module")
def ten_fivefold():
    from src.models.catalog import load_known
    return realize_polycyclic(load_known("10_3_10"), 5)


def test_normalized_residual_is_scale_invariant():
    p, q, r = np.array([0.0, 0.0]), np.array([1.0, 0.1]), np.array([2.0, 0.0])
    scale = geometry.diameter(np.vstack([p, q, r]))
    value = geometry.normalized_residual(p, q, r, scale)
    assert value > 0
    assert geometry.normalized_residual(10 * p, 10 * q, 10 * r, 10 * scale) == pytest.approx(value)


def test_intersect_parallel_lines():
    first = geometry.line_through(np.array([0.0, 0.0]), np.array([1.0, 0.0]))
    second = geometry.line_through(np.array([0.0, 1.0]), np.array([1.0, 1.0]))
    assert geometry.intersect(first, second) is None
    assert geometry.line_through(np.array([1.0, 1.0]), np.array([1.0, 1.0])) is None


def test_intersect_crossing_lines():
    first = geometry.line_through(np.array([0.0, 0.0]), np.array([2.0, 2.0]))
    second = geometry.line_through(np.array([0.0, 2.0]), np.array([2.0, 0.0]))
    assert geometry.intersect(first, second) == pytest.approx([1.0, 1.0])


def test_fallback_slopes_order():
    assert fallback_slopes(0.1) == pytest.approx([0.1, 0.05, 0.2, 0.025])


def test_attempt_schedule_starts_with_requested_options():
    schedule = attempt_schedule(GruenbaumOptions())
    assert schedule[0] == (0.1, 0.1)
    assert len(schedule) == GruenbaumOptions().max_attempts


def test_initial_points_cover_early_blocks():
    points = place_initial_points(12, 0.1, 1.0)
    assert np.isnan(points[0]).all()
    assert np.isnan(points[10:]).all()
    structure = gen_cyclic(12, 1, 3)
    scale = geometry.diameter(points[1:10])
    placed = set(range(2, 11))
    for block in structure.blocks:
        if set(block) <= placed:
            x, y, z = (points[m - 1] for m in block)
            assert geometry.normalized_residual(x, y, z, scale) < 1e-12
    assert np.all(np.diff(points[4:10, 0]) > 0)
    assert points[3, 0] < points[2, 0] < points[1, 0]


@pytest.mark.parametrize("n", range(9, 21))
def test_gruenbaum_realizes(n):
    realization = realize_gruenbaum(n)
    check = verify_realization(realization.structure, realization)
    assert check.max_residual <= 1e-9
    assert check.points_distinct
    assert check.lines_distinct
    assert check.ok


def test_gruenbaum_rejects_eight():
    with pytest.raises(DomainError):
        realize_gruenbaum(8)


def test_gruenbaum_is_deterministic(gruenbaum_twelve):
    assert realize_gruenbaum(12).points == gruenbaum_twelve.points


def test_completion_satisfies_last_six_blocks():
    n = 12
    points = place_initial_points(n, 0.1, 1.0)
    points[n - 2], points[n - 1], points[0] = complete_last_three(points, n)
    scale = geometry.diameter(points)
    for block in [(n - 4, n - 3, n - 1), (n - 3, n - 2, n), (n - 2, n - 1, 1), (n - 1, n, 2), (n, 1, 3), (1, 2, 4)]:
        x, y, z = (points[m - 1] for m in block)
        assert geometry.normalized_residual(x, y, z, scale) < 1e-12


def test_completion_residual_is_finite_across_poles():
    points = place_initial_points(9, 0.1, 1.0)
    residual = _completion_residual(points, 9)
    # mark 9 passes through infinity at t = -4/11, mark 1 at t = -3/4
    for t in (-4 / 11, -3 / 4, 0.0, 1e6, -1e6):
        assert np.isfinite(residual(t))
    assert residual(-0.5) * residual(-0.3) > 0
    assert residual(0.1) * residual(0.3) < 0
    assert residual(0.5) * residual(1.0) < 0


def test_bisection_failure_becomes_construction_error(monkeypatch):
    def failing_bisect(*args, **kwargs):
        raise ValueError("The function value at x=0 is NaN; solver cannot continue.")

    monkeypatch.setattr("src.realizers.gruenbaum.bisect", failing_bisect)
    with pytest.raises(ConstructionError) as error:
        realize_gruenbaum(9)
    assert error.value.diagnostics["n"] == 9
    assert len(error.value.diagnostics["attempts"]) == GruenbaumOptions().max_attempts


def test_completion_rejects_coincident_marks():
    points = place_initial_points(12, 0.1, 1.0)
    points[3] = points[1]
    with pytest.raises(ConstructionError) as error:
        complete_last_three(points, 12)
    assert error.value.diagnostics["n"] == 12


def test_multiplier_relabels_realization():
    base = realize_gruenbaum(9)
    realization = realize_gen_cyclic(GenCyclicParams(n=9, a=2, b=6))
    assert realization.structure == gen_cyclic(9, 2, 6)
    assert verify_realization(realization.structure, realization).ok
    # z = 2 sends mark m to mark 2m
    assert all(realization.points[((2 * m) % 9 or 9) - 1] == base.points[m - 1] for m in range(1, 10))


def test_realize_gen_cyclic_outside_base_class():
    (other,) = [cls for cls in classify_all(13) if (1, 3) not in cls.members]
    a, b = other.members[0]
    with pytest.raises(StructuralError):
        realize_gen_cyclic(GenCyclicParams(n=13, a=a, b=b))


def test_realize_gen_cyclic_rejects_invalid_table():
    with pytest.raises(DomainError):
        realize_gen_cyclic(GenCyclicParams(n=9, a=3, b=6))


def test_realizer_run_logs_and_reraises(caplog):
    class FailingRealizer(BaseRealizer):
        def realize(self):
            raise ConstructionError("no root", {"n": 9})

    with pytest.raises(ConstructionError):
        FailingRealizer("failing", gen_cyclic(9, 1, 3)).run()
    assert "failing realization failed for n=9: no root" in caplog.text


def test_verify_flags_perturbed_point(gruenbaum_twelve):
    points = geometry.as_array(gruenbaum_twelve.points)
    scale = geometry.diameter(points)
    points[4] += np.array([0.6, 0.8]) * 1e-2 * scale
    check = check_points(gruenbaum_twelve.structure, points, gruenbaum_twelve.tolerance)
    expected = [j for j, block in enumerate(gruenbaum_twelve.structure.blocks, start=1) if 5 in block]
    assert check.violating_blocks == expected
    assert not check.ok


def test_verify_flags_all_collinear():
    structure = gen_cyclic(9, 1, 3)
    realization = Realization(
        structure=structure, points=[(float(i), 0.0) for i in range(9)], tolerance=1e-9, max_residual=0.0
    )
    check = verify_realization(structure, realization)
    assert check.max_residual == 0.0
    assert check.points_distinct
    assert not check.lines_distinct


def test_verify_reports_wrong_point_count(gruenbaum_twelve):
    check = verify_realization(gen_cyclic(13, 1, 3), gruenbaum_twelve)
    assert check.max_residual == float("inf")
    assert not check.ok


def test_gruenbaum_output_has_no_symmetry(gruenbaum_twelve):
    report = detect_symmetries(gruenbaum_twelve)
    assert report.group_label == "C_1"
    assert report.rotation_order == 1
    assert report.reflection_count == 0
    assert not report.is_astral


def test_rotation_candidates_act_freely(ten_three_ten):
    candidates = rotation_candidates(automorphisms(ten_three_ten), 5)
    assert candidates
    assert all(c.order() == 5 and acts_freely(c, 5) for c in candidates)


def test_rotation_candidates_cover_every_free_element(ten_three_ten):
    group = automorphisms(ten_three_ten)
    candidates = rotation_candidates(group, 5)
    conjugates = {
        (h.compose(c).compose(h.inverse()).point_perm, h.compose(c).compose(h.inverse()).block_perm)
        for c in candidates
        for h in group.elements
    }
    free = [e for e in group.elements if e.order() == 5 and acts_freely(e, 5)]
    assert {(e.point_perm, e.block_perm) for e in free} <= conjugates
    # both the pentagon and the pentagram generator of one subgroup are kept
    star = induced_automorphism(ten_three_ten, (5, 6, 7, 8, 9, 10, 1, 2, 3, 4))
    assert star is not None
    assert (star.point_perm, star.block_perm) in conjugates


def test_polycyclic_rejects_non_divisor(pappus):
    with pytest.raises(StructuralError):
        PolycyclicRealizer(pappus, 2)


def test_polycyclic_rejects_order_without_free_action(desargues):
    # every involution of the Desargues configuration fixes a point
    with pytest.raises(StructuralError):
        PolycyclicRealizer(desargues, 2)


def test_ten_three_ten_fivefold(ten_fivefold, ten_three_ten):
    assert ten_fivefold is not None
    check = verify_realization(ten_fivefold.structure, ten_fivefold)
    assert check.max_residual < 1e-8
    assert check.ok
    report = detect_symmetries(ten_fivefold)
    assert report.rotation_order == 5
    group = element_keys(automorphisms(ten_three_ten))
    assert report.induced_elements
    assert all((e.point_perm, e.block_perm) in group for e in report.induced_elements)


def test_pappus_threefold(pappus_threefold, pappus):
    assert pappus_threefold is not None
    assert verify_realization(pappus, pappus_threefold).ok
    report = detect_symmetries(pappus_threefold)
    assert report.rotation_order == 3
    group = element_keys(automorphisms(pappus))
    assert all((e.point_perm, e.block_perm) in group for e in report.induced_elements)


def test_polycyclic_is_deterministic(pappus, pappus_threefold):
    assert realize_polycyclic(pappus, 3).points == pappus_threefold.points


def test_polycyclic_centered_at_origin(pappus_threefold):
    center = geometry.as_array(pappus_threefold.points).mean(axis=0)
    assert np.allclose(center, 0.0, atol=1e-9)


def test_symmetry_is_isometry_invariant(pappus_threefold):
    before = detect_symmetries(pappus_threefold)
    angle = 0.7
    moved = transformed(pappus_threefold, geometry.rotation_matrix(angle), offset=(3.0, -2.0))
    after = detect_symmetries(moved)
    assert after.rotation_order == before.rotation_order
    assert after.reflection_count == before.reflection_count
    assert after.group_label == before.group_label
    assert after.center == pytest.approx((3.0, -2.0), abs=1e-9)


def test_chirality_flags(pappus_threefold):
    report = detect_symmetries(pappus_threefold)
    assert report.is_chiral == (report.is_astral and report.reflection_count == 0)
    if report.is_astral:
        assert report.point_orbit_count == report.block_orbit_count


@pytest.mark.slow
def test_desargues_fivefold_is_informational(desargues):
    result = realize_polycyclic(desargues, 5, PolycyclicOptions(restarts=20))
    if result is not None:
        assert verify_realization(desargues, result).ok
