import pytest
from hypothesis import given, settings, strategies as st

from grasspace.errors import (
    BadConfiguration,
    IncompatibleSpaces,
    NotInStar,
    NotLineConsistent,
    PreconditionViolated,
)
from grasspace.maps import (
    Collineation,
    Duality,
    KappaStatus,
    LineMap,
    MapKind,
    PointMap,
    check_properties,
    classify_point_map,
    collineation_point_map,
    duality_line_map,
    duality_point_to_plane,
    induced_line_map,
    intersection_compatibility_check,
    noncollinear_witness,
    pencil_image_is_pencil,
    preserves_intersections,
    preserves_skewness,
    reconstruct_point_map,
    restrict_to_star,
)
from grasspace.projspace import (
    IncidenceStructure,
    build_space,
    dual_space,
    meet,
    pencil,
    planes,
    planes_through_point,
    quotient,
    star,
    subspace_points,
)
from grasspace.theorems import (
    InstanceGenerator,
    InstanceKind,
    generate_instance,
    sample_collineation,
    sample_duality,
)


def identity_matrix(m):
    return tuple(tuple(int(i == j) for j in range(m)) for i in range(m))


def identity_line_map(sp):
    return LineMap(
        source=sp, target=sp, image={l: l for l in range(len(sp.lines))}
    )


def test_enum_wire_values():
    assert MapKind.COLLINEATION.value == "Collineation"
    assert MapKind.SEMICOLLINEATION.value == "Semicollineation"
    assert MapKind.EMBEDDING.value == "Embedding"
    assert MapKind.OTHER.value == "Other"
    assert KappaStatus.INDUCED_INTO_TARGET.value == "InducedIntoTarget"
    assert KappaStatus.INDUCED_INTO_DUAL.value == "InducedIntoDual"
    assert KappaStatus.MIXED.value == "Mixed"


def test_identity_collineation(pg32):
    c = Collineation(matrix=identity_matrix(4))
    pm = collineation_point_map(c, pg32, pg32)
    assert pm.image == {p: p for p in range(15)}
    flags = check_properties(pm)
    assert flags.injective and flags.surjective
    assert flags.preserves_collinearity and flags.preserves_noncollinearity
    assert classify_point_map(pm) == MapKind.COLLINEATION
    lm = induced_line_map(pm)
    assert lm.image == {l: l for l in range(35)}


def test_sampled_collineations_classify(pg32, pg33):
    for sp in (pg32, pg33):
        for seed in range(6):
            c = sample_collineation(sp, seed)
            pm = collineation_point_map(c, sp, sp)
            assert classify_point_map(pm) == MapKind.COLLINEATION
            lm = induced_line_map(pm)
            assert lm.is_bijective()
            assert preserves_intersections(lm)
            assert preserves_skewness(lm)


def test_frobenius_collineation_pg24():
    sp = build_space(2, 4)
    c = Collineation(matrix=identity_matrix(3), auto_index=1)
    pm = collineation_point_map(c, sp, sp)
    assert classify_point_map(pm) == MapKind.COLLINEATION
    assert any(pm.image[p] != p for p in pm.image)
    twice = {p: pm.image[pm.image[p]] for p in pm.image}
    assert twice == {p: p for p in range(sp.point_count())}


def test_collineation_rejects_incompatible_spaces(pg22, pg32, pg33):
    with pytest.raises(IncompatibleSpaces):
        collineation_point_map(Collineation(identity_matrix(3)), pg22, pg32)
    with pytest.raises(IncompatibleSpaces):
        collineation_point_map(Collineation(identity_matrix(4)), pg32, pg33)


def test_linear_embedding_is_embedding(pg22, pg32):
    image = {p.id: pg32.point_index[p.coords + (0,)] for p in pg22.points}
    pm = PointMap(source=pg22, target=pg32, image=image)
    flags = check_properties(pm)
    assert flags.injective
    assert not flags.surjective
    assert flags.preserves_collinearity
    assert flags.preserves_noncollinearity
    assert classify_point_map(pm) == MapKind.EMBEDDING
    lm = induced_line_map(pm)
    assert not lm.is_bijective()
    assert preserves_intersections(lm)


def test_constant_map_triggers_degenerate_rule(pg22):
    pm = PointMap(source=pg22, target=pg22, image={p: 0 for p in range(7)})
    flags = check_properties(pm)
    assert not flags.injective
    assert not flags.surjective
    assert flags.preserves_collinearity
    assert not flags.preserves_noncollinearity
    assert classify_point_map(pm) == MapKind.OTHER
    with pytest.raises(NotLineConsistent):
        induced_line_map(pm)


def test_synthetic_semicollineation_between_structures():
    source = IncidenceStructure(
        point_labels=tuple(range(6)),
        line_sets=(frozenset({0, 1, 2}), frozenset({3, 4, 5})),
        kind="native",
        detail="two lines",
    )
    target = IncidenceStructure(
        point_labels=tuple(range(6)),
        line_sets=(frozenset(range(6)),),
        kind="native",
        detail="one line",
    )
    pm = PointMap(source=source, target=target, image={p: p for p in range(6)})
    assert classify_point_map(pm) == MapKind.SEMICOLLINEATION


def test_duality_line_map_basics(pg32):
    d = Duality(matrix=identity_matrix(4))
    lm = duality_line_map(d, pg32, pg32)
    assert lm.dual
    assert lm.is_bijective()
    assert preserves_intersections(lm)
    assert preserves_skewness(lm)


def test_duality_rejects_wrong_dimension(pg22, pg42, pg32, pg33):
    with pytest.raises(IncompatibleSpaces):
        duality_line_map(Duality(identity_matrix(3)), pg22, pg22)
    with pytest.raises(IncompatibleSpaces):
        duality_line_map(Duality(identity_matrix(5)), pg42, pg42)
    with pytest.raises(IncompatibleSpaces):
        duality_line_map(Duality(identity_matrix(4)), pg32, pg33)


def test_reconstruct_collineation_instance(pg32):
    c = sample_collineation(pg32, 7)
    pm = collineation_point_map(c, pg32, pg32)
    lm = induced_line_map(pm)
    report = reconstruct_point_map(lm)
    assert report.status == KappaStatus.INDUCED_INTO_TARGET
    assert report.unresolved_points == frozenset()
    assert report.kappa.image == pm.image
    assert report.kappa.target is pg32


def test_reconstruct_duality_instance(pg32):
    d = sample_duality(pg32, 11)
    lm = duality_line_map(d, pg32, pg32)
    report = reconstruct_point_map(lm)
    assert report.status == KappaStatus.INDUCED_INTO_DUAL
    assert report.unresolved_points == frozenset()
    assert report.kappa.target is dual_space(pg32)
    assert report.kappa.image == duality_point_to_plane(d, pg32, pg32)


def test_duality_squared_is_induced_by_a_collineation(pg32):
    d = sample_duality(pg32, 3)
    lm = duality_line_map(d, pg32, pg32)
    composed = LineMap(
        source=pg32,
        target=pg32,
        image={l: lm.image[lm.image[l]] for l in range(35)},
    )
    report = reconstruct_point_map(composed)
    assert report.status == KappaStatus.INDUCED_INTO_TARGET
    assert classify_point_map(report.kappa) == MapKind.COLLINEATION
    assert induced_line_map(report.kappa).image == composed.image


def test_reconstruct_requires_bijection(pg32):
    lm = LineMap(source=pg32, target=pg32, image={l: 0 for l in range(35)})
    with pytest.raises(PreconditionViolated):
        reconstruct_point_map(lm)


def test_reconstruct_rejects_perturbed_instance(pg32):
    lm = generate_instance(
        InstanceGenerator(0, InstanceKind.PERTURBED), pg32, pg32
    )
    assert lm.is_bijective()
    assert not preserves_intersections(lm) or not preserves_skewness(lm)
    if not preserves_intersections(lm):
        with pytest.raises(PreconditionViolated):
            reconstruct_point_map(lm)


def test_perturbed_instances_break_a_preservation_property(pg32):
    for seed in range(25):
        lm = generate_instance(
            InstanceGenerator(seed, InstanceKind.PERTURBED), pg32, pg32
        )
        assert not (preserves_intersections(lm) and preserves_skewness(lm))


def test_restrict_to_star_collineation(pg32):
    c = sample_collineation(pg32, 2)
    pm = collineation_point_map(c, pg32, pg32)
    lm = induced_line_map(pm)
    kappa = reconstruct_point_map(lm).kappa
    for q_point in (0, 7, 14):
        restriction = restrict_to_star(lm, q_point, kappa)
        assert restriction.source is quotient(pg32, q_point)
        assert restriction.target is quotient(pg32, kappa.image[q_point])
        assert classify_point_map(restriction) == MapKind.COLLINEATION


def test_restrict_to_star_duality_targets_plane_quotient(pg32):
    d = sample_duality(pg32, 5)
    lm = duality_line_map(d, pg32, pg32)
    kappa = reconstruct_point_map(lm).kappa
    restriction = restrict_to_star(lm, 0, kappa)
    assert restriction.target.kind == "quotient"
    assert restriction.target.detail.startswith("dual(")
    assert classify_point_map(restriction) == MapKind.COLLINEATION


def test_restrict_to_star_preconditions(pg32, pg33):
    lm = identity_line_map(pg32)
    kappa = PointMap(source=pg32, target=pg32, image={p: p for p in range(15)})
    with pytest.raises(PreconditionViolated):
        restrict_to_star(lm, 99, kappa)
    foreign = PointMap(
        source=pg33, target=pg33, image={p: p for p in range(40)}
    )
    with pytest.raises(PreconditionViolated):
        restrict_to_star(lm, 0, foreign)
    broken = dict(kappa.image)
    broken[0] = 1 if kappa.image[0] != 1 else 2
    with pytest.raises(PreconditionViolated):
        restrict_to_star(lm, 0, PointMap(source=pg32, target=pg32, image=broken))


def test_noncollinear_witness_matches_quotient_collinearity(pg32):
    from itertools import combinations

    q_point = 0
    members = star(pg32, q_point)
    struct = quotient(pg32, q_point)
    for a, b, c in combinations(members, 3):
        witness = noncollinear_witness(pg32, q_point, a, b, c)
        if struct.collinear(a, b, c):
            assert witness is None
        else:
            assert witness is not None
            assert witness not in members
            hits = [meet(pg32, witness, l) is not None for l in (a, b, c)]
            assert hits == [True, True, False]


def test_noncollinear_witness_errors(pg32):
    members = star(pg32, 0)
    a, b, c = members[0], members[1], members[2]
    with pytest.raises(NotInStar):
        noncollinear_witness(pg32, 0, a, a, b)
    outside = next(l for l in range(35) if l not in members)
    with pytest.raises(NotInStar):
        noncollinear_witness(pg32, 0, a, b, outside)


def test_pencil_image_is_pencil_identity(pg32):
    lm = identity_line_map(pg32)
    for plane_id in range(3):
        eps = planes(pg32)[plane_id]
        pts = sorted(subspace_points(pg32, eps))
        assert pencil_image_is_pencil(lm, pts[0], eps)


def test_pencil_image_is_pencil_collineation(pg33):
    c = sample_collineation(pg33, 1)
    lm = induced_line_map(collineation_point_map(c, pg33, pg33))
    eps = planes(pg33)[planes_through_point(pg33, 0)[0]]
    assert pencil_image_is_pencil(lm, 0, eps)


def test_pencil_image_is_pencil_negative(pg32):
    plane_id = planes_through_point(pg32, 0)[0]
    eps = planes(pg32)[plane_id]
    pen = pencil(pg32, 0, eps)
    outside = next(
        l for l in range(35) if 0 not in pg32.line_point_sets[l]
    )
    image = {l: l for l in range(35)}
    image[pen[0]], image[outside] = outside, pen[0]
    lm = LineMap(source=pg32, target=pg32, image=image)
    assert not pencil_image_is_pencil(lm, 0, eps)


def test_pencil_image_collapse_is_rejected(pg32):
    plane_id = planes_through_point(pg32, 0)[0]
    eps = planes(pg32)[plane_id]
    pen = pencil(pg32, 0, eps)
    image = {l: l for l in range(35)}
    image[pen[0]] = pen[1]
    lm = LineMap(source=pg32, target=pg32, image=image)
    assert not pencil_image_is_pencil(lm, 0, eps)


def _first_valid_config(sp, q_point):
    for plane_id in planes_through_point(sp, q_point):
        eps = planes(sp)[plane_id]
        pts = subspace_points(sp, eps)
        for l in range(len(sp.lines)):
            if sp.line_point_sets[l] <= pts and q_point not in sp.line_point_sets[l]:
                return eps, l
    raise AssertionError("no configuration found")


def test_intersection_compatibility_identity(pg32):
    lm = identity_line_map(pg32)
    kappa = PointMap(source=pg32, target=pg32, image={p: p for p in range(15)})
    eps, a = _first_valid_config(pg32, 0)
    assert intersection_compatibility_check(lm, kappa, 0, eps, a)


def test_intersection_compatibility_collineation_and_duality(pg32):
    c = sample_collineation(pg32, 4)
    lm = induced_line_map(collineation_point_map(c, pg32, pg32))
    kappa = reconstruct_point_map(lm).kappa
    eps, a = _first_valid_config(pg32, 3)
    assert intersection_compatibility_check(lm, kappa, 3, eps, a)

    d = sample_duality(pg32, 4)
    dlm = duality_line_map(d, pg32, pg32)
    dkappa = reconstruct_point_map(dlm).kappa
    assert intersection_compatibility_check(dlm, dkappa, 3, eps, a)


def test_intersection_compatibility_detects_wrong_kappa(pg32):
    lm = identity_line_map(pg32)
    eps, a = _first_valid_config(pg32, 0)
    pen = pencil(pg32, 0, eps)
    crossing = meet(pg32, pen[0], a)
    image = {p: p for p in range(15)}
    other = next(p for p in range(15) if p != crossing)
    image[crossing], image[other] = other, crossing
    kappa = PointMap(source=pg32, target=pg32, image=image)
    assert not intersection_compatibility_check(lm, kappa, 0, eps, a)


def test_intersection_compatibility_bad_configurations(pg32):
    lm = identity_line_map(pg32)
    kappa = PointMap(source=pg32, target=pg32, image={p: p for p in range(15)})
    eps, a = _first_valid_config(pg32, 0)
    pen = pencil(pg32, 0, eps)
    with pytest.raises(BadConfiguration):
        intersection_compatibility_check(lm, kappa, 0, eps, pen[0])
    pts = subspace_points(pg32, eps)
    outside = next(
        l for l in range(35) if not pg32.line_point_sets[l] <= pts
    )
    with pytest.raises(BadConfiguration):
        intersection_compatibility_check(lm, kappa, 0, eps, outside)


@given(seed=st.integers(0, 10_000))
@settings(max_examples=20, deadline=None)
def test_reconstruction_round_trip(seed):
    sp = build_space(3, 2)
    c = sample_collineation(sp, seed)
    pm = collineation_point_map(c, sp, sp)
    lm = induced_line_map(pm)
    kappa = reconstruct_point_map(lm).kappa
    assert kappa.image == pm.image
    assert induced_line_map(kappa).image == lm.image
