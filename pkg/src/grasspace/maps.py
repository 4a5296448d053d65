"""Point maps, line maps, and the machinery connecting the two.

A point map carries four checkable properties: injectivity, surjectivity,
preservation of collinearity, preservation of non-collinearity.  The four
flags classify it as a collineation, semicollineation, embedding, or
other.  Line maps arise either by joining point images or, in dimension
3, from dualities via annihilator subspaces.  Reconstruction goes the
opposite way: a bijective intersection-preserving line map determines a
point map through the common points (or, for dualities, common planes) of
its star images.

Degenerate-triple rule: when a triple of point images is not pairwise
distinct it counts as a collinear image, so constant maps fail
non-collinearity preservation and honest embeddings are unaffected.
"""

import dataclasses
import enum
from itertools import combinations

from .errors import (
    BadConfiguration,
    IncompatibleSpaces,
    NotInStar,
    NotLineConsistent,
    PreconditionViolated,
)
from .grassmann import build_grassmann
from .linalg import apply_auto, is_invertible, mat_vec, normalize, nullspace
from .projspace import (
    ProjSpace,
    dual_space,
    join,
    lines_in_plane,
    meet,
    pencil,
    plane_points,
    plane_quotient,
    planes_of_line,
    quotient,
    star,
    subspace_points,
)
from .rng import SplitMix64

EXHAUSTIVE_POINT_LIMIT = 50
TRIPLE_SAMPLE_COUNT = 100_000
TRIPLE_SAMPLE_SEED = 0x1CEB00DA


class MapKind(enum.Enum):
    COLLINEATION = "Collineation"
    SEMICOLLINEATION = "Semicollineation"
    EMBEDDING = "Embedding"
    OTHER = "Other"


class KappaStatus(enum.Enum):
    INDUCED_INTO_TARGET = "InducedIntoTarget"
    INDUCED_INTO_DUAL = "InducedIntoDual"
    MIXED = "Mixed"


@dataclasses.dataclass(frozen=True)
class PropertyFlags:
    injective: bool
    surjective: bool
    preserves_collinearity: bool
    preserves_noncollinearity: bool


@dataclasses.dataclass(frozen=True)
class Collineation:
    """Semilinear point transformation: coordinate automorphism then matrix."""

    matrix: tuple
    auto_index: int = 0


@dataclasses.dataclass(frozen=True)
class Duality:
    """Incidence-reversing transformation of a 3-space: points to planes."""

    matrix: tuple
    auto_index: int = 0


def _point_labels(space):
    if isinstance(space, ProjSpace):
        return range(len(space.points))
    return space.point_labels


def _collinear_in(space, a, b, c):
    # callers guarantee a, b, c pairwise distinct
    if isinstance(space, ProjSpace):
        lid = space.pair_line[(a, b) if a < b else (b, a)]
        return c in space.line_point_sets[lid]
    return space.collinear(a, b, c)


@dataclasses.dataclass(eq=False)
class PointMap:
    source: object
    target: object
    image: dict

    def __post_init__(self):
        assert set(self.image) == set(_point_labels(self.source)), "table not total"

    def apply(self, p):
        return self.image[p]


@dataclasses.dataclass(eq=False)
class LineMap:
    source: ProjSpace
    target: ProjSpace
    image: dict
    dual: bool = False  # images meant as lines of the target's dual space

    def __post_init__(self):
        assert set(self.image) == set(range(len(self.source.lines))), "table not total"

    def apply(self, l):
        return self.image[l]

    def is_bijective(self):
        values = set(self.image.values())
        return len(values) == len(self.image) == len(self.target.lines)


@dataclasses.dataclass(eq=False)
class KappaReport:
    """Outcome of point-map reconstruction from star images.

    unresolved_points holds sources whose image family shares neither a
    point nor a plane (mutually skew families land here).
    """

    status: KappaStatus
    kappa: PointMap | None
    unresolved_points: frozenset


def collineation_point_map(c: Collineation, sp, sp2) -> PointMap:
    """Point action P -> normalize(auto(P) . matrix) between equal-type spaces."""
    if not isinstance(sp, ProjSpace) or not isinstance(sp2, ProjSpace):
        raise IncompatibleSpaces("collineations act between coordinate spaces")
    if sp.n != sp2.n or sp.q != sp2.q:
        raise IncompatibleSpaces(
            f"cannot map PG({sp.n},{sp.q}) onto PG({sp2.n},{sp2.q}) linearly"
        )
    f = sp.field
    m = sp.n + 1
    assert len(c.matrix) == m and all(len(row) == m for row in c.matrix)
    assert is_invertible(f, c.matrix), "collineation matrix must be invertible"
    assert 0 <= c.auto_index < len(f.automorphisms)
    image = {}
    for pt in sp.points:
        vec = apply_auto(f, c.auto_index, pt.coords)
        image[pt.id] = sp2.point_index[normalize(f, mat_vec(f, vec, c.matrix))]
    return PointMap(source=sp, target=sp2, image=image)


def induced_line_map(pm: PointMap) -> LineMap:
    """Line map sending each line to the join of its point images.

    Raises NotLineConsistent when some line's images collapse or fail to be
    collinear; checking every point of every line also certifies that the
    choice of spanning pair does not matter.
    """
    sp, sp2 = pm.source, pm.target
    assert isinstance(sp, ProjSpace) and isinstance(sp2, ProjSpace)
    image = {}
    for line in sp.lines:
        imgs = [pm.image[p] for p in line.point_ids]
        if len(set(imgs)) != len(imgs):
            raise NotLineConsistent(f"line {line.id}: point images collapse")
        a, b = imgs[0], imgs[1]
        lid = sp2.pair_line[(a, b) if a < b else (b, a)]
        pts = sp2.line_point_sets[lid]
        for x in imgs[2:]:
            if x not in pts:
                raise NotLineConsistent(f"line {line.id}: point images not collinear")
        image[line.id] = lid
    return LineMap(source=sp, target=sp2, image=image)


def duality_line_map(d: Duality, sp, sp2) -> LineMap:
    """Line map of a duality: each line goes to the annihilator of its
    transformed basis, which is again a line.  Marked dual=True."""
    if sp.n != 3 or sp2.n != 3:
        raise IncompatibleSpaces("dualities need 3-dimensional spaces")
    if sp.q != sp2.q:
        raise IncompatibleSpaces(f"field orders differ: {sp.q} vs {sp2.q}")
    f = sp.field
    assert is_invertible(f, d.matrix), "duality matrix must be invertible"
    assert 0 <= d.auto_index < len(f.automorphisms)
    image = {}
    for line in sp.lines:
        rows = [
            mat_vec(f, apply_auto(f, d.auto_index, v), d.matrix) for v in line.basis
        ]
        kernel = nullspace(f, rows)
        assert len(kernel) == 2
        a = sp2.point_index[normalize(f, kernel[0])]
        b = sp2.point_index[normalize(f, kernel[1])]
        image[line.id] = join(sp2, a, b)
    return LineMap(source=sp, target=sp2, image=image, dual=True)


def duality_point_to_plane(d: Duality, sp, sp2) -> dict:
    """Point -> plane-id table of a duality (annihilator planes)."""
    if sp.n != 3 or sp2.n != 3 or sp.q != sp2.q:
        raise IncompatibleSpaces("dualities need equal-order 3-dimensional spaces")
    f = sp.field
    table = {}
    for pt in sp.points:
        row = mat_vec(f, apply_auto(f, d.auto_index, pt.coords), d.matrix)
        kernel = nullspace(f, (row,))
        assert len(kernel) == 3
        ids = [sp2.point_index[normalize(f, v)] for v in kernel]
        first = join(sp2, ids[0], ids[1])
        candidates = [
            pid for pid in planes_of_line(sp2, first) if ids[2] in plane_points(sp2, pid)
        ]
        assert len(candidates) == 1
        table[pt.id] = candidates[0]
    return table


def _sampled_triples(points):
    rng = SplitMix64(TRIPLE_SAMPLE_SEED)
    count = len(points)
    produced = 0
    while produced < TRIPLE_SAMPLE_COUNT:
        i = rng.below(count)
        j = rng.below(count)
        k = rng.below(count)
        if i == j or i == k or j == k:
            continue
        produced += 1
        yield points[i], points[j], points[k]


def check_properties(pm: PointMap) -> PropertyFlags:
    """Evaluate the four point-map properties.

    Exhaustive over all unordered triples up to 50 source points; larger
    sources sample a fixed number of triples from a fixed-seed generator,
    so results stay reproducible.
    """
    source_pts = list(_point_labels(pm.source))
    values = list(pm.image.values())
    injective = len(set(values)) == len(values)
    surjective = set(values) == set(_point_labels(pm.target))
    col_ok = True
    noncol_ok = True
    if len(source_pts) <= EXHAUSTIVE_POINT_LIMIT:
        triples = combinations(source_pts, 3)
    else:
        triples = _sampled_triples(source_pts)
    img = pm.image
    for a, b, c in triples:
        src_col = _collinear_in(pm.source, a, b, c)
        x, y, z = img[a], img[b], img[c]
        if x == y or x == z or y == z:
            img_col = True
        else:
            img_col = _collinear_in(pm.target, x, y, z)
        if src_col:
            if not img_col:
                col_ok = False
        elif img_col:
            noncol_ok = False
        if not col_ok and not noncol_ok:
            break
    return PropertyFlags(injective, surjective, col_ok, noncol_ok)


def classify_point_map(pm: PointMap) -> MapKind:
    flags = check_properties(pm)
    if flags.injective and flags.preserves_collinearity:
        if flags.surjective and flags.preserves_noncollinearity:
            return MapKind.COLLINEATION
        if flags.surjective:
            return MapKind.SEMICOLLINEATION
        if flags.preserves_noncollinearity:
            return MapKind.EMBEDDING
    return MapKind.OTHER


def preserves_intersections(lm: LineMap) -> bool:
    """Whether images of every related line pair are related."""
    gs = build_grassmann(lm.source)
    gt = build_grassmann(lm.target)
    img = lm.image
    for a in range(len(gs.neighbors)):
        ia = img[a]
        row = gt.neighbors[ia]
        for b in gs.neighbors[a]:
            if b > a:
                ib = img[b]
                if ib != ia and ib not in row:
                    return False
    return True


def preserves_skewness(lm: LineMap) -> bool:
    """Whether images of every skew line pair are skew."""
    gs = build_grassmann(lm.source)
    gt = build_grassmann(lm.target)
    img = lm.image
    count = len(gs.neighbors)
    for a in range(count):
        ia = img[a]
        row_src = gs.neighbors[a]
        row_tgt = gt.neighbors[ia]
        for b in range(a + 1, count):
            if b not in row_src:
                ib = img[b]
                if ib == ia or ib in row_tgt:
                    return False
    return True


def reconstruct_point_map(lm: LineMap) -> KappaReport:
    """Recover the point map behind a bijective intersection-preserving
    line map from its star images.

    Each source star either shares a common image point (recorded in the
    point table) or, in a 3-dimensional target, lies in a common plane
    (recorded in the plane table, read as the dual space).  The common
    point is tested first: a full star image in dimension 3 or more is
    never a single pencil, so the branches cannot clash.
    """
    if not lm.is_bijective():
        raise PreconditionViolated("line map must be bijective")
    if not preserves_intersections(lm):
        raise PreconditionViolated("line map must preserve intersections")
    sp, sp2 = lm.source, lm.target
    point_table = {}
    plane_table = {}
    unresolved = set()
    for pid in range(len(sp.points)):
        family = [lm.image[l] for l in star(sp, pid)]
        common_pts = frozenset.intersection(
            *(sp2.line_point_sets[l] for l in family)
        )
        if common_pts:
            assert len(common_pts) == 1
            point_table[pid] = next(iter(common_pts))
        elif sp2.n == 3:
            common_planes = frozenset.intersection(
                *(planes_of_line(sp2, l) for l in family)
            )
            if common_planes:
                assert len(common_planes) == 1
                plane_table[pid] = next(iter(common_planes))
            else:
                unresolved.add(pid)
        else:
            unresolved.add(pid)
    total = len(sp.points)
    if len(point_table) == total:
        kappa = PointMap(source=sp, target=sp2, image=point_table)
        return KappaReport(
            status=KappaStatus.INDUCED_INTO_TARGET,
            kappa=kappa,
            unresolved_points=frozenset(),
        )
    if len(plane_table) == total:
        kappa = PointMap(source=sp, target=dual_space(sp2), image=plane_table)
        return KappaReport(
            status=KappaStatus.INDUCED_INTO_DUAL,
            kappa=kappa,
            unresolved_points=frozenset(),
        )
    return KappaReport(
        status=KappaStatus.MIXED,
        kappa=None,
        unresolved_points=frozenset(unresolved),
    )


def restrict_to_star(lm: LineMap, q_point: int, kappa: PointMap) -> PointMap:
    """Restriction of a line map to one star, as a map between quotient
    structures.

    The target quotient is taken at kappa's value: at a target point for
    point-valued kappa, at a plane (the dual quotient) for plane-valued
    kappa from a duality-type map.
    """
    if kappa is None or q_point not in kappa.image:
        raise PreconditionViolated(f"kappa undefined at point {q_point}")
    if kappa.source is not lm.source:
        raise PreconditionViolated("kappa and line map disagree on the source")
    src_struct = quotient(lm.source, q_point)
    centre_image = kappa.image[q_point]
    if isinstance(kappa.target, ProjSpace):
        tgt_struct = quotient(lm.target, centre_image)
    else:
        tgt_struct = plane_quotient(lm.target, centre_image)
    allowed = set(tgt_struct.point_labels)
    image = {}
    for l in src_struct.point_labels:
        img = lm.image[l]
        if img not in allowed:
            raise PreconditionViolated(
                f"image of line {l} falls outside the target star"
            )
        image[l] = img
    return PointMap(source=src_struct, target=tgt_struct, image=image)


def noncollinear_witness(sp, q_point: int, a: int, b: int, c: int):
    """A line skew to c meeting both a and b, or None.

    Such a witness exists exactly when the three star lines do not lie in
    one pencil, which makes it a coordinate-free non-collinearity test for
    the quotient at the star's centre.  Smallest line id is returned for
    determinism.
    """
    members = set(star(sp, q_point))
    if len({a, b, c}) != 3 or not {a, b, c} <= members:
        raise NotInStar(
            f"need three distinct lines through point {q_point}, got {a},{b},{c}"
        )
    g = build_grassmann(sp)
    candidates = (g.neighbors[a] & g.neighbors[b]) - g.neighbors[c] - {c}
    if candidates:
        return min(candidates)
    return None


def pencil_image_is_pencil(lm: LineMap, q_point: int, eps) -> bool:
    """Whether the image of the pencil at (q_point, eps) is exactly a
    pencil of the target."""
    source_pencil = pencil(lm.source, q_point, eps)
    images = {lm.image[l] for l in source_pencil}
    if len(images) != len(source_pencil):
        return False
    sp2 = lm.target
    common_pts = frozenset.intersection(*(sp2.line_point_sets[l] for l in images))
    if len(common_pts) != 1:
        return False
    centre = next(iter(common_pts))
    if sp2.n == 2:
        # in a plane the pencils are whole stars
        return images == set(star(sp2, centre))
    common_planes = frozenset.intersection(*(planes_of_line(sp2, l) for l in images))
    if len(common_planes) != 1:
        return False
    member = set(lines_in_plane(sp2, next(iter(common_planes))))
    target_pencil = {l for l in star(sp2, centre) if l in member}
    return images == target_pencil


def intersection_compatibility_check(
    lm: LineMap, kappa: PointMap, q_point: int, eps, a: int
) -> bool:
    """Whether kappa commutes with intersections along one pencil: for
    every pencil line l, kappa(l meet a) equals the meet of the images.

    For dual-type maps the image meet is the common plane of the two image
    lines, matching plane-valued kappa.
    """
    sp = lm.source
    plane_pts = subspace_points(sp, eps)
    if not sp.line_point_sets[a] <= plane_pts:
        raise BadConfiguration(f"line {a} does not lie in the given plane")
    if q_point in sp.line_point_sets[a]:
        raise BadConfiguration(f"point {q_point} must not lie on line {a}")
    assert kappa is not None
    sp2 = lm.target
    a_img = lm.image[a]
    for l in pencil(sp, q_point, eps):
        crossing = meet(sp, l, a)
        assert crossing is not None, "coplanar lines always meet"
        if lm.dual:
            common = planes_of_line(sp2, lm.image[l]) & planes_of_line(sp2, a_img)
            if len(common) != 1 or kappa.image[crossing] != next(iter(common)):
                return False
        else:
            if kappa.image[crossing] != meet(sp2, lm.image[l], a_img):
                return False
    return True
