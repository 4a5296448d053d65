"""Finite projective spaces PG(n, q) with canonical ids.

Points are the 1-dimensional subspaces of GF(q)^(n+1), represented by the
unique coordinate vector whose leftmost nonzero entry is 1.  Lines are the
2-dimensional subspaces, planes the 3-dimensional ones; all are stored as
reduced-row-echelon bases.

Canonical order contract (used by the interchange formats in `cli`):

* point id = rank of the normalized coordinate tuple in lexicographic
  order (element-code order);
* line id  = rank of the line's sorted point-id tuple in lexicographic
  order over all lines;
* plane id = the same rank construction over sorted point-id tuples.

Quotient spaces, dual spaces and plane pencil-structures are materialized
as abstract IncidenceStructure values so they can be compared and checked
against the projective-space axioms independently of coordinates.
"""

import dataclasses
import functools
from itertools import combinations, product

from .errors import (
    DimensionTooSmall,
    EqualLines,
    EqualPoints,
    NotAPlane,
    PointNotInPlane,
    RepeatedPoints,
    UnsupportedDimension,
)
from .field import field_make
from .linalg import rref, vec_add, vec_scale


def gaussian_binomial(m: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^m (exact integer)."""
    if k < 0 or k > m:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q**m - q**i
        den *= q**k - q**i
    return num // den


@dataclasses.dataclass(frozen=True)
class Point:
    coords: tuple
    id: int


@dataclasses.dataclass(frozen=True)
class Line:
    basis: tuple
    point_ids: tuple
    id: int


@dataclasses.dataclass(frozen=True)
class Subspace:
    """Canonical (RREF) basis of a vector subspace of GF(q)^(n+1)."""

    basis: tuple

    @property
    def dim(self):
        return len(self.basis)


@dataclasses.dataclass(eq=False)
class ProjSpace:
    n: int
    field: object
    points: tuple
    lines: tuple
    lines_through: tuple
    point_index: dict
    pair_line: dict
    line_point_sets: tuple

    def __post_init__(self):
        self._plane_tables = None
        self._quotients = {}
        self._plane_quotients = {}
        self._dual = None
        self._native = None
        self._vec_index = None

    @property
    def q(self):
        return self.field.q

    def point_count(self):
        return len(self.points)

    def line_count(self):
        return len(self.lines)

    def __repr__(self):
        return f"PG({self.n},{self.q})"


@dataclasses.dataclass(eq=False)
class IncidenceStructure:
    """Abstract point/line incidence structure with hashable point labels.

    kind is one of "native", "quotient", "dual" (plus free-form detail);
    line_sets[i] is the set of labels on line i.
    """

    point_labels: tuple
    line_sets: tuple
    kind: str
    detail: str = ""

    def __post_init__(self):
        labels = set(self.point_labels)
        assert len(labels) == len(self.point_labels), "repeated point labels"
        seen = set()
        for s in self.line_sets:
            assert len(s) >= 2, "line with fewer than two points"
            assert s not in seen, "repeated line set"
            assert s <= labels, "line through unknown point"
            seen.add(s)
        self._pairs = None
        self._linear = None

    def point_count(self):
        return len(self.point_labels)

    def line_count(self):
        return len(self.line_sets)

    def _pair_table(self):
        # both orders are stored so lookups need no label ordering
        if self._pairs is None:
            pairs = {}
            linear = True
            for i, s in enumerate(self.line_sets):
                for a, b in combinations(s, 2):
                    if (a, b) in pairs and pairs[(a, b)] != i:
                        linear = False
                    else:
                        pairs[(a, b)] = i
                        pairs[(b, a)] = i
            self._pairs = pairs
            self._linear = linear
        return self._pairs

    def line_through(self, a, b):
        """Index of a line through both labels, or None."""
        return self._pair_table().get((a, b))

    def collinear(self, a, b, c):
        pairs = self._pair_table()
        if self._linear:
            i = pairs.get((a, b))
            return i is not None and c in self.line_sets[i]
        need = {a, b, c}
        return any(need <= s for s in self.line_sets)

    def degree(self, label):
        return sum(1 for s in self.line_sets if label in s)

    def __repr__(self):
        tag = f"{self.kind}:{self.detail}" if self.detail else self.kind
        return (
            f"IncidenceStructure({tag}, {len(self.point_labels)} points, "
            f"{len(self.line_sets)} lines)"
        )


def _normalized_vectors(q, m):
    """All normalized coordinate tuples of length m in ascending lex order."""
    for pivot in range(m - 1, -1, -1):
        prefix = (0,) * pivot
        for tail in product(range(q), repeat=m - pivot - 1):
            yield prefix + (1,) + tail


def _rref_bases(q, m, k):
    """Every k-row RREF matrix over GF(q)^m, one per k-dimensional subspace."""
    for pivots in combinations(range(m), k):
        pivot_set = set(pivots)
        slots = []  # (row, col) positions that may hold arbitrary values
        for i, p in enumerate(pivots):
            for col in range(p + 1, m):
                if col not in pivot_set:
                    slots.append((i, col))
        for values in product(range(q), repeat=len(slots)):
            rows = [[0] * m for _ in range(k)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, col), v in zip(slots, values):
                rows[i][col] = v
            yield tuple(tuple(r) for r in rows)


def _span_point_ids(field, point_index, basis):
    """Point ids on the span of an RREF basis.

    Combining RREF rows with a normalized coefficient vector yields an
    already-normalized coordinate vector, so no per-point rescaling happens.
    """
    q = field.q
    k = len(basis)
    ids = []
    for coeffs in _normalized_vectors(q, k):
        vec = None
        for c, row in zip(coeffs, basis):
            term = row if c == 1 else vec_scale(field, c, row)
            vec = term if vec is None else vec_add(field, vec, term)
        ids.append(point_index[vec if isinstance(vec, tuple) else tuple(vec)])
    return ids


def _build_space(n, q):
    if n < 2:
        raise DimensionTooSmall(f"projective dimension must be >= 2, got {n}")
    f = field_make(q)
    m = n + 1

    points = []
    point_index = {}
    for i, coords in enumerate(_normalized_vectors(q, m)):
        points.append(Point(coords=coords, id=i))
        point_index[coords] = i
    assert len(points) == gaussian_binomial(m, 1, q)

    raw = []
    for basis in _rref_bases(q, m, 2):
        pids = tuple(sorted(_span_point_ids(f, point_index, basis)))
        raw.append((pids, basis))
    raw.sort(key=lambda item: item[0])
    lines = tuple(
        Line(basis=basis, point_ids=pids, id=i) for i, (pids, basis) in enumerate(raw)
    )
    assert len(lines) == gaussian_binomial(m, 2, q)

    through = [[] for _ in points]
    pair_line = {}
    point_sets = []
    for line in lines:
        point_sets.append(frozenset(line.point_ids))
        for pid in line.point_ids:
            through[pid].append(line.id)
        for a, b in combinations(line.point_ids, 2):
            pair_line[(a, b)] = line.id

    star_size = gaussian_binomial(n, 1, q)
    for pid, ls in enumerate(through):
        assert len(ls) == star_size, f"point {pid} lies on {len(ls)} lines"

    return ProjSpace(
        n=n,
        field=f,
        points=tuple(points),
        lines=lines,
        lines_through=tuple(tuple(ls) for ls in through),
        point_index=point_index,
        pair_line=pair_line,
        line_point_sets=tuple(point_sets),
    )


@functools.lru_cache(maxsize=None)
def build_space(n: int, q: int) -> ProjSpace:
    """Construct PG(n, q).  Results are cached; spaces are immutable."""
    return _build_space(n, q)


def point_id_of_vector(sp, vec):
    """Point id of an arbitrary nonzero coordinate vector."""
    if sp._vec_index is None:
        f = sp.field
        index = {}
        for coords in product(range(sp.q), repeat=sp.n + 1):
            if any(coords):
                for c in coords:
                    if c:
                        if c == 1:
                            index[coords] = sp.point_index[coords]
                        else:
                            s = f.inv_table[c]
                            row = f.mul_table[s]
                            index[coords] = sp.point_index[tuple(row[x] for x in coords)]
                        break
        sp._vec_index = index
    return sp._vec_index[tuple(vec)]


def join(sp, a: int, b: int) -> int:
    """Id of the unique line through two distinct points."""
    if a == b:
        raise EqualPoints(f"join needs two distinct points, got {a} twice")
    return sp.pair_line[(a, b) if a < b else (b, a)]


def meet(sp, a: int, b: int):
    """Common point id of two distinct lines, or None when they are skew."""
    if a == b:
        raise EqualLines(f"meet needs two distinct lines, got {a} twice")
    common = sp.line_point_sets[a] & sp.line_point_sets[b]
    if common:
        return next(iter(common))
    return None


def collinear(sp, a: int, b: int, c: int) -> bool:
    """Whether three pairwise distinct points lie on one line."""
    if a == b or a == c or b == c:
        raise RepeatedPoints(f"collinear needs pairwise distinct points: {a},{b},{c}")
    return c in sp.line_point_sets[join(sp, a, b)]


def star(sp, q_point: int) -> tuple:
    """Ids of all lines through a point, ascending."""
    return sp.lines_through[q_point]


def _planes(sp):
    """Canonical plane tables: subspaces, point sets, membership indexes."""
    if sp._plane_tables is None:
        f = sp.field
        raw = []
        for basis in _rref_bases(sp.q, sp.n + 1, 3):
            pids = tuple(sorted(_span_point_ids(f, sp.point_index, basis)))
            raw.append((pids, basis))
        raw.sort(key=lambda item: item[0])
        subspaces = tuple(Subspace(basis=basis) for _, basis in raw)
        point_sets = tuple(frozenset(pids) for pids, _ in raw)
        lines_in = []
        for pids, _ in raw:
            seen = set()
            for a, b in combinations(pids, 2):
                seen.add(sp.pair_line[(a, b)])
            lines_in.append(tuple(sorted(seen)))
        through_line = [set() for _ in sp.lines]
        through_point = [[] for _ in sp.points]
        for idx, pids in enumerate(point_sets):
            for lid in lines_in[idx]:
                through_line[lid].add(idx)
            for pid in pids:
                through_point[pid].append(idx)
        sp._plane_tables = (
            subspaces,
            point_sets,
            tuple(lines_in),
            tuple(frozenset(s) for s in through_line),
            tuple(tuple(v) for v in through_point),
        )
    return sp._plane_tables


def planes(sp) -> tuple:
    """All planes of the space as canonical Subspace values."""
    return _planes(sp)[0]


def plane_points(sp, plane_id: int) -> frozenset:
    return _planes(sp)[1][plane_id]


def lines_in_plane(sp, plane_id: int) -> tuple:
    return _planes(sp)[2][plane_id]


def planes_of_line(sp, line_id: int) -> frozenset:
    """Ids of the planes containing a line."""
    return _planes(sp)[3][line_id]


def planes_through_point(sp, point_id: int) -> tuple:
    return _planes(sp)[4][point_id]


def span_subspace(sp, point_ids) -> Subspace:
    """Canonical subspace spanned by the given points."""
    rows = [sp.points[p].coords for p in point_ids]
    return Subspace(basis=rref(sp.field, rows))


def subspace_points(sp, eps: Subspace) -> frozenset:
    """Point ids lying on a subspace (basis canonicalized first)."""
    canonical = rref(sp.field, eps.basis)
    return frozenset(_span_point_ids(sp.field, sp.point_index, canonical))


def pencil(sp, q_point: int, eps: Subspace) -> tuple:
    """Lines through a point inside a plane containing it, ascending ids."""
    if eps.dim != 3:
        raise NotAPlane(f"expected a plane (3 basis rows), got dimension {eps.dim}")
    pts = subspace_points(sp, eps)
    if q_point not in pts:
        raise PointNotInPlane(f"point {q_point} not on the given plane")
    return tuple(l for l in sp.lines_through[q_point] if sp.line_point_sets[l] <= pts)


def native_structure(sp) -> IncidenceStructure:
    """The space itself as an abstract incidence structure (labels = point ids)."""
    if sp._native is None:
        sp._native = IncidenceStructure(
            point_labels=tuple(range(len(sp.points))),
            line_sets=tuple(sp.line_point_sets),
            kind="native",
            detail=repr(sp),
        )
    return sp._native


def quotient(sp, q_point: int) -> IncidenceStructure:
    """Quotient space at a point: star lines as points, pencils as lines."""
    cached = sp._quotients.get(q_point)
    if cached is not None:
        return cached
    st = star(sp, q_point)
    st_set = set(st)
    pencils = []
    for plane_id in planes_through_point(sp, q_point):
        members = frozenset(l for l in lines_in_plane(sp, plane_id) if l in st_set)
        pencils.append(members)
    pencils.sort(key=sorted)
    structure = IncidenceStructure(
        point_labels=st,
        line_sets=tuple(pencils),
        kind="quotient",
        detail=f"{sp!r}/{q_point}",
    )
    report = verify_projective_axioms(structure)
    assert report.passed, f"quotient at {q_point} violates axioms: {report}"
    sp._quotients[q_point] = structure
    return structure


def dual_space(sp) -> IncidenceStructure:
    """Dual of a 3-dimensional space: planes as points, reversed incidence.

    Point labels are canonical plane ids; line i of the dual is the set of
    planes containing line i of the source, so line ids carry over.
    """
    if sp.n != 3:
        raise UnsupportedDimension(f"dual_space needs dimension 3, got {sp.n}")
    if sp._dual is None:
        structure = IncidenceStructure(
            point_labels=tuple(range(len(planes(sp)))),
            line_sets=tuple(planes_of_line(sp, l) for l in range(len(sp.lines))),
            kind="dual",
            detail=repr(sp),
        )
        report = verify_projective_axioms(structure)
        assert report.passed, f"dual structure violates axioms: {report}"
        sp._dual = structure
    return sp._dual


def plane_quotient(sp, plane_id: int) -> IncidenceStructure:
    """Quotient of the dual space at a plane: the plane's lines as points,
    its pencils as lines."""
    cached = sp._plane_quotients.get(plane_id)
    if cached is not None:
        return cached
    if sp.n != 3:
        raise UnsupportedDimension(f"plane_quotient needs dimension 3, got {sp.n}")
    members = lines_in_plane(sp, plane_id)
    member_set = set(members)
    sets = []
    for pid in sorted(plane_points(sp, plane_id)):
        sets.append(
            frozenset(l for l in sp.lines_through[pid] if l in member_set)
        )
    sets.sort(key=sorted)
    structure = IncidenceStructure(
        point_labels=members,
        line_sets=tuple(sets),
        kind="quotient",
        detail=f"dual({sp!r})/{plane_id}",
    )
    report = verify_projective_axioms(structure)
    assert report.passed
    sp._plane_quotients[plane_id] = structure
    return structure


@dataclasses.dataclass
class AxiomReport:
    """Result of the projective-axiom check, with witnesses on failure."""

    unique_join: bool
    unique_join_witness: tuple = None
    veblen: bool = True
    veblen_witness: tuple = None
    line_size: bool = True
    line_size_witness: tuple = None

    @property
    def passed(self):
        return self.unique_join and self.veblen and self.line_size

    def __str__(self):
        parts = []
        for name in ("unique_join", "veblen", "line_size"):
            ok = getattr(self, name)
            wit = getattr(self, f"{name}_witness")
            parts.append(f"{name}: {'ok' if ok else f'FAIL {wit}'}")
        return "; ".join(parts)


def verify_projective_axioms(inc: IncidenceStructure) -> AxiomReport:
    """Check the point-line axioms of a projective space on an abstract structure.

    (i) two distinct points lie on exactly one common line; (ii) a line
    meeting two sides of a triangle away from the vertices meets the third
    side; (iii) every line has at least three points.  Failures are report
    content, never exceptions.
    """
    labels = list(inc.point_labels)
    sets = inc.line_sets

    report = AxiomReport(unique_join=True)

    counts = {}
    for s in sets:
        for a, b in combinations(s, 2):
            counts[(a, b)] = counts.get((a, b), 0) + 1
    for a, b in combinations(labels, 2):
        c = counts.get((a, b), 0) + counts.get((b, a), 0)
        if c != 1:
            report.unique_join = False
            report.unique_join_witness = (a, b, c)
            break

    for s in sets:
        if len(s) < 3:
            report.line_size = False
            report.line_size_witness = tuple(sorted(s, key=repr))
            break

    # Triangle form: sides g = A|B and h = A|C through a common vertex A;
    # the line through P on g and R on h (both away from A) must meet B|C.
    through = {lab: [] for lab in labels}
    for i, s in enumerate(sets):
        for lab in s:
            through[lab].append(i)
    done = False
    for a in labels:
        if done:
            break
        for g, h in combinations(through[a], 2):
            if done:
                break
            g_rest = [x for x in sets[g] if x != a]
            h_rest = [x for x in sets[h] if x != a]
            for p_lab in g_rest:
                if done:
                    break
                for r_lab in h_rest:
                    li = inc.line_through(p_lab, r_lab)
                    if li is None:
                        continue
                    lset = sets[li]
                    for b_lab in g_rest:
                        if b_lab == p_lab:
                            continue
                        for c_lab in h_rest:
                            if c_lab == r_lab:
                                continue
                            side = inc.line_through(b_lab, c_lab)
                            if side is None:
                                continue
                            if not (lset & sets[side]):
                                report.veblen = False
                                report.veblen_witness = (a, b_lab, c_lab, p_lab, r_lab)
                                done = True
                                break
                        if done:
                            break
                    if done:
                        break
    return report


def incidence_isomorphic(a: IncidenceStructure, b: IncidenceStructure):
    """Exhaustive backtracking isomorphism search between two structures.

    Returns a point-label bijection dict, or None.  Prunes on degrees and on
    collinearity of every mapped triple, which keeps the search tiny for the
    small projective structures this package builds.
    """
    pa = list(a.point_labels)
    pb = list(b.point_labels)
    if len(pa) != len(pb) or len(a.line_sets) != len(b.line_sets):
        return None
    if sorted(len(s) for s in a.line_sets) != sorted(len(s) for s in b.line_sets):
        return None
    deg_a = {p: a.degree(p) for p in pa}
    deg_b = {p: b.degree(p) for p in pb}
    if sorted(deg_a.values()) != sorted(deg_b.values()):
        return None

    b_sets = set(b.line_sets)
    mapping = {}
    used = set()

    def assign(i):
        if i == len(pa):
            for s in a.line_sets:
                if frozenset(mapping[x] for x in s) not in b_sets:
                    return False
            return True
        p = pa[i]
        for cand in pb:
            if cand in used or deg_b[cand] != deg_a[p]:
                continue
            ok = True
            for x, y in combinations(list(mapping), 2):
                if a.collinear(x, y, p) != b.collinear(mapping[x], mapping[y], cand):
                    ok = False
                    break
            if not ok:
                continue
            mapping[p] = cand
            used.add(cand)
            if assign(i + 1):
                return True
            del mapping[p]
            used.discard(cand)
        return False

    if assign(0):
        return dict(mapping)
    return None


def structure_planes(inc: IncidenceStructure):
    """Planes of an abstract projective structure: closures of non-collinear
    triples under pairwise joins."""
    labels = list(inc.point_labels)
    sets = inc.line_sets
    found = set()
    for a, b, c in combinations(labels, 3):
        if inc.collinear(a, b, c):
            continue
        closure = {a, b, c}
        grew = True
        while grew:
            grew = False
            for x, y in combinations(tuple(closure), 2):
                li = inc.line_through(x, y)
                if li is not None and not (sets[li] <= closure):
                    closure |= sets[li]
                    grew = True
        found.add(frozenset(closure))
    return sorted(found, key=sorted)


def incidence_dual(inc: IncidenceStructure) -> IncidenceStructure:
    """Dual of an abstract 3-dimensional structure: its planes become points,
    its lines keep their indices with incidence reversed."""
    pls = structure_planes(inc)
    new_sets = []
    for s in inc.line_sets:
        new_sets.append(frozenset(i for i, pl in enumerate(pls) if s <= pl))
    return IncidenceStructure(
        point_labels=tuple(range(len(pls))),
        line_sets=tuple(new_sets),
        kind="dual",
        detail=f"abstract({inc.kind})",
    )
