"""Grassmann space of lines: the intersection relation and its graph.

Two lines are related when they share a point; the relation is reflexive,
so the graph stores the irreflexive part and `related` re-adds the
diagonal.  The graph of PG(n, q) is regular of degree
(q+1)((q^n - 1)/(q - 1) - 1).

The automorphism search uses equitable partition refinement with popcount
signatures, smallest-cell branching with smallest-id tie-breaking, and
first-path stabilizer accounting, so reports are deterministic and the
group order is exact without materializing the group.
"""

import dataclasses
import weakref

from .errors import BudgetExceeded, FormatError, TooLarge

MAX_AUT_VERTICES = 200
DEFAULT_NODE_BUDGET = 2_000_000


@dataclasses.dataclass(eq=False)
class GrassmannSpace:
    space: object
    neighbors: tuple  # frozenset of line ids per line, diagonal excluded
    masks: tuple  # same adjacency as int bitmasks

    def line_count(self):
        return len(self.neighbors)

    def degree(self):
        q = self.space.q
        n = self.space.n
        return (q + 1) * ((q**n - 1) // (q - 1) - 1)

    def __repr__(self):
        return f"Grassmann({self.space!r})"


@dataclasses.dataclass(frozen=True)
class AutomorphismReport:
    group_order: int
    generators: tuple  # vertex permutations as tuples
    nodes_explored: int
    base: tuple  # vertices fixed along the first path


_CACHE = weakref.WeakKeyDictionary()


def build_grassmann(sp) -> GrassmannSpace:
    """Adjacency of the line-intersection graph of a space (cached per space)."""
    g = _CACHE.get(sp)
    if g is not None:
        return g
    sets = sp.line_point_sets
    count = len(sets)
    neighbors = []
    masks = [0] * count
    for a in range(count):
        sa = sets[a]
        row = set()
        for b in range(count):
            if b != a and sa & sets[b]:
                row.add(b)
                masks[a] |= 1 << b
        neighbors.append(frozenset(row))
    g = GrassmannSpace(space=sp, neighbors=tuple(neighbors), masks=tuple(masks))
    expected = g.degree()
    for a, row in enumerate(neighbors):
        assert len(row) == expected, f"line {a} has degree {len(row)}"
    _CACHE[sp] = g
    return g


def related(g: GrassmannSpace, a: int, b: int) -> bool:
    """Reflexive intersection relation: a = b or the lines share a point."""
    return a == b or b in g.neighbors[a]


def skew(g: GrassmannSpace, a: int, b: int) -> bool:
    return a != b and b not in g.neighbors[a]


def export_graph(g: GrassmannSpace) -> str:
    """GRAPH format: header `GRAPH V E`, then `u v` rows with u < v, sorted."""
    edges = []
    for a in range(len(g.neighbors)):
        for b in g.neighbors[a]:
            if a < b:
                edges.append((a, b))
    edges.sort()
    lines = [f"GRAPH {len(g.neighbors)} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def parse_graph(text: str):
    """Parse the GRAPH format back into (vertex count, sorted edge tuple).

    Raises FormatError with a 1-based line number on any deviation from the
    byte-exact contract (header shape, edge order, id ranges, row count).
    """
    rows = text.split("\n")
    if rows and rows[-1] == "":
        rows.pop()
    if not rows:
        raise FormatError(1, "empty input, expected GRAPH header")
    head = rows[0].split(" ")
    if len(head) != 3 or head[0] != "GRAPH":
        raise FormatError(1, f"expected 'GRAPH <V> <E>', got {rows[0]!r}")
    try:
        v_count = int(head[1])
        e_count = int(head[2])
    except ValueError:
        raise FormatError(1, f"non-integer counts in header {rows[0]!r}") from None
    if v_count < 0 or e_count < 0:
        raise FormatError(1, "negative counts in header")
    if len(rows) - 1 != e_count:
        raise FormatError(
            min(len(rows) + 1, e_count + 2),
            f"expected {e_count} edge rows, found {len(rows) - 1}",
        )
    edges = []
    prev = None
    for i, row in enumerate(rows[1:], start=2):
        parts = row.split(" ")
        if len(parts) != 2:
            raise FormatError(i, f"expected '<u> <v>', got {row!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(i, f"non-integer edge {row!r}") from None
        if not (0 <= u < v < v_count):
            raise FormatError(i, f"edge ({u},{v}) out of range for {v_count} vertices")
        if prev is not None and (u, v) <= prev:
            raise FormatError(i, f"edge ({u},{v}) out of order")
        prev = (u, v)
        edges.append((u, v))
    return v_count, tuple(edges)


def adjacency_from_edges(v_count: int, edges) :
    """Neighbor bitmasks from an edge list."""
    masks = [0] * v_count
    for u, v in edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return tuple(masks)


def _as_masks(g):
    if isinstance(g, GrassmannSpace):
        return g.masks
    return tuple(g)


def _refine(masks, pa, pb):
    """Lockstep equitable refinement of paired ordered partitions.

    Returns (pa, pb) stabilized, or None when the signature multisets of a
    cell pair disagree (no isomorphism can respect the pairing).
    """
    while True:
        amasks = []
        bmasks = []
        for cell in pa:
            m = 0
            for v in cell:
                m |= 1 << v
            amasks.append(m)
        for cell in pb:
            m = 0
            for v in cell:
                m |= 1 << v
            bmasks.append(m)
        new_a = []
        new_b = []
        changed = False
        for ca, cb in zip(pa, pb):
            if len(ca) == 1:
                new_a.append(ca)
                new_b.append(cb)
                continue
            buckets_a = {}
            for v in ca:
                sig = tuple((masks[v] & m).bit_count() for m in amasks)
                buckets_a.setdefault(sig, []).append(v)
            buckets_b = {}
            for v in cb:
                sig = tuple((masks[v] & m).bit_count() for m in bmasks)
                buckets_b.setdefault(sig, []).append(v)
            if sorted(buckets_a) != sorted(buckets_b):
                return None
            for sig in sorted(buckets_a):
                if len(buckets_a[sig]) != len(buckets_b[sig]):
                    return None
            if len(buckets_a) > 1:
                changed = True
            for sig in sorted(buckets_a):
                new_a.append(tuple(buckets_a[sig]))
                new_b.append(tuple(buckets_b[sig]))
        pa, pb = new_a, new_b
        if not changed:
            return pa, pb


def _branch_cell(partition):
    """Index of the smallest non-singleton cell (first on ties), or None."""
    best = None
    for i, cell in enumerate(partition):
        if len(cell) > 1 and (best is None or len(cell) < len(partition[best])):
            best = i
    return best


def _individualize(partition, cell_index, vertex):
    cell = partition[cell_index]
    rest = tuple(v for v in cell if v != vertex)
    return (
        list(partition[:cell_index])
        + [(vertex,), rest]
        + list(partition[cell_index + 1 :])
    )


def _is_automorphism(masks, perm):
    for v, nm in enumerate(masks):
        image = 0
        m = nm
        while m:
            low = m & -m
            image |= 1 << perm[low.bit_length() - 1]
            m ^= low
        if image != masks[perm[v]]:
            return False
    return True


class _Search:
    def __init__(self, masks, node_budget):
        self.masks = masks
        self.budget = node_budget
        self.nodes = 0

    def find(self, pa, pb):
        """One adjacency-preserving bijection respecting the paired cells."""
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(
                f"automorphism search exceeded {self.budget} nodes"
            )
        refined = _refine(self.masks, pa, pb)
        if refined is None:
            return None
        pa, pb = refined
        ci = _branch_cell(pa)
        if ci is None:
            perm = [0] * len(self.masks)
            for ca, cb in zip(pa, pb):
                perm[ca[0]] = cb[0]
            if _is_automorphism(self.masks, perm):
                return tuple(perm)
            return None
        va = min(pa[ci])
        for u in sorted(pb[ci]):
            result = self.find(
                _individualize(pa, ci, va), _individualize(pb, ci, u)
            )
            if result is not None:
                return result
        return None


def _orbit_close(seed, generators):
    orbit = set(seed)
    frontier = list(orbit)
    while frontier:
        v = frontier.pop()
        for g in generators:
            w = g[v]
            if w not in orbit:
                orbit.add(w)
                frontier.append(w)
    return orbit


def automorphism_group(g, node_budget: int = DEFAULT_NODE_BUDGET) -> AutomorphismReport:
    """Exact automorphism group order of an adjacency structure.

    Accepts a GrassmannSpace or a sequence of neighbor bitmasks.  At each
    level of the stabilizer chain the orbit of the smallest vertex in the
    branch cell is closed under the generators found so far, so failed
    searches happen only for vertices genuinely outside the orbit.
    """
    masks = _as_masks(g)
    count = len(masks)
    if count > MAX_AUT_VERTICES:
        raise TooLarge(f"{count} vertices exceeds the {MAX_AUT_VERTICES} limit")
    if count == 0:
        return AutomorphismReport(1, (), 0, ())

    search = _Search(masks, node_budget)
    generators = []
    base = []
    order = 1

    refined = _refine(masks, [tuple(range(count))], [tuple(range(count))])
    assert refined is not None
    partition = refined[0]

    while True:
        ci = _branch_cell(partition)
        if ci is None:
            break
        cell = partition[ci]
        v0 = min(cell)
        level_gens = []
        orbit = {v0}
        for u in sorted(cell):
            if u in orbit:
                continue
            found = search.find(
                _individualize(partition, ci, v0),
                _individualize(partition, ci, u),
            )
            if found is not None:
                assert found[v0] == u
                level_gens.append(found)
                generators.append(found)
                orbit = _orbit_close(orbit, level_gens)
        order *= len(orbit)
        base.append(v0)
        refined = _refine(
            masks,
            _individualize(partition, ci, v0),
            _individualize(partition, ci, v0),
        )
        assert refined is not None, "self-pairing cannot fail refinement"
        partition = refined[0]

    for perm in generators:
        assert _is_automorphism(masks, perm)
    return AutomorphismReport(
        group_order=order,
        generators=tuple(generators),
        nodes_explored=search.nodes,
        base=tuple(base),
    )
