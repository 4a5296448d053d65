import pytest
from hypothesis import given, settings, strategies as st

from grasspace.errors import BudgetExceeded, FormatError, TooLarge
from grasspace.grassmann import (
    adjacency_from_edges,
    automorphism_group,
    build_grassmann,
    export_graph,
    parse_graph,
    related,
    skew,
)
from grasspace.projspace import build_space, meet

from oracles import brute_graph_aut_order, prime_rank


def masks_from_pairs(n, pairs):
    masks = [0] * n
    for u, v in pairs:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return tuple(masks)


def complete_graph(n):
    return masks_from_pairs(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n):
    return masks_from_pairs(n, [(i, (i + 1) % n) for i in range(n)])


def test_adjacency_matches_meet(pg32):
    g = build_grassmann(pg32)
    for a in range(35):
        for b in range(a + 1, 35):
            assert related(g, a, b) == (meet(pg32, a, b) is not None)
            assert skew(g, a, b) == (meet(pg32, a, b) is None)


def test_adjacency_matches_rank_oracle(pg32):
    g = build_grassmann(pg32)
    for a in range(35):
        ba = [list(r) for r in pg32.lines[a].basis]
        for b in range(a + 1, 35):
            bb = [list(r) for r in pg32.lines[b].basis]
            meets = prime_rank(ba + bb, 2) <= 3
            assert related(g, a, b) == meets


def test_related_is_reflexive_and_symmetric(pg32):
    g = build_grassmann(pg32)
    for a in range(0, 35, 7):
        assert related(g, a, a)
        assert not skew(g, a, a)
        for b in range(35):
            assert related(g, a, b) == related(g, b, a)


@pytest.mark.parametrize(
    "n,q,degree",
    [(2, 2, 6), (3, 2, 18), (2, 3, 12), (3, 3, 48), (4, 2, 42)],
)
def test_degree_formula(n, q, degree):
    g = build_grassmann(build_space(n, q))
    assert g.degree() == degree
    assert all(len(nb) == degree for nb in g.neighbors)


def test_plane_case_is_complete(pg22):
    g = build_grassmann(pg22)
    for a in range(7):
        assert len(g.neighbors[a]) == 6


def test_skew_line_count_pg32(pg32):
    g = build_grassmann(pg32)
    for a in range(35):
        assert sum(1 for b in range(35) if skew(g, a, b)) == 16


def test_strongly_regular_parameters_pg32(pg32):
    g = build_grassmann(pg32)
    for a in range(35):
        for b in range(a + 1, 35):
            common = (g.masks[a] & g.masks[b]).bit_count()
            assert common == 9


def test_build_grassmann_is_cached(pg32):
    assert build_grassmann(pg32) is build_grassmann(pg32)


def test_export_graph_shape(pg32):
    text = export_graph(build_grassmann(pg32))
    rows = text.split("\n")
    assert rows[0] == "GRAPH 35 315"
    assert rows[-1] == ""
    assert len(rows) == 317
    edges = [tuple(int(x) for x in r.split(" ")) for r in rows[1:-1]]
    assert edges == sorted(edges)
    assert all(u < v for u, v in edges)


def test_parse_graph_round_trip(pg32, pg23):
    for sp in (pg32, pg23):
        g = build_grassmann(sp)
        text = export_graph(g)
        v_count, edges = parse_graph(text)
        assert v_count == len(g.neighbors)
        assert adjacency_from_edges(v_count, edges) == g.masks


@pytest.mark.parametrize(
    "text,lineno",
    [
        ("", 1),
        ("GRAPH 3\n", 1),
        ("EDGES 3 1\n0 1\n", 1),
        ("GRAPH a 1\n0 1\n", 1),
        ("GRAPH 3 -1\n", 1),
        ("GRAPH 3 2\n0 1\n", 3),
        ("GRAPH 3 1\n0 1\n1 2\n", 3),
        ("GRAPH 3 1\n1 0\n", 2),
        ("GRAPH 3 1\n0 3\n", 2),
        ("GRAPH 3 1\n0 x\n", 2),
        ("GRAPH 3 2\n1 2\n0 1\n", 3),
        ("GRAPH 3 2\n0 1\n0 1\n", 3),
        ("GRAPH 3 1\n0  1\n", 2),
    ],
)
def test_parse_graph_rejects_malformed(text, lineno):
    with pytest.raises(FormatError) as err:
        parse_graph(text)
    assert err.value.lineno == lineno


def test_parse_graph_accepts_empty_graph():
    assert parse_graph("GRAPH 0 0\n") == (0, ())
    assert parse_graph("GRAPH 4 0\n") == (4, ())


@pytest.mark.parametrize(
    "masks",
    [
        complete_graph(1),
        complete_graph(4),
        complete_graph(7),
        cycle_graph(5),
        cycle_graph(6),
        masks_from_pairs(4, [(0, 1), (1, 2), (2, 3)]),
        masks_from_pairs(2, []),
        masks_from_pairs(6, [(0, 1), (2, 3)]),
    ],
)
def test_automorphism_order_matches_brute_force(masks):
    report = automorphism_group(masks)
    assert report.group_order == brute_graph_aut_order(masks)
    for gen in report.generators:
        relabeled = masks_from_pairs(
            len(masks),
            [
                (gen[u], gen[v])
                for u in range(len(masks))
                for v in range(u + 1, len(masks))
                if masks[u] >> v & 1
            ],
        )
        assert relabeled == tuple(masks)


def test_automorphism_group_pg32(pg32):
    report = automorphism_group(build_grassmann(pg32))
    assert report.group_order == 40320
    assert report.nodes_explored < 10_000


@given(seed=st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_automorphism_order_is_relabeling_invariant(seed):
    import random

    rng = random.Random(seed)
    n = rng.randrange(1, 8)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
    masks = masks_from_pairs(n, pairs)
    perm = list(range(n))
    rng.shuffle(perm)
    shuffled = masks_from_pairs(n, [(perm[u], perm[v]) for u, v in pairs])
    assert automorphism_group(masks).group_order == automorphism_group(shuffled).group_order


def test_collineation_perms_are_graph_automorphisms(pg32):
    from grasspace.grassmann import _is_automorphism
    from grasspace.theorems import InstanceGenerator, InstanceKind, generate_instance

    g = build_grassmann(pg32)
    for seed in range(20):
        lm = generate_instance(
            InstanceGenerator(seed, InstanceKind.COLLINEATION), pg32, pg32
        )
        perm = tuple(lm.image[l] for l in range(35))
        assert _is_automorphism(g.masks, perm)


def test_automorphism_group_too_large():
    with pytest.raises(TooLarge):
        automorphism_group(build_grassmann(build_space(4, 3)))


def test_automorphism_group_budget(pg32):
    with pytest.raises(BudgetExceeded):
        automorphism_group(build_grassmann(pg32), node_budget=5)
