import random
from itertools import combinations
from math import comb

import pytest

from bergeramsey import (
    ColoredHypergraph,
    FormatError,
    TargetGraph,
    graph_contains_clique,
    induced_subcoloring,
    iter_colex,
    make_target,
    rank_colex,
    read_brc1,
    read_witness,
    unrank_colex,
    write_brc1,
    write_witness,
)
from bergeramsey.core import BergeWitness, pair_rank


def colex_sorted(n, r):
    # independent oracle: sort all r-subsets by reversed-tuple comparison
    return sorted(combinations(range(n), r), key=lambda s: s[::-1])


def test_rank_examples():
    assert rank_colex((0, 1, 2)) == 0
    # enumerate all 3-sets of {0..4} in colex order and index
    order = colex_sorted(5, 3)
    assert rank_colex((0, 1, 4)) == order.index((0, 1, 4)) == 4
    assert rank_colex((1, 2, 3)) == order.index((1, 2, 3)) == 3


def test_unrank_examples():
    assert unrank_colex(0, 3) == (0, 1, 2)
    assert unrank_colex(4, 3) == (0, 1, 4)
    # colex 2-sets run {0,1},{0,2},{1,2},{0,3},...
    assert colex_sorted(4, 2)[3] == (0, 3)
    assert unrank_colex(3, 2) == (0, 3)


def test_rank_rejects_unsorted_and_duplicates():
    with pytest.raises(ValueError):
        rank_colex((1, 0, 2))
    with pytest.raises(ValueError):
        rank_colex((0, 1, 1))


def test_rank_unrank_mutually_inverse_exhaustive():
    for r in range(1, 6):
        for n in range(r, 13):
            for rank, S in enumerate(colex_sorted(n, r)):
                assert rank_colex(S) == rank
                assert unrank_colex(rank, r) == S


def test_iter_colex_matches_rank_order():
    for r in range(1, 5):
        for n in range(r, 10):
            assert list(iter_colex(n, r)) == colex_sorted(n, r)


def test_pair_rank_matches_rank_colex():
    for u, v in combinations(range(12), 2):
        assert pair_rank(u, v) == pair_rank(v, u) == rank_colex((u, v))


def test_hypergraph_validation():
    with pytest.raises(ValueError):
        ColoredHypergraph(3, 2, 2, [])  # r > N
    with pytest.raises(ValueError):
        ColoredHypergraph(3, 2, 4, [1, 1, 1])  # wrong length
    with pytest.raises(ValueError):
        ColoredHypergraph(3, 2, 4, [1, 1, 3, 1])  # color out of range
    H = ColoredHypergraph.monochromatic(3, 2, 5)
    assert H.num_hyperedges == 10
    with pytest.raises(AttributeError):
        H.r = 4
    with pytest.raises(ValueError):
        H.colors[0] = 2  # read-only array


def test_induced_identity_and_monochromatic():
    rng = random.Random(7)
    cols = [rng.randint(1, 3) for _ in range(comb(6, 3))]
    H = ColoredHypergraph(3, 3, 6, cols)
    assert induced_subcoloring(H, range(6)) == H
    M = ColoredHypergraph.monochromatic(3, 2, 7, color=2)
    sub = induced_subcoloring(M, [0, 2, 3, 6])
    assert set(int(x) for x in sub.colors) == {2}


def test_induced_single_hyperedge():
    cols = [1] * comb(5, 3)
    cols[rank_colex((0, 1, 4))] = 2
    H = ColoredHypergraph(3, 2, 5, cols)
    sub = induced_subcoloring(H, [0, 1, 4])
    assert sub.N == 3 and sub.num_hyperedges == 1
    assert int(sub.colors[0]) == 2


def test_induced_functorial():
    rng = random.Random(11)
    cols = [rng.randint(1, 2) for _ in range(comb(8, 3))]
    H = ColoredHypergraph(3, 2, 8, cols)
    W1 = [0, 1, 3, 4, 5, 7]
    W2_local = [0, 2, 3, 5]  # positions within W1
    twice = induced_subcoloring(induced_subcoloring(H, W1), W2_local)
    once = induced_subcoloring(H, [W1[i] for i in W2_local])
    assert twice == once


def test_induced_too_small():
    H = ColoredHypergraph.monochromatic(3, 2, 5)
    with pytest.raises(ValueError):
        induced_subcoloring(H, [0, 1])


def test_make_target_families():
    K4 = make_target("K4")
    assert K4.n == 4 and len(K4.edges) == 6
    P3 = make_target("P3")
    assert P3.n == 3 and P3.edges == frozenset({(0, 1), (1, 2)})
    C5 = make_target("C5")
    assert C5.n == 5 and len(C5.edges) == 5
    for bad in ("C2", "P1", "K0", "Q7", "K", ""):
        with pytest.raises(FormatError):
            make_target(bad)


def test_make_target_edge_list_file(tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("0 1\n1 2  # comment\n\n2 3\n")
    g = make_target(str(f))
    assert g.n == 4 and g.edges == frozenset({(0, 1), (1, 2), (2, 3)})
    bad = tmp_path / "bad.txt"
    bad.write_text("0 0\n")
    with pytest.raises(FormatError):
        make_target(str(bad))
    with pytest.raises(FormatError):
        make_target(str(tmp_path / "missing.txt"))


def test_target_graph_validation():
    with pytest.raises(ValueError):
        TargetGraph(3, frozenset({(1, 1)}))
    with pytest.raises(ValueError):
        TargetGraph(3, frozenset({(0, 3)}))
    with pytest.raises(ValueError):
        TargetGraph(3, frozenset({(2, 1)}))  # not normalized


def test_clique_trivial_cases():
    K5 = make_target("K5")
    assert graph_contains_clique(K5, 5) == [0, 1, 2, 3, 4]
    bip = TargetGraph.from_pairs(6, [(i, j + 3) for i in range(3) for j in range(3)])
    assert graph_contains_clique(bip, 3) is None
    assert graph_contains_clique(TargetGraph.from_pairs(4, []), 1) == [0]


def test_clique_agrees_with_subset_scan():
    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(4, 9)
        edges = [e for e in combinations(range(n), 2) if rng.random() < rng.choice((0.3, 0.5, 0.7))]
        g = TargetGraph.from_pairs(n, edges)
        es = set(g.edges)
        for k in range(2, n + 1):
            brute = any(
                all((a, b) in es for a, b in combinations(sub, 2))
                for sub in combinations(range(n), k)
            )
            assert (graph_contains_clique(g, k) is not None) == brute


def test_brc1_round_trip(tmp_path):
    rng = random.Random(5)
    H = ColoredHypergraph(3, 4, 7, [rng.randint(1, 4) for _ in range(comb(7, 3))])
    p1 = tmp_path / "a.brc"
    p2 = tmp_path / "b.brc"
    write_brc1(H, p1)
    H2 = read_brc1(p1)
    assert H2 == H
    write_brc1(H2, p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_brc1_rejects_bad_files(tmp_path):
    good = tmp_path / "g.brc"
    write_brc1(ColoredHypergraph.monochromatic(3, 2, 4), good)
    text = good.read_text()
    cases = {
        "trailing": text + "1\n",
        "truncated": text.rsplit(" ", 1)[0] + "\n",
        "header": text.replace("BRC1", "BRC2"),
        "range": text.replace("1 1", "1 9", 1),
        "noninteger": text.replace("1 1", "1 x", 1),
    }
    for name, bad_text in cases.items():
        bad = tmp_path / f"{name}.brc"
        bad.write_text(bad_text)
        with pytest.raises(FormatError):
            read_brc1(bad)


def test_witness_json_round_trip(tmp_path):
    w = BergeWitness.build(2, [3, 0, 5], [((0, 1), 7), ((1, 2), 9), ((0, 2), 11)])
    p = tmp_path / "w.json"
    write_witness(w, p)
    assert read_witness(p) == w
    p2 = tmp_path / "w2.json"
    write_witness(read_witness(p), p2)
    assert p.read_bytes() == p2.read_bytes()
    bad = tmp_path / "bad.json"
    bad.write_text("{\"color\": 1}")
    with pytest.raises(FormatError):
        read_witness(bad)
