"""Shadow-graph analysis and Berge-copy detection with verifiable witnesses.

A pair is light in color i when fewer than C(r,2) hyperedges of color i
contain it, heavy otherwise. Heavy embeddings always extend to monochromatic
Berge copies: each image pair has at least C(r,2) candidate hyperedges while
one hyperedge can serve at most C(r,2) pairs, so Hall's condition holds and a
perfect matching of target edges onto distinct hyperedges exists.

Detection outcomes are tri-state: a budget overrun yields "inconclusive",
never a false "absent", so Ramsey certification stays sound.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb

import numpy as np

from .core import (
    BergeWitness,
    ColoredHypergraph,
    TargetGraph,
    iter_colex,
    pair_rank,
    rank_colex,
    unrank_colex,
)

WITNESS = "witness"
ABSENT = "absent"
INCONCLUSIVE = "inconclusive"
FREE = "free"


@dataclass(frozen=True)
class DetectionOutcome:
    status: str
    witness: BergeWitness | None = None
    nodes: int = 0


class _OutOfBudget(Exception):
    pass


# ---------------------------------------------------------------------------
# Maximum bipartite matching (Hopcroft-Karp)
# ---------------------------------------------------------------------------

_INF = float("inf")


def max_bipartite_matching(adjacency) -> tuple[int, list]:
    """Hopcroft-Karp maximum matching.

    ``adjacency[i]`` lists the right-side ids reachable from left vertex i.
    Returns (size, match_left) where match_left[i] is the matched right id or
    None. Uses only lists and dicts so results are identical across runs.
    """
    n_left = len(adjacency)
    match_left: list = [None] * n_left
    match_right: dict = {}
    dist = [0] * n_left

    def bfs() -> bool:
        queue = []
        for i in range(n_left):
            if match_left[i] is None:
                dist[i] = 0
                queue.append(i)
            else:
                dist[i] = _INF
        found = _INF
        head = 0
        while head < len(queue):
            i = queue[head]
            head += 1
            if dist[i] >= found:
                continue
            for right in adjacency[i]:
                j = match_right.get(right)
                if j is None:
                    if found == _INF:
                        found = dist[i] + 1
                elif dist[j] == _INF:
                    dist[j] = dist[i] + 1
                    queue.append(j)
        return found != _INF

    def dfs(i) -> bool:
        for right in adjacency[i]:
            j = match_right.get(right)
            if j is None or (dist[j] == dist[i] + 1 and dfs(j)):
                match_left[i] = right
                match_right[right] = i
                return True
        dist[i] = _INF
        return False

    size = 0
    while bfs():
        for i in range(n_left):
            if match_left[i] is None and dfs(i):
                size += 1
    return size, match_left


# ---------------------------------------------------------------------------
# Per-color candidate index
# ---------------------------------------------------------------------------

class _PoolIndex:
    """Candidate hyperedges per vertex pair for one pool of hyperedge ranks."""

    __slots__ = ("N", "r", "ranks", "by_pair", "adj")

    def __init__(self, N: int, r: int, ranks):
        self.N = N
        self.r = r
        self.ranks = list(ranks)
        self.by_pair: dict = {}
        self.adj = [set() for _ in range(N)]
        for rk in self.ranks:
            S = unrank_colex(rk, r)
            for a, b in combinations(S, 2):
                self.by_pair.setdefault(pair_rank(a, b), []).append(rk)
                self.adj[a].add(b)
                self.adj[b].add(a)

    def candidates(self, u: int, v: int) -> list:
        return self.by_pair.get(pair_rank(u, v), [])


def _match_assignment(G: TargetGraph, emb, index: _PoolIndex):
    """Perfect matching of target edges onto distinct covering hyperedges, or None."""
    edges = G.edge_list
    adjacency = []
    for u, v in edges:
        cand = index.candidates(emb[u], emb[v])
        if not cand:
            return None
        adjacency.append(cand)
    size, match = max_bipartite_matching(adjacency)
    if size < len(edges):
        return None
    return tuple((edges[k], match[k]) for k in range(len(edges)))


# ---------------------------------------------------------------------------
# Core search over a hyperedge pool
# ---------------------------------------------------------------------------

def _search_pool(N: int, r: int, G: TargetGraph, index: _PoolIndex, budget):
    """Tri-state Berge search of one monochromatic pool.

    For complete targets, cores are enumerated as vertex subsets in
    lexicographic order, pruned by pair coverage; other targets use injective
    embedding backtracking in descending-degree vertex order. Each search node
    spends one unit of budget.
    """
    spent = [0]

    def spend():
        spent[0] += 1
        if budget is not None and spent[0] > budget:
            raise _OutOfBudget

    if G.is_complete:
        n = G.n

        def extend(chosen, cand):
            spend()
            if len(chosen) == n:
                asg = _match_assignment(G, chosen, index)
                if asg is not None:
                    return list(chosen), asg
                return None
            for pos, v in enumerate(cand):
                rest = [u for u in cand[pos + 1 :] if u in index.adj[v]]
                if len(chosen) + 1 + len(rest) < n:
                    continue
                got = extend(chosen + [v], rest)
                if got is not None:
                    return got
            return None

        try:
            got = extend([], list(range(N)))
        except _OutOfBudget:
            return INCONCLUSIVE, None, None, spent[0]
        if got is None:
            return ABSENT, None, None, spent[0]
        return WITNESS, got[0], got[1], spent[0]

    order = sorted(range(G.n), key=lambda v: (-G.degree(v), v))
    adj_t = G.adjacency()
    # mapped neighbors of order[k] among order[:k]
    prior = [[g for g in order[:k] if g in adj_t[order[k]]] for k in range(G.n)]
    emb = [-1] * G.n
    used = [False] * N

    def place(k):
        spend()
        if k == G.n:
            asg = _match_assignment(G, emb, index)
            if asg is not None:
                return list(emb), asg
            return None
        g = order[k]
        for v in range(N):
            if used[v]:
                continue
            if any(emb[p] not in index.adj[v] for p in prior[k]):
                continue
            emb[g] = v
            used[v] = True
            got = place(k + 1)
            used[v] = False
            emb[g] = -1
            if got is not None:
                return got
        return None

    try:
        got = place(0)
    except _OutOfBudget:
        return INCONCLUSIVE, None, None, spent[0]
    if got is None:
        return ABSENT, None, None, spent[0]
    return WITNESS, got[0], got[1], spent[0]


def berge_in_pool(N: int, r: int, G: TargetGraph, ranks, color: int, budget=None) -> DetectionOutcome:
    """Search an explicit pool of hyperedge ranks for a Berge copy of G.

    The pool stands for the finalized hyperedges of one color; used both by
    find_berge and by partial-coloring pruning in the exhaustive searcher.
    """
    if G.n > N:
        return DetectionOutcome(ABSENT, None, 0)
    index = _PoolIndex(N, r, ranks)
    status, core, asg, nodes = _search_pool(N, r, G, index, budget)
    if status == WITNESS:
        return DetectionOutcome(WITNESS, BergeWitness.build(color, core, asg), nodes)
    return DetectionOutcome(status, None, nodes)


def count_witness_cores(N: int, r: int, G: TargetGraph, ranks) -> int:
    """Number of cores admitting a perfect edge-to-hyperedge matching in the pool.

    Local-search objective helper; exact, no budget.
    """
    index = _PoolIndex(N, r, ranks)
    total = [0]

    if G.is_complete:
        n = G.n
        if n > N:
            return 0

        def extend(chosen, cand):
            if len(chosen) == n:
                if _match_assignment(G, chosen, index) is not None:
                    total[0] += 1
                return
            for pos, v in enumerate(cand):
                rest = [u for u in cand[pos + 1 :] if u in index.adj[v]]
                if len(chosen) + 1 + len(rest) >= n:
                    extend(chosen + [v], rest)

        extend([], list(range(N)))
        return total[0]

    for core in permutations(range(N), G.n):
        if _match_assignment(G, core, index) is not None:
            total[0] += 1
    return total[0]


def berge_touching(N: int, r: int, G: TargetGraph, ranks, touch_rank: int) -> bool:
    """Does the pool contain a Berge copy of G that uses the given hyperedge?

    Incremental check for searchers: when the pool minus ``touch_rank`` is
    already known witness-free, any witness must assign some target edge to
    the touched hyperedge, so its core meets that hyperedge in two vertices.
    For complete targets only such cores are enumerated; other targets fall
    back to a full pool search.
    """
    if not G.edges:
        return G.n <= N
    if G.n > N:
        return False
    index = _PoolIndex(N, r, ranks)
    if not G.is_complete:
        status, _, _, _ = _search_pool(N, r, G, index, None)
        return status == WITNESS
    n = G.n
    touch = unrank_colex(touch_rank, r)

    def extend(chosen, cand):
        if len(chosen) == n:
            return _match_assignment(G, sorted(chosen), index) is not None
        for pos, v in enumerate(cand):
            rest = [u for u in cand[pos + 1 :] if u in index.adj[v]]
            if len(chosen) + 1 + len(rest) < n:
                continue
            if extend(chosen + [v], rest):
                return True
        return False

    for a, b in combinations(touch, 2):
        if b not in index.adj[a]:
            continue
        cand = sorted((index.adj[a] & index.adj[b]) - {a, b})
        if extend([a, b], cand):
            return True
    return False


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------

def find_berge(H: ColoredHypergraph, i: int, G: TargetGraph, budget=None) -> DetectionOutcome:
    """Search color class i of H for a Berge copy of G.

    Exact when the budget is not exhausted; a budget overrun yields status
    "inconclusive", which is distinct from "absent".
    """
    return berge_in_pool(H.N, H.r, G, H.ranks_of_color(i), i, budget)


MAX_BRUTE_HYPEREDGES = 40
MAX_BRUTE_TARGET_EDGES = 6


def brute_force_berge(H: ColoredHypergraph, i: int, G: TargetGraph) -> DetectionOutcome:
    """Independent tiny-scale oracle: try injective edge-to-hyperedge maps directly.

    Enumerates all injective cores and assigns hyperedges edge by edge with
    containment filtering; no matching machinery involved. Guarded to desk
    scale.
    """
    if H.num_hyperedges > MAX_BRUTE_HYPEREDGES:
        raise ValueError(f"brute force limited to {MAX_BRUTE_HYPEREDGES} hyperedges, got {H.num_hyperedges}")
    if len(G.edges) > MAX_BRUTE_TARGET_EDGES:
        raise ValueError(f"brute force limited to {MAX_BRUTE_TARGET_EDGES} target edges, got {len(G.edges)}")
    ranks = H.ranks_of_color(i)
    members = {rk: set(unrank_colex(rk, H.r)) for rk in ranks}
    edges = G.edge_list

    for core in permutations(range(H.N), G.n):

        def assign(k, used):
            if k == len(edges):
                return []
            u, v = edges[k]
            for rk in ranks:
                if rk in used:
                    continue
                S = members[rk]
                if core[u] in S and core[v] in S:
                    rest = assign(k + 1, used | {rk})
                    if rest is not None:
                        return [(edges[k], rk)] + rest
            return None

        asg = assign(0, frozenset())
        if asg is not None:
            return DetectionOutcome(WITNESS, BergeWitness.build(i, core, asg), 0)
    return DetectionOutcome(ABSENT, None, 0)


@dataclass(frozen=True, eq=False)
class ShadowReport:
    """Light-pair census of a coloring.

    ``cover[i-1][p]`` counts color-i hyperedges containing the pair of colex
    rank p. ``light_pairs[i-1]`` are the pairs covered fewer than C(r,2)
    times, ``light_vertices[i-1]`` their endpoints, and ``overlap[i-1][j-1]``
    the intersection sizes of the light-vertex sets (diagonal holds their
    sizes).
    """

    r: int
    c: int
    N: int
    threshold: int
    cover: np.ndarray
    light_pairs: tuple
    light_vertices: tuple
    overlap: np.ndarray


def _pair_cover_all(H: ColoredHypergraph) -> np.ndarray:
    cover = np.zeros((H.c, comb(H.N, 2)), dtype=np.int64)
    for idx, S in enumerate(iter_colex(H.N, H.r)):
        row = cover[int(H.colors[idx]) - 1]
        for a, b in combinations(S, 2):
            row[pair_rank(a, b)] += 1
    return cover


def shadow_report(H: ColoredHypergraph) -> ShadowReport:
    """Exact per-color cover counting over all pairs and hyperedges."""
    thresh = comb(H.r, 2)
    cover = _pair_cover_all(H)
    pairs = list(iter_colex(H.N, 2))
    light_pairs = []
    light_vertices = []
    for i in range(H.c):
        lp = [pairs[p] for p in np.flatnonzero(cover[i] < thresh)]
        light_pairs.append(tuple(lp))
        light_vertices.append(tuple(sorted({v for e in lp for v in e})))
    overlap = np.zeros((H.c, H.c), dtype=np.int64)
    vsets = [set(vs) for vs in light_vertices]
    for i in range(H.c):
        for j in range(i, H.c):
            overlap[i, j] = overlap[j, i] = len(vsets[i] & vsets[j])
    cover.setflags(write=False)
    overlap.setflags(write=False)
    return ShadowReport(
        r=H.r,
        c=H.c,
        N=H.N,
        threshold=thresh,
        cover=cover,
        light_pairs=tuple(light_pairs),
        light_vertices=tuple(light_vertices),
        overlap=overlap,
    )


def heavy_graph(H: ColoredHypergraph, i: int) -> TargetGraph:
    """Graph whose edges are the pairs covered at least C(r,2) times in color i."""
    thresh = comb(H.r, 2)
    counts = np.zeros(comb(H.N, 2), dtype=np.int64)
    for rk in H.ranks_of_color(i):
        for a, b in combinations(unrank_colex(rk, H.r), 2):
            counts[pair_rank(a, b)] += 1
    pairs = list(iter_colex(H.N, 2))
    return TargetGraph.from_pairs(H.N, (pairs[p] for p in np.flatnonzero(counts >= thresh)))


def heavy_to_berge(H: ColoredHypergraph, i: int, G: TargetGraph, emb) -> BergeWitness:
    """Extract a Berge witness from an embedding whose image edges are all heavy in color i.

    A perfect matching always exists under the heaviness precondition; a
    matching failure would indicate a broken invariant and raises
    AssertionError.
    """
    emb = [int(v) for v in emb]
    if len(emb) != G.n or len(set(emb)) != len(emb):
        raise ValueError("embedding must be injective and cover all target vertices")
    if any(v < 0 or v >= H.N for v in emb):
        raise ValueError("embedding image out of range")
    thresh = comb(H.r, 2)
    index = _PoolIndex(H.N, H.r, H.ranks_of_color(i))
    for u, v in G.edge_list:
        if len(index.candidates(emb[u], emb[v])) < thresh:
            raise ValueError(f"image pair ({emb[u]},{emb[v]}) of target edge ({u},{v}) is light in color {i}")
    asg = _match_assignment(G, emb, index)
    if asg is None:
        raise AssertionError("perfect matching must exist for all-heavy embeddings")
    return BergeWitness.build(i, emb, asg)


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    failure: str | None = None
    detail: str | None = None


def verify_witness(H: ColoredHypergraph, w: BergeWitness, target: TargetGraph | None = None) -> VerificationResult:
    """Check a witness against a coloring; reports the first failing check.

    Checks, in order: core injectivity, assignment edge shape (and exact
    coverage of the target's edges when one is given), hyperedge
    distinctness, containment of each edge's image in its hyperedge, and
    color uniformity.
    """
    core = w.core
    if len(set(core)) != len(core) or any(v < 0 or v >= H.N for v in core):
        return VerificationResult(False, "core-injectivity", f"core={core}")
    edges = [e for e, _ in w.assignment]
    if len(set(edges)) != len(edges):
        return VerificationResult(False, "assignment-edges", "duplicate target edge")
    for u, v in edges:
        if not (0 <= u < len(core) and 0 <= v < len(core) and u != v):
            return VerificationResult(False, "assignment-edges", f"bad edge ({u},{v})")
    if target is not None:
        if len(core) != target.n:
            return VerificationResult(False, "assignment-edges", "core size differs from target")
        if {(min(u, v), max(u, v)) for u, v in edges} != set(target.edges):
            return VerificationResult(False, "assignment-edges", "assignment does not cover the target edges")
    ranks = [rk for _, rk in w.assignment]
    if len(set(ranks)) != len(ranks):
        return VerificationResult(False, "hyperedge-distinctness", "repeated hyperedge rank")
    M = H.num_hyperedges
    for (u, v), rk in w.assignment:
        if not 0 <= rk < M:
            return VerificationResult(False, "containment", f"rank {rk} out of range")
        S = set(unrank_colex(rk, H.r))
        if core[u] not in S or core[v] not in S:
            return VerificationResult(False, "containment", f"edge ({u},{v}) image not inside hyperedge {rk}")
    if not 1 <= w.color <= H.c:
        return VerificationResult(False, "color-uniformity", f"color {w.color} out of range")
    for _, rk in w.assignment:
        if int(H.colors[rk]) != w.color:
            return VerificationResult(False, "color-uniformity", f"hyperedge {rk} has color {int(H.colors[rk])}")
    return VerificationResult(True)


def mono_free_colors(H: ColoredHypergraph, G: TargetGraph, budget=None, threads: int = 1) -> dict[int, DetectionOutcome]:
    """Per-color Berge status: free / witness / inconclusive.

    H certifies a Ramsey lower bound R > N exactly when all colors come back
    free. Colors may be searched by parallel workers; per-color results are
    deterministic regardless of scheduling.
    """

    def run(i: int) -> tuple[int, DetectionOutcome]:
        out = find_berge(H, i, G, budget)
        status = FREE if out.status == ABSENT else out.status
        return i, DetectionOutcome(status, out.witness, out.nodes)

    colors = range(1, H.c + 1)
    if threads <= 1:
        results = [run(i) for i in colors]
    else:
        with ThreadPoolExecutor(max_workers=min(threads, H.c)) as pool:
            results = list(pool.map(run, colors))
    return dict(sorted(results))
