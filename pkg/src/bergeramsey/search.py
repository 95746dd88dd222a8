"""Exhaustive and randomized search for avoidance colorings and tiny exact Ramsey values.

The exhaustive searcher runs a DFS over hyperedge colors in colex order,
pruning a branch as soon as the finalized hyperedges of the just-assigned
color contain a monochromatic Berge copy. Partially colored hyperedges count
as absent, which is sound: a witness among finalized hyperedges survives
every completion. Color symmetry is broken by fixing the first hyperedge's
color; an optional lex-minimality filter under a caller-supplied set of
vertex permutations rejects duplicate certificates. A budget overrun yields
status "unknown", never a false "none".
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from .core import ColoredHypergraph, TargetGraph, iter_colex, rank_colex
from .detection import FREE, berge_touching, count_witness_cores, mono_free_colors

FOUND = "found"
NONE = "none"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class AvoidanceSearchResult:
    status: str
    coloring: ColoredHypergraph | None = None
    nodes: int = 0


class _Exhausted(Exception):
    pass


def _perm_rank_maps(N: int, r: int, perms) -> list[np.ndarray]:
    """For each vertex permutation, the induced map on hyperedge colex ranks."""
    sets = list(iter_colex(N, r))
    maps = []
    for pi in perms:
        to = np.empty(len(sets), dtype=np.int64)
        for idx, S in enumerate(sets):
            to[idx] = rank_colex(tuple(sorted(pi[v] for v in S)))
        maps.append(to)
    return maps


def _is_lex_minimal(colors: np.ndarray, maps) -> bool:
    for to in maps:
        mapped = np.empty_like(colors)
        mapped[to] = colors
        diff = np.flatnonzero(mapped != colors)
        if diff.size and mapped[diff[0]] < colors[diff[0]]:
            return False
    return True


def find_avoiding_coloring(
    r: int,
    c: int,
    N: int,
    G: TargetGraph,
    mode: str = "exhaustive",
    seed: int | None = None,
    steps: int | None = None,
    budget: int | None = None,
    fix_first_color: bool = True,
    canonical_perms=None,
) -> AvoidanceSearchResult:
    """Search for a c-coloring of the complete r-uniform hypergraph on N
    vertices with no monochromatic Berge copy of G.

    Exhaustive mode is exact: status "none" means no avoidance coloring
    exists (up to the symmetry fixing, which preserves existence); "unknown"
    means the node budget ran out first. Randomized mode is a seeded local
    search over single-hyperedge recolorings and can only return "found" or
    "unknown".
    """
    if r < 2 or c < 1 or N < r:
        raise ValueError("need r >= 2, c >= 1, N >= r")
    if mode == "exhaustive":
        return _exhaustive(r, c, N, G, budget, fix_first_color, canonical_perms)
    if mode == "randomized":
        if seed is None:
            raise ValueError("randomized mode requires a seed")
        return _randomized(r, c, N, G, seed, steps)
    raise ValueError(f"unknown mode {mode!r}")


def _exhaustive(r, c, N, G, budget, fix_first_color, canonical_perms) -> AvoidanceSearchResult:
    M = comb(N, r)
    colors = np.zeros(M, dtype=np.int32)
    pools: list[list[int]] = [[] for _ in range(c + 1)]
    nodes = [0]
    maps = _perm_rank_maps(N, r, canonical_perms) if canonical_perms else None
    hit: list[np.ndarray] = []

    def dfs(idx: int) -> bool:
        if idx == M:
            if maps is not None and not _is_lex_minimal(colors, maps):
                return False
            hit.append(colors.copy())
            return True
        choices = (1,) if (idx == 0 and fix_first_color) else range(1, c + 1)
        for col in choices:
            nodes[0] += 1
            if budget is not None and nodes[0] > budget:
                raise _Exhausted
            colors[idx] = col
            pools[col].append(idx)
            try:
                if not berge_touching(N, r, G, pools[col], idx) and dfs(idx + 1):
                    return True
            finally:
                pools[col].pop()
                colors[idx] = 0
        return False

    try:
        found = dfs(0)
    except _Exhausted:
        return AvoidanceSearchResult(UNKNOWN, None, nodes[0])
    if not found:
        return AvoidanceSearchResult(NONE, None, nodes[0])
    return AvoidanceSearchResult(FOUND, ColoredHypergraph(r, c, N, hit[0]), nodes[0])


_SIDEWAYS_CAP = 30
_DEFAULT_STEPS = 20000


def _randomized(r, c, N, G, seed, steps) -> AvoidanceSearchResult:
    rng = random.Random(seed)
    M = comb(N, r)
    steps = _DEFAULT_STEPS if steps is None else steps

    def fresh():
        cols = [rng.randint(1, c) for _ in range(M)]
        pools = [sorted(i for i in range(M) if cols[i] == s) for s in range(c + 1)]
        pools[0] = []
        counts = [0] + [count_witness_cores(N, r, G, pools[s]) for s in range(1, c + 1)]
        return cols, pools, counts

    cols, pools, counts = fresh()
    obj = sum(counts)
    sideways = 0
    evals = 0
    for _ in range(steps):
        if obj == 0:
            H = ColoredHypergraph(r, c, N, cols)
            statuses = mono_free_colors(H, G)
            if all(out.status == FREE for out in statuses.values()):
                return AvoidanceSearchResult(FOUND, H, evals)
            raise AssertionError("zero-objective coloring failed exact re-verification")
        best_gain = None
        best_moves = []
        for idx in range(M):
            old = cols[idx]
            pool_minus = [x for x in pools[old] if x != idx]
            cnt_minus = count_witness_cores(N, r, G, pool_minus)
            evals += 1
            for col in range(1, c + 1):
                if col == old:
                    continue
                pool_plus = sorted(pools[col] + [idx])
                cnt_plus = count_witness_cores(N, r, G, pool_plus)
                evals += 1
                new_obj = obj - counts[old] - counts[col] + cnt_minus + cnt_plus
                key = new_obj
                if best_gain is None or key < best_gain:
                    best_gain = key
                    best_moves = [(idx, col, cnt_minus, cnt_plus)]
                elif key == best_gain:
                    best_moves.append((idx, col, cnt_minus, cnt_plus))
        if best_gain is None or best_gain > obj or (best_gain == obj and sideways >= _SIDEWAYS_CAP):
            cols, pools, counts = fresh()
            obj = sum(counts)
            sideways = 0
            continue
        sideways = sideways + 1 if best_gain == obj else 0
        idx, col, cnt_minus, cnt_plus = rng.choice(best_moves)
        old = cols[idx]
        cols[idx] = col
        pools[old] = [x for x in pools[old] if x != idx]
        pools[col] = sorted(pools[col] + [idx])
        counts[old] = cnt_minus
        counts[col] = cnt_plus
        obj = sum(counts[1:])
    return AvoidanceSearchResult(UNKNOWN, None, evals)


# ---------------------------------------------------------------------------
# Exact tiny Ramsey numbers
# ---------------------------------------------------------------------------

AVOIDANCE = "avoidance"
FORCED = "forced"


@dataclass
class RamseyEntry:
    status: str
    coloring: ColoredHypergraph | None = None
    nodes: int = 0


@dataclass
class RamseyResult:
    """Per-N search record plus the exact Ramsey value when bracketed.

    The value is the least N with status "forced" whose predecessor is either
    a recorded avoidance or lies below the scan start, where avoidance is
    trivial (too few vertices for a core, or no hyperedges at all).
    """

    r: int
    c: int
    target: str
    per_n: dict = field(default_factory=dict)
    value: int | None = None

    def check_monotone(self) -> bool:
        forced = [N for N, e in self.per_n.items() if e.status == FORCED]
        if not forced:
            return True
        first = min(forced)
        return all(N <= first for N, e in self.per_n.items() if e.status == AVOIDANCE)


def ramsey_exact(
    r: int,
    c: int,
    G: TargetGraph,
    N_max: int,
    budget: int | None = None,
    target_label: str | None = None,
) -> RamseyResult:
    """Ascending exhaustive scan for the least N forcing a monochromatic Berge-G.

    Records avoidance / forced / unknown per N; the scan stops at the first
    forced N since forcing is monotone in N. A Berge copy of an edgeless
    graph is just a vertex set, so those targets resolve immediately.
    """
    label = target_label or f"graph(n={G.n},edges={len(G.edges)})"
    result = RamseyResult(r=r, c=c, target=label)
    if not G.edges:
        result.value = G.n
        return result
    start = max(r, G.n)
    for N in range(start, N_max + 1):
        res = find_avoiding_coloring(r, c, N, G, mode="exhaustive", budget=budget)
        if res.status == FOUND:
            result.per_n[N] = RamseyEntry(AVOIDANCE, res.coloring, res.nodes)
        elif res.status == NONE:
            result.per_n[N] = RamseyEntry(FORCED, None, res.nodes)
            prev = result.per_n.get(N - 1)
            if N == start or (prev is not None and prev.status == AVOIDANCE):
                result.value = N
            break
        else:
            result.per_n[N] = RamseyEntry(UNKNOWN, None, res.nodes)
    return result
