"""Avoidance-coloring constructions and the uniformity-reduction procedure.

Three builders live here:

* ``affine_coloring`` colors each r-set with a parallel class that meets it in
  at most one point per block, so no color class can hold a clique larger
  than the block count.
* ``erdos_base`` / ``layered_step`` / ``assignment_coloring`` build layered
  color-set assignments: a seeded random 2-coloring of a complete graph with
  no monochromatic clique is lifted, one uniformity at a time, by taking
  disjoint copies and intersecting color sets across copies.
* ``reduce_coloring`` turns an (r, c)-coloring into an (r-1, c-1)-coloring by
  repeatedly consuming a light pair of a dropped color, with a trace that
  lets witnesses in the reduced coloring be lifted back.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from pathlib import Path

import numpy as np

from .core import (
    ColoredHypergraph,
    TargetGraph,
    WitnessError,
    BergeWitness,
    FormatError,
    graph_contains_clique,
    iter_colex,
    pair_rank,
    rank_colex,
    unrank_colex,
)
from .detection import verify_witness
from .geometry import ParallelClassFamily


class InfeasibleColoringError(RuntimeError):
    """No valid color exists for some r-set under the parallel-class rule."""

    def __init__(self, r_set, message=None):
        self.r_set = tuple(r_set)
        super().__init__(message or f"no valid color for r-set {self.r_set}")


class SamplingExhaustedError(RuntimeError):
    """Seeded resampling failed to produce a valid object within the attempt cap."""

    def __init__(self, attempts: int, message=None):
        self.attempts = attempts
        super().__init__(message or f"no valid sample found in {attempts} attempts")


class LayeredInvariantError(RuntimeError):
    """A layered assignment violated a structural invariant it must hold."""


class DegenerateReductionError(RuntimeError):
    """Reduction kept too few vertices to form any output hyperedge."""

    def __init__(self, trace, message=None):
        self.trace = trace
        super().__init__(message or f"reduction kept only {len(trace.kept)} vertices")


# ---------------------------------------------------------------------------
# Parallel-class coloring
# ---------------------------------------------------------------------------

TIE_POLICIES = ("lowest", "balanced", "random")


def affine_coloring(
    r: int,
    c: int,
    family: ParallelClassFamily,
    tie: str = "lowest",
    seed: int | None = None,
) -> ColoredHypergraph:
    """Color every r-set of the family's points with a class hitting it at most once per block.

    Color i is identified with class i-1. A color is valid for an r-set R when
    no block of its class contains two points of R; the tie-break policy picks
    among the valid colors. Since the pairs inside R rule out at most
    (d-1)*C(r,2) classes, any c above that bound always leaves a valid color;
    smaller c may fail, in which case the offending R is reported.
    """
    if tie not in TIE_POLICIES:
        raise ValueError(f"unknown tie-break policy {tie!r}; choose from {TIE_POLICIES}")
    if tie == "random" and seed is None:
        raise ValueError("random tie-break requires a seed")
    N = family.num_points
    if c < 1 or c > family.num_classes:
        raise ValueError(f"c={c} must lie in 1..{family.num_classes} (one class per color)")
    if r < 2 or r > N:
        raise ValueError(f"r={r} must lie in 2..{N}")

    rng = random.Random(seed)
    usage = [0] * c
    block = family.block_of
    colors = np.empty(comb(N, r), dtype=np.int32)
    for idx, R in enumerate(iter_colex(N, r)):
        rl = list(R)
        sub = block[:c, rl]
        valid = [i + 1 for i in range(c) if len(set(sub[i].tolist())) == r]
        if not valid:
            raise InfeasibleColoringError(R)
        if tie == "lowest":
            pick = valid[0]
        elif tie == "balanced":
            pick = min(valid, key=lambda i: (usage[i - 1], i))
        else:
            pick = rng.choice(valid)
        usage[pick - 1] += 1
        colors[idx] = pick
    return ColoredHypergraph(r, c, N, colors)


# ---------------------------------------------------------------------------
# Layered assignments
# ---------------------------------------------------------------------------

class LayeredAssignment:
    """Map T -> S(T) from each nonempty vertex subset of size <= r to a color set.

    ``S`` is keyed by sorted vertex tuples; values are frozensets of colors in
    1..r. The constructor checks only shape (domain completeness, key/value
    sanity); the structural properties (nesting, sizes, witness counts,
    clique-freeness) are the business of check_layered, so deliberately
    corrupted assignments remain representable for diagnostics.
    """

    __slots__ = ("r", "X", "S")

    def __init__(self, r: int, X: int, S: dict):
        if r < 2:
            raise ValueError("top uniformity r must be at least 2")
        if X < 1:
            raise ValueError("ground set must be nonempty")
        expected = sum(comb(X, t) for t in range(1, r + 1))
        if len(S) != expected:
            raise ValueError(f"assignment must cover all {expected} nonempty subsets of size <= {r}, got {len(S)}")
        store = {}
        for T, cs in S.items():
            T = tuple(int(v) for v in T)
            if not T or len(T) > r or list(T) != sorted(set(T)):
                raise ValueError(f"bad subset key {T}")
            if T[0] < 0 or T[-1] >= X:
                raise ValueError(f"subset {T} out of range for ground size {X}")
            cs = frozenset(int(s) for s in cs)
            if not cs or any(s < 1 or s > r for s in cs):
                raise ValueError(f"color set for {T} must be a nonempty subset of 1..{r}")
            store[T] = cs
        self.r = r
        self.X = X
        self.S = store

    def colors_of(self, T) -> frozenset:
        return self.S[tuple(sorted(int(v) for v in T))]

    def __repr__(self) -> str:
        return f"LayeredAssignment(r={self.r}, X={self.X}, sets={len(self.S)})"


def erdos_base(
    m: int,
    n: int,
    seed: int,
    max_attempts: int = 1000,
    beta: int = 1,
) -> LayeredAssignment:
    """Seeded 2-coloring of the complete graph K_m with no monochromatic K_n.

    Singleton sets receive both colors; each edge keeps its own color as a
    singleton set. Additionally every vertex must meet at least ``beta`` edges
    of each color. Found by uniform resampling with full verification, so the
    seed is part of the reproducibility contract.
    """
    if m < 2:
        raise ValueError("need at least 2 vertices")
    if n < 3:
        raise ValueError("forbidden clique size must be at least 3")
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    rng = random.Random(seed)
    edges = list(combinations(range(m), 2))
    for _ in range(max_attempts):
        col = {e: rng.randint(1, 2) for e in edges}
        deg = [[0, 0] for _ in range(m)]
        for (u, v), s in col.items():
            deg[u][s - 1] += 1
            deg[v][s - 1] += 1
        if any(d[0] < beta or d[1] < beta for d in deg):
            continue
        if any(
            graph_contains_clique(TargetGraph.from_pairs(m, (e for e in edges if col[e] == s)), n) is not None
            for s in (1, 2)
        ):
            continue
        S = {(v,): frozenset({1, 2}) for v in range(m)}
        S.update({e: frozenset({col[e]}) for e in edges})
        return LayeredAssignment(2, m, S)
    raise SamplingExhaustedError(max_attempts)


def layered_step(prev: LayeredAssignment, k: int, beta: int = 1) -> LayeredAssignment:
    """Lift an assignment one uniformity up, onto k disjoint copies of its ground set.

    Sets inside one copy keep their colors and gain the new color r; sets
    meeting several copies get the smallest r-|T|+1 colors that appear in the
    color set of every per-copy part ("available" colors). The input must
    satisfy the nesting, size, and witness-count properties at the given
    beta, since those are what guarantee enough available colors exist.
    """
    if k < 2:
        raise ValueError("need at least 2 copies")
    pre = check_layered(prev, n=None, beta=beta)
    if pre.size_violations or pre.nesting_violations or pre.witness_shortfalls:
        raise ValueError(
            "base assignment unfit for lifting: "
            f"{len(pre.size_violations)} size, {len(pre.nesting_violations)} nesting, "
            f"{len(pre.witness_shortfalls)} witness violations at beta={beta}"
        )
    m = prev.X
    r_new = prev.r + 1
    ground = k * m
    S: dict = {}
    for t in range(1, r_new + 1):
        for T in combinations(range(ground), t):
            parts: dict[int, list[int]] = {}
            for v in T:
                parts.setdefault(v // m, []).append(v % m)
            if len(parts) == 1:
                local = tuple(next(iter(parts.values())))
                if t <= prev.r:
                    S[T] = prev.S[local] | {r_new}
                else:
                    S[T] = frozenset({r_new})
                continue
            avail = None
            for local in parts.values():
                cs = prev.S[tuple(local)]
                avail = cs if avail is None else (avail & cs)
            need = r_new - t + 1
            chosen = sorted(avail)[:need]
            if len(chosen) < need:
                raise LayeredInvariantError(
                    f"only {len(chosen)} available colors for {T}, need {need}"
                )
            S[T] = frozenset(chosen)
    return LayeredAssignment(r_new, ground, S)


def assignment_coloring(L: LayeredAssignment) -> ColoredHypergraph:
    """Complete r-uniform coloring with c = r read off the top-level singleton color sets."""
    colors = np.empty(comb(L.X, L.r), dtype=np.int32)
    for idx, T in enumerate(iter_colex(L.X, L.r)):
        cs = L.S.get(T)
        if cs is None or len(cs) != 1:
            raise LayeredInvariantError(
                f"r-set {T} carries {0 if cs is None else len(cs)} colors; exactly one required"
            )
        colors[idx] = next(iter(cs))
    return ColoredHypergraph(L.r, L.r, L.X, colors)


@dataclass
class LayeredCheckReport:
    """Violation report for a layered assignment.

    ``witness_census`` histograms, over all (T, s) pairs with |T| < r, the
    number of one-larger supersets whose color set is exactly S(T) minus s;
    shortfalls are the pairs whose count is below beta. The witness clause is
    checked only for t <= r-1 since (r+1)-sets carry no assignment.
    """

    beta: int
    n: int | None
    size_violations: list = field(default_factory=list)
    nesting_violations: list = field(default_factory=list)
    witness_shortfalls: list = field(default_factory=list)
    witness_census: Counter = field(default_factory=Counter)
    clique_violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (
            self.size_violations
            or self.nesting_violations
            or self.witness_shortfalls
            or self.clique_violations
        )


def check_layered(L: LayeredAssignment, n: int | None = None, beta: int = 1) -> LayeredCheckReport:
    """Report all nesting, size, witness-count, and clique violations of L.

    Passing n=None skips the per-color clique check. An empty report means
    the assignment is sound at the requested thresholds.
    """
    rep = LayeredCheckReport(beta=beta, n=n)
    for T in sorted(L.S, key=lambda T: (len(T), T)):
        cs = L.S[T]
        t = len(T)
        if len(cs) != L.r - t + 1:
            rep.size_violations.append((T, len(cs)))
        if t < L.r:
            Tset = set(T)
            supersets = []
            for v in range(L.X):
                if v in Tset:
                    continue
                T2 = tuple(sorted(T + (v,)))
                cs2 = L.S[T2]
                supersets.append((T2, cs2))
                if not cs2 <= cs:
                    rep.nesting_violations.append((T, T2))
            for s in sorted(cs):
                want = cs - {s}
                count = sum(1 for _, cs2 in supersets if cs2 == want)
                rep.witness_census[count] += 1
                if count < beta:
                    rep.witness_shortfalls.append((T, s, count))
    if n is not None:
        for i in range(1, L.r + 1):
            g = color_graph(L, i)
            clique = graph_contains_clique(g, n)
            if clique is not None:
                rep.clique_violations.append((i, clique))
    return rep


def color_graph(L: LayeredAssignment, i: int) -> TargetGraph:
    """Graph of the 2-sets whose color set contains i."""
    return TargetGraph.from_pairs(
        L.X, (T for T in combinations(range(L.X), 2) if i in L.S[T])
    )


def clique_numbers(L: LayeredAssignment) -> dict[int, int]:
    """Exact clique number of each color graph; the assignment is K_n-free in
    every color for any n above the maximum."""
    out = {}
    for i in range(1, L.r + 1):
        g = color_graph(L, i)
        size = 0
        while graph_contains_clique(g, size + 1) is not None:
            size += 1
        out[i] = size
    return out


# ---------------------------------------------------------------------------
# Uniformity reduction
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ReductionTrace:
    """Record of one reduction run, sufficient to lift witnesses back.

    ``kept[i]`` is the i-th surviving vertex, ``partners[i]`` its deleted
    light-pair partner, ``deleted[i]`` the exclusion set wiped alongside.
    ``provenance`` maps each (r-1)-set of output vertex ids (positions into
    ``kept``) to the colex rank of the original r-edge its color came from.
    ``leftover`` lists the vertices still unprocessed when the light-pair
    supply ran out.
    """

    r: int
    c: int
    N: int
    drop: int
    kept: tuple
    partners: tuple
    deleted: tuple
    leftover: tuple
    provenance: dict

    @property
    def m(self) -> int:
        return len(self.kept)

    @property
    def max_step_deletions(self) -> int:
        return (comb(self.r, 2) - 1) * (self.r - 2) + 2


def reduce_coloring(H: ColoredHypergraph, drop: int) -> tuple[ColoredHypergraph, ReductionTrace]:
    """Reduce an (r, c)-coloring to an (r-1)-uniform coloring avoiding one color.

    Repeatedly takes the lexicographically least pair (u, v) that is light in
    the dropped color among the remaining vertices, keeps v, and deletes u
    together with every other vertex sharing a dropped-color hyperedge with
    both u and v. Each output (r-1)-set inherits the color of its provenance
    r-edge, which by construction is never the dropped color.
    """
    if H.r < 3:
        raise ValueError("reduction needs uniformity at least 3")
    if not 1 <= drop <= H.c:
        raise ValueError(f"drop color {drop} out of range 1..{H.c}")
    r, N = H.r, H.N
    thresh = comb(r, 2)

    cover = np.zeros(comb(N, 2), dtype=np.int64)
    drop_edges_of_pair: dict[int, list[int]] = {}
    for idx, S in enumerate(iter_colex(N, r)):
        if int(H.colors[idx]) != drop:
            continue
        for a, b in combinations(S, 2):
            p = pair_rank(a, b)
            cover[p] += 1
            drop_edges_of_pair.setdefault(p, []).append(idx)

    light = [pq for pq in combinations(range(N), 2) if cover[pair_rank(*pq)] < thresh]

    remaining = set(range(N))
    kept: list[int] = []
    partners: list[int] = []
    deleted: list[tuple[int, ...]] = []
    while True:
        pick = next(((u, v) for u, v in light if u in remaining and v in remaining), None)
        if pick is None:
            break
        u, v = pick
        U = set()
        for rk in drop_edges_of_pair.get(pair_rank(u, v), []):
            U.update(unrank_colex(rk, r))
        U.discard(u)
        U.discard(v)
        kept.append(v)
        partners.append(u)
        deleted.append(tuple(sorted(U)))
        remaining.discard(u)
        remaining.discard(v)
        remaining -= U

    m = len(kept)
    provenance: dict[tuple[int, ...], int] = {}
    trace = ReductionTrace(
        r=r,
        c=H.c,
        N=N,
        drop=drop,
        kept=tuple(kept),
        partners=tuple(partners),
        deleted=tuple(deleted),
        leftover=tuple(sorted(remaining)),
        provenance=provenance,
    )
    if m < r - 1:
        raise DegenerateReductionError(trace)

    out_colors = np.empty(comb(m, r - 1), dtype=np.int32)
    for idx, A in enumerate(iter_colex(m, r - 1)):
        orig = tuple(sorted([kept[j] for j in A] + [partners[A[0]]]))
        rk = rank_colex(orig)
        color = int(H.colors[rk])
        if color == drop:
            raise AssertionError(f"provenance edge {orig} unexpectedly carries the dropped color")
        provenance[A] = rk
        out_colors[idx] = color
    reduced = ColoredHypergraph(r - 1, H.c, m, out_colors)
    return reduced, trace


def lift_witness(
    trace: ReductionTrace,
    w: BergeWitness,
    original: ColoredHypergraph | None = None,
) -> BergeWitness:
    """Map a witness in the reduced coloring back to the original coloring.

    Each assigned (r-1)-set is replaced by its provenance r-edge and each core
    vertex by the kept vertex it stands for. When the original coloring is
    supplied, the lifted witness is verified against it.
    """
    m = trace.m
    if len(set(w.core)) != len(w.core) or any(v < 0 or v >= m for v in w.core):
        raise WitnessError(f"witness core {w.core} is not injective into the reduced vertex set")
    ranks = [rk for _, rk in w.assignment]
    if len(set(ranks)) != len(ranks):
        raise WitnessError("witness assigns a hyperedge twice")
    lifted_asg = []
    for (u, v), rk in w.assignment:
        if not 0 <= rk < comb(m, trace.r - 1):
            raise WitnessError(f"reduced hyperedge rank {rk} out of range")
        A = unrank_colex(rk, trace.r - 1)
        if w.core[u] not in A or w.core[v] not in A:
            raise WitnessError(f"edge ({u},{v}) image not contained in reduced hyperedge {A}")
        lifted_asg.append(((u, v), trace.provenance[A]))
    lifted = BergeWitness.build(w.color, [trace.kept[x] for x in w.core], lifted_asg)
    if original is not None:
        res = verify_witness(original, lifted)
        if not res.ok:
            raise WitnessError(f"lifted witness failed verification: {res.failure} ({res.detail})")
    return lifted


# ---------------------------------------------------------------------------
# Structured-text serialization
# ---------------------------------------------------------------------------

def write_assignment(L: LayeredAssignment, path) -> None:
    obj = {
        "r": L.r,
        "ground_size": L.X,
        "sets": [[list(T), sorted(L.S[T])] for T in sorted(L.S, key=lambda T: (len(T), T))],
    }
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def read_assignment(path) -> LayeredAssignment:
    try:
        obj = json.loads(Path(path).read_text())
        S = {tuple(T): frozenset(cs) for T, cs in obj["sets"]}
        return LayeredAssignment(int(obj["r"]), int(obj["ground_size"]), S)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"{path}: malformed assignment JSON: {exc}") from exc


def write_trace(trace: ReductionTrace, path) -> None:
    obj = {
        "r": trace.r,
        "c": trace.c,
        "N": trace.N,
        "drop": trace.drop,
        "kept": list(trace.kept),
        "partners": list(trace.partners),
        "deleted": [list(U) for U in trace.deleted],
        "leftover": list(trace.leftover),
        "provenance": [[list(A), rk] for A, rk in sorted(trace.provenance.items())],
    }
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def read_trace(path) -> ReductionTrace:
    try:
        obj = json.loads(Path(path).read_text())
        return ReductionTrace(
            r=int(obj["r"]),
            c=int(obj["c"]),
            N=int(obj["N"]),
            drop=int(obj["drop"]),
            kept=tuple(obj["kept"]),
            partners=tuple(obj["partners"]),
            deleted=tuple(tuple(U) for U in obj["deleted"]),
            leftover=tuple(obj["leftover"]),
            provenance={tuple(A): int(rk) for A, rk in obj["provenance"]},
        )
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"{path}: malformed trace JSON: {exc}") from exc
