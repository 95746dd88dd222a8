"""Ground combinatorics: colex ranking, colored-hypergraph storage, target graphs, file I/O.

Vertices are 0-indexed integers, colors are 1-indexed integers. Complete
r-uniform colorings are stored as one flat array whose index is the
colexicographic rank of the r-set; colex ranks are prefix-stable, so growing
the vertex set never reorders existing entries.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from itertools import combinations
from math import comb
from pathlib import Path

import numpy as np


class FormatError(ValueError):
    """Malformed target spec, BRC1 coloring file, or structured-JSON artifact."""


class WitnessError(RuntimeError):
    """A Berge witness failed verification where a valid one was required."""


# ---------------------------------------------------------------------------
# Colex ranking
# ---------------------------------------------------------------------------

def rank_colex(S) -> int:
    """Colex rank of a strictly increasing vertex tuple: sum of C(s_i, i+1)."""
    rank = 0
    prev = -1
    for i, s in enumerate(S):
        if s <= prev:
            raise ValueError(f"vertex set must be strictly increasing, got {tuple(S)}")
        rank += comb(s, i + 1)
        prev = s
    return rank


def unrank_colex(rank: int, r: int) -> tuple[int, ...]:
    """Inverse of rank_colex: the r-set with the given colex rank."""
    if rank < 0:
        raise ValueError("rank must be nonnegative")
    if r < 0:
        raise ValueError("set size must be nonnegative")
    out = []
    for i in range(r, 0, -1):
        s = i - 1
        while comb(s + 1, i) <= rank:
            s += 1
        rank -= comb(s, i)
        out.append(s)
    return tuple(reversed(out))


def iter_colex(n: int, r: int):
    """Yield all r-subsets of {0..n-1} as sorted tuples, in colex order.

    The k-th tuple yielded has colex rank k.
    """
    if r == 0:
        yield ()
        return
    for top in range(r - 1, n):
        for rest in iter_colex(top, r - 1):
            yield rest + (top,)


def pair_rank(u: int, v: int) -> int:
    """Colex rank of the pair {u, v}."""
    if u > v:
        u, v = v, u
    return u + comb(v, 2)


# ---------------------------------------------------------------------------
# Colored hypergraph
# ---------------------------------------------------------------------------

class ColoredHypergraph:
    """Complete r-uniform hypergraph on N vertices with one color per r-set.

    Colors live in 1..c and sit in colex rank order in ``colors``. Instances
    are frozen after construction (the array is marked read-only) and safe to
    share across threads.
    """

    __slots__ = ("r", "c", "N", "colors")

    def __init__(self, r: int, c: int, N: int, colors):
        r, c, N = int(r), int(c), int(N)
        if r < 2:
            raise ValueError("uniformity r must be at least 2")
        if c < 1:
            raise ValueError("color count c must be at least 1")
        if r > N:
            raise ValueError(f"uniformity r={r} exceeds vertex count N={N}")
        arr = np.array(colors, dtype=np.int32).reshape(-1)
        expected = comb(N, r)
        if arr.shape[0] != expected:
            raise ValueError(f"expected {expected} colors for N={N}, r={r}, got {arr.shape[0]}")
        if int(arr.min()) < 1 or int(arr.max()) > c:
            raise ValueError(f"colors must lie in 1..{c}")
        arr.setflags(write=False)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "colors", arr)

    def __setattr__(self, name, value):
        raise AttributeError("ColoredHypergraph is immutable")

    @classmethod
    def monochromatic(cls, r: int, c: int, N: int, color: int = 1) -> "ColoredHypergraph":
        return cls(r, c, N, np.full(comb(N, r), color, dtype=np.int32))

    @property
    def num_hyperedges(self) -> int:
        return int(self.colors.shape[0])

    def color_of(self, S) -> int:
        return int(self.colors[rank_colex(tuple(sorted(S)))])

    def ranks_of_color(self, i: int) -> list[int]:
        """Colex ranks of all hyperedges colored i, ascending."""
        if not 1 <= i <= self.c:
            raise ValueError(f"color {i} out of range 1..{self.c}")
        return [int(x) for x in np.flatnonzero(self.colors == i)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColoredHypergraph):
            return NotImplemented
        return (self.r, self.c, self.N) == (other.r, other.c, other.N) and bool(
            np.array_equal(self.colors, other.colors)
        )

    def __hash__(self):
        return hash((self.r, self.c, self.N, self.colors.tobytes()))

    def __repr__(self) -> str:
        return f"ColoredHypergraph(r={self.r}, c={self.c}, N={self.N})"


def induced_subcoloring(H: ColoredHypergraph, W) -> ColoredHypergraph:
    """Restriction of H to the vertex subset W, relabeled by increasing order of W."""
    W = sorted(set(int(w) for w in W))
    if any(w < 0 or w >= H.N for w in W):
        raise ValueError("W contains vertices outside 0..N-1")
    if len(W) < H.r:
        raise ValueError(f"need at least r={H.r} vertices, got {len(W)}")
    colors = np.empty(comb(len(W), H.r), dtype=np.int32)
    for idx, T in enumerate(iter_colex(len(W), H.r)):
        colors[idx] = H.colors[rank_colex(tuple(W[t] for t in T))]
    return ColoredHypergraph(H.r, H.c, len(W), colors)


# ---------------------------------------------------------------------------
# Target graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TargetGraph:
    """Simple graph on vertices 0..n-1, used both as a Berge target and as a
    derived graph (shadow, heavy, color graphs)."""

    n: int
    edges: frozenset

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge {e} not normalized or out of range for n={self.n}")

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "TargetGraph":
        norm = set()
        for u, v in pairs:
            u, v = int(u), int(v)
            if u > v:
                u, v = v, u
            norm.add((u, v))
        return cls(n, frozenset(norm))

    @property
    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    @property
    def is_complete(self) -> bool:
        return len(self.edges) == comb(self.n, 2)

    def adjacency(self) -> list[set]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)


_FAMILY_RE = re.compile(r"^([KPC])(\d+)$")


def make_target(spec: str) -> TargetGraph:
    """Parse a target spec: K<n>, P<n> (path), C<n> (cycle), or an edge-list file path."""
    spec = spec.strip()
    m = _FAMILY_RE.match(spec)
    if m:
        kind, n = m.group(1), int(m.group(2))
        if kind == "K":
            if n < 1:
                raise FormatError(f"K{n}: need n >= 1")
            return TargetGraph.from_pairs(n, combinations(range(n), 2))
        if kind == "P":
            if n < 2:
                raise FormatError(f"P{n}: a path needs n >= 2 vertices")
            return TargetGraph.from_pairs(n, ((i, i + 1) for i in range(n - 1)))
        if n < 3:
            raise FormatError(f"C{n}: a cycle needs n >= 3 vertices")
        return TargetGraph.from_pairs(n, [(i, (i + 1) % n) for i in range(n)])
    path = Path(spec)
    if not path.is_file():
        raise FormatError(f"target spec {spec!r} is neither K<n>/P<n>/C<n> nor an existing edge-list file")
    pairs = []
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) != 2:
            raise FormatError(f"{spec}:{lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError as exc:
            raise FormatError(f"{spec}:{lineno}: non-integer endpoint") from exc
        if u == v or u < 0 or v < 0:
            raise FormatError(f"{spec}:{lineno}: bad edge ({u},{v})")
        pairs.append((u, v))
    if not pairs:
        raise FormatError(f"{spec}: edge-list file contains no edges")
    n = max(max(u, v) for u, v in pairs) + 1
    return TargetGraph.from_pairs(n, pairs)


def graph_contains_clique(g: TargetGraph, n: int):
    """Exact n-clique search by backtracking over degree-sorted vertices.

    Returns a sorted vertex list if some n-clique exists, else None.
    """
    if n < 1:
        raise ValueError("clique size must be at least 1")
    if n == 1:
        return [0] if g.n >= 1 else None
    adj = g.adjacency()
    order = sorted(range(g.n), key=lambda v: (-len(adj[v]), v))
    viable = [v for v in order if len(adj[v]) >= n - 1]

    def extend(clique, cand):
        if len(clique) == n:
            return clique
        if len(clique) + len(cand) < n:
            return None
        for idx, v in enumerate(cand):
            rest = [u for u in cand[idx + 1 :] if u in adj[v]]
            got = extend(clique + [v], rest)
            if got is not None:
                return got
        return None

    got = extend([], viable)
    return sorted(got) if got is not None else None


# ---------------------------------------------------------------------------
# Berge witnesses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BergeWitness:
    """Certificate for a monochromatic Berge copy.

    ``core`` maps target vertex i to hypergraph vertex core[i]; ``assignment``
    pairs each target edge (u, v) with the colex rank of a distinct hyperedge
    that contains the images of u and v.
    """

    color: int
    core: tuple[int, ...]
    assignment: tuple[tuple[tuple[int, int], int], ...]

    @classmethod
    def build(cls, color: int, core, assignment) -> "BergeWitness":
        core_t = tuple(int(v) for v in core)
        asg = tuple(((int(u), int(v)), int(rk)) for (u, v), rk in assignment)
        return cls(int(color), core_t, asg)


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------

_BRC1_HEADER_RE = re.compile(r"^BRC1 (\d+) (\d+) (\d+)$")
_BRC1_WRAP = 50


def write_brc1(H: ColoredHypergraph, path) -> None:
    """Write a coloring in the BRC1 text format (canonical wrapping, byte-stable)."""
    lines = [f"BRC1 {H.r} {H.c} {H.N}"]
    toks = [str(int(x)) for x in H.colors]
    for i in range(0, len(toks), _BRC1_WRAP):
        lines.append(" ".join(toks[i : i + _BRC1_WRAP]))
    Path(path).write_text("\n".join(lines) + "\n")


def read_brc1(path) -> ColoredHypergraph:
    """Read a BRC1 coloring file; rejects truncated or trailing content."""
    text = Path(path).read_text()
    head, _, body = text.partition("\n")
    m = _BRC1_HEADER_RE.match(head)
    if not m:
        raise FormatError(f"{path}: bad BRC1 header {head!r}")
    r, c, N = (int(x) for x in m.groups())
    toks = body.split()
    expected = comb(N, r) if r <= N else -1
    if expected < 0:
        raise FormatError(f"{path}: header has r={r} > N={N}")
    if len(toks) != expected:
        raise FormatError(f"{path}: expected {expected} colors, found {len(toks)}")
    try:
        colors = [int(t) for t in toks]
    except ValueError as exc:
        raise FormatError(f"{path}: non-integer color token") from exc
    if any(x < 1 or x > c for x in colors):
        raise FormatError(f"{path}: color out of range 1..{c}")
    return ColoredHypergraph(r, c, N, colors)


def _dump_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def write_witness(w: BergeWitness, path) -> None:
    _dump_json(
        {
            "color": w.color,
            "core": list(w.core),
            "assignment": [[[u, v], rk] for (u, v), rk in w.assignment],
        },
        path,
    )


def read_witness(path) -> BergeWitness:
    try:
        obj = json.loads(Path(path).read_text())
        return BergeWitness.build(obj["color"], obj["core"], [((u, v), rk) for (u, v), rk in obj["assignment"]])
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"{path}: malformed witness JSON: {exc}") from exc
