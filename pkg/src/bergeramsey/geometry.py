"""Prime-order affine spaces AG(d, p): point enumeration and parallel hyperplane classes.

For d = 2 the parallel classes are the (p+1) pencils of parallel lines, so the
family doubles as a (p+1)-net of order p. Only prime orders are supported;
point index <-> coordinate conversion is base-p positional, least significant
coordinate first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    i = 2
    while i * i <= q:
        if q % i == 0:
            return False
        i += 1
    return True


def smallest_prime_at_least(m: int) -> int:
    """Least prime >= m, by deterministic trial division."""
    n = max(2, int(m))
    while not _is_prime(n):
        n += 1
    return n


@dataclass(frozen=True, eq=False)
class ParallelClassFamily:
    """Points of AG(d, p) together with all parallel classes of hyperplanes.

    ``classes[j][b]`` is the sorted tuple of point indices on the b-th
    hyperplane of class j; ``block_of[j][x]`` is the index of the class-j
    block containing point x. There is one class per projectively normalized
    normal vector, (p^d - 1) / (p - 1) classes in total.
    """

    p: int
    d: int
    points: tuple
    normals: tuple
    block_of: np.ndarray
    classes: tuple

    @property
    def num_points(self) -> int:
        return self.p ** self.d

    @property
    def num_classes(self) -> int:
        return len(self.normals)

    @property
    def block_size(self) -> int:
        return self.p ** (self.d - 1)

    def __repr__(self) -> str:
        return f"ParallelClassFamily(p={self.p}, d={self.d}, classes={self.num_classes})"


def affine_family(d: int, p: int) -> ParallelClassFamily:
    """All points of AG(d, p) and one parallel class per hyperplane direction."""
    if not _is_prime(p):
        raise ValueError(f"order p={p} is not prime")
    if d < 2:
        raise ValueError("dimension d must be at least 2")
    n_points = p ** d
    idx = np.arange(n_points)
    coords = np.stack([(idx // p ** i) % p for i in range(d)], axis=1)

    seen = set()
    normals = []
    for k in range(1, n_points):
        a = coords[k]
        j = int(np.flatnonzero(a)[0])
        inv = pow(int(a[j]), p - 2, p)
        na = tuple((inv * int(x)) % p for x in a)
        if na not in seen:
            seen.add(na)
            normals.append(na)

    block_of = (np.array(normals, dtype=np.int64) @ coords.T) % p
    block_of.setflags(write=False)
    classes = tuple(
        tuple(tuple(int(x) for x in np.flatnonzero(block_of[j] == b)) for b in range(p))
        for j in range(len(normals))
    )
    return ParallelClassFamily(
        p=p,
        d=d,
        points=tuple(tuple(int(x) for x in row) for row in coords),
        normals=tuple(normals),
        block_of=block_of,
        classes=classes,
    )


def class_hits(family: ParallelClassFamily, j: int, R) -> int:
    """Largest number of points of R lying on a single block of class j."""
    R = list(R)
    if not R:
        raise ValueError("R must be nonempty")
    if not 0 <= j < family.num_classes:
        raise ValueError(f"class index {j} out of range 0..{family.num_classes - 1}")
    if any(x < 0 or x >= family.num_points for x in R):
        raise ValueError("R contains invalid point indices")
    counts = np.bincount(family.block_of[j][R], minlength=family.p)
    return int(counts.max())
