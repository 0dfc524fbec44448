"""Lee-metric geometry on Z^n.

Words are plain tuples of signed integers.  Everything here is exact
integer combinatorics: distances, sphere/shell sizes and enumeration,
and the combinatorial lower bound on the total embedding weight of a
group of a given order.  All counting uses Python's arbitrary-precision
integers, so results are exact at any size.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple

Word = Tuple[int, ...]


def lee_weight(w: Sequence[int]) -> int:
    """Sum of absolute coordinate values; zero only at the origin."""
    return sum(abs(c) for c in w)


def lee_distance(v: Sequence[int], w: Sequence[int]) -> int:
    """Lee (Manhattan) distance between two words of equal dimension."""
    if len(v) != len(w):
        raise ValueError(f"dimension mismatch: {len(v)} vs {len(w)}")
    return sum(abs(a - b) for a, b in zip(v, w))


def _check_dim(n: int) -> None:
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")


@lru_cache(maxsize=None)
def sphere_size(n: int, r: int) -> int:
    """Number of words of Z^n within Lee distance r of the origin.

    Evaluates sum over j of 2^j * C(n,j) * C(r,j).  A negative radius
    yields 0, which makes shell-size differences uniform at r = 0.
    """
    _check_dim(n)
    if r < 0:
        return 0
    return sum(
        (1 << j) * math.comb(n, j) * math.comb(r, j)
        for j in range(min(n, r) + 1)
    )


def shell_size(n: int, d: int) -> int:
    """Number of words at Lee distance exactly d from the origin."""
    _check_dim(n)
    if d < 0:
        raise ValueError(f"distance must be >= 0, got {d}")
    return sphere_size(n, d) - sphere_size(n, d - 1)


def enumerate_shell(n: int, d: int) -> List[Word]:
    """All words of Z^n at Lee distance exactly d, in lexicographic order.

    The fixed order makes downstream tie-breaking (witness words, coset
    leaders) reproducible across runs.
    """
    _check_dim(n)
    if d < 0:
        raise ValueError(f"distance must be >= 0, got {d}")
    out: List[Word] = []

    def rec(prefix: Word, coords_left: int, weight_left: int) -> None:
        if coords_left == 1:
            if weight_left == 0:
                out.append(prefix + (0,))
            else:
                out.append(prefix + (-weight_left,))
                out.append(prefix + (weight_left,))
            return
        for c in range(-weight_left, weight_left + 1):
            rec(prefix + (c,), coords_left - 1, weight_left - abs(c))

    rec((), n, d)
    return out


def enumerate_sphere(n: int, r: int) -> Iterator[Word]:
    """Words within Lee distance r, ordered by weight then lexicographically."""
    _check_dim(n)
    for d in range(r + 1):
        yield from enumerate_shell(n, d)


def radius_for(n: int, k: int) -> int:
    """The unique r with sphere_size(n, r) <= k < sphere_size(n, r + 1)."""
    _check_dim(n)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    r = 0
    while sphere_size(n, r + 1) <= k:
        r += 1
    return r


def f_lower_bound(n: int, k: int) -> int:
    """Least possible total embedding weight of k group elements in Z^n.

    Fill shells outward from the origin: the i-th shell contributes its
    full word count at weight i; the remaining k - sphere_size(n, r)
    elements cost r + 1 each, where r = radius_for(n, k).
    """
    r = radius_for(n, k)
    total = sum(i * shell_size(n, i) for i in range(1, r + 1))
    return total + (r + 1) * (k - sphere_size(n, r))
