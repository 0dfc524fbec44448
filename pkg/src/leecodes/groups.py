"""Finite abelian groups in invariant-factor form.

A group is a tuple of invariant factors (d_1, ..., d_t) with d_i >= 2
and d_i | d_{i+1}; the empty tuple is the trivial group.  Elements are
plain tuples of residues, one per factor.  This canonical form makes
isomorphism-class identity a tuple comparison and keeps residue vectors
minimal.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Tuple

GroupElement = Tuple[int, ...]

DEFAULT_FACTOR_LIMIT = 10**9


@dataclass(frozen=True)
class AbelianGroup:
    factors: Tuple[int, ...]

    def __post_init__(self) -> None:
        for d in self.factors:
            if d < 2:
                raise ValueError(f"invariant factors must be >= 2, got {d}")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a != 0:
                raise ValueError(
                    f"divisibility chain broken: {a} does not divide {b}"
                )

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def is_cyclic(self) -> bool:
        return len(self.factors) <= 1

    @property
    def rank(self) -> int:
        """Minimum number of generators."""
        return len(self.factors)

    def zero(self) -> GroupElement:
        return (0,) * len(self.factors)

    def reduce(self, coords: Sequence[int]) -> GroupElement:
        """Componentwise reduction of an integer vector into the group."""
        if len(coords) != len(self.factors):
            raise ValueError(
                f"element has {len(coords)} components, group has "
                f"{len(self.factors)} factors"
            )
        return tuple(c % d for c, d in zip(coords, self.factors))

    def add(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.factors))

    def sub(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return tuple((x - y) % d for x, y, d in zip(a, b, self.factors))

    def neg(self, a: GroupElement) -> GroupElement:
        return tuple((-x) % d for x, d in zip(a, self.factors))

    def scalar_mul(self, c: int, a: GroupElement) -> GroupElement:
        return tuple((c * x) % d for x, d in zip(a, self.factors))

    def element_order(self, a: GroupElement) -> int:
        return math.lcm(1, *(d // math.gcd(x, d) for x, d in zip(a, self.factors)))

    def elements(self) -> Iterator[GroupElement]:
        """All elements, in lexicographic residue order."""
        return itertools.product(*(range(d) for d in self.factors))

    def __str__(self) -> str:
        if not self.factors:
            return "Z_1"
        return "x".join(f"Z_{d}" for d in self.factors)

    @classmethod
    def from_name(cls, name: str) -> "AbelianGroup":
        """Parse the canonical text form, e.g. ``Z_2xZ_8`` or ``Z_16``."""
        parts = name.split("x")
        factors = []
        for part in parts:
            part = part.strip()
            if not part.startswith("Z_"):
                raise ValueError(f"cannot parse group name {name!r}")
            factors.append(int(part[2:]))
        if factors == [1]:
            return cls(())
        return cls(tuple(factors))


def cyclic(k: int) -> AbelianGroup:
    """The cyclic group of order k (trivial group for k = 1)."""
    if k < 1:
        raise ValueError(f"order must be >= 1, got {k}")
    return AbelianGroup(()) if k == 1 else AbelianGroup((k,))


def cyclic_element(k: int, v: int) -> GroupElement:
    """The residue v in the cyclic group of order k."""
    return () if k == 1 else (v % k,)


def _factorize(k: int, limit: int = DEFAULT_FACTOR_LIMIT) -> Dict[int, int]:
    """Prime factorization by trial division; k beyond `limit` is rejected."""
    if k < 1:
        raise ValueError(f"cannot factor {k}")
    if k > limit:
        raise ValueError(f"order {k} exceeds the factorization limit {limit}")
    out: Dict[int, int] = {}
    m = k
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def is_square_free(k: int, limit: int = DEFAULT_FACTOR_LIMIT) -> bool:
    """True iff no prime squared divides k."""
    return all(e == 1 for e in _factorize(k, limit).values())


def _partitions(a: int) -> List[Tuple[int, ...]]:
    """All partitions of a as non-increasing tuples, largest first part first."""
    if a == 0:
        return [()]
    out: List[Tuple[int, ...]] = []

    def rec(remaining: int, cap: int, prefix: Tuple[int, ...]) -> None:
        if remaining == 0:
            out.append(prefix)
            return
        for part in range(min(cap, remaining), 0, -1):
            rec(remaining - part, part, prefix + (part,))

    rec(a, a, ())
    return out


def groups_of_order(k: int, limit: int = DEFAULT_FACTOR_LIMIT) -> List[AbelianGroup]:
    """One representative per isomorphism class of abelian groups of order k.

    Classes correspond to a choice of partition of each prime exponent;
    aligning the partitions largest-part-first and multiplying across
    primes yields the invariant factors directly.  Output is sorted with
    the cyclic group first (fewest factors, then lexicographic).
    """
    if k < 1:
        raise ValueError(f"order must be >= 1, got {k}")
    if k == 1:
        return [AbelianGroup(())]
    fac = _factorize(k, limit)
    primes = sorted(fac)
    per_prime = [_partitions(fac[p]) for p in primes]
    groups = []
    for combo in itertools.product(*per_prime):
        t = max(len(part) for part in combo)
        descending = []
        for j in range(t):
            d = 1
            for p, part in zip(primes, combo):
                if j < len(part):
                    d *= p ** part[j]
            descending.append(d)
        groups.append(AbelianGroup(tuple(reversed(descending))))
    groups.sort(key=lambda g: (len(g.factors), g.factors))
    return groups
