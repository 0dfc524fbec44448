"""The group-embedding invariant.

A homomorphism phi: Z^n -> G is fixed by the images of the unit vectors.
Each group element g is *embedded* at the least Lee weight of any word
mapping to it; the embedding number of phi is the total of those weights
over G (infinite when phi is not surjective).  Minimizing over all
homomorphisms, and then over all abelian groups of a given order k,
gives the invariants ``pi_group`` and ``pi_number``.

The per-element distances are computed by breadth-first search on the
Cayley graph of G with generator multiset {+-phi(e_i)}: graph distance
from zero equals the minimal Lee weight of a preimage, and BFS depth is
bounded by |G| - 1, so termination needs no ad-hoc radius cutoff.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import BudgetExceededError
from .groups import AbelianGroup, GroupElement, groups_of_order
from .spheres import (
    Word,
    enumerate_sphere,
    f_lower_bound,
    radius_for,
    shell_size,
)

#: Sentinel for the embedding number of a non-surjective homomorphism.
#: Kept as a genuine infinity, never a "large enough" integer.
INFINITY = math.inf

DEFAULT_HOM_BUDGET = 10**6


@dataclass(frozen=True)
class Homomorphism:
    """A homomorphism Z^n -> G, determined by the images of e_1..e_n."""

    group: AbelianGroup
    images: Tuple[GroupElement, ...]

    def __post_init__(self) -> None:
        if len(self.images) < 1:
            raise ValueError("need at least one generator image")
        t = len(self.group.factors)
        for img in self.images:
            if len(img) != t:
                raise ValueError(f"image {img} does not belong to {self.group}")
            if any(not 0 <= x < d for x, d in zip(img, self.group.factors)):
                raise ValueError(f"image {img} does not belong to {self.group}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __str__(self) -> str:
        return f"{self.group}<-{list(map(list, self.images))}"


def hom_apply(phi: Homomorphism, word: Sequence[int]) -> GroupElement:
    """Evaluate phi at a word: the image-weighted sum of its coordinates."""
    if len(word) != phi.n:
        raise ValueError(f"dimension mismatch: word has {len(word)}, hom has {phi.n}")
    G = phi.group
    acc = G.zero()
    for x, img in zip(word, phi.images):
        if x:
            acc = G.add(acc, G.scalar_mul(x, img))
    return acc


@dataclass(frozen=True)
class DistanceProfile:
    """Minimal embedding weight and one minimal witness per group element.

    ``dist[g]`` is the least Lee weight of a preimage of g (present only
    for reachable g); ``witness[g]`` is a preimage of that weight.  Ties
    are broken toward the lexicographically smallest word discovered by
    the ordered BFS expansion, which pins every downstream fixture.
    """

    group: AbelianGroup
    dist: Dict[GroupElement, int]
    witness: Dict[GroupElement, Word]
    surjective: bool

    def multiplicities(self) -> Counter:
        """How many elements sit at each embedding weight."""
        return Counter(self.dist.values())

    def covering_radius(self) -> int:
        """Largest embedding weight; defined only for surjective phi."""
        if not self.surjective:
            raise ValueError("covering radius undefined: not surjective")
        return max(self.dist.values())

    def total(self) -> int:
        return sum(self.dist.values())


@lru_cache(maxsize=256)
def distance_profile(phi: Homomorphism) -> DistanceProfile:
    """Breadth-first search outward from zero over the images of +-e_i.

    Level d of the BFS discovers exactly the elements of embedding
    weight d.  Candidate witnesses at level d extend a stored level
    d-1 witness by one unit step; steps that lower the weight land on
    already-visited elements and are skipped, so recorded witnesses
    always have weight equal to their element's distance.

    The result is cached; treat returned profiles as immutable.
    """
    G = phi.group
    n = phi.n
    zero = G.zero()
    origin: Word = (0,) * n
    dist: Dict[GroupElement, int] = {zero: 0}
    witness: Dict[GroupElement, Word] = {zero: origin}
    steps: List[Tuple[int, int, GroupElement]] = []
    for i, img in enumerate(phi.images):
        steps.append((i, 1, img))
        steps.append((i, -1, G.neg(img)))

    order = G.order
    add = G.add
    frontier: List[GroupElement] = [zero]
    d = 0
    while frontier and len(dist) < order:
        d += 1
        candidates: Dict[GroupElement, Word] = {}
        for h in frontier:
            w = witness[h]
            for i, s, delta in steps:
                g2 = add(h, delta)
                if g2 in dist:
                    continue
                w2 = w[:i] + (w[i] + s,) + w[i + 1 :]
                prev = candidates.get(g2)
                if prev is None or w2 < prev:
                    candidates[g2] = w2
        frontier = []
        for g2, w2 in candidates.items():
            dist[g2] = d
            witness[g2] = w2
            frontier.append(g2)
    return DistanceProfile(G, dist, witness, len(dist) == order)


def embedding_number(phi: Homomorphism):
    """Total embedding weight over G, or INFINITY if phi is not surjective."""
    prof = distance_profile(phi)
    if not prof.surjective:
        return INFINITY
    return prof.total()


def is_injective_on_sphere(phi: Homomorphism, r: int) -> bool:
    """True iff phi is one-to-one on the radius-r Lee sphere."""
    if r < 0:
        raise ValueError(f"radius must be >= 0, got {r}")
    seen = set()
    for w in enumerate_sphere(phi.n, r):
        g = hom_apply(phi, w)
        if g in seen:
            return False
        seen.add(g)
    return True


def is_surjective_on_sphere(phi: Homomorphism, r: int) -> bool:
    """True iff the radius-r Lee sphere maps onto all of G."""
    if r < 0:
        raise ValueError(f"radius must be >= 0, got {r}")
    order = phi.group.order
    seen = set()
    for w in enumerate_sphere(phi.n, r):
        seen.add(hom_apply(phi, w))
        if len(seen) == order:
            return True
    return len(seen) == order


def is_optimal(phi: Homomorphism) -> bool:
    """Does phi realize the least possible total embedding weight?

    With k = |G| and r = radius_for(n, k), phi is optimal exactly when
    it is injective on the radius-r sphere and surjective on the radius
    r+1 sphere (a bijection on the radius-r sphere when k equals its
    size).  Checked here on the distance profile: every shell up to r
    must be fully represented and nothing may sit beyond weight r + 1.
    """
    prof = distance_profile(phi)
    if not prof.surjective:
        return False
    n = phi.n
    k = phi.group.order
    r = radius_for(n, k)
    mult = prof.multiplicities()
    for d in range(r + 1):
        if mult[d] != shell_size(n, d):
            return False
    if max(prof.dist.values()) > r + 1:
        return False
    # Optimality must coincide with meeting the lower bound exactly.
    assert prof.total() == f_lower_bound(n, k)
    return True


def excess_decomposition(phi: Homomorphism) -> Tuple[int, int]:
    """Split embedding_number(phi) - f_lower_bound(n, |G|) into its parts.

    The first part charges shells up to r for missing elements (r+1-d
    per element short at weight d); the second charges elements lying
    beyond weight r+1 (d-r-1 each).  Requires a surjective phi.
    """
    prof = distance_profile(phi)
    if not prof.surjective:
        raise ValueError("excess decomposition undefined: not surjective")
    n = phi.n
    r = radius_for(n, phi.group.order)
    mult = prof.multiplicities()
    near = 0
    for d in range(r + 1):
        eps = shell_size(n, d) - mult[d]
        if eps < 0:
            raise AssertionError("more elements at weight d than shell words")
        near += (r + 1 - d) * eps
    far = sum((d - r - 1) * c for d, c in mult.items() if d >= r + 2)
    return near, far


def canonical_image(G: AbelianGroup, g: GroupElement) -> GroupElement:
    """Representative of {g, -g}: flipping any single image of phi leaves
    every embedding weight unchanged, so candidates are normalized."""
    return min(g, G.neg(g))


def normalized_image_tuples(G: AbelianGroup, n: int) -> List[Tuple[GroupElement, ...]]:
    """Image tuples up to per-coordinate negation and permutation.

    Sorted by largest representative first, then lexicographically, so
    searches report the argmin with the smallest generators.
    """
    reps = sorted({canonical_image(G, g) for g in G.elements()})
    cands = list(itertools.combinations_with_replacement(reps, n))
    cands.sort(key=lambda t: (max(t), t))
    return cands


def pi_group_search(
    n: int,
    G: AbelianGroup,
    budget: int = DEFAULT_HOM_BUDGET,
    prune: bool = True,
) -> Tuple[object, Optional[Homomorphism]]:
    """Minimum embedding number over all homomorphisms Z^n -> G.

    Returns (value, argmin) where value may be INFINITY (then argmin is
    None).  With ``prune`` the search runs over normalized image tuples;
    pruning is value-preserving because negating a single image or
    permuting coordinates never changes the embedding number.
    """
    if G.order**n > budget:
        raise BudgetExceededError(
            f"{G.order}^{n} homomorphisms exceed the budget of {budget}"
        )
    if n < G.rank:
        return INFINITY, None  # too few generators to be surjective
    if prune:
        candidates: Iterable[Tuple[GroupElement, ...]] = normalized_image_tuples(G, n)
    else:
        candidates = itertools.product(list(G.elements()), repeat=n)
    best = INFINITY
    best_hom: Optional[Homomorphism] = None
    for images in candidates:
        phi = Homomorphism(G, tuple(images))
        value = embedding_number(phi)
        if value < best:
            best = value
            best_hom = phi
    return best, best_hom


def pi_group(n: int, G: AbelianGroup, budget: int = DEFAULT_HOM_BUDGET):
    """min over phi of embedding_number(phi) for phi: Z^n -> G."""
    return pi_group_search(n, G, budget)[0]


def pi_number_search(
    n: int, k: int, budget: int = DEFAULT_HOM_BUDGET
) -> Tuple[object, Optional[Homomorphism]]:
    """Minimum of pi_group over all abelian groups of order k, with argmin."""
    best = INFINITY
    best_hom: Optional[Homomorphism] = None
    for G in groups_of_order(k):
        value, hom = pi_group_search(n, G, budget)
        if value < best:
            best = value
            best_hom = hom
    return best, best_hom


def pi_number(n: int, k: int, budget: int = DEFAULT_HOM_BUDGET):
    """min over abelian groups G of order k of pi_group(n, G)."""
    return pi_number_search(n, k, budget)[0]


def profile_to_json(prof: DistanceProfile) -> dict:
    """JSON-ready view of a distance profile, sorted by element."""
    entries = [
        {
            "element": list(g),
            "distance": prof.dist[g],
            "witness": list(prof.witness[g]),
        }
        for g in sorted(prof.dist)
    ]
    return {
        "group": str(prof.group),
        "surjective": prof.surjective,
        "entries": entries,
    }
