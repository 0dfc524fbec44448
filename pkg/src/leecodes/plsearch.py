"""Exhaustive backtracking search for generator tuples that are bijective
on the radius-2 Lee sphere.

A homomorphism Z^n -> G restricted to the radius-2 sphere hits exactly
the set {+-g_i, +-g_i +- g_j : i <= j} (g_i the generator images), whose
size is at most 2n^2 + 2n + 1, with equality iff the restriction is
injective.  A tuple reaching full size is a *witness*: for |G| equal to
that sphere size it yields a linear perfect 2-error-correcting code.
NO_WITNESS over the whole normalized space is a non-existence
certificate.

Normalization: flipping g_i -> -g_i and permuting the tuple preserve the
set, so only strictly increasing tuples of negation-class
representatives are searched.  Candidates for position m are further
restricted to values outside the set generated so far (anything inside
collides immediately), and a prefix whose set is deficient prunes its
whole subtree.

The inner loop is the performance core: membership is a flat bytearray
over element indices with an undo log, so insert, query and rollback are
O(1); group addition is a precomputed index table, making the same code
path serve cyclic and non-cyclic groups.  Searches are shardable by
first-level candidate ranges and checkpoint/resumable: the current
prefix plus the next candidate position fully encode the DFS state, so
resuming replays nothing.
"""

from __future__ import annotations

import json
import math
import os
import warnings
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .groups import AbelianGroup, GroupElement, cyclic

CHECKPOINT_VERSION = 1
DEFAULT_CHECKPOINT_EVERY = 10**7

ProgressFn = Callable[[int], None]


@dataclass(frozen=True)
class Shard:
    """A contiguous half-open range [start, stop) of first-level
    candidate positions."""

    index: int
    start: int
    stop: int


@dataclass(frozen=True)
class SearchOutcome:
    verdict: str  # "WITNESS" or "NO_WITNESS"
    witness: Optional[Tuple[GroupElement, ...]]
    nodes_visited: int
    shard_id: Optional[int] = None

    @property
    def found(self) -> bool:
        return self.verdict == "WITNESS"


@dataclass(frozen=True)
class Checkpoint:
    """Resumable DFS frontier: everything before (prefix, next_pos) in
    preorder is exhausted; nothing after it has been touched."""

    version: int
    n: int
    group_factors: Tuple[int, ...]
    shard: Optional[Tuple[int, int]]
    shard_id: Optional[int]
    prefix: Tuple[int, ...]  # chosen candidate positions, depths 1..len
    next_pos: int  # next candidate position at depth len(prefix)+1
    nodes: int

    def to_json(self) -> dict:
        return {
            "version": self.version,
            "n": self.n,
            "group_factors": list(self.group_factors),
            "shard": list(self.shard) if self.shard else None,
            "shard_id": self.shard_id,
            "prefix": list(self.prefix),
            "next_pos": self.next_pos,
            "nodes": self.nodes,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Checkpoint":
        if data.get("version") != CHECKPOINT_VERSION:
            raise ValueError(f"unsupported checkpoint version {data.get('version')!r}")
        return cls(
            version=data["version"],
            n=data["n"],
            group_factors=tuple(data["group_factors"]),
            shard=tuple(data["shard"]) if data.get("shard") else None,
            shard_id=data.get("shard_id"),
            prefix=tuple(data["prefix"]),
            next_pos=data["next_pos"],
            nodes=data["nodes"],
        )

    def save(self, path: str) -> None:
        tmp = f"{path}.tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh)
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str) -> "Checkpoint":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def quad_set(tup: Sequence[GroupElement], G: AbelianGroup) -> set:
    """The set {+-g_i} union {+-(g_i + g_j), +-(g_i - g_j) : i <= j}.

    Includes 0 (from i = j differences) and the doubles +-2g_i, so an
    m-tuple yields at most 2m^2 + 2m + 1 elements.
    """
    if not tup:
        raise ValueError("tuple must be nonempty")
    out = set()
    for i, g in enumerate(tup):
        out.add(g)
        out.add(G.neg(g))
        for h in tup[: i + 1]:
            for v in (G.add(g, h), G.sub(g, h)):
                out.add(v)
                out.add(G.neg(v))
    return out


def is_deficient(tup: Sequence[GroupElement], G: AbelianGroup) -> bool:
    """True iff the tuple's quad set falls short of full sphere size,
    i.e. the induced homomorphism cannot be injective on radius 2."""
    m = len(tup)
    return len(quad_set(tup, G)) < 2 * m * m + 2 * m + 1


def node_budget_estimate(n: int) -> int:
    """Crude upper bound (2n)!/n! on deficiency tests in a full search."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    return math.factorial(2 * n) // math.factorial(n)


class _GroupTables:
    """Flat index tables for one group: addition, negation and the
    ordered list of negation-class representatives."""

    def __init__(self, G: AbelianGroup):
        self.group = G
        self.elements: List[GroupElement] = list(G.elements())
        index: Dict[GroupElement, int] = {e: i for i, e in enumerate(self.elements)}
        self.index = index
        self.neg = [index[G.neg(e)] for e in self.elements]
        self.add = [
            [index[G.add(a, b)] for b in self.elements] for a in self.elements
        ]
        # Nonzero representatives of {g, -g}, ascending in element order.
        self.reps = [i for i in range(1, len(self.elements)) if self.neg[i] >= i]


def first_level_count(G: AbelianGroup) -> int:
    """Number of first-level candidates (negation classes of G - {0})."""
    neg_fixed = sum(1 for e in G.elements() if G.neg(e) == e)
    return (G.order - neg_fixed) // 2 + neg_fixed - 1


def shard_plan(n: int, k: int, parts: int) -> List[Shard]:
    """Split the first-level candidates of Z_k into contiguous ranges.

    The union of per-shard verdicts equals the unsharded verdict: shards
    partition the depth-1 choices and subtrees are independent.
    """
    return plan_shards_for_group(cyclic(k), parts)


def plan_shards_for_group(G: AbelianGroup, parts: int) -> List[Shard]:
    if parts < 1:
        raise ValueError(f"parts must be >= 1, got {parts}")
    total = first_level_count(G)
    base, extra = divmod(total, parts)
    shards = []
    start = 0
    for i in range(parts):
        size = base + (1 if i < extra else 0)
        shards.append(Shard(i, start, start + size))
        start += size
    return shards


def validate_shards(shards: Sequence[Shard], G: AbelianGroup) -> None:
    """Reject shard lists that overlap or fail to cover the first level."""
    total = first_level_count(G)
    ordered = sorted(shards, key=lambda s: s.start)
    pos = 0
    for s in ordered:
        if s.start != pos or s.stop < s.start:
            raise ValueError(f"shard ranges overlap or leave gaps at {s}")
        pos = s.stop
    if pos != total:
        raise ValueError(
            f"shard ranges cover {pos} first-level candidates, expected {total}"
        )


def backtrack_pl2(
    n: int,
    G: AbelianGroup,
    shard: Optional[Shard] = None,
    *,
    checkpoint_path: Optional[str] = None,
    checkpoint_every: int = DEFAULT_CHECKPOINT_EVERY,
    node_limit: Optional[int] = None,
    resume: Optional[Checkpoint] = None,
    progress: Optional[ProgressFn] = None,
    progress_every: int = 10**6,
):
    """Depth-first search over normalized generator tuples.

    Returns a SearchOutcome, or a Checkpoint if ``node_limit`` ran out
    first.  WITNESS reports the lexicographically first full-size tuple;
    NO_WITNESS certifies that every normalized tuple (restricted to the
    shard's first-level range, if given) is deficient.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    expected = 2 * n * n + 2 * n + 1
    if G.order != expected:
        warnings.warn(
            f"|G| = {G.order} differs from the radius-2 sphere size "
            f"{expected} for n = {n}; a witness will not certify a perfect code",
            stacklevel=2,
        )

    tables = _GroupTables(G)
    reps = tables.reps
    add = tables.add
    neg = tables.neg
    total = len(reps)

    if shard is not None:
        if not 0 <= shard.start <= shard.stop <= total:
            raise ValueError(f"shard {shard} out of range (0..{total})")
        lo, hi = shard.start, shard.stop
        shard_tuple: Optional[Tuple[int, int]] = (lo, hi)
        shard_id: Optional[int] = shard.index
    else:
        lo, hi = 0, total
        shard_tuple = None
        shard_id = None

    marked = bytearray(G.order)
    marked[0] = 1
    undo: List[int] = []
    undo_len = [0] * (n + 1)
    chosen_pos = [0] * (n + 1)  # candidate position per depth, 1-based
    chosen = [0] * (n + 1)  # element index per depth, 1-based
    cand = [0] * (n + 2)  # next candidate position per depth

    depth = 1
    cand[1] = lo
    nodes = 0

    if resume is not None:
        if (
            resume.n != n
            or resume.group_factors != G.factors
            or resume.shard != shard_tuple
        ):
            raise ValueError("checkpoint does not match the requested search")
        nodes = resume.nodes
        for d, pos in enumerate(resume.prefix, start=1):
            c = reps[pos]
            undo_len[d] = len(undo)
            if not _insert_quad(c, chosen, d, marked, undo, add, neg):
                raise ValueError("corrupt checkpoint: stored prefix is deficient")
            chosen_pos[d] = pos
            chosen[d] = c
        depth = len(resume.prefix) + 1
        cand[depth] = resume.next_pos

    next_checkpoint = nodes + checkpoint_every
    next_progress = nodes + progress_every
    stop_at = None if node_limit is None else nodes + node_limit

    while True:
        pos = cand[depth]
        limit = hi if depth == 1 else total
        while pos < limit and marked[reps[pos]]:
            pos += 1
        if pos >= limit:
            depth -= 1
            if depth == 0:
                outcome = SearchOutcome("NO_WITNESS", None, nodes, shard_id)
                if checkpoint_path and os.path.exists(checkpoint_path):
                    os.remove(checkpoint_path)
                return outcome
            target = undo_len[depth]
            while len(undo) > target:
                marked[undo.pop()] = 0
            cand[depth] = chosen_pos[depth] + 1
            continue

        if stop_at is not None and nodes >= stop_at:
            ckpt = Checkpoint(
                CHECKPOINT_VERSION,
                n,
                G.factors,
                shard_tuple,
                shard_id,
                tuple(chosen_pos[1:depth]),
                pos,
                nodes,
            )
            if checkpoint_path:
                ckpt.save(checkpoint_path)
            return ckpt
        if checkpoint_path and nodes >= next_checkpoint:
            Checkpoint(
                CHECKPOINT_VERSION,
                n,
                G.factors,
                shard_tuple,
                shard_id,
                tuple(chosen_pos[1:depth]),
                pos,
                nodes,
            ).save(checkpoint_path)
            next_checkpoint = nodes + checkpoint_every
        if progress and nodes >= next_progress:
            progress(nodes)
            next_progress = nodes + progress_every

        c = reps[pos]
        nodes += 1
        undo_len[depth] = len(undo)
        if _insert_quad(c, chosen, depth, marked, undo, add, neg):
            chosen_pos[depth] = pos
            chosen[depth] = c
            if depth == n:
                witness = tuple(tables.elements[chosen[d]] for d in range(1, n + 1))
                outcome = SearchOutcome("WITNESS", witness, nodes, shard_id)
                if checkpoint_path and os.path.exists(checkpoint_path):
                    os.remove(checkpoint_path)
                return outcome
            depth += 1
            cand[depth] = pos + 1
        else:
            cand[depth] = pos + 1


def _insert_quad(
    c: int,
    chosen: List[int],
    depth: int,
    marked: bytearray,
    undo: List[int],
    add: List[List[int]],
    neg: List[int],
) -> bool:
    """Mark the new quad-set elements contributed by candidate c at the
    given depth.  Any collision (with earlier marks or among the new
    values, including 2c = -2c torsion) is a deficiency: roll back and
    report False.  Success marks exactly 4 * depth new elements.
    """
    start = len(undo)
    row = add[c]
    values = [c, row[c]]
    for d in range(1, depth):
        g = chosen[d]
        values.append(row[g])
        values.append(row[neg[g]])
    for v in values:
        if marked[v]:
            while len(undo) > start:
                marked[undo.pop()] = 0
            return False
        marked[v] = 1
        undo.append(v)
        nv = neg[v]
        if marked[nv]:
            while len(undo) > start:
                marked[undo.pop()] = 0
            return False
        marked[nv] = 1
        undo.append(nv)
    return True


def merge_outcomes(outcomes: Sequence[SearchOutcome]) -> SearchOutcome:
    """Combine per-shard verdicts: any witness wins (lowest shard first,
    which preserves the unsharded lexicographic choice); otherwise the
    union certifies NO_WITNESS."""
    nodes = sum(o.nodes_visited for o in outcomes)
    winners = [o for o in outcomes if o.found]
    if winners:
        best = min(winners, key=lambda o: (o.shard_id if o.shard_id is not None else 0))
        return SearchOutcome("WITNESS", best.witness, nodes, None)
    return SearchOutcome("NO_WITNESS", None, nodes, None)


def run_sharded(
    n: int,
    G: AbelianGroup,
    parts: int,
    *,
    progress: Optional[ProgressFn] = None,
) -> SearchOutcome:
    """Plan, run and merge a sharded search in-process."""
    shards = plan_shards_for_group(G, parts)
    validate_shards(shards, G)
    outcomes = []
    for s in shards:
        result = backtrack_pl2(n, G, s, progress=progress)
        assert isinstance(result, SearchOutcome)
        outcomes.append(result)
    return merge_outcomes(outcomes)
