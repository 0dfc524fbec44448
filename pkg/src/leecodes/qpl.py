"""Quasi-perfect Lee codes from optimal embeddings.

A surjective homomorphism phi: Z^n -> G that is injective on the
radius-e sphere defines a linear code: the kernel lattice of phi.
Codewords are then pairwise at distance >= 2e+1, every word is within
the covering radius (the largest coset-leader weight) of a codeword,
and syndrome decoding is a table lookup: subtract the stored
minimum-weight leader of the received word's image.

Codes are represented by their defining homomorphism rather than a
basis matrix; all finite checks (tiling, pairwise distance, covering)
run on the fundamental torus (Z_p)^n, where p is the lcm of the image
orders, so the kernel is p-periodic and the checks are exact.
"""

from __future__ import annotations

import csv
import enum
import itertools
import math
from dataclasses import dataclass
from importlib import resources
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import BudgetExceededError
from .embeddings import (
    Homomorphism,
    distance_profile,
    hom_apply,
    is_injective_on_sphere,
    is_optimal,
)
from .groups import AbelianGroup, GroupElement, cyclic, cyclic_element, groups_of_order
from .spheres import Word, radius_for, sphere_size

DEFAULT_TORUS_BUDGET = 10**7
DEFAULT_SEARCH_BUDGET = 2000
BUNDLED_TABLE = "optimal_embeddings_z3.csv"
CSV_HEADER = ["k", "phi_e1", "phi_e2", "phi_e3"]


class CodeClass(enum.Enum):
    PERFECT = "PERFECT"
    QUASI_PERFECT = "QUASI_PERFECT"
    OTHER = "OTHER"


@dataclass(frozen=True)
class LinearLeeCode:
    """Kernel lattice of a homomorphism, with its decoding table."""

    hom: Homomorphism
    e: int
    period: int
    coset_leaders: Dict[GroupElement, Word]
    covering_radius: int
    classification: CodeClass

    @property
    def n(self) -> int:
        return self.hom.n

    @property
    def group(self) -> AbelianGroup:
        return self.hom.group


def period_of(phi: Homomorphism) -> int:
    """Smallest p with p * e_i in the kernel for every i: the lcm of the
    image orders."""
    G = phi.group
    return math.lcm(1, *(G.element_order(img) for img in phi.images))


def build_code(phi: Homomorphism, e: int) -> LinearLeeCode:
    """Construct the kernel-lattice code of phi for correction radius e.

    Requires phi surjective and injective on the radius-e sphere (so the
    code has minimum distance >= 2e+1).  Classification: PERFECT when
    the covering radius is e and |G| equals the sphere size (spheres
    tile); QUASI_PERFECT when the covering radius is e + 1; OTHER else.
    """
    if e < 0:
        raise ValueError(f"correction radius must be >= 0, got {e}")
    if phi.group.order <= 1:
        raise ValueError("degenerate code: trivial target group")
    prof = distance_profile(phi)
    if not prof.surjective:
        raise ValueError("homomorphism is not surjective; kernel is not a code")
    if not is_injective_on_sphere(phi, e):
        raise ValueError(
            f"homomorphism is not injective on the radius-{e} sphere"
        )
    covering = prof.covering_radius()
    if covering == e and phi.group.order == sphere_size(phi.n, e):
        cls = CodeClass.PERFECT
    elif covering == e + 1:
        cls = CodeClass.QUASI_PERFECT
    else:
        cls = CodeClass.OTHER
    return LinearLeeCode(
        hom=phi,
        e=e,
        period=period_of(phi),
        coset_leaders=dict(prof.witness),
        covering_radius=covering,
        classification=cls,
    )


def decode(code: LinearLeeCode, word: Sequence[int]) -> Word:
    """Nearest-codeword estimate: subtract the coset leader of the
    received word's syndrome.  The result maps to zero and lies within
    the covering radius of the input."""
    syndrome = hom_apply(code.hom, word)
    leader = code.coset_leaders[syndrome]
    return tuple(w - l for w, l in zip(word, leader))


def torus_weight(w: Sequence[int], p: int) -> int:
    """Lee weight on the torus (Z_p)^n."""
    return sum(min(c % p, p - c % p) if c % p else 0 for c in w)


def kernel_points(
    phi: Homomorphism, p: int, budget: int = DEFAULT_TORUS_BUDGET
) -> List[Word]:
    """All points of [0, p)^n in the kernel of phi.

    p must be a multiple of the code period so that phi is well defined
    on the torus.
    """
    if p % period_of(phi) != 0:
        raise ValueError(f"{p} is not a multiple of the period {period_of(phi)}")
    if p**phi.n > budget:
        raise BudgetExceededError(
            f"torus has {p}^{phi.n} points, over the budget of {budget}"
        )
    zero = phi.group.zero()
    return [
        x
        for x in itertools.product(range(p), repeat=phi.n)
        if hom_apply(phi, x) == zero
    ]


def min_distance_on_torus(code: LinearLeeCode, budget: int = DEFAULT_TORUS_BUDGET) -> int:
    """Minimum pairwise distance between distinct codewords on the
    fundamental torus.

    The code is a subgroup of the torus and the torus metric is
    translation invariant, so the pairwise minimum equals the minimum
    weight over nonzero kernel points.
    """
    p = code.period
    best: Optional[int] = None
    for x in kernel_points(code.hom, p, budget):
        if all(c == 0 for c in x):
            continue
        w = torus_weight(x, p)
        if best is None or w < best:
            best = w
    if best is None:
        raise ValueError("code has a single codeword on its torus")
    return best


def torus_tiling_check(
    phi: Homomorphism,
    cells: Iterable[Word],
    budget: int = DEFAULT_TORUS_BUDGET,
) -> bool:
    """Do kernel translates of the given cell set partition the torus?

    This is the finite, executable form of the correspondence between
    bijective restrictions of phi and lattice tilings: with |cells| =
    |G| and phi bijective on the cells, the translates must cover
    (Z_p)^n exactly once.
    """
    cell_list = list(cells)
    if len(cell_list) != phi.group.order:
        raise ValueError(
            f"need exactly |G| = {phi.group.order} cells, got {len(cell_list)}"
        )
    p = period_of(phi)
    n = phi.n
    if p**n > budget:
        raise BudgetExceededError(
            f"torus has {p}^{n} points, over the budget of {budget}"
        )
    strides = [p**i for i in range(n - 1, -1, -1)]
    seen = bytearray(p**n)
    count = 0
    for lat in kernel_points(phi, p, budget):
        for cell in cell_list:
            idx = 0
            for c, l, s in zip(cell, lat, strides):
                idx += ((c + l) % p) * s
            if seen[idx]:
                return False
            seen[idx] = 1
            count += 1
    return count == p**n


@dataclass(frozen=True)
class AppendixRow:
    """One row of the bundled optimal-embedding table for Z^3."""

    k: int
    images: Tuple[int, int, int]

    def homomorphism(self) -> Homomorphism:
        G = cyclic(self.k)
        return Homomorphism(G, tuple(cyclic_element(self.k, v) for v in self.images))


def bundled_table_path() -> str:
    return str(resources.files("leecodes").joinpath(f"data/{BUNDLED_TABLE}"))


def load_appendix_rows(path: Optional[str] = None) -> List[AppendixRow]:
    """Parse an embedding table CSV (header ``k,phi_e1,phi_e2,phi_e3``)."""
    if path is None:
        path = bundled_table_path()
    rows: List[AppendixRow] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != CSV_HEADER:
            raise ValueError(f"malformed table header {header!r}, expected {CSV_HEADER}")
        for lineno, rec in enumerate(reader, start=2):
            if not rec:
                continue
            if len(rec) != 4:
                raise ValueError(f"malformed row at line {lineno}: {rec!r}")
            try:
                k, a, b, c = (int(x) for x in rec)
            except ValueError as exc:
                raise ValueError(f"malformed row at line {lineno}: {rec!r}") from exc
            rows.append(AppendixRow(k, (a, b, c)))
    return rows


@dataclass(frozen=True)
class AppendixReport:
    """Per-row verdicts plus sphere-window coverage for radii 1..6."""

    results: Tuple[Tuple[AppendixRow, bool], ...]
    coverage: Dict[int, bool]

    @property
    def all_rows_pass(self) -> bool:
        return all(ok for _, ok in self.results)

    @property
    def coverage_ok(self) -> bool:
        return all(self.coverage.values())

    @property
    def failures(self) -> List[AppendixRow]:
        return [row for row, ok in self.results if not ok]


def verify_appendix(rows: Sequence[AppendixRow]) -> AppendixReport:
    """Check every row for optimality and the radius windows for coverage.

    A failing row is reported, never skipped; coverage asks that each
    correction radius e in 1..6 has some row k in
    [sphere_size(3, e), sphere_size(3, e+1)).
    """
    results = []
    for row in rows:
        results.append((row, is_optimal(row.homomorphism())))
    coverage = {}
    for e in range(1, 7):
        lo, hi = sphere_size(3, e), sphere_size(3, e + 1)
        coverage[e] = any(lo <= row.k < hi and ok for row, ok in results)
    return AppendixReport(tuple(results), coverage)


def search_optimal_embedding(
    n: int,
    k: int,
    *,
    all_groups: bool = False,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> Optional[Homomorphism]:
    """First optimal homomorphism Z^n -> Z_k in lexicographic order, or
    None after exhausting the normalized space.

    Normalization: nondecreasing image tuples with each value at most
    k/2 (negating one image preserves all embedding weights).  Cheap
    necessary conditions (injectivity on small spheres) prune before
    the full check.  With ``all_groups`` every abelian group of order k
    is searched, cyclic first.
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    if n * k > budget:
        raise BudgetExceededError(f"n*k = {n * k} exceeds the budget of {budget}")
    groups: List[AbelianGroup] = groups_of_order(k) if all_groups else [cyclic(k)]
    r = radius_for(n, k)
    for G in groups:
        reps = sorted({min(g, G.neg(g)) for g in G.elements()})
        for images in itertools.combinations_with_replacement(reps, n):
            phi = Homomorphism(G, images)
            if r >= 1 and not is_injective_on_sphere(phi, 1):
                continue
            if r >= 2 and not is_injective_on_sphere(phi, 2):
                continue
            if is_optimal(phi):
                return phi
    return None


def code_to_json(code: LinearLeeCode) -> dict:
    return {
        "version": 1,
        "n": code.n,
        "group": list(code.group.factors),
        "images": [list(img) for img in code.hom.images],
        "e": code.e,
        "period": code.period,
        "covering_radius": code.covering_radius,
        "classification": code.classification.value,
    }


def code_from_json(data: dict) -> LinearLeeCode:
    """Rebuild a code from its serialized form.

    Coset leaders are recomputed deterministically from the
    homomorphism; period, covering radius and classification are
    cross-checked against the stored values.
    """
    if data.get("version") != 1:
        raise ValueError(f"unsupported code version {data.get('version')!r}")
    G = AbelianGroup(tuple(data["group"]))
    phi = Homomorphism(G, tuple(tuple(img) for img in data["images"]))
    code = build_code(phi, data["e"])
    for field in ("period", "covering_radius"):
        if data[field] != getattr(code, field):
            raise ValueError(
                f"stored {field}={data[field]} does not match recomputed "
                f"{getattr(code, field)}"
            )
    if data["classification"] != code.classification.value:
        raise ValueError("stored classification does not match recomputed value")
    return code
