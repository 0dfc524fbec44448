from __future__ import annotations

import itertools
import json
import random
from collections import deque

import pytest

from leecodes.embeddings import Homomorphism, hom_apply, is_optimal
from leecodes.errors import BudgetExceededError
from leecodes.groups import AbelianGroup, cyclic, cyclic_element
from leecodes.planar import optimal_hom_2d
from leecodes.qpl import (
    AppendixRow,
    CodeClass,
    build_code,
    code_from_json,
    code_to_json,
    decode,
    kernel_points,
    load_appendix_rows,
    min_distance_on_torus,
    period_of,
    search_optimal_embedding,
    torus_tiling_check,
    torus_weight,
    verify_appendix,
)
from leecodes.spheres import (
    enumerate_sphere,
    lee_distance,
    radius_for,
    sphere_size,
)


def chom(k: int, *values: int) -> Homomorphism:
    return Homomorphism(cyclic(k), tuple(cyclic_element(k, v) for v in values))


# --- optimal-embedding search ------------------------------------------------


def test_search_small_orders():
    found = search_optimal_embedding(3, 7)
    assert found is not None and found.images == ((1,), (2,), (3,))
    assert search_optimal_embedding(3, 25) is None
    phi55 = search_optimal_embedding(3, 55)
    assert phi55 is not None and is_optimal(phi55)
    assert phi55.images == ((1,), (5,), (21,))


def test_search_is_deterministic():
    a = search_optimal_embedding(3, 30)
    b = search_optimal_embedding(3, 30)
    assert a == b and a is not None and is_optimal(a)


def test_search_all_groups_mode():
    phi = search_optimal_embedding(2, 13, all_groups=True)
    assert phi is not None and phi.group == cyclic(13)


def test_search_budget_refusal():
    with pytest.raises(BudgetExceededError):
        search_optimal_embedding(3, 455, budget=1000)


# --- bundled table -----------------------------------------------------------


def test_bundled_table_shape():
    rows = load_appendix_rows()
    assert len(rows) == 122
    by_k = {row.k: row for row in rows}
    assert by_k[14].images == (1, 2, 5)
    assert by_k[438].images == (2, 45, 122)
    assert by_k[455].images == (1, 16, 199)
    # first-generator convention: 1 everywhere except order 438
    assert all(row.images[0] == 1 for row in rows if row.k != 438)


def test_verify_appendix_report():
    report = verify_appendix(load_appendix_rows())
    assert report.coverage_ok
    assert set(report.coverage) == {1, 2, 3, 4, 5, 6}
    # One printed row is genuinely deficient: for k=100 the images
    # (1, 6, 22) send (0, 1, 2) and (0, -1, -2) to the same residue 50,
    # so the map cannot be injective on the radius-3 sphere.  It is
    # reported, never repaired; the order itself still has an optimal
    # embedding, which the search confirms below.
    assert [row.k for row in report.failures] == [100]
    replacement = search_optimal_embedding(3, 100)
    assert replacement is not None and is_optimal(replacement)


def test_verify_appendix_spot_rows():
    rows = [
        AppendixRow(14, (1, 2, 5)),
        AppendixRow(438, (2, 45, 122)),
        AppendixRow(455, (1, 16, 199)),
    ]
    report = verify_appendix(rows)
    assert report.all_rows_pass


def test_verify_reports_bad_rows_without_raising():
    report = verify_appendix([AppendixRow(14, (1, 2, 5)), AppendixRow(14, (1, 2, 4))])
    assert [row.images for row in report.failures] == [(1, 2, 4)]


def test_malformed_csv_rejected(tmp_path):
    bad_header = tmp_path / "badh.csv"
    bad_header.write_text("k,a,b,c\n14,1,2,5\n")
    with pytest.raises(ValueError):
        load_appendix_rows(str(bad_header))
    bad_row = tmp_path / "badr.csv"
    bad_row.write_text("k,phi_e1,phi_e2,phi_e3\n14,1,2\n")
    with pytest.raises(ValueError):
        load_appendix_rows(str(bad_row))
    bad_int = tmp_path / "badi.csv"
    bad_int.write_text("k,phi_e1,phi_e2,phi_e3\n14,1,2,x\n")
    with pytest.raises(ValueError):
        load_appendix_rows(str(bad_int))


# --- code construction and decoding ------------------------------------------


def test_perfect_planar_code():
    code = build_code(chom(13, 2, 3), 2)
    assert code.classification is CodeClass.PERFECT
    assert code.covering_radius == 2
    assert code.period == 13
    assert min_distance_on_torus(code) == 5


def test_quasi_perfect_3d_code():
    code = build_code(chom(55, 1, 5, 21), 2)
    assert code.classification is CodeClass.QUASI_PERFECT
    assert code.covering_radius == 3
    assert min_distance_on_torus(code) >= 5


def test_other_classification():
    # Surjective and injective at radius 0, but the covering radius is 8,
    # far beyond e + 1: a valid lattice yet neither perfect nor
    # quasi-perfect.
    code = build_code(chom(16, 1, 0), 0)
    assert code.classification is CodeClass.OTHER
    assert code.covering_radius == 8


def test_perfect_exactly_at_sphere_orders():
    # Perfect classification coincides with |G| equal to the sphere size.
    cases = [
        (5, (1, 2), 1),
        (13, (2, 3), 2),
        (25, (3, 4), 3),
        (7, (2, 3), 1),
        (55, (1, 5, 21), 2),
    ]
    for k, images, e in cases:
        code = build_code(chom(k, *images), e)
        assert (code.classification is CodeClass.PERFECT) == (
            k == sphere_size(code.n, e)
        )


def test_build_code_preconditions():
    with pytest.raises(ValueError):
        build_code(Homomorphism(cyclic(1), ((), ())), 0)  # degenerate
    with pytest.raises(ValueError):
        build_code(chom(16, 4, 8), 1)  # not surjective
    with pytest.raises(ValueError):
        build_code(chom(16, 1, 5), 2)  # not injective at radius 2


def test_decode_examples():
    code = build_code(chom(13, 2, 3), 2)
    assert decode(code, (5, 1)) == (5, 1)  # 2*5+3*1 = 13 = 0: a codeword
    for w in itertools.product(range(13), repeat=2):
        c = decode(code, w)
        assert hom_apply(code.hom, c) == (0,)
        assert lee_distance(w, c) <= 2


def test_decode_idempotent_and_equivariant():
    rng = random.Random(19)
    code = build_code(chom(55, 1, 5, 21), 2)
    kernel = kernel_points(code.hom, code.period)
    for _ in range(200):
        w = tuple(rng.randint(-60, 60) for _ in range(3))
        c = decode(code, w)
        assert decode(code, c) == c
        shift = rng.choice(kernel)
        shifted = tuple(a + b for a, b in zip(w, shift))
        assert decode(code, shifted) == tuple(a + b for a, b in zip(c, shift))


def test_period_of():
    assert period_of(chom(55, 1, 5, 21)) == 55
    assert period_of(chom(12, 4, 6)) == 6  # lcm(3, 2)
    assert period_of(Homomorphism(AbelianGroup((2, 8)), ((1, 0), (0, 1)))) == 8


def test_kernel_points_counts():
    phi = chom(13, 2, 3)
    pts = kernel_points(phi, 13)
    assert len(pts) == 13  # 13^2 / 13
    assert all(hom_apply(phi, p) == (0,) for p in pts)
    with pytest.raises(BudgetExceededError):
        kernel_points(chom(438, 2, 45, 122), 438)
    with pytest.raises(ValueError):
        kernel_points(phi, 14)  # not a multiple of the period


def test_torus_weight():
    assert torus_weight((0, 0), 13) == 0
    assert torus_weight((12, 1), 13) == 2
    assert torus_weight((6, 7), 13) == 12


# --- tiling checks ------------------------------------------------------------


def test_tiling_classical_sphere():
    assert torus_tiling_check(chom(13, 2, 3), enumerate_sphere(2, 2))


def test_tiling_rejects_duplicate_images():
    cells = list(enumerate_sphere(2, 2))
    cells[-1] = (5, 0)  # duplicates the image of another cell
    assert not torus_tiling_check(chom(13, 2, 3), cells)


def test_tiling_size_mismatch():
    with pytest.raises(ValueError):
        torus_tiling_check(chom(13, 2, 3), list(enumerate_sphere(2, 1)))


def test_tiling_3d_leaders():
    code = build_code(chom(27, 1, 5, 8), 2)
    leaders = list(code.coset_leaders.values())
    sphere = set(enumerate_sphere(3, 2))
    assert sphere <= set(leaders)
    assert torus_tiling_check(code.hom, leaders)


# --- the embedding/code correspondence, both directions -----------------------


def test_optimal_embeddings_never_build_other():
    # Forward direction: an optimal embedding in the radius-e window
    # always yields a perfect or quasi-perfect code.
    cases = [optimal_hom_2d(k) for k in range(2, 40)]
    cases += [chom(k, *imgs) for k, imgs in [(27, (1, 5, 8)), (55, (1, 5, 21)),
                                             (14, (1, 2, 5)), (7, (1, 2, 3))]]
    for phi in cases:
        k = phi.group.order
        e = radius_for(phi.n, k)
        assert is_optimal(phi)
        code = build_code(phi, e)
        assert code.classification is not CodeClass.OTHER
        if k == sphere_size(phi.n, e):
            assert code.classification is CodeClass.PERFECT
        else:
            assert code.classification is CodeClass.QUASI_PERFECT


def _torus_code_stats(points, k, n):
    """Brute-force covering radius and minimum pairwise distance of a
    point set on the torus (Z_k)^n, by multi-source BFS and all pairs."""
    dist = {p: 0 for p in points}
    dq = deque(points)
    while dq:
        u = dq.popleft()
        for i in range(n):
            for s in (1, -1):
                v = u[:i] + ((u[i] + s) % k,) + u[i + 1 :]
                if v not in dist:
                    dist[v] = dist[u] + 1
                    dq.append(v)
    covering = max(dist.values())
    mind = min(
        torus_weight(tuple(a - b for a, b in zip(p, q)), k)
        for p, q in itertools.combinations(points, 2)
    )
    return mind, covering


def test_code_properties_match_sphere_restrictions_on_fuzzed_lattices():
    # Reverse direction at small scale.  A sublattice of Z^2 of index k
    # is a quasi-perfect code iff the natural quotient map is injective
    # on the radius-e sphere and surjective on the radius-(e+1) sphere.
    # Both sides are computed by independent routes: code side by torus
    # BFS + pairwise distances, embedding side by difference membership.
    rng = random.Random(47)
    lattices = []
    for k in range(5, 22):
        phi = optimal_hom_2d(k)
        lattices.append((k, set(kernel_points(phi, k))))
    for _ in range(40):
        v1 = (rng.randint(1, 6), rng.randint(0, 6))
        v2 = (rng.randint(-6, 6), rng.randint(1, 6))
        k = abs(v1[0] * v2[1] - v1[1] * v2[0])
        if not 5 <= k <= 24:
            continue
        pts = {
            ((a * v1[0] + b * v2[0]) % k, (a * v1[1] + b * v2[1]) % k)
            for a in range(k)
            for b in range(k)
        }
        if len(pts) == k:  # index-k sublattice containing k*Z^2
            lattices.append((k, pts))

    checked = 0
    for k, pts in lattices:
        mind, covering = _torus_code_stats(pts, k, 2)
        for e in range(max(0, covering - 1), (mind - 1) // 2 + 1):
            # code side says: QPL(2, e)
            assert covering <= e + 1 and mind >= 2 * e + 1
            # embedding side, via lattice membership only
            sphere_e = list(enumerate_sphere(2, e))
            for u, v in itertools.combinations(sphere_e, 2):
                diff = ((u[0] - v[0]) % k, (u[1] - v[1]) % k)
                assert diff not in pts  # injectivity on S_e
            covered = set()
            for w in enumerate_sphere(2, e + 1):
                for p in pts:
                    covered.add(((p[0] + w[0]) % k, (p[1] + w[1]) % k))
            assert len(covered) == k * k  # surjectivity on S_{e+1}
            assert k >= sphere_size(2, e)
            checked += 1
    assert checked >= 15


# --- serialization ------------------------------------------------------------


def test_code_json_round_trip():
    code = build_code(chom(55, 1, 5, 21), 2)
    data = code_to_json(code)
    assert json.loads(json.dumps(data)) == data
    rebuilt = code_from_json(data)
    assert rebuilt.hom == code.hom
    assert rebuilt.coset_leaders == code.coset_leaders
    assert rebuilt.classification is code.classification


def test_code_json_rejects_corruption():
    data = code_to_json(build_code(chom(13, 2, 3), 2))
    data["covering_radius"] = 7
    with pytest.raises(ValueError):
        code_from_json(data)
    data = code_to_json(build_code(chom(13, 2, 3), 2))
    data["version"] = 99
    with pytest.raises(ValueError):
        code_from_json(data)
