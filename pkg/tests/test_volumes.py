from __future__ import annotations

from decimal import Decimal, getcontext
from fractions import Fraction

import pytest

from leecodes.spheres import sphere_size
from leecodes.volumes import (
    OCTAHEDRON_PACKING_EFFICIENCY,
    exclusion_margin,
    kn_bound_scan,
    lee_sphere_volume,
    octahedron_volume,
    qpl3_threshold,
    volume_excludes_tiling,
)

ALPHA3 = OCTAHEDRON_PACKING_EFFICIENCY


def test_octahedron_volume_examples():
    assert octahedron_volume(3, 0) == Fraction(1, 6)
    assert octahedron_volume(2, 1) == Fraction(9, 2)
    assert octahedron_volume(3, 55) == Fraction(1367631, 6)


def test_lee_sphere_volume_matches_sphere_size():
    for n in range(1, 6):
        for r in range(0, 31):
            assert lee_sphere_volume(n, r) == sphere_size(n, r)


def test_exclusion_examples():
    assert volume_excludes_tiling(3, 55, sphere_size(3, 56) - 1, ALPHA3)
    assert not volume_excludes_tiling(3, 54, sphere_size(3, 55) - 1, ALPHA3)
    # efficiency 1 excludes nothing in the plane: squares tile
    assert not volume_excludes_tiling(2, 10, sphere_size(2, 11) - 1, Fraction(1))


def test_exclusion_preconditions():
    with pytest.raises(ValueError):
        volume_excludes_tiling(3, 5, 10, ALPHA3)  # volume outside window
    with pytest.raises(ValueError):
        volume_excludes_tiling(3, 5, sphere_size(3, 5), Fraction(2))


def test_threshold():
    assert qpl3_threshold() == 55


def test_threshold_strictness_margins():
    at = exclusion_margin(3, 55, ALPHA3)
    below = exclusion_margin(3, 54, ALPHA3)
    assert at > 0 > below
    assert at == Fraction(309, 3047296)
    assert below == Fraction(-21689, 25995420)


def test_no_threshold_outcome_is_bounded():
    assert kn_bound_scan(2, Fraction(1), r_max=300) is None
    assert qpl3_threshold(scan_bound=40) is None  # scan too short to reach 55


def test_kn_bound_scan():
    hit = kn_bound_scan(3, ALPHA3)
    assert hit == (55, sphere_size(3, 55))
    assert hit[1] == 228031


def test_ratio_increases_toward_one():
    prev = None
    for r in range(1, 2001):
        ratio = octahedron_volume(3, r) / lee_sphere_volume(3, r + 1)
        assert ratio < 1
        if prev is not None:
            assert ratio > prev
        prev = ratio
    assert prev > Fraction(95, 100)


def test_exact_verdicts_match_high_precision_recomputation():
    # The rational comparisons near the threshold must agree with a
    # 60-digit decimal recomputation, i.e. no hidden rounding anywhere.
    getcontext().prec = 60
    for e in range(50, 60):
        k = sphere_size(3, e + 1) - 1
        lhs = Decimal((2 * e + 1) ** 3) / Decimal(6) / Decimal(k)
        rhs = Decimal(18) / Decimal(19)
        assert volume_excludes_tiling(3, e, k, ALPHA3) == (lhs > rhs)


def test_input_validation():
    with pytest.raises(ValueError):
        octahedron_volume(0, 1)
    with pytest.raises(ValueError):
        kn_bound_scan(3, Fraction(0))
