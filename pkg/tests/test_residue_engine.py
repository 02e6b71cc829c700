"""Tests for the certified contour-integration pipeline."""

from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from mpmath import mpf

from hadwalk.errors import (
    ConsistencyError,
    DegenerateIntegrandError,
    PrecisionError,
    PrecisionEscalation,
)
from hadwalk.exactq import Polynomial
from hadwalk.residue_engine import (
    Integrand,
    _mpf_to_fraction,
    build_integrand,
    classify_roots,
    denominator_bound,
    find_roots,
    integrate_exact,
    residue_sum,
)
from hadwalk.walk_core import (
    absorption_denominator,
    gf_denominator,
    p_exact,
    r_poly,
)

F = Fraction
HALF = F(1, 2)


def T(*coeffs):
    return Polynomial(coeffs, var="t")


def one_plus_2t():
    return T(1, 2)


# --------------------------------------------------------------- integrand


def test_build_integrand_frozen_smallest():
    # j=1, n=2: b = r_1^2 = 1, c = D_2 = 1, d = r_2 - r_1 = -2t.
    ig = build_integrand(1, 2)
    assert ig.b == T(1)
    assert ig.c == T(1)
    assert ig.d == T(0, -2)
    assert ig.scale == F(-1)
    assert ig.radius == HALF


def test_build_integrand_structure():
    ig = build_integrand(2, 5)
    assert ig.b == T(0, 1) * r_poly(3) ** 2
    assert ig.c == gf_denominator(5)
    assert ig.d == absorption_denominator(5)
    assert ig.scale == F(1)  # (-1)^j with j even


def test_build_integrand_validation():
    with pytest.raises(ValueError):
        build_integrand(1, 1)
    with pytest.raises(ValueError):
        build_integrand(0, 4)
    with pytest.raises(ValueError):
        build_integrand(4, 4)


# -------------------------------------------------------- denominator bound


def test_denominator_bound_frozen():
    db = denominator_bound(build_integrand(1, 2))
    assert (db.R, db.D, db.lc_correction, db.delta) == (1, 1, 2, 2)

    # j=1, n=3: c = 1 - t, d = 4t^2 - t, b = (1 - 2t)^2.
    # res(c, d) = 3, disc(d) = 1, |lc_c^2 * lc_d^4| = 256.
    db = denominator_bound(build_integrand(1, 3))
    assert (db.R, db.D, db.lc_correction, db.delta) == (3, 1, 256, 768)


def test_denominator_bound_clears_the_true_denominator():
    for n in range(2, 10):
        for j in range(1, n):
            db = denominator_bound(build_integrand(j, n))
            assert (db.delta * p_exact(j, n)).denominator == 1


def test_denominator_bound_rejects_fractional_coefficients():
    ig = Integrand(b=T(F(1, 2)), c=T(1), d=T(0, 1), scale=F(1), radius=HALF)
    with pytest.raises(ConsistencyError):
        denominator_bound(ig)


def test_denominator_bound_degenerate_pole_configurations():
    # Double root of d: discriminant vanishes.
    ig = Integrand(b=T(1), c=T(1), d=T(1, -2, 1), scale=F(1), radius=HALF)
    with pytest.raises(DegenerateIntegrandError):
        denominator_bound(ig)
    # Shared root of c and d: resultant vanishes.
    ig = Integrand(b=T(1), c=T(-1, 1), d=T(-1, 0, 1), scale=F(1), radius=HALF)
    with pytest.raises(DegenerateIntegrandError):
        denominator_bound(ig)


# ------------------------------------------------------------- root finding


def test_find_roots_frozen_small():
    rs = find_roots(T(0, -2), 128)  # -2t
    assert rs.precision_bits == 128
    assert len(rs.approximations) == 1
    assert abs(rs.approximations[0]) <= rs.error_radius
    assert rs.error_radius < mpf(10) ** -25

    rs = find_roots(T(0, -1, 4), 128)  # t(4t - 1)
    got = sorted(rs.approximations, key=lambda x: x.real)
    assert abs(got[0]) <= rs.error_radius
    assert abs(got[1] - mpf(1) / 4) <= rs.error_radius

    rs = find_roots(T(1, -1), 128)  # 1 - t
    assert abs(rs.approximations[0] - 1) <= rs.error_radius


def test_find_roots_certificate_means_disjoint_disks():
    rs = find_roots(gf_denominator(5), 128)
    assert len(rs.approximations) == 3
    for i in range(3):
        for k in range(i + 1, 3):
            gap = abs(rs.approximations[i] - rs.approximations[k])
            assert gap > 2 * rs.error_radius


def test_find_roots_refinement_is_consistent():
    p = absorption_denominator(7)
    coarse = find_roots(p, 128)
    fine = find_roots(p, 512)
    assert fine.error_radius < coarse.error_radius
    key = lambda x: (round(float(x.real), 6), round(float(x.imag), 6))
    for a, b in zip(
        sorted(coarse.approximations, key=key),
        sorted(fine.approximations, key=key),
    ):
        assert abs(a - b) <= 2 * coarse.error_radius


def test_find_roots_cached_per_precision():
    p = absorption_denominator(6)
    assert find_roots(p, 128) is find_roots(p, 128)


def test_find_roots_validation():
    with pytest.raises(ValueError):
        find_roots(T(3), 128)


# ----------------------------------------------------------- classification


def test_classify_frozen():
    rs = find_roots(T(0, -1, 4), 128)
    inside, outside = classify_roots(rs, HALF)
    assert len(inside) == 2 and not outside

    rs = find_roots(T(1, -1), 128)
    inside, outside = classify_roots(rs, HALF)
    assert not inside and len(outside) == 1


def test_classify_every_row_splits_cleanly():
    for n in range(2, 13):
        inside, outside = classify_roots(
            find_roots(absorption_denominator(n), 128), HALF
        )
        assert len(inside) == n - 1 and not outside
        if gf_denominator(n).degree >= 1:
            inside, outside = classify_roots(
                find_roots(gf_denominator(n), 128), HALF
            )
            assert not inside and len(outside) == n - 2


def test_classify_root_on_contour_escalates():
    rs = find_roots(T(-1, 0, 4), 128)  # roots exactly at +-1/2
    with pytest.raises(PrecisionEscalation):
        classify_roots(rs, HALF)


# -------------------------------------------------------------- residue sum


def test_residue_sum_frozen():
    # j=1, n=3: residues of (1-2t)^2 / ((1-t) t(4t-1)) at t=0 and t=1/4
    # are -1 and 1/3.
    ig = build_integrand(1, 3)
    total, err = residue_sum(ig.b, ig.c, ig.d, find_roots(ig.d, 128))
    assert err < mpf(10) ** -25
    assert abs(_mpf_to_fraction(total.real) + F(2, 3)) <= _mpf_to_fraction(err)
    assert abs(total.imag) <= err


def test_residue_closure_over_the_whole_plane():
    # For N / ((1+2t)(r_n - r_{n-1})) the denominator degree exceeds the
    # numerator degree by 2, so the residues over all poles sum to zero.
    lin = one_plus_2t()
    lin_roots = find_roots(lin, 128)
    for n in range(2, 13):
        d = absorption_denominator(n)
        d_roots = find_roots(d, 128)
        for j in sorted({1, n // 2, n - 1}):
            num = r_poly(n - j) * (r_poly(j) - r_poly(j - 1))
            s1, e1 = residue_sum(num, lin, d, d_roots)
            s2, e2 = residue_sum(num, d, lin, lin_roots)
            assert abs(s1 + s2) <= e1 + e2


def test_residue_at_minus_half_recovers_the_evaluated_formula():
    # The pole at t = -1/2 alone carries p_exact.
    lin = one_plus_2t()
    lin_roots = find_roots(lin, 128)
    for j, n in [(1, 2), (1, 3), (2, 5), (4, 9), (3, 11)]:
        num = r_poly(n - j) * (r_poly(j) - r_poly(j - 1))
        total, err = residue_sum(num, absorption_denominator(n), lin, lin_roots)
        gap = abs(_mpf_to_fraction(total.real) - p_exact(j, n))
        assert gap <= _mpf_to_fraction(err)


# ------------------------------------------------------------- exact output


def test_integrate_exact_matches_evaluated_formula_small():
    for n in range(2, 10):
        for j in range(1, n):
            assert integrate_exact(build_integrand(j, n)) == p_exact(j, n)


def test_integrate_exact_frozen():
    assert integrate_exact(build_integrand(1, 2)) == F(1, 2)
    assert integrate_exact(build_integrand(1, 3)) == F(2, 3)
    assert integrate_exact(build_integrand(2, 3)) == F(1, 3)


def test_integrate_exact_stable_under_start_precision():
    for j, n in [(1, 5), (3, 8)]:
        ig = build_integrand(j, n)
        assert integrate_exact(ig) == integrate_exact(ig, start_bits=512)


def test_integrate_exact_reports_exhaustion():
    with pytest.raises(PrecisionError):
        integrate_exact(build_integrand(1, 5), start_bits=16, max_bits=32)


# ----------------------------------------------------------------- plumbing


def test_mpf_to_fraction_is_exact():
    # Exactness of this conversion is what makes the final rounding a
    # proof rather than a heuristic, so the private helper gets pinned.
    assert _mpf_to_fraction(mpf("0.15625")) == F(5, 32)
    assert _mpf_to_fraction(mpf(-3)) == F(-3)
    assert _mpf_to_fraction(mpf(0)) == F(0)
    with mpmath.workprec(64):
        x = mpf(1) / 3
    back = _mpf_to_fraction(x)
    assert abs(back - F(1, 3)) < F(1, 2**62)
    with pytest.raises(ConsistencyError):
        _mpf_to_fraction(mpf("inf"))
