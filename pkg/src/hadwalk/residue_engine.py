"""Contour-integral pipeline: certified numeric residues rounded to an
exact rational.

The probability p_j^(n) equals a scale factor times the sum of residues
of b/(c d) over the roots of d, all of which lie inside the contour
|t| = 1/2 while the roots of c stay outside.  The sum is approximated
in arbitrary-precision floating point with a fully propagated error
bound, multiplied by an integer delta known to clear the denominator
of the exact value, and rounded to the nearest integer.  If the
certified error and the rounding distance both stay below 1/4, the
rounded value is provably exact.

Everything numeric lives behind escalation: any failed bound raises an
internal signal, the working precision doubles, and the computation
reruns (warm-started) until it certifies or hits the ceiling.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
from mpmath import mpc, mpf, workprec

from .errors import (
    ConsistencyError,
    DegenerateIntegrandError,
    PrecisionError,
    PrecisionEscalation,
)
from .exactq import (
    Polynomial,
    Rational,
    poly_discriminant,
    poly_gcd,
    poly_resultant,
)
from .walk_core import RFamily, absorption_denominator, gf_denominator, r_poly

START_BITS = 128
MAX_BITS = 8192


@dataclass(frozen=True)
class Integrand:
    """The rational integrand scale * b / (c d) on the circle |t| = radius.

    b, c, d carry integer coefficients exactly as constructed from the
    r family; no content is split off (the denominator bound absorbs
    leading coefficients instead, which only ever overestimates).
    """

    b: Polynomial
    c: Polynomial
    d: Polynomial
    scale: Rational
    radius: Rational


@dataclass(frozen=True)
class RootSet:
    """All complex roots of one squarefree polynomial.

    Each disk |x - approximations[i]| <= error_radius contains exactly
    one true root, and the disks are pairwise disjoint, so the
    approximations are a faithful combinatorial copy of the root set.
    """

    approximations: tuple[mpc, ...]
    error_radius: mpf
    precision_bits: int


@dataclass(frozen=True)
class DenominatorBound:
    """Integer delta with delta * (integral value) guaranteed integral.

    delta = |m2 * R * D * lc_correction| where R = resultant(c, d),
    D = discriminant(d), m2 = denominator of the scale, and
    lc_correction compensates for non-monic c, d.
    """

    R: int
    D: int
    lc_correction: int
    delta: int

    def __post_init__(self) -> None:
        if self.delta < 1:
            raise ConsistencyError(f"denominator bound {self.delta} < 1")


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ConsistencyError(f"{what} is not an integer: {x}")
    return int(x)


def build_integrand(j: int, n: int, family: RFamily | None = None) -> Integrand:
    """Contour form of p_j^(n):

        p_j^(n) = ((-1)^j / 2 pi i) * integral over |t| = 1/2 of
                  t^(j-1) r_{n-j}^2 / ((r_n + 2t r_{n-1})(r_n - r_{n-1})) dt.

    The two denominator factors must not share a root, and the inside
    factor must be squarefree; both hold throughout the family, and a
    violation would be cancelled and flagged rather than integrated.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got n={n}")
    if not 1 <= j <= n - 1:
        raise ValueError(f"start site j={j} outside 1..{n - 1}")
    b = Polynomial.monomial(j - 1, var="t") * r_poly(n - j, family) ** 2
    c = gf_denominator(n, family)
    d = absorption_denominator(n, family)
    if poly_gcd(c, d).degree > 0:
        # Cannot happen for this family; cancel and continue so the
        # bound below stays meaningful, but treat it as an anomaly.
        warnings.warn(f"shared factor between denominator parts at n={n}")
        g = poly_gcd(c, d).primitive_part()
        c = c // g
        d = d // g
    scale = Fraction(-1) if j % 2 else Fraction(1)
    return Integrand(b=b, c=c, d=d, scale=scale, radius=Fraction(1, 2))


def denominator_bound(ig: Integrand) -> DenominatorBound:
    """Exact integer multiplier that clears the integral's denominator."""
    for name, p in (("b", ig.b), ("c", ig.c), ("d", ig.d)):
        for coeff in p.coeffs:
            if coeff.denominator != 1:
                raise ConsistencyError(f"integrand part {name} not integral")
    R = _as_int(poly_resultant(ig.c, ig.d), "resultant(c, d)")
    D = _as_int(poly_discriminant(ig.d), "discriminant(d)")
    if R == 0 or D == 0:
        raise DegenerateIntegrandError(
            f"resultant {R}, discriminant {D}: poles are not distinct"
        )
    lc_c = _as_int(ig.c.leading_coefficient, "lc(c)")
    lc_d = _as_int(ig.d.leading_coefficient, "lc(d)")
    lc_correction = abs(
        lc_c ** ig.d.degree * lc_d ** (ig.b.degree + ig.c.degree + 1)
    )
    delta = abs(ig.scale.denominator * R * D * lc_correction)
    return DenominatorBound(R=R, D=D, lc_correction=lc_correction, delta=delta)


def _coeffs_mpf(p: Polynomial) -> list[mpf]:
    # Integer coefficients below the working mantissa convert exactly.
    return [mpf(int(c)) for c in p.coeffs]


def _eval_with_bound(coeffs: Sequence, x) -> tuple[mpc, mpf]:
    """Horner value and a bound on its rounding error at current prec."""
    acc = mpc(0)
    mag = mpf(0)
    ax = abs(x)
    for c in reversed(coeffs):
        acc = acc * x + c
        mag = mag * ax + abs(c)
    unit = mpf(2) ** (4 - mpmath.mp.prec)
    return acc, mag * len(coeffs) * unit


def _disk_variation_bound(coeffs: Sequence, x, rho: mpf) -> mpf:
    """Bound on |q(y) - q(x)| over the disk |y - x| <= rho.

    Mean value bound: rho * sup |q'| on the disk, with the sup bounded
    by sum k|a_k| (|x| + rho)**(k-1).  Loose by at most a degree
    factor, which is irrelevant against 2^-prec scales.
    """
    reach = abs(x) + rho
    total = mpf(0)
    power = mpf(1)
    for k in range(1, len(coeffs)):
        total += k * abs(coeffs[k]) * power
        power *= reach
    return rho * total * (1 + mpf(2) ** (8 - mpmath.mp.prec) * len(coeffs))


def _initial_circle(coeffs: Sequence) -> list[mpc]:
    deg = len(coeffs) - 1
    lead = abs(coeffs[-1])
    bound = 1 + max(abs(c) for c in coeffs[:-1]) / lead
    out = []
    for k in range(deg):
        theta = 2 * mpmath.pi * (k + mpf(3) / 8) / deg + mpf(1) / 3
        out.append(bound * mpmath.exp(1j * theta))
    return out


def _aberth(coeffs: Sequence, initial: Sequence | None) -> list[mpc]:
    deg = len(coeffs) - 1
    deriv = [k * c for k, c in enumerate(coeffs)][1:]
    roots = list(initial) if initial else _initial_circle(coeffs)
    if len(roots) != deg:
        roots = _initial_circle(coeffs)
    tol = mpf(2) ** (12 - mpmath.mp.prec)
    for _ in range(60 + mpmath.mp.prec // 2):
        moved = mpf(0)
        for i in range(deg):
            x = roots[i]
            pv, pe = _eval_with_bound(coeffs, x)
            if abs(pv) <= 2 * pe:
                # At the evaluation noise floor; the value carries no
                # directional information, so refinement stops here.
                continue
            dv, _ = _eval_with_bound(deriv, x)
            if dv == 0:
                roots[i] = x + tol * (1 + abs(x))
                moved = mpf(1)
                continue
            newton = pv / dv
            repel = mpc(0)
            for k in range(deg):
                if k != i:
                    diff = x - roots[k]
                    if diff == 0:
                        diff = tol * (1 + abs(x))
                    repel += 1 / diff
            denom = 1 - newton * repel
            delta = newton if denom == 0 else newton / denom
            roots[i] = x - delta
            moved = max(moved, abs(delta) / (1 + abs(x)))
        if moved < tol:
            break
    return roots


_ROOT_CACHE: dict[tuple[Polynomial, int], RootSet] = {}


def find_roots(
    p: Polynomial,
    precision_bits: int,
    initial: Sequence | None = None,
) -> RootSet:
    """All complex roots of squarefree p with a certified error radius.

    Refines simultaneous approximations, then certifies a posteriori:
    the disk of radius deg * |p(x)/p'(x)| around any point contains a
    root, so taking the worst such radius and checking the disks are
    pairwise disjoint pins exactly one root per disk.  Failure to
    certify raises the precision-escalation signal.
    """
    if p.degree < 1:
        raise ValueError("root finding needs degree >= 1")
    cached = _ROOT_CACHE.get((p, precision_bits))
    if cached is not None:
        return cached
    if initial is None:
        warm = [
            rs for (q, bits), rs in _ROOT_CACHE.items()
            if q == p and bits < precision_bits
        ]
        if warm:
            initial = max(warm, key=lambda rs: rs.precision_bits).approximations
        elif precision_bits > 2 * START_BITS:
            # Cascade: converge cheaply at half precision, then refine.
            try:
                initial = find_roots(p, precision_bits // 2).approximations
            except PrecisionEscalation:
                initial = None
    with workprec(precision_bits):
        coeffs = _coeffs_mpf(p)
        roots = _aberth(coeffs, initial)
        deriv = [k * c for k, c in enumerate(coeffs)][1:]
        deg = p.degree
        radii = []
        for x in roots:
            pv, pe = _eval_with_bound(coeffs, x)
            dv, de = _eval_with_bound(deriv, x)
            dlo = abs(dv) - de
            if dlo <= 0:
                raise PrecisionEscalation(
                    f"derivative bound collapsed at {precision_bits} bits"
                )
            radii.append(deg * (abs(pv) + pe) / dlo)
        error_radius = max(radii) * (1 + mpf(2) ** -16)
        for i in range(deg):
            for k in range(i + 1, deg):
                if abs(roots[i] - roots[k]) <= 2 * error_radius:
                    raise PrecisionEscalation(
                        f"root disks overlap at {precision_bits} bits"
                    )
        out = RootSet(
            approximations=tuple(roots),
            error_radius=error_radius,
            precision_bits=precision_bits,
        )
    _ROOT_CACHE[(p, precision_bits)] = out
    return out


def classify_roots(
    roots: RootSet, radius: Rational
) -> tuple[tuple[mpc, ...], tuple[mpc, ...]]:
    """Partition into (inside, outside) of the circle |t| = radius.

    Valid for the true roots because each whole disk must clear the
    contour; a disk touching it raises the escalation signal.
    """
    with workprec(roots.precision_bits):
        r = mpf(radius.numerator) / radius.denominator
        slack = roots.error_radius + mpf(2) ** (4 - roots.precision_bits)
        inside = []
        outside = []
        for x in roots.approximations:
            if abs(x) + slack < r:
                inside.append(x)
            elif abs(x) - slack > r:
                outside.append(x)
            else:
                raise PrecisionEscalation(
                    f"root disk touches the contour at {roots.precision_bits} bits"
                )
    return tuple(inside), tuple(outside)


def residue_sum(
    b: Polynomial,
    c: Polynomial,
    d: Polynomial,
    d_roots: RootSet,
) -> tuple[mpc, mpf]:
    """Sum of b(x)/(c(x) d'(x)) over the roots of d, with a certified
    error bound covering both root uncertainty and rounding.

    Returns (value, error_bound).  The true sum is real for every
    integrand in this package, so an imaginary part above the bound is
    impossible and triggers escalation.
    """
    with workprec(d_roots.precision_bits):
        bc = _coeffs_mpf(b)
        cc = _coeffs_mpf(c)
        dp = d.derivative()
        dc = _coeffs_mpf(dp)
        rho = d_roots.error_radius
        total = mpc(0)
        err = mpf(0)
        tiny = mpf(2) ** (6 - d_roots.precision_bits)
        for x in d_roots.approximations:
            bv, be0 = _eval_with_bound(bc, x)
            cv, ce0 = _eval_with_bound(cc, x)
            dv, de0 = _eval_with_bound(dc, x)
            be = be0 + _disk_variation_bound(bc, x, rho)
            ce = ce0 + _disk_variation_bound(cc, x, rho)
            de = de0 + _disk_variation_bound(dc, x, rho)
            bm, cm, dm = abs(bv), abs(cv), abs(dv)
            c_low = cm - ce
            d_low = dm - de
            if c_low <= 0 or d_low <= 0:
                raise PrecisionEscalation(
                    f"denominator lower bound collapsed at "
                    f"{d_roots.precision_bits} bits"
                )
            term = bv / (cv * dv)
            num_err = be * cm * dm + bm * (cm * de + ce * dm + ce * de)
            err += num_err / (c_low * d_low * cm * dm) + abs(term) * tiny
            total += term
        err = err * (1 + mpf(2) ** -16) + tiny
        if abs(total.imag) > err:
            raise PrecisionEscalation(
                f"imaginary residue beyond certified error at "
                f"{d_roots.precision_bits} bits"
            )
    return total, err


def _mpf_to_fraction(x: mpf) -> Fraction:
    sign, man, exp, _ = x._mpf_
    # The mantissa may be a gmpy2 integer depending on the mpmath
    # backend; force plain ints so Fraction arithmetic stays pure.
    man = int(man)
    exp = int(exp)
    if man == 0:
        if x == 0:
            return Fraction(0)
        raise ConsistencyError(f"non-finite numeric value {x}")
    value = Fraction(man) * (
        Fraction(2) ** exp if exp >= 0 else Fraction(1, 2 ** -exp)
    )
    return -value if sign else value


def integrate_exact(
    ig: Integrand,
    start_bits: int = START_BITS,
    max_bits: int = MAX_BITS,
) -> Rational:
    """Exact value of the contour integral, via certified rounding.

    Precision starts at start_bits and doubles on every escalation
    signal up to max_bits.  Success requires, at one precision rung:
    all d-root disks certified strictly inside the contour and c-root
    disks strictly outside, delta * |scale| * error < 1/4, and the
    scaled sum within 1/4 of an integer.  The returned rational is then
    exact, not approximate.
    """
    db = denominator_bound(ig)
    quarter = Fraction(1, 4)
    prec = start_bits
    while prec <= max_bits:
        # The certified error never drops below 2^(6-prec), so a rung
        # with delta >= 2^(prec-8) cannot succeed; skip the numeric work.
        if prec > 8 and db.delta >> (prec - 8):
            prec *= 2
            continue
        try:
            d_roots = find_roots(ig.d, prec)
            inside, outside = classify_roots(d_roots, ig.radius)
            if outside:
                raise ConsistencyError(
                    f"a pole of the inside factor sits outside |t|={ig.radius}"
                )
            c_roots = find_roots(ig.c, prec) if ig.c.degree >= 1 else None
            if c_roots is not None:
                c_in, _ = classify_roots(c_roots, ig.radius)
                if c_in:
                    raise ConsistencyError(
                        f"a pole of the outside factor sits inside "
                        f"|t|={ig.radius}"
                    )
            total, err = residue_sum(ig.b, ig.c, ig.d, d_roots)
            err_exact = _mpf_to_fraction(err)
            if db.delta * abs(ig.scale) * err_exact >= quarter:
                raise PrecisionEscalation(
                    f"certified error too large at {prec} bits"
                )
            scaled = db.delta * ig.scale * _mpf_to_fraction(total.real)
            nearest = round(scaled)
            if abs(scaled - nearest) >= quarter:
                raise PrecisionEscalation(
                    f"scaled value not near an integer at {prec} bits"
                )
            return Fraction(nearest, db.delta)
        except PrecisionEscalation:
            prec *= 2
    raise PrecisionError(
        f"could not certify the integral for delta={db.delta} within "
        f"{max_bits} bits"
    )
