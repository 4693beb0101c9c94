"""Root machinery for the characteristic polynomial.

Two deliberately different routes:

* the dominant root gets a certified enclosure from pure bisection with
  exact integer sign tests (unconditionally convergent inside the
  (q, q+1) bracket, which the polynomial family guarantees);
* the remaining roots get simultaneous Aberth-Ehrlich refinement carried
  out in integer fixed-point complex arithmetic at the requested
  precision, reported together with residual magnitudes |Phi(z)| rather
  than enclosures.

Precision is always an argument; nothing here keeps ambient state.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import frexp, isqrt

from ..errors import DomainError, RegimeError, RootSolveError
from ..sequences import SequenceParams
from .dyadic import DyadicInterval
from .polynomials import CharPoly

__all__ = [
    "RootEnclosure",
    "QuadraticRoots",
    "SecondaryRoot",
    "RootSet",
    "dominant_root",
    "quadratic_roots",
    "all_roots",
]

_ABERTH_MAX_ITER = 80
_FLOAT_MAX_ITER = 400


@dataclass(frozen=True)
class RootEnclosure:
    """Certified bracket around the single root larger than one.

    The sign pair (negative at lo, positive at hi) is the certificate: it
    is established by exact integer evaluation, so a real root lies
    strictly inside the interval.
    """

    params: SequenceParams
    interval: DyadicInterval
    sign_lo: int = -1
    sign_hi: int = 1


@dataclass(frozen=True)
class QuadraticRoots:
    """Enclosures of the roots of t^2 - (q+1)t + (q-1)."""

    q: int
    alpha: DyadicInterval
    beta: DyadicInterval


@dataclass(frozen=True)
class SecondaryRoot:
    """Fixed-point approximation (re + im*i) * 2^-bits with a residual
    bound on |Phi| at the approximation."""

    re_num: int
    im_num: int
    bits: int
    residual: Fraction

    @property
    def real(self) -> Fraction:
        return Fraction(self.re_num, 1 << self.bits)

    @property
    def imag(self) -> Fraction:
        return Fraction(self.im_num, 1 << self.bits)

    @property
    def modulus_squared(self) -> Fraction:
        return Fraction(
            self.re_num * self.re_num + self.im_num * self.im_num,
            1 << (2 * self.bits),
        )

    def as_complex(self) -> complex:
        return complex(self.real, self.imag)

    def distance_bound(self, degree: int) -> Fraction:
        """Distance from this approximation to some true root.

        For a monic polynomial |Phi(z)| is the product of the distances
        to all roots, so the nearest root is within |Phi(z)|^(1/degree).
        Returned as a power-of-two upper bound.
        """
        if self.residual == 0:
            return Fraction(0)
        # smallest e with residual <= 2^-e, then floor(e/degree)
        e = 0
        while Fraction(1, 1 << (e + 1)) >= self.residual:
            e += 1
        return Fraction(1, 1 << (e // degree))


@dataclass(frozen=True)
class RootSet:
    """Dominant enclosure plus residual-certified secondary approximations."""

    params: SequenceParams
    bits: int
    dominant: RootEnclosure
    secondary: tuple

    def certified_inside_unit_circle(self) -> bool:
        """True when every secondary root provably has modulus < 1.

        Uses the residual-derived distance bound, so this is a genuine
        certificate about true roots, not just about the approximations.
        """
        degree = self.params.k
        for root in self.secondary:
            margin = 1 - root.distance_bound(degree)
            if not root.modulus_squared < margin * margin:
                return False
        return True


def dominant_root(params: SequenceParams, bits: int) -> RootEnclosure:
    """Certified enclosure of width <= 2^-bits via sign-test bisection.

    The starting bracket is (q, q+1) for q >= 3 (where the bracket is a
    proved property of the family) and the compute-only bracket (1, q+1)
    for q in {1, 2}.
    """
    if bits < 8:
        raise DomainError(f"bits must be >= 8, got {bits}")
    poly = CharPoly.of(params)
    q = params.q
    lo, hi = (q, q + 1) if q >= 3 else (1, q + 1)
    if not (poly.sign_at_dyadic(lo, 0) < 0 < poly.sign_at_dyadic(hi, 0)):
        raise RuntimeError("internal error: sign change missing at initial bracket")
    scale = 0
    while (hi - lo) << bits > (1 << scale):
        lo, hi, scale = lo * 2, hi * 2, scale + 1
        mid = (lo + hi) // 2
        sign = poly.sign_at_dyadic(mid, scale)
        if sign == 0:
            # rational-root theorem rules dyadic roots out for this family
            raise RuntimeError("internal error: exact dyadic root encountered")
        if sign < 0:
            lo = mid
        else:
            hi = mid
    interval = DyadicInterval(lo, hi, scale)
    if not (interval.strictly_above(q) and interval.strictly_below(q + 1)):
        raise RuntimeError("internal error: enclosure escaped the (q, q+1) bracket")
    return RootEnclosure(params, interval)


def quadratic_roots(q: int, bits: int) -> QuadraticRoots:
    """Enclosures of alpha and beta, ((q+1) +- sqrt(q^2-2q+5)) / 2."""
    if q < 3:
        raise RegimeError(f"quadratic companions require q >= 3, got q={q}")
    root = DyadicInterval.sqrt_of_int(q * q - 2 * q + 5, bits + 2)
    alpha = (root + (q + 1)).half()
    beta = ((q + 1) - root).half()
    if not (alpha.strictly_above(q) and alpha.strictly_below(q + 1)):
        raise RuntimeError("internal error: alpha escaped (q, q+1)")
    if not (beta.strictly_above(0) and beta.strictly_below(1)):
        raise RuntimeError("internal error: beta escaped (0, 1)")
    return QuadraticRoots(q, alpha, beta)


# ----------------------------------------------------------------------
# fixed-point complex arithmetic (integer mantissas at scale 2^-bits)
# ----------------------------------------------------------------------

def _round_shift(x: int, shift: int) -> int:
    if shift <= 0:
        return x << -shift
    return (x + (1 << (shift - 1))) >> shift


def _to_fixed(value: float, bits: int) -> int:
    # via frexp so huge scales never round-trip through float
    mantissa, exponent = frexp(value)
    scaled = int(mantissa * (1 << 53))
    shift = bits + exponent - 53
    return scaled << shift if shift >= 0 else _round_shift(scaled, -shift)


def _round_div(a: int, b: int) -> int:
    # nearest integer to a/b for b > 0
    q, r = divmod(a, b)
    return q + (1 if 2 * r >= b else 0)


def _cmul(a, b, bits):
    ar, ai = a
    br, bi = b
    return (
        _round_shift(ar * br - ai * bi, bits),
        _round_shift(ar * bi + ai * br, bits),
    )


def _cdiv(a, b, bits):
    ar, ai = a
    br, bi = b
    den = br * br + bi * bi
    if den == 0:
        raise ZeroDivisionError("fixed-point complex division by zero")
    return (
        _round_div((ar * br + ai * bi) << bits, den),
        _round_div((ai * br - ar * bi) << bits, den),
    )


def _cpoly(coeffs, z, bits):
    # Horner; coeffs are plain ints, ascending
    acc = (coeffs[-1] << bits, 0)
    for c in reversed(coeffs[:-1]):
        acc = _cmul(acc, z, bits)
        acc = (acc[0] + (c << bits), acc[1])
    return acc


def _cabs2(z):
    return z[0] * z[0] + z[1] * z[1]


def _aberth_float(coeffs) -> list[complex]:
    """Machine-precision simultaneous refinement used only for seeding."""
    degree = len(coeffs) - 1
    dcoeffs = [i * c for i, c in enumerate(coeffs)][1:]

    def ev(cs, z):
        acc = 0j
        for c in reversed(cs):
            acc = acc * z + c
        return acc

    radius = 1.0 + max(abs(c) for c in coeffs[:-1])
    for offset in (0.4, 1.1, 1.9):
        zs = [
            radius * cmath.exp(1j * (2 * cmath.pi * j / degree + offset))
            for j in range(degree)
        ]
        for _ in range(_FLOAT_MAX_ITER):
            biggest = 0.0
            for i in range(degree):
                p = ev(coeffs, zs[i])
                dp = ev(dcoeffs, zs[i])
                if dp == 0:
                    biggest = float("inf")
                    break
                newton = p / dp
                repulse = sum(
                    1 / (zs[i] - zs[j]) for j in range(degree) if j != i
                )
                den = 1 - newton * repulse
                if den == 0:
                    biggest = float("inf")
                    break
                step = newton / den
                zs[i] -= step
                biggest = max(biggest, abs(step) / max(1.0, abs(zs[i])))
            if biggest < 1e-13:
                return zs
    raise RootSolveError(
        "float-precision seeding failed to converge",
        residuals=[abs(ev(coeffs, z)) for z in zs],
    )


def _aberth_fixed(coeffs, seeds, bits, accuracy_bits):
    """Refine seeds to ~2^-accuracy_bits in fixed point at scale 2^-bits."""
    degree = len(coeffs) - 1
    dcoeffs = [i * c for i, c in enumerate(coeffs)][1:]
    zs = [(_to_fixed(z.real, bits), _to_fixed(z.imag, bits)) for z in seeds]
    one = 1 << bits
    step_cap = 1 << max(1, bits - accuracy_bits)
    for _ in range(_ABERTH_MAX_ITER):
        biggest = 0
        for i in range(degree):
            z = zs[i]
            p = _cpoly(coeffs, z, bits)
            if p == (0, 0):
                continue
            dp = _cpoly(dcoeffs, z, bits)
            if dp == (0, 0):
                raise RootSolveError("derivative vanished during refinement")
            newton = _cdiv(p, dp, bits)
            repulse = (0, 0)
            for j in range(degree):
                if j == i:
                    continue
                diff = (z[0] - zs[j][0], z[1] - zs[j][1])
                if diff == (0, 0):
                    raise RootSolveError("iterates collided during refinement")
                inv = _cdiv((one, 0), diff, bits)
                repulse = (repulse[0] + inv[0], repulse[1] + inv[1])
            den = (one - _round_shift(newton[0] * repulse[0] - newton[1] * repulse[1], bits),
                   -_round_shift(newton[0] * repulse[1] + newton[1] * repulse[0], bits))
            step = _cdiv(newton, den, bits)
            zs[i] = (z[0] - step[0], z[1] - step[1])
            biggest = max(biggest, _cabs2(step))
        if biggest <= step_cap * step_cap:
            return zs
    residuals = [
        Fraction(isqrt(_cabs2(_cpoly(coeffs, z, bits))) + 1, 1 << bits) for z in zs
    ]
    raise RootSolveError(
        "Aberth refinement did not reach the step tolerance", residuals=residuals
    )


def all_roots(params: SequenceParams, bits: int) -> RootSet:
    """Dominant enclosure plus the k-1 secondary approximations.

    Residuals |Phi(z)| must come out below 2^-(bits/2) and all pairwise
    separations above 2^-(bits/4); anything else raises RootSolveError
    with diagnostics rather than returning a silently bad answer.
    """
    poly = CharPoly.of(params)
    coeffs = list(poly.coefficients)
    degree = poly.degree
    enclosure = dominant_root(params, bits)
    work = bits + 64

    seeds = _aberth_float([float(c) for c in coeffs])
    refined = _aberth_fixed(coeffs, seeds, work, bits + 16)

    # Horner rounding slack: per step at most one ulp, amplified by |z|
    # per remaining step; all roots sit inside the Cauchy radius q + 1
    slack = Fraction(2 * degree * (params.q + 2) ** degree, 1 << work)
    residuals = []
    for z in refined:
        value = _cpoly(coeffs, z, work)
        residuals.append(Fraction(isqrt(_cabs2(value)) + 1, 1 << work) + slack)

    one_sq = 1 << (2 * work)
    outside = [i for i, z in enumerate(refined) if _cabs2(z) > one_sq]
    if len(outside) != 1:
        raise RootSolveError(
            f"expected exactly one root outside the unit circle, found {len(outside)}",
            residuals=residuals,
        )
    dom_idx = outside[0]
    dom_z = refined[dom_idx]
    mid = enclosure.interval.midpoint
    agree = Fraction(1, 1 << (bits // 2))
    if abs(Fraction(dom_z[0], 1 << work) - mid) > agree or abs(
        Fraction(dom_z[1], 1 << work)
    ) > agree:
        raise RootSolveError(
            "refined dominant root disagrees with the certified enclosure",
            residuals=residuals,
        )

    residual_cap = Fraction(1, 1 << (bits // 2))
    bad = [float(r) for r in residuals if r >= residual_cap]
    if bad:
        raise RootSolveError(
            f"residuals above 2^-{bits // 2}: {bad}", residuals=residuals
        )

    separation = Fraction(1, 1 << (bits // 4))
    sep_sq = separation * separation
    for i in range(degree):
        for j in range(i + 1, degree):
            dz = (refined[i][0] - refined[j][0], refined[i][1] - refined[j][1])
            if Fraction(_cabs2(dz), 1 << (2 * work)) <= sep_sq:
                raise RootSolveError(
                    "two roots closer than the separation tolerance "
                    f"2^-{bits // 4}; the expansion assumes simple roots",
                    residuals=residuals,
                )

    unit_tol = 1 + Fraction(1, 1 << (bits // 4))
    secondary = []
    for i, z in enumerate(refined):
        if i == dom_idx:
            continue
        root = SecondaryRoot(z[0], z[1], work, residuals[i])
        if not root.modulus_squared < unit_tol * unit_tol:
            raise RootSolveError(
                "secondary root outside the unit circle tolerance",
                residuals=residuals,
            )
        secondary.append(root)
    secondary.sort(key=lambda r: (r.re_num, r.im_num))
    return RootSet(params, bits, enclosure, tuple(secondary))
