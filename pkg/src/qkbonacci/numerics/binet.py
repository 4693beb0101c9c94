"""Dominant-term approximation, error term, and full-roots reconstruction.

The dominant route is fully certified: interval weight times interval
root power, contained by construction.  The full reconstruction sums all
k root contributions in fixed-point complex arithmetic and guards the
final rounding (real residual and imaginary part both under 1/4), which
is how an approximate root set still yields a provably correct integer.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import DomainError, PoleInIntervalError, RegimeError, ReconstructionError
from ..sequences import SequenceParams, term_definition, _check_index
from .dyadic import DyadicInterval
from .roots import (
    _cdiv,
    _cmul,
    _round_shift,
    all_roots,
    dominant_root,
    quadratic_roots,
)

__all__ = [
    "DominantTerm",
    "ErrorEnclosure",
    "Reconstruction",
    "g_eval",
    "asymptote_c",
    "u_closed_form",
    "binet_dominant",
    "error_term",
    "binet_reconstruct",
    "reconstruct_detailed",
    "dominant_term_sweep",
    "reconstruction_sweep",
]

# output-width target for the dominant term, and the escalation cap
WIDTH_TARGET_BITS = 32
ESCALATION_CAP_FACTOR = 16


def _g_denominator(params: SequenceParams, x: Fraction) -> Fraction:
    q, k = params.q, params.k
    return (k + 1) * x * x - (q + 1) * k * x + (q - 1) * (k - 1)


def g_eval(params: SequenceParams, x: DyadicInterval) -> DyadicInterval:
    """Outward-rounded image of the weight
    (x-1) / ((k+1)x^2 - (q+1)k x + (q-1)(k-1)) over an interval.

    The denominator's sign must be constant on the interval; that is
    decided exactly (endpoint values plus the parabola vertex), and a
    non-constant sign raises PoleInIntervalError.
    """
    q, k = params.q, params.k
    a, b = x.lo, x.hi
    den_values = [_g_denominator(params, a), _g_denominator(params, b)]
    vertex = Fraction((q + 1) * k, 2 * (k + 1))
    if a < vertex < b:
        den_values.append(_g_denominator(params, vertex))
    den_min, den_max = min(den_values), max(den_values)
    if den_min <= 0 <= den_max:
        raise PoleInIntervalError(
            "denominator sign is not constant on the interval "
            f"[{float(a)}, {float(b)}] for (q={q}, k={k})"
        )
    quotients = [
        num / den
        for num in (a - 1, b - 1)
        for den in (den_min, den_max)
    ]
    return DyadicInterval.from_bounds(min(quotients), max(quotients), x.bits)


def asymptote_c(params: SequenceParams, bits: int) -> DyadicInterval:
    """Enclosure of the larger zero of the weight's denominator,
    ((q+1)k + sqrt(k^2(q^2-2q+5) + 4(q-1))) / (2(k+1))."""
    if params.q < 3:
        raise RegimeError(f"asymptote is certified for q >= 3, got q={params.q}")
    q, k = params.q, params.k
    disc = k * k * (q * q - 2 * q + 5) + 4 * (q - 1)
    root = DyadicInterval.sqrt_of_int(disc, bits + 4)
    return (root + (q + 1) * k) * Fraction(1, 2 * (k + 1))


def u_closed_form(q: int, n: int, bits: int) -> DyadicInterval:
    """Interval evaluation of the closed form of U_n in terms of the
    quadratic roots alpha and beta; encloses the exact integer."""
    if q < 3:
        raise RegimeError(f"u_closed_form requires q >= 3, got q={q}")
    if n < 1:
        raise DomainError(f"u_closed_form requires n >= 1, got n={n}")
    work = bits + 8
    pair = quadratic_roots(q, work)
    root = DyadicInterval.sqrt_of_int(q * q - 2 * q + 5, work)
    numerator = (pair.alpha**n) * (root + (q - 3)) + (pair.beta**n) * (root + (3 - q))
    return (numerator / (root * (2 * (q - 1)))).rescaled(bits)


@dataclass(frozen=True)
class DominantTerm:
    """Enclosure of g(gamma) * gamma^n with the precision bookkeeping."""

    interval: DyadicInterval
    bits_used: int
    capped: bool


def binet_dominant(params: SequenceParams, n: int, bits: int) -> DominantTerm:
    """Certified enclosure of the dominant term g(gamma) * gamma^n.

    Working precision starts at `bits` and doubles until the output is
    narrower than 2^-32 or the cap of 16x the request is reached; a
    capped result is flagged, never silently degraded.
    """
    if params.q < 3:
        raise RegimeError(f"binet_dominant requires q >= 3, got q={params.q}")
    _check_index(params, n)
    cap = ESCALATION_CAP_FACTOR * bits
    target = Fraction(1, 1 << WIDTH_TARGET_BITS)
    work = bits
    while True:
        enclosure = dominant_root(params, work)
        term = g_eval(params, enclosure.interval) * (enclosure.interval**n)
        if term.width <= target:
            return DominantTerm(term, work, False)
        if work >= cap:
            return DominantTerm(term, work, True)
        work = min(2 * work, cap)


@dataclass(frozen=True)
class ErrorEnclosure:
    """Enclosure of E_n = F_n - g(gamma) * gamma^n."""

    n: int
    interval: DyadicInterval
    bits_used: int
    capped: bool


def error_term(params: SequenceParams, n: int, bits: int) -> ErrorEnclosure:
    """E_n as exact integer minus the certified dominant enclosure."""
    dominant = binet_dominant(params, n, bits)
    exact = term_definition(params, n)
    return ErrorEnclosure(
        n, (-dominant.interval) + exact, dominant.bits_used, dominant.capped
    )


def dominant_term_sweep(params: SequenceParams, n_max: int, working_bits: int):
    """gamma enclosure, weight, and per-n data for n in [2-k, n_max].

    Returns (enclosure, weight, powers, terms) where powers[n] encloses
    gamma^n and terms[n] encloses g(gamma) * gamma^n.  Powers are built
    incrementally so a whole law-check row costs n_max interval products.
    """
    _check_index(params, n_max)
    enclosure = dominant_root(params, working_bits)
    gamma = enclosure.interval
    weight = g_eval(params, gamma)
    powers = {0: DyadicInterval.from_int(1, working_bits)}
    for n in range(1, n_max + 1):
        powers[n] = powers[n - 1] * gamma
    # the growth chain reaches gamma^(n-2) at n=1, so always go to -1
    lowest = min(params.min_index, -1)
    inverse = gamma.reciprocal()
    for n in range(-1, lowest - 1, -1):
        powers[n] = powers[n + 1] * inverse
    terms = {n: weight * powers[n] for n in range(params.min_index, n_max + 1)}
    return enclosure, weight, powers, terms


# ----------------------------------------------------------------------
# full reconstruction over all k roots
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Reconstruction:
    """Rounded reconstruction with its rounding-guard magnitudes."""

    value: int
    residual: Fraction
    imag_magnitude: Fraction


def _g_fixed(params: SequenceParams, z, bits):
    q, k = params.q, params.k
    one = 1 << bits
    z2 = _cmul(z, z, bits)
    den = (
        (k + 1) * z2[0] - (q + 1) * k * z[0] + ((q - 1) * (k - 1)) * one,
        (k + 1) * z2[1] - (q + 1) * k * z[1],
    )
    num = (z[0] - one, z[1])
    return _cdiv(num, den, bits)


def _cpow(z, exponent, bits):
    if exponent < 0:
        one = 1 << bits
        z = _cdiv((one, 0), z, bits)
        exponent = -exponent
    result = (1 << bits, 0)
    base = z
    e = exponent
    while e:
        if e & 1:
            result = _cmul(result, base, bits)
        e >>= 1
        if e:
            base = _cmul(base, base, bits)
    return result


def _guard_check(total, work):
    quarter = 1 << (work - 2)
    value = _round_shift(total[0], work)
    residual = abs(total[0] - (value << work))
    return value, residual, abs(total[1]), quarter


def reconstruct_detailed(params: SequenceParams, n: int, bits: int) -> Reconstruction:
    """Sum g(root) * root^n over all k roots and round to an integer.

    The guard requires both the distance from the nearest integer and
    the imaginary part to stay under 1/4; a violation raises
    ReconstructionError instead of returning a dubious value.  Valid for
    every q >= 1: the expansion only needs the roots to be simple.
    """
    _check_index(params, n)
    roots = all_roots(params, bits)
    work = roots.secondary[0].bits if roots.secondary else bits + 64
    mid = roots.dominant.interval.midpoint
    dom = ((mid.numerator << work) // mid.denominator, 0)
    total = (0, 0)
    for z in [dom] + [(s.re_num, s.im_num) for s in roots.secondary]:
        contribution = _cmul(_g_fixed(params, z, work), _cpow(z, n, work), work)
        total = (total[0] + contribution[0], total[1] + contribution[1])
    value, residual, imag, quarter = _guard_check(total, work)
    if residual >= quarter or imag >= quarter:
        raise ReconstructionError(
            f"rounding guard failed at (q={params.q}, k={params.k}, n={n}): "
            f"residual={residual / (1 << work):.3g}, imag={imag / (1 << work):.3g}; "
            "increase the working precision"
        )
    return Reconstruction(
        value, Fraction(residual, 1 << work), Fraction(imag, 1 << work)
    )


def binet_reconstruct(params: SequenceParams, n: int, bits: int = 256) -> int:
    """The rounded full-roots sum; equals the exact term when certified."""
    return reconstruct_detailed(params, n, bits).value


def reconstruction_sweep(params: SequenceParams, n_lo: int, n_hi: int, bits: int):
    """Reconstruction results for every n in [n_lo, n_hi], sharing one
    root set and incremental powers.

    Yields (n, Reconstruction | None, residual, imag) with None when the
    rounding guard failed at that index.
    """
    _check_index(params, n_lo)
    if n_hi < n_lo:
        return
    roots = all_roots(params, bits)
    work = roots.secondary[0].bits if roots.secondary else bits + 64
    mid = roots.dominant.interval.midpoint
    points = [((mid.numerator << work) // mid.denominator, 0)]
    points += [(s.re_num, s.im_num) for s in roots.secondary]
    weights = [_g_fixed(params, z, work) for z in points]
    powers = [_cpow(z, n_lo, work) for z in points]
    n = n_lo
    while True:
        total = (0, 0)
        for w, p in zip(weights, powers):
            c = _cmul(w, p, work)
            total = (total[0] + c[0], total[1] + c[1])
        value, residual, imag, quarter = _guard_check(total, work)
        if residual >= quarter or imag >= quarter:
            yield n, None, Fraction(residual, 1 << work), Fraction(imag, 1 << work)
        else:
            rec = Reconstruction(
                value, Fraction(residual, 1 << work), Fraction(imag, 1 << work)
            )
            yield n, rec, rec.residual, rec.imag_magnitude
        n += 1
        if n > n_hi:
            return
        powers = [_cmul(p, z, work) for p, z in zip(powers, points)]
