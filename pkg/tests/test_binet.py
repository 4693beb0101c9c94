from fractions import Fraction

import pytest

from qkbonacci import (
    CompanionKind,
    DyadicInterval,
    PoleInIntervalError,
    ReconstructionError,
    RegimeError,
    SequenceParams,
    asymptote_c,
    binet_dominant,
    binet_reconstruct,
    companion_term,
    dominant_root,
    error_term,
    g_eval,
    quadratic_roots,
    reconstruct_detailed,
    term_definition,
    u_closed_form,
)
from qkbonacci.numerics import dominant_term_sweep

from _oracles import sqrt_enclosure


class TestWeight:
    def test_value_at_dominant_root_3_2(self):
        # g(gamma) = 1 / sqrt(13) for (q, k) = (3, 2)
        p = SequenceParams(3, 2)
        enc = dominant_root(p, 160)
        g = g_eval(p, enc.interval)
        lo, hi = sqrt_enclosure(13)
        assert g.lo <= 1 / lo and g.hi >= 1 / hi
        assert g.strictly_above(Fraction(1, 4))
        assert g.strictly_below(Fraction(1, 3))

    def test_value_at_alpha(self):
        # at alpha the denominator collapses to alpha^2 - (q-1); for q = 3
        # that makes g(alpha) exactly 1/4, the boundary of the estimate
        pair = quadratic_roots(3, 160)
        g = g_eval(SequenceParams(3, 2), pair.alpha)
        assert g.contains(Fraction(1, 4))
        assert g.width < Fraction(1, 2**100)
        for q in (4, 5):
            pair = quadratic_roots(q, 160)
            g = g_eval(SequenceParams(q, 2), pair.alpha)
            assert g.strictly_above(Fraction(1, q + 1))
            assert g.strictly_below(Fraction(1, q))

    def test_pole_detected(self):
        p = SequenceParams(3, 2)
        c = asymptote_c(p, 64)
        wide = DyadicInterval.from_bounds(c.lo - 1, c.hi + 1, 64)
        with pytest.raises(PoleInIntervalError):
            g_eval(p, wide)

    def test_same_k_dependence(self):
        # the weight depends on k, not just on the evaluation point
        x = DyadicInterval.from_fraction(Fraction(7, 2), 64)
        g2 = g_eval(SequenceParams(3, 2), x)
        g5 = g_eval(SequenceParams(3, 5), x)
        assert g2.hi < g5.lo or g5.hi < g2.lo


class TestAsymptote:
    def test_known_value_3_2(self):
        # c = (8 + sqrt 40) / 6
        c = asymptote_c(SequenceParams(3, 2), 128)
        lo, hi = sqrt_enclosure(40)
        assert c.lo <= (8 + hi) / 6 and c.hi >= (8 + lo) / 6

    def test_below_dominant_root(self):
        for q in (3, 4, 5):
            for k in (2, 5, 8):
                p = SequenceParams(q, k)
                c = asymptote_c(p, 96)
                gamma = dominant_root(p, 96).interval
                assert c.strictly_below(gamma)

    def test_approaches_alpha(self):
        # the gap behaves like alpha/(k+1): about 3.4e-3 by k = 1000
        for q in (3, 5):
            alpha = quadratic_roots(q, 96).alpha
            gap_1000 = alpha - asymptote_c(SequenceParams(q, 1000), 96)
            assert gap_1000.hi < Fraction(1, 100)
            gap_100 = alpha - asymptote_c(SequenceParams(q, 100), 96)
            assert gap_100.lo > gap_1000.hi  # still closing monotonically

    def test_regime_error(self):
        with pytest.raises(RegimeError):
            asymptote_c(SequenceParams(2, 4), 64)


class TestClosedFormU:
    def test_spec_values(self):
        u3 = u_closed_form(3, 3, 96)
        assert u3.contains(10) and u3.width < Fraction(1, 2)
        u1 = u_closed_form(3, 1, 96)
        assert u1.contains(1)
        u44 = u_closed_form(4, 4, 96)
        assert u44.contains(companion_term(4, CompanionKind.U, 4))

    def test_grid_encloses_exact(self):
        for q in (3, 4, 5):
            for n in (1, 2, 10, 35, 60):
                enc = u_closed_form(q, n, 192)
                assert enc.contains(companion_term(q, CompanionKind.U, n))
                assert enc.width < Fraction(1, 2)

    def test_regime_error(self):
        with pytest.raises(RegimeError):
            u_closed_form(2, 5, 64)


class TestDominantTerm:
    def test_close_to_table_values(self):
        term = binet_dominant(SequenceParams(3, 2), 6, 128)
        assert not term.capped
        assert term.interval.hi > 360 - Fraction(1, 3)
        assert term.interval.lo < 360 + Fraction(1, 3)
        term = binet_dominant(SequenceParams(4, 3), 8, 128)
        assert term.interval.hi > 24671 - Fraction(1, 4)
        assert term.interval.lo < 24671 + Fraction(1, 4)

    def test_n_zero_is_weight(self):
        p = SequenceParams(3, 2)
        term = binet_dominant(p, 0, 128)
        lo, hi = sqrt_enclosure(13)
        assert term.interval.lo <= 1 / lo and term.interval.hi >= 1 / hi

    def test_width_target(self):
        term = binet_dominant(SequenceParams(5, 8), 250, 192)
        assert term.interval.width <= Fraction(1, 2**32)
        assert not term.capped
        assert term.bits_used <= 16 * 192

    def test_precision_cap_is_flagged(self):
        # 2^-32 output width at n = 300 needs far more than 16 x 32 bits
        term = binet_dominant(SequenceParams(5, 8), 300, 32)
        assert term.capped
        assert term.bits_used == 16 * 32
        assert term.interval.width > Fraction(1, 2**32)


class TestErrorTerm:
    def test_bounded_by_inverse_q(self):
        e = error_term(SequenceParams(3, 2), 10, 128)
        third = Fraction(1, 3)
        assert -third < e.interval.lo and e.interval.hi < third

    def test_n_zero_is_minus_weight(self):
        p = SequenceParams(3, 4)
        e = error_term(p, 0, 128)
        assert e.interval.hi < 0
        assert -Fraction(1, 3) < e.interval.lo

    def test_decays_at_k3(self):
        e = error_term(SequenceParams(3, 3), 40, 192)
        bound = Fraction(1, 10**6)
        assert -bound < e.interval.lo and e.interval.hi < bound

    def test_error_recurrence_midpoints(self):
        # midpoints satisfy the order-(k+1) recurrence within the widths
        for q, k in [(3, 2), (4, 3), (5, 5)]:
            p = SequenceParams(q, k)
            _, _, _, terms = dominant_term_sweep(p, 40, 256)
            mid = {}
            widths = {}
            for n, t in terms.items():
                e = (-t) + term_definition(p, n)
                mid[n], widths[n] = e.midpoint, e.width
            for n in range(p.min_index + k + 1, 41):
                lhs = mid[n]
                rhs = (q + 1) * mid[n - 1] - (q - 1) * mid[n - 2] - mid[n - k - 1]
                slack = (
                    widths[n]
                    + (q + 1) * widths[n - 1]
                    + (q - 1) * widths[n - 2]
                    + widths[n - k - 1]
                )
                assert abs(lhs - rhs) <= slack


class TestDifferentialOracle:
    """Pit the whole certified pipeline against an independent route:
    Newton iteration on the characteristic polynomial carried out in exact
    Fraction arithmetic (no intervals, no bisection, no fixed point)."""

    @staticmethod
    def _newton_root(q, k, steps=8):
        coeffs = [-1] * (k - 1) + [-q, 1]
        dcoeffs = [i * c for i, c in enumerate(coeffs)][1:]

        def ev(cs, x):
            acc = Fraction(0)
            for c in reversed(cs):
                acc = acc * x + c
            return acc

        # truncating between steps keeps the fractions small without
        # hurting Newton's self-correcting convergence
        x = Fraction(q) + Fraction(1, 2)
        prec = 40
        for _ in range(steps):
            x -= ev(coeffs, x) / ev(dcoeffs, x)
            prec = min(2 * prec, 320)
            x = Fraction((x.numerator << prec) // x.denominator, 1 << prec)
        return x

    def test_dominant_term_agrees(self):
        slack = Fraction(1, 2**60)
        for q, k, n in [(3, 2, 12), (4, 5, 9), (5, 8, 20)]:
            p = SequenceParams(q, k)
            gamma = self._newton_root(q, k)
            weight = (gamma - 1) / (
                (k + 1) * gamma**2 - (q + 1) * k * gamma + (q - 1) * (k - 1)
            )
            independent = weight * gamma**n
            certified = binet_dominant(p, n, 192).interval
            assert certified.lo - slack <= independent <= certified.hi + slack

    def test_dominant_root_agrees(self):
        for q, k in [(3, 2), (3, 8), (5, 4)]:
            gamma = self._newton_root(q, k)
            enclosure = dominant_root(SequenceParams(q, k), 160).interval
            assert enclosure.lo - Fraction(1, 2**100) <= gamma
            assert gamma <= enclosure.hi + Fraction(1, 2**100)


class TestReconstruction:
    def test_spec_values(self):
        assert binet_reconstruct(SequenceParams(3, 2), 6, 256) == 360
        assert binet_reconstruct(SequenceParams(4, 5), 5, 256) == 314
        assert binet_reconstruct(SequenceParams(3, 3), 0, 256) == 0

    def test_guard_magnitudes_reported(self):
        rec = reconstruct_detailed(SequenceParams(3, 4), 20, 256)
        assert rec.value == term_definition(SequenceParams(3, 4), 20)
        assert rec.residual < Fraction(1, 4)
        assert rec.imag_magnitude < Fraction(1, 4)

    def test_insufficient_precision_is_loud(self):
        # at 32 working bits the dominant-root error is amplified far past
        # the 1/4 guard by n = 40; the guard must trip, not round garbage
        with pytest.raises(ReconstructionError):
            reconstruct_detailed(SequenceParams(3, 2), 40, 32)

    def test_low_precision_never_silently_plausible(self):
        # a garbage sum can still land within 1/4 of some integer, but then
        # it disagrees with the exact term; cross-checking catches it
        p = SequenceParams(3, 2)
        for n in range(40, 64):
            try:
                rec = reconstruct_detailed(p, n, 32)
            except ReconstructionError:
                continue
            assert rec.value != term_definition(p, n)

    def test_negative_indices(self):
        p = SequenceParams(3, 6)
        for n in range(p.min_index, 1):
            assert binet_reconstruct(p, n, 256) == 0

    def test_compute_only_regime(self):
        # the expansion needs only simple roots, so q in {1, 2} works too:
        # at (q, k) = (1, 2) it is the classical closed form
        fib = SequenceParams(1, 2)
        for n in (0, 1, 10, 30):
            assert binet_reconstruct(fib, n, 256) == term_definition(fib, n)
        pell = SequenceParams(2, 4)
        assert binet_reconstruct(pell, 25, 256) == term_definition(pell, 25)
