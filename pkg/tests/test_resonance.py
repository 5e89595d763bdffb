"""Resonance closed forms: couplings, pair sums, limits, and the waveform."""

import math

import numpy as np
import pytest

from catpacket import (
    ApproximationWarning,
    GaussianProfile,
    Linear,
    Quadratic,
    Resonance,
    ResonanceCoupling,
    amplitude,
    bw_overlap_entry,
    closed_form_correction,
    large_n_correction,
    n_mode_probability,
    pair_sum_correction,
    transmitted_waveform,
    two_mode_single_res_correction,
    two_res_envelope_correction,
)

RES = Resonance(1.0, 0.014)
PROFILE = GaussianProfile(1.4142135623730951, 4.242640687119285)
DISP = Quadratic(1.0)


class TestCoupling:
    def test_weight_validation(self):
        ResonanceCoupling(0.0)
        with pytest.raises(ValueError):
            ResonanceCoupling(-0.1)

    def test_from_resonance_value(self):
        c = ResonanceCoupling.from_resonance(RES, PROFILE, DISP)
        pr = math.sqrt(2.0)
        want = 2.0 * math.pi * RES.width * float(amplitude(PROFILE, pr)) ** 2 / pr
        assert c.weight == pytest.approx(want, rel=1e-12)

    def test_from_resonance_linear_dispersion(self):
        profile = GaussianProfile(6.0, 1.0)
        c = ResonanceCoupling.from_resonance(Resonance(6.0, 0.05), profile, Linear(1.0))
        want = 2.0 * math.pi * 0.05 * float(amplitude(profile, 6.0)) ** 2 / 1.0
        assert c.weight == pytest.approx(want, rel=1e-12)


class TestOverlapEntry:
    COUPS = (ResonanceCoupling(0.1), ResonanceCoupling(0.25))
    RESES = (Resonance(0.9, 0.032), Resonance(1.1, 0.038))

    def test_diagonal_is_half_coupling_sum(self):
        v = bw_overlap_entry(self.RESES, self.COUPS, 3, 3, 5.0)
        assert v == pytest.approx(0.5 * (0.1 + 0.25), rel=1e-14)
        assert v.imag == 0.0

    def test_hermitian_in_component_indices(self):
        a = bw_overlap_entry(self.RESES, self.COUPS, 4, 1, 2.0)
        b = bw_overlap_entry(self.RESES, self.COUPS, 1, 4, 2.0)
        assert a == pytest.approx(np.conj(b), rel=1e-14)

    def test_additive_over_resonances(self):
        total = bw_overlap_entry(self.RESES, self.COUPS, 2, 0, 3.0)
        parts = sum(
            bw_overlap_entry((r,), (c,), 2, 0, 3.0)
            for r, c in zip(self.RESES, self.COUPS)
        )
        assert total == pytest.approx(parts, rel=1e-14)

    def test_lag_decay_rate(self):
        res = (Resonance(1.0, 0.05),)
        coup = (ResonanceCoupling(1.0),)
        v1 = bw_overlap_entry(res, coup, 1, 0, 4.0)
        v2 = bw_overlap_entry(res, coup, 2, 0, 4.0)
        assert abs(v2) / abs(v1) == pytest.approx(math.exp(-0.05 * 4.0), rel=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            bw_overlap_entry(self.RESES, self.COUPS[:1], 0, 0, 1.0)
        with pytest.raises(ValueError):
            bw_overlap_entry(self.RESES, self.COUPS, 0, 0, -1.0)


class TestPairSumAndClosedForm:
    def test_agreement_on_random_draws(self):
        rng = np.random.default_rng(20250814)
        for _ in range(25):
            er = rng.uniform(0.5, 2.0)
            res = Resonance(er, rng.uniform(0.005, 0.2) * er)
            coup = ResonanceCoupling(rng.uniform(0.01, 1.0))
            n = int(rng.integers(1, 12))
            tau = rng.uniform(0.0, 30.0 / er)
            direct = pair_sum_correction(res, coup, n, tau)
            closed = closed_form_correction(res, coup, n, tau)
            assert abs(direct - closed) < 1e-10 * coup.weight * n * n

    def test_zero_lag_counts_pairs(self):
        coup = ResonanceCoupling(0.3)
        for n in (1, 2, 5):
            want = 0.3 * n * (n - 1) / 2.0
            assert pair_sum_correction(RES, coup, n, 0.0) == pytest.approx(want, rel=1e-14)
            assert closed_form_correction(RES, coup, n, 0.0) == pytest.approx(want, rel=1e-14)

    def test_degenerate_progression_falls_back(self):
        # z pinned to the unit circle near 1: the geometric denominator
        # collapses and the closed form must hand over to the direct sum
        res = Resonance(1.0, 1e-11)
        coup = ResonanceCoupling(0.5)
        tau = 2.0 * math.pi
        direct = pair_sum_correction(res, coup, 7, tau)
        closed = closed_form_correction(res, coup, 7, tau)
        assert closed == direct
        assert math.isfinite(closed)

    def test_single_component_has_no_correction(self):
        assert pair_sum_correction(RES, ResonanceCoupling(0.4), 1, 3.0) == 0.0
        assert closed_form_correction(RES, ResonanceCoupling(0.4), 1, 3.0) == 0.0

    def test_component_count_validation(self):
        with pytest.raises(ValueError):
            pair_sum_correction(RES, ResonanceCoupling(0.1), 0, 1.0)
        with pytest.raises(ValueError):
            closed_form_correction(RES, ResonanceCoupling(0.1), 0, 1.0)


class TestTwoModeForms:
    def test_normalized_two_mode_is_half_closed_form(self):
        coup = ResonanceCoupling(0.2)
        for tau in (0.0, 1.7, 12.0):
            two = two_mode_single_res_correction(RES, coup, tau)
            full = closed_form_correction(RES, coup, 2, tau)
            assert two == pytest.approx(full / 2.0, rel=1e-12, abs=1e-15)

    def test_damped_cosine_shape(self):
        coup = ResonanceCoupling(1.0)
        tau = 5.0
        want = 0.5 * math.exp(-0.014 * tau) * math.cos(tau)
        assert two_mode_single_res_correction(RES, coup, tau) == pytest.approx(want, rel=1e-14)

    def test_envelope_factorizes_resonance_pair(self):
        res_a = Resonance(0.9, 0.032)
        res_b = Resonance(1.1, 0.032)
        coup = ResonanceCoupling(0.4)
        tau = 6.0
        split = two_mode_single_res_correction(res_a, coup, tau) + two_mode_single_res_correction(
            res_b, coup, tau
        )
        assert two_res_envelope_correction(res_a, res_b, coup, tau) == pytest.approx(
            split, rel=1e-12
        )

    def test_envelope_warns_on_width_mismatch(self):
        res_a = Resonance(0.9, 0.032)
        res_b = Resonance(1.1, 0.038)
        coup = ResonanceCoupling(0.4)
        with pytest.warns(ApproximationWarning):
            two_res_envelope_correction(res_a, res_b, coup, 60.0)


class TestLargeN:
    def test_matches_closed_form_at_large_n(self):
        res = Resonance(1.0, 0.03)
        coup = ResonanceCoupling(0.05)
        for tau in (3.0, 8.5, 14.0):
            full = closed_form_correction(res, coup, 200, tau)
            approx = large_n_correction(res, coup, 200, tau)
            assert approx == pytest.approx(full, rel=0.02)

    def test_warns_below_twenty_components(self):
        with pytest.warns(ApproximationWarning):
            large_n_correction(RES, ResonanceCoupling(0.1), 5, 3.0)

    def test_degenerate_peak_marked_infinite(self):
        res = Resonance(1.0, 1e-12)
        out = large_n_correction(res, ResonanceCoupling(0.1), 100, 2.0 * math.pi)
        assert out == math.inf


class TestNModeProbability:
    def test_single_component_is_bare_weight(self):
        p = n_mode_probability((RES,), (ResonanceCoupling(0.2),), 0.1, 1, 5.0)
        assert p == pytest.approx(0.1, rel=1e-14)

    def test_combines_weight_and_corrections(self):
        coup = ResonanceCoupling(0.05)
        n, tau, w = 4, 2.0, 0.025
        want = (n * w + closed_form_correction(RES, coup, n, tau)) / n
        got = n_mode_probability((RES,), (coup,), w, n, tau)
        assert got == pytest.approx(want, rel=1e-14)

    def test_warns_outside_unit_interval(self):
        with pytest.warns(ApproximationWarning):
            n_mode_probability((RES,), (ResonanceCoupling(10.0),), 0.5, 2, 0.0)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            n_mode_probability((RES,), (), 0.1, 2, 1.0)


class TestTransmittedWaveform:
    RES = Resonance(1.0, 0.05)

    def test_empty_ahead_of_front(self):
        y = np.linspace(0.5, 30.0, 50)
        phi = transmitted_waveform(self.RES, 1.0, 2.2, y)
        assert np.all(phi == 0.0)

    def test_front_value(self):
        phi0 = transmitted_waveform(self.RES, 1.0, 2.2, 0.0)
        assert isinstance(phi0, complex)
        assert abs(phi0) == pytest.approx(2.0 * math.pi * 0.05 * 2.2, rel=1e-14)

    def test_exponential_tail_slope(self):
        y = np.linspace(-80.0, -1.0, 200)
        phi = transmitted_waveform(self.RES, 2.0, 1.0, y)
        slope = np.polyfit(y, np.log(np.abs(phi)), 1)[0]
        assert slope == pytest.approx(0.05 / 2.0, abs=1e-12)

    def test_carrier_momentum(self):
        c = 2.0
        pr = self.RES.energy / c
        phi_a = transmitted_waveform(self.RES, c, 1.0, -3.0)
        phi_b = transmitted_waveform(self.RES, c, 1.0, -3.0 + 0.01)
        dphase = np.angle(phi_b / phi_a)
        assert dphase == pytest.approx(pr * 0.01, rel=1e-6)

    def test_speed_validation(self):
        with pytest.raises(ValueError):
            transmitted_waveform(self.RES, 0.0, 1.0, -1.0)
