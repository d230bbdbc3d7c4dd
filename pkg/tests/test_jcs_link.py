import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jcsc_sim.jcs_link import (
    BOLTZMANN,
    SPEED_OF_LIGHT,
    FrameOverflowError,
    RfParams,
    comm_snr,
    comm_snr_db,
    fspl_db,
    jcs_sweep,
    noise_power_dbm,
    radar_mutual_information,
    radar_snr,
    shannon_rate,
    split_frame,
)

# frozen from a 40-digit mpmath evaluation of the closed forms
FSPL_200M_28GHZ = 107.41154376200738
FSPL_100M_28GHZ = 101.39094384872776
NOISE_1HZ_290K = -173.9751871942281
NOISE_800MHZ_290K = -84.94428732430867
COMM_SNR_DB_200M = 43.53274356230129
RADAR_SNR_100M_10M2 = 7.180000649625428

PAPER_RF = RfParams(transmit_power=10.0, carrier_frequency=28e9, bandwidth=800e6,
                    antenna_gain=18.0, frame_duration=0.03)

positive = st.floats(1e-3, 1e6)


class TestPathLoss:
    def test_reference_values(self):
        assert fspl_db(200, 28e9) == pytest.approx(FSPL_200M_28GHZ, abs=1e-9)
        assert fspl_db(100, 28e9) == pytest.approx(FSPL_100M_28GHZ, abs=1e-9)

    @given(st.floats(1e-2, 1e7), st.floats(1e3, 1e12))
    def test_distance_doubling(self, d, f):
        assert fspl_db(2 * d, f) - fspl_db(d, f) == pytest.approx(20 * math.log10(2), rel=1e-10)

    @pytest.mark.parametrize("d, f", [(0, 1e9), (10, 0), (-1, 1e9)])
    def test_domain(self, d, f):
        with pytest.raises(ValueError):
            fspl_db(d, f)


class TestNoise:
    def test_reference_values(self):
        assert noise_power_dbm(1, 0, 290) == pytest.approx(NOISE_1HZ_290K, abs=1e-9)
        assert noise_power_dbm(800e6, 0, 290) == pytest.approx(NOISE_800MHZ_290K, abs=1e-9)

    def test_noise_figure_additive(self):
        assert noise_power_dbm(800e6, 10, 290) - noise_power_dbm(800e6, 0, 290) == pytest.approx(10.0)

    def test_domain(self):
        with pytest.raises(ValueError):
            noise_power_dbm(0, 0, 290)


class TestCommSnr:
    def test_paper_link(self):
        assert comm_snr_db(PAPER_RF, 200) == pytest.approx(COMM_SNR_DB_200M, abs=1e-9)
        assert comm_snr(PAPER_RF, 200) == pytest.approx(2.2556637e4, rel=1e-6)

    def test_halving_distance(self):
        assert comm_snr_db(PAPER_RF, 100) - comm_snr_db(PAPER_RF, 200) == pytest.approx(6.0206, abs=1e-4)

    @given(positive, st.floats(1e6, 1e11), st.floats(1e3, 1e10), st.floats(-10, 40), st.floats(0, 15), positive)
    def test_linear_domain_agrees(self, pt, f, bw, gain, nf, d):
        rf = RfParams(transmit_power=pt, carrier_frequency=f, bandwidth=bw, antenna_gain=gain, noise_figure=nf)
        g = 10 ** (gain / 10)
        fspl = (4 * math.pi * d * f / SPEED_OF_LIGHT) ** 2
        direct = pt * g * g / (BOLTZMANN * 290 * bw * 10 ** (nf / 10) * fspl)
        assert comm_snr(rf, d) == pytest.approx(direct, rel=1e-10)


class TestShannon:
    def test_values(self):
        assert shannon_rate(0, 800e6) == 0
        assert shannon_rate(1, 800e6) == 8e8
        assert shannon_rate(3, 800e6) == pytest.approx(1.6e9)

    @pytest.mark.parametrize("k", range(1, 21))
    def test_powers_of_two(self, k):
        assert shannon_rate(2**k - 1, 800e6) == pytest.approx(k * 800e6, rel=1e-9)

    def test_negative(self):
        with pytest.raises(ValueError):
            shannon_rate(-1, 1)


class TestSplitFrame:
    def test_no_payload(self):
        assert split_frame(0, 1e9, 0.03) == (0.0, 0.03)

    def test_full_frame(self):
        assert split_frame(1e9 * 0.03, 1e9, 0.03) == (0.03, 0.0)

    def test_overflow(self):
        with pytest.raises(FrameOverflowError):
            split_frame(1e9 * 0.03 + 1, 1e9, 0.03)

    @given(st.floats(0, 1), st.floats(1e3, 1e11), st.floats(1e-4, 1.0))
    def test_conservation_and_capacity(self, frac, rate, frame):
        payload = frac * rate * frame
        c, s = split_frame(payload, rate, frame)
        assert c + s == frame
        assert c * rate >= payload
        assert c >= payload / rate and s >= 0


class TestRadar:
    def test_no_reflector(self):
        assert radar_snr(RfParams(radar_cross_section=0.0), 100) == 0.0

    @given(positive, st.floats(1e-3, 1e3))
    def test_fourth_power_law(self, d, rcs):
        rf = RfParams(radar_cross_section=rcs)
        assert radar_snr(rf, d) / radar_snr(rf, 2 * d) == pytest.approx(16, rel=1e-10)

    def test_paper_target(self):
        assert radar_snr(PAPER_RF, 100) == pytest.approx(RADAR_SNR_100M_10M2, rel=1e-10)

    @given(positive, st.floats(1e6, 1e11), st.floats(-10, 40), st.floats(0, 15), positive)
    def test_db_chain_agrees(self, pt, f, gain, nf, d):
        # radar equation re-expressed as a dB budget
        rf = RfParams(transmit_power=pt, carrier_frequency=f, antenna_gain=gain, noise_figure=nf)
        lam_db = 20 * math.log10(SPEED_OF_LIGHT / f)
        db = (10 * math.log10(pt * 1e3) + 2 * gain + lam_db + 10 * math.log10(rf.radar_cross_section)
              - 30 * math.log10(4 * math.pi) - 40 * math.log10(d)
              - noise_power_dbm(rf.bandwidth, nf, rf.system_temperature))
        assert radar_snr(rf, d) == pytest.approx(10 ** (db / 10), rel=1e-10)


class TestMutualInformation:
    def test_zero_cases(self):
        assert radar_mutual_information(0, 800e6, 5) == 0
        assert radar_mutual_information(0.02, 800e6, 0) == 0

    def test_value(self):
        assert radar_mutual_information(0.02, 800e6, 3) == pytest.approx(1.6e7)

    @given(st.floats(0, 1), st.floats(0, 1), st.floats(0, 1e4))
    def test_monotone_in_time(self, t1, t2, snr):
        lo, hi = sorted((t1, t2))
        assert radar_mutual_information(lo, 1e8, snr) <= radar_mutual_information(hi, 1e8, snr)


class TestSweep:
    def test_semantic_beats_raw(self):
        raw = 12_582_912
        raw_fb, sem_fb = jcs_sweep([raw, raw / 10], PAPER_RF)
        assert sem_fb.radar_mi > raw_fb.radar_mi

    def test_zero_payload_is_max(self):
        (fb,) = jcs_sweep([0], PAPER_RF)
        assert fb.sensing_time == PAPER_RF.frame_duration
        assert fb.radar_mi == pytest.approx(radar_mutual_information(0.03, 800e6, radar_snr(PAPER_RF, 100)))

    def test_ascending_payload_descending_mi(self):
        payloads = [0, 1e5, 1e6, 1.2e7, 1.7e7, 1e8]
        budgets = jcs_sweep(payloads, PAPER_RF)
        mi = [fb.radar_mi for fb in budgets]
        # direct evaluation of each point
        rate = shannon_rate(comm_snr(PAPER_RF, 200), 800e6)
        expect = [(0.03 - p / rate) * 800e6 / 2 * math.log2(1 + radar_snr(PAPER_RF, 100)) for p in payloads]
        assert mi == pytest.approx(expect, rel=1e-9)
        assert all(a > b for a, b in zip(mi, mi[1:]))
        for fb in budgets:
            assert fb.comm_time + fb.sensing_time == 0.03
            assert fb.comm_time * fb.comm_rate >= fb.payload_bits

    def test_overflow_propagates(self):
        with pytest.raises(FrameOverflowError):
            jcs_sweep([1e12], PAPER_RF)

    def test_rate_efficiency_knob(self):
        full = jcs_sweep([1e7], PAPER_RF)[0]
        half = jcs_sweep([1e7], RfParams(rate_efficiency=0.5))[0]
        assert half.comm_rate == pytest.approx(full.comm_rate / 2)
        assert half.radar_mi < full.radar_mi


@pytest.mark.parametrize("field", ["transmit_power", "bandwidth", "frame_duration", "carrier_frequency"])
def test_rf_params_positive(field):
    with pytest.raises(ValueError):
        RfParams(**{field: 0.0})
