"""Link budget and time-division JCS frame model.

One frame of fixed duration is split between a communication leg, sized to
carry the payload at the Shannon rate of the link, and a sensing leg that
gets whatever time is left. Sensing quality is scored with a time-bandwidth
radar mutual information surrogate, ``(T_s * B / 2) * log2(1 + SNR_radar)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

SPEED_OF_LIGHT = 299_792_458.0  # m/s
BOLTZMANN = 1.380649e-23  # J/K


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def linear_to_db(x: float) -> float:
    return 10.0 * math.log10(x) if x > 0 else -math.inf


def watts_to_dbm(w: float) -> float:
    return 10.0 * math.log10(w * 1e3)


class FrameOverflowError(ValueError):
    def __init__(self, payload_bits: float, capacity_bits: float):
        super().__init__(
            f"payload of {payload_bits:g} bits exceeds frame capacity of {capacity_bits:g} bits"
        )
        self.payload_bits = payload_bits
        self.capacity_bits = capacity_bits


@dataclass(frozen=True)
class RfParams:
    """Radio front-end and frame constants.

    ``antenna_gain`` is per end, in dBi: communication applies it at both
    transmitter and receiver, the monostatic radar applies it twice as well.
    ``rate_efficiency`` scales the Shannon rate (1.0 means capacity).
    """

    transmit_power: float = 10.0  # W
    carrier_frequency: float = 28e9  # Hz
    bandwidth: float = 800e6  # Hz
    antenna_gain: float = 18.0  # dBi
    frame_duration: float = 0.03  # s
    noise_figure: float = 10.0  # dB
    radar_cross_section: float = 10.0  # m^2
    system_temperature: float = 290.0  # K
    rate_efficiency: float = 1.0

    def __post_init__(self):
        for name in ("transmit_power", "carrier_frequency", "bandwidth", "frame_duration",
                     "system_temperature"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValueError(f"{name} must be positive and finite, got {v!r}")
        if not (0 < self.rate_efficiency <= 1):
            raise ValueError(f"rate_efficiency must be in (0, 1], got {self.rate_efficiency!r}")
        if self.radar_cross_section < 0:
            raise ValueError(f"radar_cross_section must be non-negative, got {self.radar_cross_section!r}")
        if not (math.isfinite(self.antenna_gain) and math.isfinite(self.noise_figure)):
            raise ValueError("antenna_gain and noise_figure must be finite")

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_frequency


@dataclass(frozen=True)
class FrameBudget:
    payload_bits: float
    comm_time: float
    sensing_time: float
    comm_rate: float
    comm_snr: float
    radar_snr: float
    radar_mi: float


def fspl_db(distance: float, frequency: float) -> float:
    if not (distance > 0 and frequency > 0):
        raise ValueError(f"distance and frequency must be positive, got {distance!r}, {frequency!r}")
    return 20.0 * math.log10(4.0 * math.pi * distance * frequency / SPEED_OF_LIGHT)


def noise_power_dbm(bandwidth: float, noise_figure: float = 0.0, temperature: float = 290.0) -> float:
    if not (bandwidth > 0 and temperature > 0):
        raise ValueError(f"bandwidth and temperature must be positive, got {bandwidth!r}, {temperature!r}")
    return 10.0 * math.log10(BOLTZMANN * temperature * bandwidth * 1e3) + noise_figure


def comm_snr_db(rf: RfParams, distance: float) -> float:
    return (
        watts_to_dbm(rf.transmit_power)
        + 2.0 * rf.antenna_gain
        - fspl_db(distance, rf.carrier_frequency)
        - noise_power_dbm(rf.bandwidth, rf.noise_figure, rf.system_temperature)
    )


def comm_snr(rf: RfParams, distance: float) -> float:
    """Linear received SNR of a line-of-sight link at ``distance`` meters."""
    return db_to_linear(comm_snr_db(rf, distance))


def shannon_rate(snr: float, bandwidth: float) -> float:
    if snr < 0:
        raise ValueError(f"snr must be non-negative, got {snr!r}")
    return bandwidth * math.log2(1.0 + snr)


def comm_rate(rf: RfParams, distance: float) -> float:
    return rf.rate_efficiency * shannon_rate(comm_snr(rf, distance), rf.bandwidth)


def split_frame(payload: float, rate: float, frame_duration: float) -> tuple[float, float]:
    """Return ``(comm_time, sensing_time)`` for a payload sent at ``rate``.

    The two parts sum to ``frame_duration`` exactly in floating point, and the
    communication leg is never shorter than ``payload / rate``.
    """
    if not rate > 0:
        raise ValueError(f"rate must be positive, got {rate!r}")
    if payload < 0:
        raise ValueError(f"payload must be non-negative, got {payload!r}")
    capacity = rate * frame_duration
    if payload > capacity:
        raise FrameOverflowError(payload, capacity)
    comm = payload / rate
    while comm * rate < payload:
        comm = math.nextafter(comm, math.inf)
    comm = min(comm, frame_duration)
    while True:
        sensing = frame_duration - comm
        if comm + sensing == frame_duration:
            return comm, sensing
        comm = math.nextafter(comm, math.inf)


def radar_snr(rf: RfParams, distance: float) -> float:
    """Monostatic radar-equation SNR for a point target at ``distance`` meters."""
    if not distance > 0:
        raise ValueError(f"distance must be positive, got {distance!r}")
    g = db_to_linear(rf.antenna_gain)
    f = db_to_linear(rf.noise_figure)
    num = rf.transmit_power * g * g * rf.wavelength**2 * rf.radar_cross_section
    den = (4.0 * math.pi) ** 3 * distance**4 * BOLTZMANN * rf.system_temperature * rf.bandwidth * f
    return num / den


def radar_mutual_information(sensing_time: float, bandwidth: float, radar_snr: float) -> float:
    if sensing_time < 0:
        raise ValueError(f"sensing_time must be non-negative, got {sensing_time!r}")
    if radar_snr < 0:
        raise ValueError(f"radar_snr must be non-negative, got {radar_snr!r}")
    return sensing_time * bandwidth / 2.0 * math.log2(1.0 + radar_snr)


def frame_budget(payload: float, rf: RfParams, comm_distance: float, target_distance: float) -> FrameBudget:
    snr_c = comm_snr(rf, comm_distance)
    rate = rf.rate_efficiency * shannon_rate(snr_c, rf.bandwidth)
    t_c, t_s = split_frame(payload, rate, rf.frame_duration)
    snr_r = radar_snr(rf, target_distance)
    return FrameBudget(
        payload_bits=payload,
        comm_time=t_c,
        sensing_time=t_s,
        comm_rate=rate,
        comm_snr=snr_c,
        radar_snr=snr_r,
        radar_mi=radar_mutual_information(t_s, rf.bandwidth, snr_r),
    )


def jcs_sweep(
    payloads: Sequence[float],
    rf: RfParams,
    comm_distance: float = 200.0,
    target_distance: float = 100.0,
) -> list[FrameBudget]:
    return [frame_budget(p, rf, comm_distance, target_distance) for p in payloads]
