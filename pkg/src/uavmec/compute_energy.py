"""Delay and energy formulas for local, offloaded, and UAV-side processing,
plus the rotary-wing propulsion model."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import EnergyParams, TaskParams


@dataclass
class SlotTask:
    bits: float             # raw video size this slot
    cycles_per_bit: float


@dataclass
class OffloadSplit:
    eps1: float   # fraction to the associated UAV
    eps2: float   # fraction to the D2D idle partner
    eps3: float   # fraction processed locally

    def validate(self) -> None:
        for v in (self.eps1, self.eps2, self.eps3):
            if not (0.0 <= v <= 1.0):
                raise ValueError("split fractions must lie in [0, 1]")
        if abs(self.eps1 + self.eps2 + self.eps3 - 1.0) > 1e-9:
            raise ValueError("split fractions must sum to 1")


@dataclass
class TranscodeLevel:
    bitrate_mbps: float
    original_bitrate_mbps: float = 2.75


class UnassociatedOffload(RuntimeError):
    """Raised when a positive UAV offload fraction has no associated UAV."""


def local_delay(t: SlotTask, split: OffloadSplit, f_local: float) -> float:
    if split.eps3 == 0.0:
        return 0.0
    if f_local <= 0:
        return math.inf
    return split.eps3 * t.bits * t.cycles_per_bit / f_local


def local_energy(t: SlotTask, split: OffloadSplit, f_local: float, kappa: float) -> float:
    return kappa * f_local ** 2 * split.eps3 * t.bits * t.cycles_per_bit


def flight_power(v: float, p: EnergyParams) -> float:
    """Propulsion power at horizontal speed v (W): parasite + blade + induced."""
    if v < 0:
        raise ValueError("speed must be nonnegative")
    parasite = 0.5 * p.d_c * p.rho * p.rotor_solidity * p.rotor_area * v ** 3
    blade = p.p_blade * (1.0 + 3.0 * v ** 2 / p.utip ** 2)
    vf_pow = 4 if p.classical_induced_term else 2
    induced_inner = math.sqrt(1.0 + v ** 4 / (4.0 * p.v_f ** vf_pow)) - v ** 2 / (2.0 * p.v_f ** 2)
    induced = p.p_induced * math.sqrt(max(induced_inner, 0.0))
    return parasite + blade + induced


def flight_energy(v: float, dt: float, p: EnergyParams) -> float:
    if dt < 0:
        raise ValueError("slot length must be nonnegative")
    return flight_power(v, p) * dt


def uplink_delay_uav(t: SlotTask, split: OffloadSplit, rate_to_assoc_uav: float | None) -> float:
    if split.eps1 == 0.0:
        return 0.0
    if rate_to_assoc_uav is None:
        raise UnassociatedOffload("eps1 > 0 but the busy UD has no associated UAV")
    if rate_to_assoc_uav <= 0:
        return math.inf
    return split.eps1 * t.bits / rate_to_assoc_uav


def uplink_energy(tx_power: float, delay: float) -> float:
    return tx_power * delay


def transcode_cycles_per_bit(level: TranscodeLevel, p: EnergyParams) -> float:
    """Cycles per bit for transcoding to the target bitrate: m1 * b^m2 (b in Mbps)."""
    return p.m1 * level.bitrate_mbps ** p.m2


def transcode_time(cycles_total: float, f_uav: float) -> float:
    if cycles_total == 0.0:
        return 0.0
    if f_uav <= 0:
        return math.inf
    return cycles_total / f_uav


def transcode_energy(f_uav: float, time_s: float, p: EnergyParams) -> float:
    # Zero frequency does no work even though the job would never finish
    # (time_s is inf there); guard avoids 0 * inf.
    if f_uav <= 0.0:
        return 0.0
    return p.s1 * f_uav ** p.y1 * time_s


def transcoded_bits(t: SlotTask, split: OffloadSplit, level: TranscodeLevel) -> float:
    """Post-transcode size of the UAV share, scaled by the bitrate ratio."""
    return split.eps1 * t.bits * (level.bitrate_mbps / level.original_bitrate_mbps)


def uav_compute_delay(d_prime: float, ck: float, f_uav: float) -> float:
    if d_prime == 0.0:
        return 0.0
    if f_uav <= 0:
        return math.inf
    return d_prime * ck / f_uav


def uav_compute_energy(f_uav: float, d_prime: float, ck: float, kappa: float) -> float:
    return kappa * f_uav ** 2 * d_prime * ck


def d2d_delay(t: SlotTask, split: OffloadSplit, rate_d2d: float) -> float:
    if split.eps2 == 0.0:
        return 0.0
    if rate_d2d <= 0:
        return math.inf
    return split.eps2 * t.bits / rate_d2d


def idle_compute_delay(t: SlotTask, split: OffloadSplit, f_idle: float) -> float:
    if split.eps2 == 0.0:
        return 0.0
    if f_idle <= 0:
        return math.inf
    return split.eps2 * t.bits * t.cycles_per_bit / f_idle


def idle_compute_energy(t: SlotTask, split: OffloadSplit, f_idle: float, kappa: float) -> float:
    return kappa * f_idle ** 2 * split.eps2 * t.bits * t.cycles_per_bit


def ladder_level(task: TaskParams, index: int) -> TranscodeLevel:
    return TranscodeLevel(bitrate_mbps=task.bitrate_ladder[index],
                          original_bitrate_mbps=task.original_bitrate_mbps)
