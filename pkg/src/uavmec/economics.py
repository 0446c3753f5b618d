"""Pricing, incentive/inconvenience factors, party utilities, and the
weighted system revenue.

Compute levels enter the revenue terms in GHz so that prices in the default
[0.1, 2.0] band produce utilities of comparable magnitude to the energy
costs; raw cycles/s would let pricing terms dwarf everything else. Energy
terms are joules converted to currency through econ.energy_price.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import ComputeCaps, EconParams

GHZ = 1e9


@dataclass
class PriceQuote:
    p_uav: float    # currency per GHz of UAV compute
    p_idle: float   # currency per GHz of idle-UD compute


@dataclass
class Weights:
    w1: float   # UAVs
    w2: float   # idle UDs
    w3: float   # busy UDs

    def validate(self) -> None:
        if min(self.w1, self.w2, self.w3) < 0:
            raise ValueError("weights must be nonnegative")
        if abs(self.w1 + self.w2 + self.w3 - 1.0) > 1e-9:
            raise ValueError("weights must sum to 1")


@dataclass
class IncentiveFactors:
    u_busy: float   # busy UD self-processing incentive
    u_uav: float    # per-GHz value of UAV compute to busy UDs
    u_idle: float   # per-GHz value of idle compute to busy UDs


def incentive_factors(caps: ComputeCaps) -> IncentiveFactors:
    mean_cap = (caps.f_busy_max + caps.f_uav_max + caps.f_idle_max) / 3.0
    return IncentiveFactors(
        u_busy=caps.f_busy_max / mean_cap,
        u_uav=caps.f_uav_max / caps.f_busy_max,
        u_idle=caps.f_idle_max / caps.f_busy_max,
    )


def uav_inconvenience(eps1: float, econ: EconParams) -> float:
    """beta_k = 1 / (1 - eps1), with eps1 capped to keep the factor bounded."""
    return 1.0 / (1.0 - min(eps1, econ.eps1_cap))


def uav_utility(f_uav: float, p_uav: float, e_transcode: float, e_fly: float,
                e_compute: float, beta_uav: float, econ: EconParams) -> float:
    """Single-UAV slot utility: resource revenue minus inflated energy costs."""
    cost = beta_uav * econ.energy_price * (e_transcode + e_fly + e_compute)
    return f_uav / GHZ * p_uav - cost


def idle_utility(f_idle: float, p_idle: float, e_compute: float,
                 econ: EconParams) -> float:
    return f_idle / GHZ * p_idle - econ.beta_idle * econ.energy_price * e_compute


def busy_own_utility(f_busy: float, e_local: float, e_off_uav: float,
                     e_off_d2d: float, u_busy: float, econ: EconParams) -> float:
    """One busy UD's own term: incentive on local compute minus energy costs.

    Under the printed sign convention the offload energies are subtracted
    inside the cost bracket (so they raise utility); the alternative treats
    all three energies as costs.
    """
    if econ.paper_sign_convention:
        bracket = e_local - e_off_uav - e_off_d2d
    else:
        bracket = e_local + e_off_uav + e_off_d2d
    return u_busy * f_busy / GHZ - econ.beta_busy * econ.energy_price * bracket


def busy_purchase_utility(f_provider: float, price: float, u_factor: float) -> float:
    """Busy-side surplus from one provider: incentive value minus payment."""
    return (u_factor - price) * f_provider / GHZ


def system_revenue(u_uavs: float, u_idles: float, u_busys: float, w: Weights) -> float:
    return w.w1 * u_uavs + w.w2 * u_idles + w.w3 * u_busys
