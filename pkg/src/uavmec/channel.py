"""Fading channel gains and Shannon rates for D2D and UD-to-UAV links.

The fading model superposes a unit-modulus line-of-sight component and a
zero-mean unit-variance complex Gaussian scatter component, mixed by the
Rician factor; rician_k = 0 degenerates to Rayleigh. Block fading: callers
draw one gain per link per slot.
"""

from __future__ import annotations

import math

import numpy as np

from .config import ChannelParams


def link_distance(a, b) -> float:
    return float(np.linalg.norm(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)))


def los_gain_sq(p: ChannelParams, d: float) -> float:
    """Deterministic power gain beta0 * d^-chi (the rician_k -> inf limit)."""
    if d <= 0:
        raise ValueError("link distance must be positive")
    return p.beta0 * d ** (-p.chi)


def sample_gain_sq(p: ChannelParams, d: float, rng: np.random.Generator) -> float:
    """Draw |h|^2 for one link of length d. Mean equals beta0 * d^-chi."""
    if d <= 0:
        raise ValueError("link distance must be positive")
    k = p.rician_k
    los = math.sqrt(k / (1.0 + k)) if k > 0 else 0.0
    scatter = (rng.standard_normal() + 1j * rng.standard_normal()) / math.sqrt(2.0)
    h = los + math.sqrt(1.0 / (1.0 + k)) * scatter
    return p.beta0 * d ** (-p.chi) * float(abs(h)) ** 2


def rate(bw: float, tx_power: float, gain_sq: float, noise: float) -> float:
    """Shannon rate bw * log2(1 + snr) in bits/s; zero at zero transmit power."""
    if bw <= 0 or noise <= 0:
        raise ValueError("bandwidth and noise power must be positive")
    if tx_power < 0 or gain_sq < 0:
        raise ValueError("tx_power and gain_sq must be nonnegative")
    return bw * math.log2(1.0 + tx_power * gain_sq / noise)
