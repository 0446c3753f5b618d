"""Episodic MDP wrapping the offloading economy.

State vector layout (length 4*I + 4*K + 1, every entry normalized to [0,1]):

    [x/area, y/area, z/area(=0), bits/d_max]      for each busy UD
    [shared cycles-per-bit, min-max normalized]
    [x/area, y/area, (z-h_min)/(h_max-h_min), energy/battery]  per UAV

Raw action layout (length 12 + 3*K, every entry in [-1, 1]):

    [0:3]        offload-split logits (softmax -> eps1, eps2, eps3)
    [3:6]        busy / idle / UAV compute levels (affine to [0, cap])
    [6:8]        UAV price, idle price (affine to [min, max])
    [8:11]       revenue-weight logits (softmax -> w1, w2, w3)
    [11:11+3K]   per-UAV commanded velocity, each component times v_max
    [11+3K]      transcode-bitrate selector (binned into the ladder)

Each step evaluates the slot's physics and economics at the current
positions, assesses constraint penalties, then advances the UAVs, drains
their batteries, re-associates, and draws the next slot's tasks.
"""

from __future__ import annotations

import copy
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import channel, compute_energy as ce, economics as econ
from .config import SimConfig
from .compute_energy import OffloadSplit, SlotTask, TranscodeLevel
from .economics import PriceQuote, Weights
from .world import (WorldState, advance_uav, associate, clamp_velocity,
                    pairwise_min_distance, spawn_world)


@dataclass
class DecodedAction:
    split: OffloadSplit
    f_busy: float
    f_idle: float
    f_uav: float
    prices: PriceQuote
    weights: Weights
    velocities: np.ndarray        # (K, 3), speed-clamped
    commanded_speeds: np.ndarray  # (K,), pre-clamp magnitudes
    level: TranscodeLevel
    level_index: int


@dataclass
class LedgerEntry:
    slot: int
    q: float
    u_uav: float
    u_idle: float
    u_busy: float
    f1: float
    f2: float
    f3: float
    f4: float
    penalty: float
    reward: float
    e_local: float
    e_off_uav: float
    e_off_d2d: float
    e_transcode: float
    e_uav_compute: float
    e_idle_compute: float
    e_fly: float
    t_local: float
    t_off_uav: float
    t_off_d2d: float
    uav_rows: list[tuple[float, float, float, float]] = field(default_factory=list)


def action_length(n_uav: int) -> int:
    return 12 + 3 * n_uav


def state_length(n_busy: int, n_uav: int) -> int:
    return 4 * n_busy + 4 * n_uav + 1


def _softmax3(logits: np.ndarray) -> np.ndarray:
    z = np.exp(logits - np.max(logits))
    return z / z.sum()


def _affine(raw: float, lo: float, hi: float) -> float:
    return lo + (float(raw) + 1.0) * 0.5 * (hi - lo)


def decode(raw: np.ndarray, cfg: SimConfig) -> DecodedAction:
    """Map a raw [-1,1] action vector onto the feasible set."""
    raw = np.asarray(raw, dtype=float)
    k = cfg.world.n_uav
    if raw.shape != (action_length(k),):
        raise ValueError(f"action vector must have length {action_length(k)}, "
                         f"got shape {raw.shape}")
    s = _softmax3(raw[0:3])
    split = OffloadSplit(eps1=float(s[0]), eps2=float(s[1]), eps3=float(s[2]))
    f_busy = _affine(raw[3], 0.0, cfg.caps.f_busy_max)
    f_idle = _affine(raw[4], 0.0, cfg.caps.f_idle_max)
    f_uav = _affine(raw[5], 0.0, cfg.caps.f_uav_max)
    prices = PriceQuote(
        p_uav=_affine(raw[6], cfg.econ.p_uav_min, cfg.econ.p_uav_max),
        p_idle=_affine(raw[7], cfg.econ.p_idle_min, cfg.econ.p_idle_max),
    )
    w = _softmax3(raw[8:11])
    weights = Weights(w1=float(w[0]), w2=float(w[1]), w3=float(w[2]))
    vel_raw = raw[11:11 + 3 * k].reshape(k, 3) * cfg.world.v_max
    commanded = np.linalg.norm(vel_raw, axis=1)
    velocities = np.array([clamp_velocity(v, cfg.world.v_max) for v in vel_raw])
    ladder = cfg.task.bitrate_ladder
    idx = min(int((float(raw[11 + 3 * k]) + 1.0) * 0.5 * len(ladder)), len(ladder) - 1)
    level = ce.ladder_level(cfg.task, idx)
    return DecodedAction(split=split, f_busy=f_busy, f_idle=f_idle, f_uav=f_uav,
                         prices=prices, weights=weights, velocities=velocities,
                         commanded_speeds=commanded, level=level, level_index=idx)


def episode_return(rewards) -> float:
    return float(sum(rewards))


class OffloadEnv:
    """Deterministic, seedable episodic environment (step/reset interface)."""

    def __init__(self, cfg: SimConfig, seed: int = 0):
        cfg.validate()
        if cfg.world.n_idle < 1:
            raise ValueError("need at least one idle UD for the D2D route")
        self.cfg = cfg
        self._seed = seed
        self.world: WorldState | None = None
        self.slot = 0
        self.done = True
        self.reset(seed)

    @property
    def state_dim(self) -> int:
        return state_length(self.cfg.world.n_busy, self.cfg.world.n_uav)

    @property
    def action_dim(self) -> int:
        return action_length(self.cfg.world.n_uav)

    def reset(self, seed: int | None = None) -> np.ndarray:
        if seed is not None:
            self._seed = seed
        w = replace(self.cfg.world, rng_seed=self._seed)
        self.world = spawn_world(w)
        self.rng = np.random.default_rng([self._seed, 0xE17])
        self.slot = 0
        self.done = False
        self._initial_uav_pos = self.world.uav_positions().copy()
        self._energy_used = np.zeros(w.n_uav)
        self._energy_exceeded = np.zeros(w.n_uav, dtype=bool)
        # Static D2D pairing: each busy UD offloads to its nearest idle UD.
        self._d2d_partner = [
            int(np.argmin(np.linalg.norm(self.world.idle_pos - p, axis=1)))
            for p in self.world.busy_pos
        ]
        self._draw_tasks()
        return self.state()

    def _draw_tasks(self) -> None:
        t = self.cfg.task
        self._bits = self.rng.uniform(t.d_min_bits, t.d_max_bits,
                                      size=self.cfg.world.n_busy)
        self._cycles = float(self.rng.uniform(t.cycles_per_bit_min,
                                              t.cycles_per_bit_max))

    def state(self) -> np.ndarray:
        cfg = self.cfg
        w = self.world
        out = np.empty(self.state_dim)
        i = 0
        for ud in range(cfg.world.n_busy):
            out[i:i + 3] = w.busy_pos[ud] / cfg.world.area_side
            out[i + 3] = self._bits[ud] / cfg.task.d_max_bits
            i += 4
        c_span = cfg.task.cycles_per_bit_max - cfg.task.cycles_per_bit_min
        # degenerate range (fixed cycle density) normalizes to 0
        out[i] = ((self._cycles - cfg.task.cycles_per_bit_min) / c_span
                  if c_span > 0 else 0.0)
        i += 1
        h_span = cfg.world.h_max - cfg.world.h_min
        for u in w.uavs:
            out[i:i + 2] = u.pos[:2] / cfg.world.area_side
            out[i + 2] = (u.pos[2] - cfg.world.h_min) / h_span
            out[i + 3] = u.remaining_energy / cfg.world.battery_j
            i += 4
        return out

    def _gain(self, params, d: float) -> float:
        if self.cfg.deterministic_fading:
            return channel.los_gain_sq(params, d)
        return channel.sample_gain_sq(params, d, self.rng)

    def step(self, raw_action) -> tuple[np.ndarray, float, LedgerEntry, bool]:
        if self.done:
            raise RuntimeError("step() called on a finished episode")
        cfg = self.cfg
        w = self.world
        act = decode(raw_action, cfg)
        kappa = cfg.energy.kappa
        tx = cfg.caps.tx_power
        n_uav = cfg.world.n_uav

        # Idle compute is shared evenly among the busy UDs an idle UD serves.
        serve_count = np.zeros(cfg.world.n_idle, dtype=int)
        for j in self._d2d_partner:
            serve_count[j] += 1

        ck = ce.transcode_cycles_per_bit(act.level, cfg.energy)
        e_trans_k = np.zeros(n_uav)
        e_comp_k = np.zeros(n_uav)
        e_idle_j = np.zeros(cfg.world.n_idle)
        tot = {"e_local": 0.0, "e_off_uav": 0.0, "e_off_d2d": 0.0,
               "t_local": 0.0, "t_off_uav": 0.0, "t_off_d2d": 0.0}
        u_busy_own = 0.0
        inc = econ.incentive_factors(cfg.caps)

        for i in range(cfg.world.n_busy):
            task = SlotTask(bits=float(self._bits[i]), cycles_per_bit=self._cycles)
            k = w.assoc[i]
            j = self._d2d_partner[i]
            d_uav = channel.link_distance(w.busy_pos[i], w.uavs[k].pos)
            d_d2d = max(channel.link_distance(w.busy_pos[i], w.idle_pos[j]), 1.0)
            r_uav = channel.rate(cfg.chan_uav.bandwidth, tx,
                                 self._gain(cfg.chan_uav, d_uav),
                                 cfg.chan_uav.noise_power)
            r_d2d = channel.rate(cfg.chan_d2d.bandwidth, tx,
                                 self._gain(cfg.chan_d2d, d_d2d),
                                 cfg.chan_d2d.noise_power)

            t_loc = ce.local_delay(task, act.split, act.f_busy)
            e_loc = ce.local_energy(task, act.split, act.f_busy, kappa)

            t_up = ce.uplink_delay_uav(task, act.split, r_uav)
            e_up = ce.uplink_energy(tx, t_up)
            t_tr = ce.transcode_time(ck * act.split.eps1 * task.bits, act.f_uav)
            e_tr = ce.transcode_energy(act.f_uav, t_tr, cfg.energy)
            d_prime = ce.transcoded_bits(task, act.split, act.level)
            e_uc = ce.uav_compute_energy(act.f_uav, d_prime, ck, kappa)

            t_d2d = ce.d2d_delay(task, act.split, r_d2d)
            e_d2d = ce.uplink_energy(tx, t_d2d)
            f_share = act.f_idle / max(serve_count[j], 1)
            e_idle = ce.idle_compute_energy(task, act.split, f_share, kappa)

            e_trans_k[k] += e_tr
            e_comp_k[k] += e_uc
            e_idle_j[j] += e_idle
            tot["e_local"] += e_loc
            tot["e_off_uav"] += e_up
            tot["e_off_d2d"] += e_d2d
            tot["t_local"] += t_loc
            tot["t_off_uav"] += t_up
            tot["t_off_d2d"] += t_d2d
            u_busy_own += econ.busy_own_utility(act.f_busy, e_loc, e_up, e_d2d,
                                                inc.u_busy, cfg.econ)

        dt = cfg.world.slot_seconds
        e_fly_k = np.array([ce.flight_energy(float(np.linalg.norm(v)), dt, cfg.energy)
                            for v in act.velocities])

        beta_uav = econ.uav_inconvenience(act.split.eps1, cfg.econ)
        u_uav = sum(econ.uav_utility(act.f_uav, act.prices.p_uav, e_trans_k[k],
                                     e_fly_k[k], e_comp_k[k], beta_uav, cfg.econ)
                    for k in range(n_uav))
        u_idle = sum(econ.idle_utility(act.f_idle, act.prices.p_idle, e_idle_j[j],
                                       cfg.econ)
                     for j in range(cfg.world.n_idle))
        u_busy = (u_busy_own
                  + cfg.world.n_idle * econ.busy_purchase_utility(
                      act.f_idle, act.prices.p_idle, inc.u_idle)
                  + n_uav * econ.busy_purchase_utility(
                      act.f_uav, act.prices.p_uav, inc.u_uav))
        q = econ.system_revenue(u_uav, u_idle, u_busy, act.weights)

        # Constraint penalties on this slot's configuration.
        pen = cfg.penalty
        f1 = pen.f1 if (n_uav > 1 and pairwise_min_distance(w.uavs) < cfg.world.d_min) else 0.0
        f3 = pen.f3 if bool(np.any(act.commanded_speeds > cfg.world.v_max * (1 + 1e-12))) else 0.0
        slot_use = e_fly_k + e_trans_k + e_comp_k
        self._energy_used += slot_use
        self._energy_exceeded |= self._energy_used > cfg.world.battery_j
        f2 = pen.f2 if bool(np.any(self._energy_exceeded)) else 0.0

        # Advance kinematics, drain batteries, re-associate, draw next tasks.
        for k in range(n_uav):
            vel_cmd = np.asarray(raw_action, dtype=float)[11 + 3 * k:14 + 3 * k] * cfg.world.v_max
            w.uavs[k] = advance_uav(w.uavs[k], vel_cmd, dt, cfg.world)
            w.uavs[k].remaining_energy = max(cfg.world.battery_j - self._energy_used[k], 0.0)
        w.assoc = associate(w.busy_pos, w.uavs)
        self._draw_tasks()
        self.slot += 1
        self.done = self.slot >= cfg.world.n_slots

        f4 = 0.0
        if self.done and pen.f4 > 0:
            disp = np.linalg.norm(w.uav_positions() - self._initial_uav_pos, axis=1)
            f4 = pen.f4 * float(np.mean(disp)) / cfg.world.area_side

        penalty = f1 + f2 + f3 + f4
        reward = q - penalty
        entry = LedgerEntry(
            slot=self.slot - 1, q=q, u_uav=u_uav, u_idle=u_idle, u_busy=u_busy,
            f1=f1, f2=f2, f3=f3, f4=f4, penalty=penalty, reward=reward,
            e_local=tot["e_local"], e_off_uav=tot["e_off_uav"],
            e_off_d2d=tot["e_off_d2d"], e_transcode=float(e_trans_k.sum()),
            e_uav_compute=float(e_comp_k.sum()),
            e_idle_compute=float(e_idle_j.sum()), e_fly=float(e_fly_k.sum()),
            t_local=tot["t_local"], t_off_uav=tot["t_off_uav"],
            t_off_d2d=tot["t_off_d2d"],
            uav_rows=[(float(u.pos[0]), float(u.pos[1]), float(u.pos[2]),
                       float(u.remaining_energy)) for u in w.uavs],
        )
        return self.state(), reward, entry, self.done

    def clone(self) -> "OffloadEnv":
        return copy.deepcopy(self)

    def peek_reward(self, raw_action) -> float:
        """Reward of taking raw_action now, without mutating this env."""
        _, r, _, _ = self.clone().step(raw_action)
        return r


def write_ledger_csv(path: str, entries_by_episode: dict[int, list[LedgerEntry]],
                     n_uav: int) -> None:
    """One row per (episode, slot), with per-UAV position/energy columns."""
    cols = ["episode", "slot", "Q", "U_K", "U_J", "U_I",
            "F1", "F2", "F3", "F4", "reward"]
    for k in range(n_uav):
        cols += [f"uav{k}_x", f"uav{k}_y", f"uav{k}_z", f"uav{k}_energy"]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(cols) + "\n")
        for ep in sorted(entries_by_episode):
            for e in entries_by_episode[ep]:
                row = [str(ep), str(e.slot)]
                row += [repr(v) for v in (e.q, e.u_uav, e.u_idle, e.u_busy,
                                          e.f1, e.f2, e.f3, e.f4, e.reward)]
                for x, y, z, en in e.uav_rows:
                    row += [repr(x), repr(y), repr(z), repr(en)]
                fh.write(",".join(row) + "\n")
