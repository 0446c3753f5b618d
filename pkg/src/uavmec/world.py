"""Entity placement, UAV kinematics, and busy-UD to UAV association."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .config import WorldConfig

NO_PAIR_DISTANCE = math.inf


@dataclass
class UavState:
    pos: np.ndarray            # (3,) meters
    vel: np.ndarray            # (3,) m/s
    remaining_energy: float    # joules
    uid: int


@dataclass
class WorldState:
    cfg: WorldConfig
    busy_pos: np.ndarray       # (I, 3), z = 0
    idle_pos: np.ndarray       # (J, 3), z = 0
    uavs: list[UavState]
    assoc: list[int] = field(default_factory=list)   # busy i -> UAV index

    def uav_positions(self) -> np.ndarray:
        return np.array([u.pos for u in self.uavs])


def spawn_world(cfg: WorldConfig) -> WorldState:
    """Place UDs and UAVs uniformly at random; deterministic under cfg.rng_seed."""
    cfg.validate()
    rng = np.random.default_rng(cfg.rng_seed)
    busy = np.zeros((cfg.n_busy, 3))
    busy[:, :2] = rng.uniform(0.0, cfg.area_side, size=(cfg.n_busy, 2))
    idle = np.zeros((max(cfg.n_idle, 0), 3))
    if cfg.n_idle > 0:
        idle[:, :2] = rng.uniform(0.0, cfg.area_side, size=(cfg.n_idle, 2))
    uavs = []
    for k in range(cfg.n_uav):
        xy = rng.uniform(0.0, cfg.area_side, size=2)
        z = rng.uniform(cfg.h_min, cfg.h_max)
        uavs.append(UavState(
            pos=np.array([xy[0], xy[1], z]),
            vel=np.zeros(3),
            remaining_energy=cfg.battery_j,
            uid=k,
        ))
    world = WorldState(cfg=cfg, busy_pos=busy, idle_pos=idle, uavs=uavs)
    world.assoc = associate(busy, uavs)
    return world


def clamp_velocity(commanded: np.ndarray, v_max: float) -> np.ndarray:
    """Scale the commanded velocity down so its magnitude is at most v_max."""
    speed = float(np.linalg.norm(commanded))
    if speed <= v_max or speed == 0.0:
        return np.array(commanded, dtype=float)
    return np.asarray(commanded, dtype=float) * (v_max / speed)


def advance_uav(u: UavState, commanded_vel: np.ndarray, dt: float,
                bounds: WorldConfig) -> UavState:
    """One kinematic step: clamp speed, integrate p + v*dt + 0.5*a*dt^2, clamp box.

    Acceleration is derived from the velocity change, a = (v_new - v_old) / dt,
    so the position update reduces to the midpoint rule.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    v_new = clamp_velocity(commanded_vel, bounds.v_max)
    accel = (v_new - u.vel) / dt
    pos = u.pos + u.vel * dt + 0.5 * accel * dt * dt
    pos = pos.copy()
    pos[0] = min(max(pos[0], 0.0), bounds.area_side)
    pos[1] = min(max(pos[1], 0.0), bounds.area_side)
    pos[2] = min(max(pos[2], bounds.h_min), bounds.h_max)
    return replace(u, pos=pos, vel=v_new)


def pairwise_min_distance(uavs: list[UavState]) -> float:
    """Minimum pairwise 3D distance; NO_PAIR_DISTANCE for a single UAV."""
    if not uavs:
        raise ValueError("empty UAV list")
    best = NO_PAIR_DISTANCE
    for a in range(len(uavs)):
        for b in range(a + 1, len(uavs)):
            d = float(np.linalg.norm(uavs[a].pos - uavs[b].pos))
            best = min(best, d)
    return best


def associate(busy_pos: np.ndarray, uavs: list[UavState]) -> list[int]:
    """Map each busy UD to its nearest UAV (3D distance, ties -> lowest index)."""
    if not uavs:
        raise ValueError("need at least one UAV to associate")
    uav_pos = np.array([u.pos for u in uavs])
    out = []
    for p in np.atleast_2d(busy_pos):
        d = np.linalg.norm(uav_pos - p, axis=1)
        out.append(int(np.argmin(d)))  # argmin breaks ties at lowest index
    return out
