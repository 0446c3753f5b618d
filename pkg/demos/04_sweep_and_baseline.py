"""Scenario sweeps with the RL-free greedy baseline.

The greedy policy picks each scalar action dimension by coordinate search
and steers UAVs toward the busy-UD centroid. Because it needs no training
it isolates the environment economics: revenue should grow with more
UAVs, more idle helpers, and more UAV compute.
"""

import numpy as np

from uavmec.baseline import greedy_baseline, zeros_baseline
from uavmec.config import SimConfig, WorldConfig
from uavmec.harness import _apply_axis

base = SimConfig(world=WorldConfig(n_busy=4, n_idle=2, n_uav=2, n_slots=10))

print("greedy vs zero-action policy (seed 0):",
      f"{greedy_baseline(base, 0):.0f} vs {zeros_baseline(base, 0):.0f}")

for axis, values in (("n_uav", [1, 2, 3]),
                     ("n_idle", [1, 2, 4]),
                     ("f_k_max", [10e9, 20e9, 30e9])):
    means = []
    for v in values:
        sim = _apply_axis(base, axis, v)
        means.append(np.mean([greedy_baseline(sim, s) for s in range(5)]))
    pretty = [f"{v/1e9:.0f} GHz" if axis == "f_k_max" else str(v) for v in values]
    print(f"{axis:8s}: " + "   ".join(f"{p} -> {m:.0f}"
                                      for p, m in zip(pretty, means)))
