"""End-to-end experiment artifacts: config JSON, CSVs, checkpoints.

Runs a tiny experiment through the harness (the same code path as the
``uavmec`` CLI), then reloads the resolved config snapshot and re-runs to
show the convergence CSV is byte-identical.
"""

import os
import tempfile

from uavmec.config import (ExperimentConfig, SimConfig, Td3Config,
                           WorldConfig, load_experiment)
from uavmec.harness import export_trajectory, run
from uavmec.td3 import load_actor

cfg = ExperimentConfig(
    sim=SimConfig(world=WorldConfig(n_busy=3, n_idle=2, n_uav=2, n_slots=5)),
    td3=Td3Config(episodes=5, warmup_steps=10, batch_size=16,
                  buffer_capacity=1000, hidden=(32, 32)),
    algorithms=("td3", "greedy"),
    seeds=(0, 1),
    output_dir=tempfile.mkdtemp(prefix="uavmec_demo_"),
)

art = run(cfg, name="demo")
print("artifacts in", art.run_dir)
for name in sorted(os.listdir(art.run_dir)):
    print("  ", name)

with open(art.convergence_csv) as fh:
    print("\nconvergence.csv head:")
    for line in fh.read().splitlines()[:6]:
        print("  ", line)

art2 = run(load_experiment(art.config_snapshot), name="demo_rerun")
with open(art.convergence_csv, "rb") as f1, \
        open(art2.convergence_csv, "rb") as f2:
    print("\nre-run byte-identical:", f1.read() == f2.read())

traj = os.path.join(art.run_dir, "trajectory.csv")
export_trajectory(load_actor(os.path.join(art.run_dir, "actor_td3_0.npz")),
                  cfg.sim, seed=0, path=traj)
with open(traj) as fh:
    print("\ntrajectory.csv head:")
    for line in fh.read().splitlines()[:5]:
        print("  ", line)
