"""Train TD3 on a desk-scale scenario and watch the return curve.

Takes a minute or two. The same Td3Config drives the DDPG baseline
(single critic, no smoothing, undelayed actor) for comparison.
"""

import numpy as np

from uavmec.config import SimConfig, Td3Config, WorldConfig
from uavmec.env import OffloadEnv
from uavmec.td3 import ddpg_train, td3_train

sim = SimConfig(world=WorldConfig(n_busy=6, n_idle=3, n_uav=2, n_slots=20))
cfg = Td3Config(episodes=60, warmup_steps=300, batch_size=64, hidden=(64, 64),
                actor_lr=5e-4, critic_lr=1e-3, exploration_noise_sigma=0.2,
                buffer_capacity=20_000, reward_scale=1e-3)

log, agent = td3_train(lambda s: OffloadEnv(sim, s), cfg, seed=0)
rets = log.episode_returns
print("td3 episode returns (every 5th):")
for i in range(0, len(rets), 5):
    bar = "#" * max(0, int((rets[i] - min(rets)) / (max(rets) - min(rets)) * 40))
    print(f"  ep {i:3d}  {rets[i]:10.0f}  {bar}")
print(f"\nfirst-10 mean {np.mean(rets[:10]):.0f}  ->  "
      f"final-10 mean {np.mean(rets[-10:]):.0f}")

log_d, _ = ddpg_train(lambda s: OffloadEnv(sim, s), cfg, seed=0)
print(f"ddpg final-10 mean {np.mean(log_d.episode_returns[-10:]):.0f}")
