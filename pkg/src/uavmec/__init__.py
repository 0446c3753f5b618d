"""Multi-UAV D2D edge-computing video-offloading simulator with a
from-scratch TD3/DDPG/PPO training stack."""

from .config import (ExperimentConfig, SimConfig, Td3Config, PpoConfig,
                     load_experiment)
from .env import OffloadEnv, decode, episode_return

__all__ = [
    "ExperimentConfig", "SimConfig", "Td3Config", "PpoConfig",
    "load_experiment", "OffloadEnv", "decode", "episode_return",
]

__version__ = "0.1.0"
