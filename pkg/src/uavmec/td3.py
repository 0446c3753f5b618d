"""Twin-delayed deterministic policy gradient training, plus the DDPG
variant (single critic, no target smoothing, every-step actor updates)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import Td3Config
from .nets import Mlp, all_finite, make_optimizer, soft_update
from .replay import ReplayBuffer, Transition


class DivergenceError(RuntimeError):
    """Raised when any network parameter becomes non-finite."""


def td_target(r: np.ndarray, q1: np.ndarray, q2: np.ndarray,
              done: np.ndarray, gamma: float) -> np.ndarray:
    """Bellman target with the pairwise-min twin-critic estimate."""
    return r + gamma * (1.0 - done) * np.minimum(q1, q2)


@dataclass
class TrainLog:
    episode_returns: list[float] = field(default_factory=list)
    critic_losses: list[float] = field(default_factory=list)
    critic_losses2: list[float] = field(default_factory=list)
    actor_objectives: list[float] = field(default_factory=list)
    penalty_totals: list[float] = field(default_factory=list)


class Td3Agent:
    def __init__(self, state_dim: int, action_dim: int, cfg: Td3Config,
                 rng: np.random.Generator, n_critics: int = 2,
                 target_smoothing: bool = True):
        cfg.validate()
        self.cfg = cfg
        self.rng = rng
        self.action_dim = action_dim
        self.n_critics = n_critics
        self.target_smoothing = target_smoothing
        hidden = list(cfg.hidden)
        self.actor = Mlp([state_dim] + hidden + [action_dim], "tanh", rng)
        self.actor_target = self.actor.copy()
        self.critics = [Mlp([state_dim + action_dim] + hidden + [1], "identity", rng)
                        for _ in range(n_critics)]
        self.critic_targets = [c.copy() for c in self.critics]
        self.actor_opt = make_optimizer(cfg.optimizer, self.actor.parameters(),
                                        cfg.actor_lr)
        self.critic_opts = [make_optimizer(cfg.optimizer, c.parameters(), cfg.critic_lr)
                            for c in self.critics]
        self.critic_update_count = 0
        self.actor_update_count = 0

    def act(self, s: np.ndarray) -> np.ndarray:
        return self.actor.forward(s)[0]

    def act_noisy(self, s: np.ndarray) -> np.ndarray:
        noise = self.rng.normal(0.0, self.cfg.exploration_noise_sigma,
                                size=self.action_dim)
        return np.clip(self.act(s) + noise, -1.0, 1.0)

    def smoothed_target_action(self, s_next: np.ndarray) -> np.ndarray:
        """Target-actor action plus clipped Gaussian smoothing noise."""
        a = self.actor_target.forward(s_next)
        if self.target_smoothing and self.cfg.target_noise_sigma > 0:
            noise = self.rng.normal(0.0, self.cfg.target_noise_sigma, size=a.shape)
            noise = np.clip(noise, -self.cfg.target_noise_clip,
                            self.cfg.target_noise_clip)
            a = a + noise
        return np.clip(a, -1.0, 1.0)

    def td_targets(self, r: np.ndarray, s_next: np.ndarray,
                   done: np.ndarray) -> np.ndarray:
        a_bar = self.smoothed_target_action(s_next)
        x = np.concatenate([s_next, a_bar], axis=1)
        q1 = self.critic_targets[0].forward(x)[:, 0]
        q2 = (self.critic_targets[1].forward(x)[:, 0]
              if self.n_critics > 1 else q1)
        return td_target(r, q1, q2, done, self.cfg.gamma)

    def critic_update(self, s: np.ndarray, a: np.ndarray,
                      y: np.ndarray) -> list[float]:
        """One MSE descent step on each critic toward the shared target y."""
        x = np.concatenate([s, a], axis=1)
        losses = []
        batch = x.shape[0]
        for critic, opt in zip(self.critics, self.critic_opts):
            q, cache = critic.forward_cache(x)
            err = q[:, 0] - y
            losses.append(float(np.mean(err ** 2)))
            grad_out = (2.0 / batch) * err[:, None]
            grads, _ = critic.backward(cache, grad_out)
            opt.step(critic.parameters(), grads)
        self.critic_update_count += 1
        return losses

    def actor_update(self, s: np.ndarray) -> float:
        """Ascent step on the batch-mean of Q1(s, pi(s)); returns the objective."""
        a, actor_cache = self.actor.forward_cache(s)
        x = np.concatenate([s, a], axis=1)
        q, critic_cache = self.critics[0].forward_cache(x)
        batch = s.shape[0]
        grad_out = np.full((batch, 1), 1.0 / batch)
        _, grad_x = self.critics[0].backward(critic_cache, grad_out)
        grad_a = grad_x[:, s.shape[1]:]
        actor_grads, _ = self.actor.backward(actor_cache, grad_a)
        # Gradient ascent: feed negated gradients to the descent optimizer.
        self.actor_opt.step(self.actor.parameters(), [-g for g in actor_grads])
        self.actor_update_count += 1
        return float(np.mean(q))

    def sync_targets(self) -> None:
        soft_update(self.actor_target, self.actor, self.cfg.tau)
        for tgt, online in zip(self.critic_targets, self.critics):
            soft_update(tgt, online, self.cfg.tau)

    def check_finite(self, step: int) -> None:
        nets = [self.actor, self.actor_target] + self.critics + self.critic_targets
        if not all(all_finite(n) for n in nets):
            raise DivergenceError(f"non-finite parameters at step {step}")


def _train(env_factory, cfg: Td3Config, seed: int, n_critics: int,
           target_smoothing: bool, policy_delay: int):
    env = env_factory(seed)
    rng = np.random.default_rng([seed, 0x7D3])
    agent = Td3Agent(env.state_dim, env.action_dim, cfg, rng,
                     n_critics=n_critics, target_smoothing=target_smoothing)
    buf = ReplayBuffer(cfg.buffer_capacity, env.state_dim, env.action_dim,
                       np.random.default_rng([seed, 0xB0F]))
    log = TrainLog()
    step = 0
    for _ in range(cfg.episodes):
        s = env.reset()
        ep_return = 0.0
        ep_penalty = 0.0
        done = False
        while not done:
            if step < cfg.warmup_steps:
                a = rng.uniform(-1.0, 1.0, size=env.action_dim)
            else:
                a = agent.act_noisy(s)
            s_next, r, entry, done = env.step(a)
            ep_return += r
            ep_penalty += entry.penalty
            buf.push(Transition(s, a, r * cfg.reward_scale, s_next, float(done)))
            s = s_next
            step += 1
            if step >= cfg.warmup_steps and buf.size >= cfg.batch_size:
                bs, ba, br, bs2, bd = buf.sample(cfg.batch_size)
                y = agent.td_targets(br, bs2, bd)
                losses = agent.critic_update(bs, ba, y)
                log.critic_losses.append(losses[0])
                log.critic_losses2.append(losses[-1])
                if agent.critic_update_count % policy_delay == 0:
                    log.actor_objectives.append(agent.actor_update(bs))
                    agent.sync_targets()
                agent.check_finite(step)
        log.episode_returns.append(ep_return)
        log.penalty_totals.append(ep_penalty)
    return log, agent


def td3_train(env_factory, cfg: Td3Config, seed: int):
    """Full twin-critic training with smoothing and delayed actor updates."""
    return _train(env_factory, cfg, seed, n_critics=2, target_smoothing=True,
                  policy_delay=cfg.policy_delay)


def ddpg_train(env_factory, cfg: Td3Config, seed: int):
    """Single critic, no target smoothing, actor updated every step."""
    return _train(env_factory, cfg, seed, n_critics=1, target_smoothing=False,
                  policy_delay=1)


CHECKPOINT_VERSION = 1


def save_actor(path: str, actor: Mlp) -> None:
    """Write an actor checkpoint (.npz: version, sizes, activation, params)."""
    arrays = {"format_version": np.array([CHECKPOINT_VERSION]),
              "sizes": np.array(actor.sizes),
              "out_activation": np.array([actor.out_activation])}
    for i, w in enumerate(actor.weights):
        arrays[f"w{i}"] = w
    for i, b in enumerate(actor.biases):
        arrays[f"b{i}"] = b
    np.savez(path, **arrays)


def load_actor(path: str) -> Mlp:
    data = np.load(path, allow_pickle=False)
    version = int(data["format_version"][0])
    if version != CHECKPOINT_VERSION:
        raise ValueError(f"unsupported checkpoint version {version}")
    sizes = [int(v) for v in data["sizes"]]
    net = Mlp(sizes, str(data["out_activation"][0]), np.random.default_rng(0))
    for i in range(len(sizes) - 1):
        net.weights[i] = np.array(data[f"w{i}"])
        net.biases[i] = np.array(data[f"b{i}"])
    return net
