"""Minimal clipped-surrogate on-policy baseline with a Gaussian policy head
and generalized advantage estimation."""

from __future__ import annotations

import numpy as np

from .config import PpoConfig
from .nets import Adam, Mlp, all_finite
from .td3 import DivergenceError, TrainLog

LOG_STD_MIN, LOG_STD_MAX = -5.0, 1.0


class PpoAgent:
    def __init__(self, state_dim: int, action_dim: int, cfg: PpoConfig,
                 rng: np.random.Generator):
        cfg.validate()
        self.cfg = cfg
        self.rng = rng
        hidden = list(cfg.hidden)
        self.mean_net = Mlp([state_dim] + hidden + [action_dim], "tanh", rng)
        self.value_net = Mlp([state_dim] + hidden + [1], "identity", rng)
        self.log_std = np.full(action_dim, cfg.init_log_std)
        self.policy_opt = Adam(self.mean_net.parameters() + [self.log_std], cfg.lr)
        self.value_opt = Adam(self.value_net.parameters(), cfg.lr)

    def act(self, s: np.ndarray) -> np.ndarray:
        """Deterministic (mean) action."""
        return self.mean_net.forward(s)[0]

    def sample_action(self, s: np.ndarray):
        mu = self.mean_net.forward(s)[0]
        std = np.exp(self.log_std)
        a = mu + std * self.rng.standard_normal(mu.shape)
        logp = self._log_prob(a[None, :], mu[None, :])[0]
        return np.clip(a, -1.0, 1.0), a, logp

    def _log_prob(self, a: np.ndarray, mu: np.ndarray) -> np.ndarray:
        std = np.exp(self.log_std)
        z = (a - mu) / std
        return (-0.5 * z ** 2 - self.log_std - 0.5 * np.log(2 * np.pi)).sum(axis=1)

    def value(self, s: np.ndarray) -> np.ndarray:
        return self.value_net.forward(s)[:, 0]

    def update(self, s, a_raw, logp_old, adv, returns) -> tuple[float, float]:
        cfg = self.cfg
        n = s.shape[0]
        adv = (adv - adv.mean()) / (adv.std() + 1e-8)
        idx_rng = np.random.default_rng(self.rng.integers(2 ** 63))
        policy_loss = value_loss = 0.0
        for _ in range(cfg.epochs):
            order = idx_rng.permutation(n)
            for start in range(0, n, cfg.minibatch_size):
                mb = order[start:start + cfg.minibatch_size]
                policy_loss = self._policy_step(s[mb], a_raw[mb],
                                                logp_old[mb], adv[mb])
                value_loss = self._value_step(s[mb], returns[mb])
        return policy_loss, value_loss

    def _policy_step(self, s, a_raw, logp_old, adv) -> float:
        cfg = self.cfg
        b = s.shape[0]
        mu, cache = self.mean_net.forward_cache(s)
        std = np.exp(self.log_std)
        z = (a_raw - mu) / std
        logp = (-0.5 * z ** 2 - self.log_std - 0.5 * np.log(2 * np.pi)).sum(axis=1)
        # Exponent clamp keeps far-off-policy samples from overflowing.
        ratio = np.exp(np.clip(logp - logp_old, -20.0, 20.0))
        unclipped = ratio * adv
        clipped = np.clip(ratio, 1 - cfg.clip_ratio, 1 + cfg.clip_ratio) * adv
        loss = -float(np.mean(np.minimum(unclipped, clipped)))
        # Gradient flows only where the unclipped branch is active.
        active = ~((adv >= 0) & (ratio > 1 + cfg.clip_ratio)
                   | (adv < 0) & (ratio < 1 - cfg.clip_ratio))
        dlogp = np.where(active, -(adv * ratio) / b, 0.0)
        dmu = dlogp[:, None] * (z / std)          # dlogp/dmu = (a-mu)/std^2
        dlogstd = (dlogp[:, None] * (z ** 2 - 1.0)).sum(axis=0)
        grads, _ = self.mean_net.backward(cache, dmu)
        self.policy_opt.step(self.mean_net.parameters() + [self.log_std],
                             grads + [dlogstd])
        np.clip(self.log_std, LOG_STD_MIN, LOG_STD_MAX, out=self.log_std)
        return loss

    def _value_step(self, s, returns) -> float:
        b = s.shape[0]
        v, cache = self.value_net.forward_cache(s)
        err = v[:, 0] - returns
        grads, _ = self.value_net.backward(cache, (2.0 / b) * err[:, None])
        self.value_opt.step(self.value_net.parameters(), grads)
        return float(np.mean(err ** 2))


def gae(rewards, values, dones, last_value, gamma, lam):
    """Generalized advantage estimates and discounted return targets."""
    n = len(rewards)
    adv = np.zeros(n)
    running = 0.0
    next_value = last_value
    for t in range(n - 1, -1, -1):
        nonterminal = 1.0 - dones[t]
        delta = rewards[t] + gamma * next_value * nonterminal - values[t]
        running = delta + gamma * lam * nonterminal * running
        adv[t] = running
        next_value = values[t]
    return adv, adv + values


def ppo_train(env_factory, cfg: PpoConfig, seed: int):
    env = env_factory(seed)
    rng = np.random.default_rng([seed, 0x9970])
    agent = PpoAgent(env.state_dim, env.action_dim, cfg, rng)
    log = TrainLog()
    episodes_done = 0
    while episodes_done < cfg.episodes:
        batch_eps = min(cfg.rollout_episodes, cfg.episodes - episodes_done)
        states, actions, logps, rewards, dones, values = [], [], [], [], [], []
        for _ in range(batch_eps):
            s = env.reset()
            done = False
            ep_return = 0.0
            ep_penalty = 0.0
            while not done:
                a_env, a_raw, logp = agent.sample_action(s)
                v = float(agent.value(s[None, :])[0])
                s_next, r, entry, done = env.step(a_env)
                states.append(s)
                actions.append(a_raw)
                logps.append(logp)
                rewards.append(r * cfg.reward_scale)
                dones.append(float(done))
                values.append(v)
                ep_return += r
                ep_penalty += entry.penalty
                s = s_next
            log.episode_returns.append(ep_return)
            log.penalty_totals.append(ep_penalty)
        episodes_done += batch_eps
        adv, returns = gae(np.array(rewards), np.array(values),
                           np.array(dones), 0.0, cfg.gamma, cfg.gae_lambda)
        p_loss, v_loss = agent.update(np.array(states), np.array(actions),
                                      np.array(logps), adv, returns)
        log.critic_losses.append(v_loss)
        log.actor_objectives.append(-p_loss)
        if not (all_finite(agent.mean_net) and all_finite(agent.value_net)
                and np.all(np.isfinite(agent.log_std))):
            raise DivergenceError(f"non-finite parameters after episode {episodes_done}")
    return log, agent
