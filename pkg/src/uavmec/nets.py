"""Small fully connected networks with analytic backprop, on plain numpy.

Hidden layers are rectified-linear; the output layer is either identity
(critics) or tanh (actors). ``backward`` returns both parameter gradients and
the gradient with respect to the input, which lets the actor update chain
through a critic's action input.
"""

from __future__ import annotations

import numpy as np


class Mlp:
    def __init__(self, sizes: list[int], out_activation: str = "identity",
                 rng: np.random.Generator | None = None):
        if len(sizes) < 2:
            raise ValueError("need at least input and output sizes")
        if out_activation not in ("identity", "tanh"):
            raise ValueError("out_activation must be 'identity' or 'tanh'")
        rng = rng or np.random.default_rng()
        self.sizes = list(sizes)
        self.out_activation = out_activation
        self.weights = []
        self.biases = []
        for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
            scale = np.sqrt(2.0 / fan_in)
            self.weights.append(rng.normal(0.0, scale, size=(fan_in, fan_out)))
            self.biases.append(np.zeros(fan_out))

    def parameters(self) -> list[np.ndarray]:
        out = []
        for w, b in zip(self.weights, self.biases):
            out.append(w)
            out.append(b)
        return out

    def forward(self, x: np.ndarray) -> np.ndarray:
        y, _ = self.forward_cache(x)
        return y

    def forward_cache(self, x: np.ndarray):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        if x.shape[1] != self.sizes[0]:
            raise ValueError(f"input width {x.shape[1]} != {self.sizes[0]}")
        activations = [x]
        h = x
        n = len(self.weights)
        for li, (w, b) in enumerate(zip(self.weights, self.biases)):
            z = h @ w + b
            if li < n - 1:
                h = np.maximum(z, 0.0)
            elif self.out_activation == "tanh":
                h = np.tanh(z)
            else:
                h = z
            activations.append(h)
        return h, activations

    def backward(self, activations, grad_out: np.ndarray):
        """Gradients of sum(grad_out * output) w.r.t. params and input."""
        grad_out = np.atleast_2d(np.asarray(grad_out, dtype=float))
        n = len(self.weights)
        if self.out_activation == "tanh":
            delta = grad_out * (1.0 - activations[-1] ** 2)
        else:
            delta = grad_out
        w_grads = [None] * n
        b_grads = [None] * n
        for li in range(n - 1, -1, -1):
            h_in = activations[li]
            w_grads[li] = h_in.T @ delta
            b_grads[li] = delta.sum(axis=0)
            delta = delta @ self.weights[li].T
            if li > 0:
                delta = delta * (activations[li] > 0.0)
        param_grads = []
        for wg, bg in zip(w_grads, b_grads):
            param_grads.append(wg)
            param_grads.append(bg)
        return param_grads, delta

    # Flat views used by finite-difference checks and checkpointing.
    def get_flat(self) -> np.ndarray:
        return np.concatenate([p.ravel() for p in self.parameters()])

    def set_flat(self, flat: np.ndarray) -> None:
        i = 0
        for p in self.parameters():
            p[...] = flat[i:i + p.size].reshape(p.shape)
            i += p.size
        if i != flat.size:
            raise ValueError("flat vector size mismatch")

    def copy(self) -> "Mlp":
        other = Mlp(self.sizes, self.out_activation, np.random.default_rng(0))
        other.set_flat(self.get_flat())
        return other


class Adam:
    def __init__(self, params: list[np.ndarray], lr: float,
                 beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        self.lr = lr
        self.beta1, self.beta2, self.eps = beta1, beta2, eps
        self.m = [np.zeros_like(p) for p in params]
        self.v = [np.zeros_like(p) for p in params]
        self.t = 0

    def step(self, params: list[np.ndarray], grads: list[np.ndarray]) -> None:
        self.t += 1
        b1t = 1.0 - self.beta1 ** self.t
        b2t = 1.0 - self.beta2 ** self.t
        for p, g, m, v in zip(params, grads, self.m, self.v):
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * g * g
            p -= self.lr * (m / b1t) / (np.sqrt(v / b2t) + self.eps)


class Sgd:
    def __init__(self, params: list[np.ndarray], lr: float):
        self.lr = lr

    def step(self, params: list[np.ndarray], grads: list[np.ndarray]) -> None:
        for p, g in zip(params, grads):
            p -= self.lr * g


def make_optimizer(kind: str, params: list[np.ndarray], lr: float):
    if kind == "adam":
        return Adam(params, lr)
    if kind == "sgd":
        return Sgd(params, lr)
    raise ValueError(f"unknown optimizer '{kind}'")


def soft_update(target: Mlp, online: Mlp, tau: float) -> None:
    """theta' <- tau*theta + (1-tau)*theta', elementwise."""
    for tp, op in zip(target.parameters(), online.parameters()):
        tp *= (1.0 - tau)
        tp += tau * op


def all_finite(net: Mlp) -> bool:
    return all(np.all(np.isfinite(p)) for p in net.parameters())
