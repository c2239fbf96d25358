"""Reference baselines: fuzzy membership functions and a small sigmoid MLP.

The membership functions are the classic triangular and trapezoidal shapes.
The network is a feed-forward 13-3-2 multilayer perceptron trained online
with the standard error-backpropagation delta rules; layer sizes are
configurable so the same machinery runs on toy problems.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

DEFAULT_SIZES = (13, 3, 2)


@dataclass(frozen=True)
class TriangularParams:
    """Triangle with lower limit a, peak m, upper limit b (a < m < b)."""

    a: float
    m: float
    b: float

    def __post_init__(self):
        if not (self.a < self.m < self.b):
            raise ValueError(f"require a < m < b, got {self.a}, {self.m}, {self.b}")


@dataclass(frozen=True)
class TrapezoidalParams:
    """Trapezoid with support [a, d] and plateau [b, c] (a <= b <= c <= d, a < d)."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if not (self.a <= self.b <= self.c <= self.d):
            raise ValueError(
                f"require a <= b <= c <= d, got {self.a}, {self.b}, {self.c}, {self.d}"
            )
        if not self.a < self.d:
            raise ValueError("require a < d")


def triangular_membership(x: float, p: TriangularParams) -> float:
    """Degree of membership under a triangular function."""
    if x <= p.a or x >= p.b:
        return 0.0
    if x <= p.m:
        return (x - p.a) / (p.m - p.a)
    return (p.b - x) / (p.b - p.m)


def trapezoidal_membership(x: float, p: TrapezoidalParams) -> float:
    """Degree of membership under a trapezoidal function.

    Degenerate edges (b == a or d == c) produce steps: the plateau branch
    wins at the shared breakpoint.
    """
    if x < p.a or x > p.d:
        return 0.0
    if p.b <= x <= p.c:
        return 1.0
    if x < p.b:
        return (x - p.a) / (p.b - p.a)
    return (p.d - x) / (p.d - p.c)


def sigmoid(y: float) -> float:
    """Logistic function 1 / (1 + e^-y), stable for large |y|."""
    if y >= 0:
        return 1.0 / (1.0 + math.exp(-y))
    z = math.exp(y)
    return z / (1.0 + z)


@dataclass
class MlpModel:
    """Fully connected sigmoid network with one hidden layer.

    Weight matrices include a bias column: each layer sees its input vector
    with a constant 1 appended. ``sizes`` is immutable after construction;
    training mutates the weight arrays in place.
    """

    sizes: tuple[int, int, int]
    w_hidden: np.ndarray
    w_out: np.ndarray
    eta: float
    seed: int

    def __post_init__(self):
        n_in, n_hidden, n_out = self.sizes
        if self.w_hidden.shape != (n_hidden, n_in + 1):
            raise ValueError(f"hidden weights must be {(n_hidden, n_in + 1)}")
        if self.w_out.shape != (n_out, n_hidden + 1):
            raise ValueError(f"output weights must be {(n_out, n_hidden + 1)}")
        if not (np.isfinite(self.w_hidden).all() and np.isfinite(self.w_out).all()):
            raise ValueError("weights must be finite")
        if self.eta < 0:
            raise ValueError("learning rate must be non-negative")


def init_mlp(sizes: tuple[int, int, int] = DEFAULT_SIZES, eta: float = 0.1, seed: int = 0) -> MlpModel:
    """Create a model with small random weights, uniform in [-0.05, 0.05]."""
    n_in, n_hidden, n_out = sizes
    rng = np.random.default_rng(seed)
    w_hidden = rng.uniform(-0.05, 0.05, size=(n_hidden, n_in + 1))
    w_out = rng.uniform(-0.05, 0.05, size=(n_out, n_hidden + 1))
    return MlpModel(sizes=tuple(sizes), w_hidden=w_hidden, w_out=w_out, eta=eta, seed=seed)


def _sigmoid_array(y: np.ndarray) -> np.ndarray:
    out = np.empty_like(y)
    pos = y >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-y[pos]))
    z = np.exp(y[~pos])
    out[~pos] = z / (1.0 + z)
    return out


def forward(model: MlpModel, inputs: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
    """Layer-wise sigmoid activations: returns (hidden, outputs)."""
    x = np.asarray(inputs, dtype=np.float64)
    if x.shape != (model.sizes[0],):
        raise ValueError(f"expected {model.sizes[0]} inputs, got {x.shape}")
    hidden = _sigmoid_array(model.w_hidden @ np.append(x, 1.0))
    outputs = _sigmoid_array(model.w_out @ np.append(hidden, 1.0))
    return hidden, outputs


def output_delta(o_k: float, t_k: float) -> float:
    """Error term for an output unit: o(1 - o)(t - o)."""
    return o_k * (1.0 - o_k) * (t_k - o_k)


def hidden_delta(o_h: float, downstream: Sequence[tuple[float, float]]) -> float:
    """Error term for a hidden unit: o(1 - o) * sum of w_kh * delta_k."""
    back = 0.0
    for w_kh, delta_k in downstream:
        back += w_kh * delta_k
    return o_h * (1.0 - o_h) * back


def backprop_deltas(
    model: MlpModel, hidden: np.ndarray, outputs: np.ndarray, targets: Sequence[float]
) -> tuple[np.ndarray, np.ndarray]:
    """Delta error terms for every output and hidden unit."""
    t = np.asarray(targets, dtype=np.float64)
    out_deltas = outputs * (1.0 - outputs) * (t - outputs)
    back = model.w_out[:, :-1].T @ out_deltas
    hidden_deltas = hidden * (1.0 - hidden) * back
    return out_deltas, hidden_deltas


def update_weights(
    model: MlpModel,
    out_deltas: np.ndarray,
    hidden_deltas: np.ndarray,
    inputs: Sequence[float],
    hidden: np.ndarray,
) -> MlpModel:
    """Apply w <- w + eta * delta * input to every weight, in place."""
    x = np.append(np.asarray(inputs, dtype=np.float64), 1.0)
    h = np.append(hidden, 1.0)
    model.w_out += model.eta * np.outer(out_deltas, h)
    model.w_hidden += model.eta * np.outer(hidden_deltas, x)
    return model


def one_hot_target(label: int) -> tuple[float, float]:
    """Class 0 (absence) -> (1, 0); class 1 (presence) -> (0, 1)."""
    if label not in (0, 1):
        raise ValueError(f"label must be 0 or 1, got {label!r}")
    return (1.0, 0.0) if label == 0 else (0.0, 1.0)


def train_mlp(
    vectors: Sequence[Sequence[float]],
    labels: Sequence[int],
    epochs: int,
    eta: float = 0.1,
    seed: int = 0,
    sizes: tuple[int, int, int] = DEFAULT_SIZES,
) -> tuple[MlpModel, list[float]]:
    """Train online in example order; returns the model and per-epoch MSE.

    One weight update per example per epoch. The logged error is the mean of
    0.5 * sum((t - o)^2) over the epoch's examples, each measured before its
    update. Deterministic given the seed; eta = 0 leaves the initial weights
    untouched.
    """
    if epochs < 1:
        raise ValueError("epochs must be >= 1")
    if not vectors:
        raise ValueError("cannot train on an empty set")
    if len(vectors) != len(labels):
        raise ValueError("vectors and labels must be aligned")

    model = init_mlp(sizes=sizes, eta=eta, seed=seed)
    targets = [one_hot_target(label) for label in labels]
    mse_log: list[float] = []
    for _ in range(epochs):
        total_error = 0.0
        for x, t in zip(vectors, targets):
            hidden, outputs = forward(model, x)
            diff = np.asarray(t) - outputs
            total_error += 0.5 * float(np.dot(diff, diff))
            out_deltas, hidden_deltas = backprop_deltas(model, hidden, outputs, t)
            update_weights(model, out_deltas, hidden_deltas, x, hidden)
        mse_log.append(total_error / len(vectors))
    return model, mse_log


def predict_mlp(model: MlpModel, inputs: Sequence[float]) -> int:
    """Class of the larger output unit; ties resolve to class 0."""
    _, outputs = forward(model, inputs)
    return int(np.argmax(outputs))


def evaluate_mlp(
    model: MlpModel, vectors: Sequence[Sequence[float]], labels: Sequence[int]
) -> float:
    if not vectors:
        raise ValueError("cannot evaluate on an empty set")
    correct = sum(1 for x, lab in zip(vectors, labels) if predict_mlp(model, x) == lab)
    return correct / len(vectors)


def write_model(model: MlpModel, path) -> None:
    payload = {
        "sizes": list(model.sizes),
        "eta": model.eta,
        "seed": model.seed,
        "w_hidden": model.w_hidden.tolist(),
        "w_out": model.w_out.tolist(),
    }
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def read_model(path) -> MlpModel:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    return MlpModel(
        sizes=tuple(payload["sizes"]),
        w_hidden=np.array(payload["w_hidden"], dtype=np.float64),
        w_out=np.array(payload["w_out"], dtype=np.float64),
        eta=float(payload["eta"]),
        seed=int(payload["seed"]),
    )


def write_training_log(mse_log: Sequence[float], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as stream:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["epoch", "mse"])
        for epoch, mse in enumerate(mse_log, start=1):
            writer.writerow([epoch, repr(float(mse))])
