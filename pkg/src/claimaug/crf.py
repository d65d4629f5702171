"""Linear-chain CRF with hand-rolled features, exact inference, and SGD training.

Features per position: the word itself, suffixes of length 1..3, an
uppercase-initial flag, an all-uppercase flag, a digit flag, and a bigram
conjunction of each with the previous token's value (a boundary symbol at
position 0). Feature strings map to indices through an explicit dictionary,
so scores are exactly reproducible. All dynamic programming is in log space.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import TrainingDiverged, ValidationError
from .util import atomic_write_text

BOS = "<BOS>"

FORMAT_VERSION = 1


def _raw_values(token: str) -> dict[str, str]:
    return {
        "w": token,
        "suf1": token[-1:],
        "suf2": token[-2:],
        "suf3": token[-3:],
        "capInit": "1" if token[0].isupper() else "0",
        "allCap": "1" if token.isupper() else "0",
        "digit": "1" if token.isdigit() else "0",
    }


def extract_features(texts: Sequence[str]) -> list[list[str]]:
    """Feature strings for each position: unigrams plus previous-token bigrams."""
    values = [_raw_values(t) for t in texts]
    boundary = {name: BOS for name in values[0]} if values else {}
    out = []
    for i, current in enumerate(values):
        previous = values[i - 1] if i > 0 else boundary
        feats = [f"{name}={value}" for name, value in current.items()]
        feats += [f"b{name}={previous[name]}|{value}" for name, value in current.items()]
        out.append(feats)
    return out


@dataclass
class CrfModel:
    """Label set, feature dictionary, and one dense weight vector.

    Weights are laid out as F*L emission weights (feature-major) followed by
    L*L transition weights.
    """

    labels: tuple[str, ...]
    feature_index: dict[str, int]
    weights: np.ndarray
    l2: float = 0.0

    @classmethod
    def build(cls, labels: Sequence[str], token_seqs: Sequence[Sequence[str]],
              l2: float = 0.0) -> "CrfModel":
        index: dict[str, int] = {}
        for texts in token_seqs:
            for feats in extract_features(texts):
                for feat in feats:
                    if feat not in index:
                        index[feat] = len(index)
        n = len(index) * len(labels) + len(labels) ** 2
        return cls(labels=tuple(labels), feature_index=index,
                   weights=np.zeros(n, dtype=np.float64), l2=l2)

    @property
    def n_labels(self) -> int:
        return len(self.labels)

    @property
    def transitions(self) -> np.ndarray:
        L = self.n_labels
        return self.weights[len(self.feature_index) * L:].reshape(L, L)

    def feature_ids(self, feats_per_pos: list[list[str]]) -> list[list[int]]:
        index = self.feature_index
        return [[index[f] for f in feats if f in index] for feats in feats_per_pos]

    def emissions(self, fids_per_pos: list[list[int]]) -> np.ndarray:
        L = self.n_labels
        emission_block = self.weights[:len(self.feature_index) * L].reshape(-1, L)
        out = np.zeros((len(fids_per_pos), L))
        for i, fids in enumerate(fids_per_pos):
            if fids:
                out[i] = emission_block[fids].sum(axis=0)
        return out

    def label_ids(self, labels: Sequence[str]) -> list[int]:
        table = {label: i for i, label in enumerate(self.labels)}
        try:
            return [table[l] for l in labels]
        except KeyError as exc:
            raise ValidationError(f"label {exc.args[0]!r} not in model label set")

    def predict(self, texts: Sequence[str]) -> list[str]:
        return viterbi(self, texts)

    def to_dict(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "labels": list(self.labels),
            "l2": self.l2,
            "feature_index": self.feature_index,
            "weights": self.weights.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CrfModel":
        if data.get("format_version") != FORMAT_VERSION:
            raise ValidationError(f"unsupported model format {data.get('format_version')!r}")
        model = cls(labels=tuple(data["labels"]), feature_index=dict(data["feature_index"]),
                    weights=np.asarray(data["weights"], dtype=np.float64), l2=float(data["l2"]))
        expected = len(model.feature_index) * model.n_labels + model.n_labels ** 2
        if model.weights.shape != (expected,):
            raise ValidationError(f"weight vector has {model.weights.size} entries, "
                                  f"index implies {expected}")
        return model

    def save(self, path: str) -> None:
        atomic_write_text(path, json.dumps(self.to_dict()))

    @classmethod
    def load(cls, path: str) -> "CrfModel":
        with open(path, encoding="utf-8") as f:
            return cls.from_dict(json.load(f))


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 10
    learning_rate: float = 0.1
    decay: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.epochs < 1 or self.learning_rate <= 0 or self.decay < 0:
            raise ValidationError("hyperparameters must be positive (decay >= 0)")


def _logsumexp(a: np.ndarray, axis: int | None = None) -> np.ndarray:
    m = np.max(a, axis=axis, keepdims=True)
    out = m + np.log(np.sum(np.exp(a - m), axis=axis, keepdims=True))
    return np.squeeze(out, axis=axis) if axis is not None else out.reshape(())


def _prepare(model: CrfModel, texts: Sequence[str]) -> np.ndarray:
    return model.emissions(model.feature_ids(extract_features(texts)))


def _forward(emissions: np.ndarray, transitions: np.ndarray) -> np.ndarray:
    alpha = np.empty_like(emissions)
    alpha[0] = emissions[0]
    for i in range(1, len(emissions)):
        alpha[i] = _logsumexp(alpha[i - 1][:, None] + transitions, axis=0) + emissions[i]
    return alpha


def _backward(emissions: np.ndarray, transitions: np.ndarray) -> np.ndarray:
    beta = np.zeros_like(emissions)
    for i in range(len(emissions) - 2, -1, -1):
        beta[i] = _logsumexp(transitions + (emissions[i + 1] + beta[i + 1])[None, :], axis=1)
    return beta


def log_partition(model: CrfModel, texts: Sequence[str]) -> float:
    """log Z by the forward recursion, stable in log space."""
    emissions = _prepare(model, texts)
    alpha = _forward(emissions, model.transitions)
    return float(_logsumexp(alpha[-1]))


def sequence_score(model: CrfModel, texts: Sequence[str], labels: Sequence[str]) -> float:
    emissions = _prepare(model, texts)
    y = model.label_ids(labels)
    score = float(sum(emissions[i, yi] for i, yi in enumerate(y)))
    transitions = model.transitions
    score += float(sum(transitions[a, b] for a, b in zip(y, y[1:])))
    return score


def posterior_marginals(model: CrfModel, texts: Sequence[str]) -> np.ndarray:
    """Per-position label marginals; each row sums to 1."""
    emissions = _prepare(model, texts)
    transitions = model.transitions
    alpha = _forward(emissions, transitions)
    beta = _backward(emissions, transitions)
    log_z = _logsumexp(alpha[-1])
    return np.exp(alpha + beta - log_z)


def nll_and_gradient(model: CrfModel, texts: Sequence[str],
                     gold_labels: Sequence[str]) -> tuple[float, np.ndarray]:
    """Negative log-likelihood with an L2 term, and its exact gradient.

    Gradient = model expectations (forward-backward marginals) minus
    empirical counts, plus l2 * weights.
    """
    if len(texts) != len(gold_labels):
        raise ValidationError("texts and gold labels differ in length")
    fids = model.feature_ids(extract_features(texts))
    emissions = model.emissions(fids)
    transitions = model.transitions
    y = model.label_ids(gold_labels)
    L = model.n_labels
    F = len(model.feature_index)

    alpha = _forward(emissions, transitions)
    beta = _backward(emissions, transitions)
    log_z = float(_logsumexp(alpha[-1]))
    unary = np.exp(alpha + beta - log_z)

    gold = float(sum(emissions[i, yi] for i, yi in enumerate(y)))
    gold += float(sum(transitions[a, b] for a, b in zip(y, y[1:])))
    nll = log_z - gold + 0.5 * model.l2 * float(np.dot(model.weights, model.weights))

    grad = model.l2 * model.weights
    emission_grad = grad[:F * L].reshape(F, L)
    for i, fid_list in enumerate(fids):
        if not fid_list:
            continue
        row = unary[i].copy()
        row[y[i]] -= 1.0
        emission_grad[fid_list] += row
    transition_grad = grad[F * L:].reshape(L, L)
    for i in range(1, len(emissions)):
        pairwise = np.exp(alpha[i - 1][:, None] + transitions
                          + (emissions[i] + beta[i])[None, :] - log_z)
        transition_grad += pairwise
        transition_grad[y[i - 1], y[i]] -= 1.0
    return nll, grad


def viterbi(model: CrfModel, texts: Sequence[str]) -> list[str]:
    """Highest-scoring label sequence; ties resolve to the earlier label index."""
    emissions = _prepare(model, texts)
    transitions = model.transitions
    n, L = emissions.shape
    delta = emissions[0]
    back = np.zeros((n, L), dtype=np.intp)
    for i in range(1, n):
        scores = delta[:, None] + transitions
        back[i] = np.argmax(scores, axis=0)
        delta = scores[back[i], np.arange(L)] + emissions[i]
    best = int(np.argmax(delta))
    path = [best]
    for i in range(n - 1, 0, -1):
        best = int(back[i, best])
        path.append(best)
    path.reverse()
    return [model.labels[i] for i in path]


def dataset_nll(model: CrfModel, data: Sequence[tuple[Sequence[str], Sequence[str]]]) -> float:
    total = 0.0
    for texts, labels in data:
        emissions = _prepare(model, texts)
        y = model.label_ids(labels)
        gold = float(sum(emissions[i, yi] for i, yi in enumerate(y)))
        gold += float(sum(model.transitions[a, b] for a, b in zip(y, y[1:])))
        total += float(_logsumexp(_forward(emissions, model.transitions)[-1])) - gold
    return total + 0.5 * model.l2 * float(np.dot(model.weights, model.weights))


def train(model: CrfModel, data: Sequence[tuple[Sequence[str], Sequence[str]]],
          config: TrainConfig) -> list[float]:
    """Per-sequence SGD with a 1/(1 + decay*t) learning-rate schedule.

    Mutates the model in place (single-threaded) and returns the full-dataset
    NLL before training and after each epoch.
    """
    if not data:
        raise ValidationError("empty training set")
    rng = random.Random(config.seed)
    order = list(range(len(data)))
    history = [dataset_nll(model, data)]
    step = 0
    for epoch in range(config.epochs):
        rng.shuffle(order)
        for idx in order:
            texts, labels = data[idx]
            nll, grad = nll_and_gradient(model, texts, labels)
            if not np.isfinite(nll):
                raise TrainingDiverged(
                    f"NLL became non-finite at epoch {epoch}, step {step} "
                    f"(lr={config.learning_rate}, decay={config.decay})")
            lr = config.learning_rate / (1.0 + config.decay * step)
            model.weights -= lr * grad
            step += 1
        epoch_nll = dataset_nll(model, data)
        if not np.isfinite(epoch_nll):
            raise TrainingDiverged(f"NLL became non-finite after epoch {epoch}")
        history.append(epoch_nll)
    return history
