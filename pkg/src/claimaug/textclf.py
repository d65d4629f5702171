"""Bag-of-embeddings sentence classifier with optional adversarial training.

A sentence is the mean of its token embeddings; a softmax layer on top
predicts the class. Adversarial training perturbs the sentence embedding by
a signed-gradient step of magnitude epsilon and mixes the clean and
adversarial losses. Everything is plain numpy so gradients can be checked
exactly against finite differences.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ParseError, TrainingDiverged, ValidationError
from .util import atomic_write_text, derive_seed

FORMAT_VERSION = 1


@dataclass
class EmbeddingTable:
    vocab: dict[str, int]
    matrix: np.ndarray
    oov: np.ndarray
    trainable: bool = False

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[1]) if self.matrix.size else int(self.oov.shape[0])

    @classmethod
    def random(cls, tokens: Sequence[str], dim: int, seed: int,
               trainable: bool = False) -> "EmbeddingTable":
        vocab = {t: i for i, t in enumerate(sorted(set(tokens)))}
        rng = np.random.default_rng(seed)
        scale = 1.0 / np.sqrt(dim)
        matrix = rng.normal(0.0, scale, size=(len(vocab), dim))
        oov = rng.normal(0.0, scale, size=dim)
        return cls(vocab=vocab, matrix=matrix, oov=oov, trainable=trainable)

    @classmethod
    def from_text(cls, text: str, trainable: bool = False) -> "EmbeddingTable":
        """Parse `token v1 v2 ... vd` lines; a `<OOV>` row, if present, seeds the OOV vector."""
        vocab: dict[str, int] = {}
        rows = []
        oov = None
        dim = None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            if not raw.strip():
                continue
            parts = raw.split()
            if len(parts) < 2:
                raise ParseError("expected 'token v1 ... vd'", line=lineno)
            token = parts[0]
            try:
                vector = np.array([float(x) for x in parts[1:]])
            except ValueError:
                raise ParseError(f"non-numeric embedding value for {token!r}", line=lineno)
            if dim is None:
                dim = vector.shape[0]
            elif vector.shape[0] != dim:
                raise ParseError(f"dimension mismatch for {token!r}", line=lineno)
            if token == "<OOV>":
                oov = vector
                continue
            if token in vocab:
                raise ParseError(f"duplicate token {token!r}", line=lineno)
            vocab[token] = len(rows)
            rows.append(vector)
        if not rows:
            raise ParseError("no embedding rows")
        matrix = np.vstack(rows)
        if oov is None:
            oov = np.zeros(dim)
        if not (np.all(np.isfinite(matrix)) and np.all(np.isfinite(oov))):
            raise ParseError("embedding values must be finite")
        return cls(vocab=vocab, matrix=matrix, oov=oov, trainable=trainable)


def embed_sentence(texts: Sequence[str], table: EmbeddingTable) -> np.ndarray:
    """Mean of token embedding rows; OOV row for unknowns, zeros when empty."""
    if not texts:
        return np.zeros(table.dim)
    rows = [table.matrix[table.vocab[t]] if t in table.vocab else table.oov for t in texts]
    return np.mean(rows, axis=0)


def fgsm_perturb(embedding: np.ndarray, loss_gradient: np.ndarray,
                 epsilon: float) -> np.ndarray:
    """x + epsilon * sign(grad); coordinates with zero gradient stay put."""
    if epsilon < 0:
        raise ValidationError("epsilon must be >= 0")
    return embedding + epsilon * np.sign(loss_gradient)


@dataclass(frozen=True)
class AdvConfig:
    epsilon: float = 0.0
    adv_weight: float = 0.0

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValidationError("epsilon must be >= 0")
        if not 0.0 <= self.adv_weight <= 1.0:
            raise ValidationError("adv_weight must be in [0, 1]")

    @property
    def active(self) -> bool:
        return self.epsilon > 0 and self.adv_weight > 0


@dataclass(frozen=True)
class ClfTrainConfig:
    epochs: int = 15
    learning_rate: float = 0.5
    dim: int = 32
    seed: int = 0

    def __post_init__(self):
        if self.epochs < 1 or self.learning_rate <= 0 or self.dim < 1:
            raise ValidationError("hyperparameters must be positive")


def softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - np.max(logits)
    exp = np.exp(shifted)
    return exp / exp.sum()


@dataclass
class SoftmaxClassifier:
    """Linear softmax over sentence embeddings; class order follows the schema."""

    classes: tuple[str, ...]
    weights: np.ndarray  # (C, d)
    bias: np.ndarray     # (C,)
    table: EmbeddingTable

    def predict_proba(self, texts: Sequence[str]) -> np.ndarray:
        x = embed_sentence(texts, self.table)
        return softmax(self.weights @ x + self.bias)

    def predict(self, texts: Sequence[str]) -> str:
        return self.classes[int(np.argmax(self.predict_proba(texts)))]

    def to_dict(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "classes": list(self.classes),
            "weights": self.weights.tolist(),
            "bias": self.bias.tolist(),
            "vocab": self.table.vocab,
            "matrix": self.table.matrix.tolist(),
            "oov": self.table.oov.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SoftmaxClassifier":
        if data.get("format_version") != FORMAT_VERSION:
            raise ValidationError(f"unsupported model format {data.get('format_version')!r}")
        table = EmbeddingTable(vocab=dict(data["vocab"]),
                               matrix=np.asarray(data["matrix"], dtype=np.float64),
                               oov=np.asarray(data["oov"], dtype=np.float64))
        return cls(classes=tuple(data["classes"]),
                   weights=np.asarray(data["weights"], dtype=np.float64),
                   bias=np.asarray(data["bias"], dtype=np.float64),
                   table=table)

    def save(self, path: str) -> None:
        atomic_write_text(path, json.dumps(self.to_dict()))

    @classmethod
    def load(cls, path: str) -> "SoftmaxClassifier":
        with open(path, encoding="utf-8") as f:
            return cls.from_dict(json.load(f))


def _loss_and_grads(weights: np.ndarray, bias: np.ndarray, x: np.ndarray,
                    y: int) -> tuple[float, np.ndarray, np.ndarray, np.ndarray]:
    """Cross-entropy loss plus gradients w.r.t. weights, bias, and the input."""
    p = softmax(weights @ x + bias)
    loss = -float(np.log(max(p[y], 1e-300)))
    dlogits = p.copy()
    dlogits[y] -= 1.0
    return loss, np.outer(dlogits, x), dlogits, weights.T @ dlogits


def example_loss(weights: np.ndarray, bias: np.ndarray, x: np.ndarray, y: int,
                 adv: AdvConfig | None = None) -> float:
    """The per-example training objective, including the adversarial mixture."""
    clean, _, _, dx = _loss_and_grads(weights, bias, x, y)
    if adv is None or not adv.active:
        return clean
    x_adv = fgsm_perturb(x, dx, adv.epsilon)
    adv_loss, _, _, _ = _loss_and_grads(weights, bias, x_adv, y)
    return (1.0 - adv.adv_weight) * clean + adv.adv_weight * adv_loss


def example_gradients(weights: np.ndarray, bias: np.ndarray, x: np.ndarray, y: int,
                      adv: AdvConfig | None = None,
                      ) -> tuple[float, np.ndarray, np.ndarray, np.ndarray]:
    """Loss and parameter/input gradients for one example.

    With adversarial training active the perturbation direction is treated as
    constant (standard signed-gradient practice), so the mixture gradient is
    the weighted sum of the clean and adversarial-point gradients.
    """
    clean, dW, db, dx = _loss_and_grads(weights, bias, x, y)
    if adv is None or not adv.active:
        return clean, dW, db, dx
    x_adv = fgsm_perturb(x, dx, adv.epsilon)
    adv_loss, dW_a, db_a, dx_a = _loss_and_grads(weights, bias, x_adv, y)
    w = adv.adv_weight
    loss = (1.0 - w) * clean + w * adv_loss
    return (loss, (1.0 - w) * dW + w * dW_a, (1.0 - w) * db + w * db_a,
            (1.0 - w) * dx + w * dx_a)


def train_classifier(token_seqs: Sequence[Sequence[str]], labels: Sequence[str],
                     classes: Sequence[str], config: ClfTrainConfig,
                     adv: AdvConfig | None = None,
                     table: EmbeddingTable | None = None) -> SoftmaxClassifier:
    """Cross-entropy SGD over sentences; seeded and fully deterministic.

    The embedding table defaults to a seeded Gaussian over the training
    vocabulary and stays frozen unless marked trainable.
    """
    if len(token_seqs) != len(labels):
        raise ValidationError("token_seqs and labels differ in length")
    present = set(labels)
    if len(present) < 2:
        raise ValidationError("training needs at least 2 distinct classes present")
    if not present.issubset(classes):
        raise ValidationError(f"labels {sorted(present - set(classes))} not in class list")

    if table is None:
        all_tokens = [t for seq in token_seqs for t in seq]
        table = EmbeddingTable.random(all_tokens, config.dim,
                                      seed=derive_seed(config.seed, "embeddings"))
    classes = tuple(classes)
    class_ids = {c: i for i, c in enumerate(classes)}
    d = table.dim
    weights = np.zeros((len(classes), d))
    bias = np.zeros(len(classes))

    xs = [embed_sentence(seq, table) for seq in token_seqs]
    ys = [class_ids[l] for l in labels]
    rng = random.Random(derive_seed(config.seed, "shuffle"))
    order = list(range(len(xs)))
    for epoch in range(config.epochs):
        rng.shuffle(order)
        for idx in order:
            x = xs[idx] if not table.trainable else embed_sentence(token_seqs[idx], table)
            loss, dW, db, dx = example_gradients(weights, bias, x, ys[idx], adv)
            if not np.isfinite(loss):
                raise TrainingDiverged(f"loss became non-finite at epoch {epoch}")
            weights -= config.learning_rate * dW
            bias -= config.learning_rate * db
            if table.trainable:
                seq = token_seqs[idx]
                if seq:
                    step = config.learning_rate * dx / len(seq)
                    for t in seq:
                        if t in table.vocab:
                            table.matrix[table.vocab[t]] -= step
                        else:
                            table.oov -= step
    return SoftmaxClassifier(classes=classes, weights=weights, bias=bias, table=table)
