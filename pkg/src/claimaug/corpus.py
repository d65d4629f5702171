"""Token-labeled corpus model, file formats, and dataset statistics.

File formats:
  * token-label file: UTF-8, one `token<TAB>label` per line, blank line
    between documents (CoNLL style).
  * span file: one `doc_id<TAB>token_start<TAB>token_end<TAB>category`
    record per line; token indices, end exclusive.
  * schema config: `key = value` lines declaring `outside`, `categories`
    (comma separated) and optional `freq.<label>` token counts.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

from .errors import ParseError, SchemaError, ValidationError
from .util import parse_kv_config


@dataclass(frozen=True)
class Token:
    text: str
    char_start: int
    char_end: int

    def __post_init__(self):
        if not self.text or any(c.isspace() for c in self.text):
            raise ValidationError(f"token text must be non-empty without whitespace: {self.text!r}")
        if not self.char_start < self.char_end:
            raise ValidationError(
                f"token offsets must satisfy start < end: [{self.char_start}, {self.char_end})"
            )


def tokens_from_texts(texts: Sequence[str]) -> tuple[Token, ...]:
    """Build tokens with offsets synthesized by joining texts with single spaces."""
    tokens = []
    pos = 0
    for text in texts:
        tokens.append(Token(text, pos, pos + len(text)))
        pos += len(text) + 1
    return tuple(tokens)


@dataclass(frozen=True)
class LabelSchema:
    """Label inventory: the outside label plus ordered category names.

    `train_freq` holds per-label token counts from training data, used to
    break majority-vote ties in favor of the rarest class. Labels without a
    recorded frequency are treated as infinitely frequent so a recorded
    minority always wins the tie.
    """

    outside_label: str
    categories: tuple[str, ...]
    train_freq: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "categories", tuple(self.categories))
        if not self.categories:
            raise SchemaError("schema needs at least one category")
        if len(set(self.categories)) != len(self.categories):
            raise SchemaError(f"duplicate categories: {self.categories}")
        if self.outside_label in self.categories:
            raise SchemaError(f"outside label {self.outside_label!r} also listed as category")
        for label, freq in self.train_freq.items():
            if label not in self.labels:
                raise SchemaError(f"frequency for unknown label {label!r}")
            if freq < 0:
                raise SchemaError(f"negative frequency for {label!r}")

    @property
    def labels(self) -> tuple[str, ...]:
        return (self.outside_label,) + self.categories

    def is_valid(self, label: str) -> bool:
        return label == self.outside_label or label in self.categories

    def check(self, label: str) -> None:
        if not self.is_valid(label):
            raise SchemaError(f"unknown label {label!r} (schema: {', '.join(self.labels)})")

    def freq(self, label: str) -> float:
        return self.train_freq.get(label, math.inf)

    def tie_order(self, label: str) -> int:
        # Categories in declared order, outside label last.
        if label == self.outside_label:
            return len(self.categories)
        return self.categories.index(label)

    def with_train_freq(self, train_freq: Mapping[str, int]) -> "LabelSchema":
        return replace(self, train_freq=dict(train_freq))


@dataclass(frozen=True)
class Document:
    id: str
    text: str
    tokens: tuple[Token, ...]
    token_labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "token_labels", tuple(self.token_labels))
        if len(self.tokens) != len(self.token_labels):
            raise ValidationError(
                f"document {self.id}: {len(self.tokens)} tokens vs {len(self.token_labels)} labels"
            )

    def validate_against(self, schema: LabelSchema) -> None:
        for label in self.token_labels:
            schema.check(label)


@dataclass(frozen=True)
class Span:
    doc_id: str
    token_start: int
    token_end: int
    category: str

    def __post_init__(self):
        if not self.token_start < self.token_end:
            raise ValidationError(
                f"span must satisfy start < end: [{self.token_start}, {self.token_end})"
            )


@dataclass(frozen=True)
class Dataset:
    schema: LabelSchema
    documents: tuple[Document, ...]

    def __post_init__(self):
        object.__setattr__(self, "documents", tuple(self.documents))
        for doc in self.documents:
            doc.validate_against(self.schema)


@dataclass(frozen=True)
class CorpusStats:
    n_texts: int
    n_unique_words: int
    max_length: int
    label_dist: Mapping[str, int]


def parse_schema_config(text: str) -> LabelSchema:
    """Parse the schema sidecar config into a LabelSchema."""
    entries = parse_kv_config(text)
    if "outside" not in entries:
        raise ParseError("schema config missing 'outside'")
    if "categories" not in entries:
        raise ParseError("schema config missing 'categories'")
    outside = entries.pop("outside")
    categories = tuple(c.strip() for c in entries.pop("categories").split(",") if c.strip())
    freq: dict[str, int] = {}
    for key, value in entries.items():
        if not key.startswith("freq."):
            raise ParseError(f"unknown schema config key {key!r}")
        try:
            freq[key[len("freq."):]] = int(value)
        except ValueError:
            raise ParseError(f"frequency {key!r} must be an integer, got {value!r}")
    return LabelSchema(outside_label=outside, categories=categories, train_freq=freq)


def format_schema_config(schema: LabelSchema) -> str:
    lines = [
        f"outside = {schema.outside_label}",
        f"categories = {', '.join(schema.categories)}",
    ]
    for label in schema.labels:
        if label in schema.train_freq:
            lines.append(f"freq.{label} = {schema.train_freq[label]}")
    return "\n".join(lines) + "\n"


def parse_token_label_file(data: bytes, schema: LabelSchema) -> Dataset:
    """Parse a token-label file into a Dataset, one Document per block.

    Token offsets are synthesized by joining tokens with single spaces; span
    arithmetic elsewhere is over token indices, so only the token sequence
    matters.
    """
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"not valid UTF-8: {exc}")
    documents: list[Document] = []
    block: list[tuple[str, str]] = []

    def flush():
        if not block:
            return
        texts = [t for t, _ in block]
        labels = tuple(l for _, l in block)
        tokens = tokens_from_texts(texts)
        documents.append(Document(id=f"d{len(documents)}", text=" ".join(texts),
                                  tokens=tokens, token_labels=labels))
        block.clear()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            flush()
            continue
        fields = raw.split("\t")
        if len(fields) != 2:
            raise ParseError(f"expected 'token<TAB>label', got {len(fields)} fields", line=lineno)
        token_text, label = fields
        if not token_text or any(c.isspace() for c in token_text):
            raise ParseError(f"bad token text {token_text!r}", line=lineno)
        if not schema.is_valid(label):
            raise SchemaError(f"line {lineno}: unknown label {label!r}")
        block.append((token_text, label))
    flush()
    return Dataset(schema=schema, documents=tuple(documents))


def serialize_token_label_file(dataset: Dataset) -> bytes:
    blocks = []
    for doc in dataset.documents:
        blocks.append("\n".join(f"{tok.text}\t{label}"
                                for tok, label in zip(doc.tokens, doc.token_labels)))
    body = "\n\n".join(blocks)
    return (body + "\n").encode("utf-8") if body else b""


def parse_span_file(data: bytes, schema: LabelSchema) -> list[Span]:
    spans = []
    for lineno, raw in enumerate(data.decode("utf-8").splitlines(), start=1):
        if not raw.strip():
            continue
        fields = raw.split("\t")
        if len(fields) != 4:
            raise ParseError("expected 'doc_id<TAB>start<TAB>end<TAB>category'", line=lineno)
        doc_id, start, end, category = fields
        try:
            span = Span(doc_id, int(start), int(end), category)
        except ValueError:
            raise ParseError(f"non-integer token index in {raw!r}", line=lineno)
        if category not in schema.categories:
            raise SchemaError(f"line {lineno}: unknown category {category!r}")
        spans.append(span)
    return spans


def serialize_span_file(spans: Iterable[Span]) -> bytes:
    lines = [f"{s.doc_id}\t{s.token_start}\t{s.token_end}\t{s.category}" for s in spans]
    return ("\n".join(lines) + "\n").encode("utf-8") if lines else b""


def spans_to_labels(n_tokens: int, spans: Sequence[Span], schema: LabelSchema) -> tuple[str, ...]:
    """Project category spans onto per-token labels; uncovered tokens get the outside label."""
    ordered = sorted(spans, key=lambda s: s.token_start)
    for prev, cur in zip(ordered, ordered[1:]):
        if cur.token_start < prev.token_end:
            raise ValidationError(
                f"overlapping spans: [{prev.token_start},{prev.token_end}) {prev.category} "
                f"and [{cur.token_start},{cur.token_end}) {cur.category}"
            )
    labels = [schema.outside_label] * n_tokens
    for span in ordered:
        if span.token_end > n_tokens:
            raise ValidationError(f"span [{span.token_start},{span.token_end}) exceeds {n_tokens} tokens")
        if span.category not in schema.categories:
            raise SchemaError(f"unknown category {span.category!r}")
        for i in range(span.token_start, span.token_end):
            labels[i] = span.category
    return tuple(labels)


def labels_to_spans(token_labels: Sequence[str], schema: LabelSchema,
                    doc_id: str = "") -> list[Span]:
    """Inverse of spans_to_labels: maximal runs of one non-outside label become spans."""
    spans = []
    start = None
    current = None
    for i, label in enumerate(token_labels):
        schema.check(label)
        if label != current:
            if current is not None and current != schema.outside_label:
                spans.append(Span(doc_id, start, i, current))
            current = label
            start = i
    if current is not None and current != schema.outside_label:
        spans.append(Span(doc_id, start, len(token_labels), current))
    return spans


def dataset_stats(dataset: Dataset) -> CorpusStats:
    """Texts / unique words / max length / per-label token counts.

    Unique words are distinct raw token strings, case-sensitive.
    """
    words = set()
    dist = Counter({label: 0 for label in dataset.schema.labels})
    max_length = 0
    for doc in dataset.documents:
        max_length = max(max_length, len(doc.tokens))
        for tok, label in zip(doc.tokens, doc.token_labels):
            words.add(tok.text)
            dist[label] += 1
    return CorpusStats(
        n_texts=len(dataset.documents),
        n_unique_words=len(words),
        max_length=max_length,
        label_dist=dict(dist),
    )
