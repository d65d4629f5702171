"""Augmentation operators and the minority-class scheduler.

Five operators produce label-preserving variants of a labeled sentence:
punctuation insertion, verb replacement (random or antonym), entity
replacement, and LLM contradiction. Each consumes an explicit RNG so a
produced sample is a pure function of (source sentence, seed); the scheduler
derives all seeds from one master seed, which makes whole corpora
bit-reproducible regardless of worker count.
"""

from __future__ import annotations

import random
import re
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Sequence

from . import morph
from .corpus import tokens_from_texts
from .errors import (
    AugmentationError,
    AugmentationFailed,
    ConfigurationError,
    LlmTransportError,
    ValidationError,
)
from .llmclient import PROMPT_TEMPLATES, LlmClient
from .senttok import LabeledSentence
from .util import derive_seed

PUNCTUATION_MARKS = (".", ";", "?", ":", "!", ",")


class Method(Enum):
    AEDA = "aeda"
    VR_RANDOM = "vr-random"
    VR_ANTONYM = "vr-antonym"
    ER = "er"
    LLM = "llm"
    BAT = "bat"


@dataclass(frozen=True)
class AugmentedSample:
    """One augmentation result; the sentence keeps its source's label."""

    sentence: LabeledSentence
    method: Method
    source_id: tuple[str, int]
    seed: int
    detail: dict = field(default_factory=dict)


@dataclass(frozen=True)
class AugmentConfig:
    target_class: str
    n_samples: int
    method: Method
    per_sentence: int = 1
    master_seed: int = 0

    def __post_init__(self):
        if self.n_samples < 1:
            raise ConfigurationError("n_samples must be >= 1")
        if self.per_sentence < 1:
            raise ConfigurationError("per_sentence must be >= 1")


@dataclass(frozen=True)
class EntityDictionary:
    """Entity surface forms per category; multi-token entities kept as token tuples."""

    entries: dict[str, tuple[tuple[str, ...], ...]]

    def __post_init__(self):
        for category, forms in self.entries.items():
            if not forms:
                raise ValidationError(f"entity category {category!r} has no entries")
            if len(set(forms)) != len(forms):
                raise ValidationError(f"entity category {category!r} has duplicates")

    def categories(self) -> tuple[str, ...]:
        return tuple(self.entries)


@dataclass(frozen=True)
class EntitySpan:
    token_start: int
    token_end: int
    category: str


EntityAnnotator = Callable[[Sequence[str]], list[EntitySpan]]

_NUMBER_RE = re.compile(r"^\d+([.,]\d+)?$")
_ATTACHED_PERCENT_RE = re.compile(r"^\d+(\.\d+)?%$")


def _rebuild(source: LabeledSentence, texts: Sequence[str],
             labels: Sequence[str]) -> LabeledSentence:
    return LabeledSentence(
        doc_id=source.doc_id,
        sent_index=source.sent_index,
        tokens=tokens_from_texts(texts),
        token_labels=tuple(labels),
        sentence_label=source.sentence_label,
    )


def aeda(sentence: LabeledSentence, rng: random.Random, seed: int = 0) -> AugmentedSample:
    """Insert 1..max(1, n//3) punctuation marks at distinct gaps between tokens.

    Inserted tokens carry the sentence label, so deleting the tokens at the
    recorded insertion positions restores the source exactly.
    """
    n = len(sentence.tokens)
    k = rng.randint(1, max(1, n // 3))
    gaps = sorted(rng.sample(range(n + 1), k))
    marks = [rng.choice(PUNCTUATION_MARKS) for _ in gaps]

    texts = list(sentence.texts)
    labels = list(sentence.token_labels)
    positions = []
    for offset, (gap, mark) in enumerate(zip(gaps, marks)):
        position = gap + offset
        texts.insert(position, mark)
        labels.insert(position, sentence.sentence_label)
        positions.append(position)

    return AugmentedSample(
        sentence=_rebuild(sentence, texts, labels),
        method=Method.AEDA,
        source_id=(sentence.doc_id, sentence.sent_index),
        seed=seed,
        detail={"insert_positions": positions, "marks": marks},
    )


def _conjugate_any(base: str, tense: morph.Tense, lexicon: morph.VerbLexicon) -> str:
    if base in lexicon.entries:
        return lexicon.entries[base].form(base, tense)
    return morph.regular_forms(base).form(base, tense)


def _tense_roundtrips(base: str, tense: morph.Tense, lexicon: morph.VerbLexicon) -> bool:
    detected = morph.detect_verb(_conjugate_any(base, tense, lexicon), lexicon)
    return detected is not None and detected[1] is tense


def verb_replace(sentence: LabeledSentence, lexicon: morph.VerbLexicon,
                 replacement_source: Sequence[str] | morph.AntonymLexicon,
                 mode: Method, rng: random.Random, seed: int = 0) -> AugmentedSample | None:
    """Replace one verb, conjugating the replacement to the original's tense.

    Random mode draws the new base from the training-verb pool (minus the
    original); antonym mode draws from the original base's antonym list.
    Candidates whose conjugated surface would not be detected back at the
    same tense are skipped, so tense is preserved under re-detection too.
    Returns None when the sentence has no eligible verb or no candidate
    replacement exists.
    """
    if mode not in (Method.VR_RANDOM, Method.VR_ANTONYM):
        raise ConfigurationError(f"verb_replace mode must be vr-random or vr-antonym, got {mode}")
    eligible = []
    for i, text in enumerate(sentence.texts):
        detected = morph.detect_verb(text, lexicon)
        if detected is not None:
            eligible.append((i, detected[0], detected[1]))
    if not eligible:
        return None
    index, base, tense = eligible[rng.randrange(len(eligible))]

    if mode is Method.VR_RANDOM:
        candidates = [b for b in replacement_source if b != base]
    else:
        candidates = [b for b in replacement_source.get(base) if b != base]
    candidates = [b for b in candidates if _tense_roundtrips(b, tense, lexicon)]
    if not candidates:
        return None
    new_base = candidates[rng.randrange(len(candidates))]
    surface = _conjugate_any(new_base, tense, lexicon)
    if sentence.texts[index][0].isupper():
        surface = surface[0].upper() + surface[1:]

    texts = list(sentence.texts)
    original = texts[index]
    texts[index] = surface
    return AugmentedSample(
        sentence=_rebuild(sentence, texts, sentence.token_labels),
        method=mode,
        source_id=(sentence.doc_id, sentence.sent_index),
        seed=seed,
        detail={"replaced_index": index, "original": original, "replacement": surface,
                "original_base": base, "replacement_base": new_base, "tense": tense.value},
    )


def default_entity_annotator(texts: Sequence[str]) -> list[EntitySpan]:
    """Pattern-based entity spans: PERCENT, CARDINAL, and PROPER runs.

    PERCENT is a number token followed by "%"/"percent" (or an attached
    "80%"-style token); CARDINAL a standalone number token; PROPER a maximal
    run of capitalized tokens not at sentence start. Returned spans never
    overlap; earlier rules win.
    """
    spans: list[EntitySpan] = []
    taken = [False] * len(texts)

    def claim(start: int, end: int, category: str):
        spans.append(EntitySpan(start, end, category))
        for i in range(start, end):
            taken[i] = True

    i = 0
    while i < len(texts):
        if not taken[i] and _NUMBER_RE.match(texts[i]) and i + 1 < len(texts) \
                and texts[i + 1] in ("%", "percent"):
            claim(i, i + 2, "PERCENT")
            i += 2
            continue
        if not taken[i] and _ATTACHED_PERCENT_RE.match(texts[i]):
            claim(i, i + 1, "PERCENT")
        i += 1
    for i, text in enumerate(texts):
        if not taken[i] and _NUMBER_RE.match(text):
            claim(i, i + 1, "CARDINAL")
    run_start = None
    for i in range(len(texts) + 1):
        capitalized = (i < len(texts) and i > 0 and not taken[i]
                       and texts[i][0].isalpha() and texts[i][0].isupper())
        if capitalized and run_start is None:
            run_start = i
        elif not capitalized and run_start is not None:
            claim(run_start, i, "PROPER")
            run_start = None
    return sorted(spans, key=lambda s: s.token_start)


def build_entity_dictionary(sentences: Iterable[LabeledSentence],
                            annotator: EntityAnnotator = default_entity_annotator,
                            ) -> EntityDictionary:
    """Collect every annotated entity surface form per category, deduplicated."""
    collected: dict[str, list[tuple[str, ...]]] = {}
    seen: set[tuple[str, tuple[str, ...]]] = set()
    for sentence in sentences:
        for span in annotator(sentence.texts):
            surface = tuple(sentence.texts[span.token_start:span.token_end])
            key = (span.category, surface)
            if key not in seen:
                seen.add(key)
                collected.setdefault(span.category, []).append(surface)
    return EntityDictionary(entries={c: tuple(forms) for c, forms in collected.items()})


def build_verb_pool(sentences: Iterable[LabeledSentence],
                    lexicon: morph.VerbLexicon) -> list[str]:
    """Distinct verb bases detected in the given sentences, sorted."""
    pool = set()
    for sentence in sentences:
        for text in sentence.texts:
            detected = morph.detect_verb(text, lexicon)
            if detected is not None:
                pool.add(detected[0])
    return sorted(pool)


def _validate_spans(spans: Sequence[EntitySpan], n: int) -> None:
    ordered = sorted(spans, key=lambda s: s.token_start)
    for span in ordered:
        if not (0 <= span.token_start < span.token_end <= n):
            raise ValidationError(f"entity span [{span.token_start},{span.token_end}) out of range")
    for prev, cur in zip(ordered, ordered[1:]):
        if cur.token_start < prev.token_end:
            raise ValidationError("entity annotator returned overlapping spans")


def entity_replace(sentence: LabeledSentence, annotator: EntityAnnotator,
                   dictionary: EntityDictionary, rng: random.Random,
                   seed: int = 0) -> AugmentedSample | None:
    """Swap one annotated entity for a same-category entity from the dictionary.

    Inserted tokens all take the label of the replaced span's first token.
    Returns None when the sentence has no entities or the dictionary offers
    no alternative to the original surface form.
    """
    spans = annotator(sentence.texts)
    _validate_spans(spans, len(sentence.tokens))
    for span in spans:
        if span.category not in dictionary.entries:
            raise ConfigurationError(f"entity dictionary has no category {span.category!r}")
    if not spans:
        return None
    span = spans[rng.randrange(len(spans))]
    original = tuple(sentence.texts[span.token_start:span.token_end])
    candidates = [form for form in dictionary.entries[span.category] if form != original]
    if not candidates:
        return None
    replacement = candidates[rng.randrange(len(candidates))]

    label = sentence.token_labels[span.token_start]
    texts = list(sentence.texts[:span.token_start]) + list(replacement) \
        + list(sentence.texts[span.token_end:])
    labels = list(sentence.token_labels[:span.token_start]) + [label] * len(replacement) \
        + list(sentence.token_labels[span.token_end:])
    return AugmentedSample(
        sentence=_rebuild(sentence, texts, labels),
        method=Method.ER,
        source_id=(sentence.doc_id, sentence.sent_index),
        seed=seed,
        detail={"span_start": span.token_start, "span_end": span.token_end,
                "category": span.category, "original": list(original),
                "replacement": list(replacement)},
    )


def llm_contradict(sentence_text: str, client: LlmClient, prompt_variant: int,
                   retries: int = 3) -> str:
    """Ask the client to contradict the sentence using one of the two prompts.

    Transport errors are retried up to `retries` times, then re-raised; an
    empty completion raises AugmentationFailed.
    """
    if prompt_variant not in PROMPT_TEMPLATES:
        raise ConfigurationError(f"prompt_variant must be 1 or 2, got {prompt_variant}")
    prompt = PROMPT_TEMPLATES[prompt_variant].format(sentence=sentence_text)
    last_error: LlmTransportError | None = None
    for _ in range(max(1, retries)):
        try:
            reply = client.complete(prompt)
            break
        except LlmTransportError as exc:
            last_error = exc
    else:
        raise last_error
    reply = reply.strip()
    if not reply:
        raise AugmentationFailed("LLM returned an empty completion")
    return reply


@dataclass
class Resources:
    """Everything the scheduler may need to run any operator."""

    verb_lexicon: morph.VerbLexicon | None = None
    antonyms: morph.AntonymLexicon | None = None
    verb_pool: Sequence[str] = ()
    entity_dictionary: EntityDictionary | None = None
    annotator: EntityAnnotator = default_entity_annotator
    llm_client: LlmClient | None = None
    llm_retries: int = 3


def _llm_sample(sentence: LabeledSentence, client: LlmClient, variant: int,
                retries: int, seed: int) -> AugmentedSample:
    reply = llm_contradict(" ".join(sentence.texts), client, variant, retries=retries)
    texts = reply.split()
    labels = [sentence.sentence_label] * len(texts)
    return AugmentedSample(
        sentence=_rebuild(sentence, texts, labels),
        method=Method.LLM,
        source_id=(sentence.doc_id, sentence.sent_index),
        seed=seed,
        detail={"prompt_variant": variant},
    )


def _make_operator(config: AugmentConfig, resources: Resources):
    """Bind an operator to its resources; returns fn(sentence, rng, seed, trial) -> sample."""
    method = config.method
    if method is Method.AEDA:
        return lambda s, rng, seed, trial: aeda(s, rng, seed=seed)
    if method in (Method.VR_RANDOM, Method.VR_ANTONYM):
        if resources.verb_lexicon is None:
            raise ConfigurationError("verb replacement needs a verb lexicon")
        if method is Method.VR_RANDOM:
            source = list(resources.verb_pool)
            if not source:
                raise ConfigurationError("vr-random needs a non-empty verb pool")
        else:
            source = resources.antonyms
            if source is None:
                raise ConfigurationError("vr-antonym needs an antonym lexicon")
        return lambda s, rng, seed, trial: verb_replace(
            s, resources.verb_lexicon, source, method, rng, seed=seed)
    if method is Method.ER:
        if resources.entity_dictionary is None:
            raise ConfigurationError("entity replacement needs an entity dictionary")
        return lambda s, rng, seed, trial: entity_replace(
            s, resources.annotator, resources.entity_dictionary, rng, seed=seed)
    if method is Method.LLM:
        if resources.llm_client is None:
            raise ConfigurationError("llm augmentation needs a client (or --offline mock)")
        half = (config.n_samples + 1) // 2

        def run(s, rng, seed, trial):
            variant = 1 if trial < half else 2
            return _llm_sample(s, resources.llm_client, variant, resources.llm_retries, seed)

        return run
    raise ConfigurationError(
        f"{method.value} is a training-time method, not a corpus-level augmenter")


_FAIL_REASON = {
    Method.AEDA: "operator_returned_none",
    Method.VR_RANDOM: "no_eligible_verb_or_replacement",
    Method.VR_ANTONYM: "no_eligible_verb_or_antonym",
    Method.ER: "no_entity_or_candidate",
    Method.LLM: "empty_completion",
}


def augment_minority(sentences: Sequence[LabeledSentence], config: AugmentConfig,
                     resources: Resources, workers: int = 1) -> list[AugmentedSample]:
    """Produce `n_samples * per_sentence` augmentations of the target class.

    Source sentences are taken in seeded-shuffle order without replacement,
    cycling with replacement once exhausted. A source whose operator yields
    nothing is skipped and the next one is tried; the outcome of every trial
    is a pure function of (master seed, source, cycle), so the result is
    byte-identical for any worker count.
    """
    targets = [s for s in sentences if s.sentence_label == config.target_class]
    if not targets:
        raise ConfigurationError(f"no sentences with label {config.target_class!r}")
    order = list(targets)
    random.Random(derive_seed(config.master_seed, "source-order", config.target_class)
                  ).shuffle(order)
    operator = _make_operator(config, resources)
    n_available = len(order)

    def run_trial(trial: int) -> list[AugmentedSample] | None:
        source = order[trial % n_available]
        cycle = trial // n_available
        samples = []
        for copy in range(config.per_sentence):
            seed = derive_seed(config.master_seed, source.doc_id, source.sent_index,
                               cycle, copy)
            try:
                sample = operator(source, random.Random(seed), seed, trial)
            except AugmentationFailed:
                return None
            if sample is None:
                return None
            samples.append(sample)
        return samples

    produced: list[AugmentedSample] = []
    reasons: Counter[str] = Counter()
    successes = 0
    trial = 0
    batch = max(1, workers) * 8
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while successes < config.n_samples:
            trials = range(trial, trial + batch)
            if pool is not None:
                results = list(pool.map(run_trial, trials))
            else:
                results = [run_trial(t) for t in trials]
            for t, result in zip(trials, results):
                if result is None:
                    reasons[_FAIL_REASON[config.method]] += 1
                else:
                    produced.extend(result)
                    successes += 1
                    if successes == config.n_samples:
                        break
                if t + 1 >= n_available and successes == 0:
                    raise AugmentationError(
                        f"no {config.method.value} augmentation possible for any "
                        f"{config.target_class!r} sentence", reasons)
            trial += batch
    finally:
        if pool is not None:
            pool.shutdown()
    return produced


def oversample(sentences: Sequence[LabeledSentence], target_class: str, n: int,
               rng: random.Random) -> list[LabeledSentence]:
    """Grow the target class to exactly n sentences by appending uniform duplicates."""
    targets = [s for s in sentences if s.sentence_label == target_class]
    if not targets:
        raise ValidationError(f"no sentences with label {target_class!r}")
    if n < len(targets):
        raise ValidationError(f"target count {n} below current {len(targets)}; "
                              "use undersample to shrink a class")
    extras = [targets[rng.randrange(len(targets))] for _ in range(n - len(targets))]
    return list(sentences) + extras


def undersample(sentences: Sequence[LabeledSentence], majority_class: str, keep_n: int,
                rng: random.Random) -> list[LabeledSentence]:
    """Keep a uniform subset of keep_n sentences of the majority class, order preserved."""
    indices = [i for i, s in enumerate(sentences) if s.sentence_label == majority_class]
    if keep_n > len(indices):
        raise ValidationError(f"cannot keep {keep_n} of {len(indices)} "
                              f"{majority_class!r} sentences")
    kept = set(rng.sample(indices, keep_n))
    return [s for i, s in enumerate(sentences)
            if s.sentence_label != majority_class or i in kept]
