"""Shared fixtures and random-sentence builders for the test suite."""

from __future__ import annotations

import random

import pytest

from claimaug import morph
from claimaug.corpus import LabelSchema, tokens_from_texts
from claimaug.senttok import LabeledSentence


@pytest.fixture(scope="session")
def schema() -> LabelSchema:
    return LabelSchema(
        outside_label="O",
        categories=("CLA", "EXP", "PER", "QUE"),
        train_freq={"CLA": 8183, "EXP": 33358, "O": 316676, "PER": 138359, "QUE": 51707},
    )


@pytest.fixture(scope="session")
def lexicon() -> morph.VerbLexicon:
    return morph.load_default_verb_lexicon()


@pytest.fixture(scope="session")
def antonyms() -> morph.AntonymLexicon:
    return morph.load_default_antonyms()


class ScriptedRng:
    """Stand-in RNG that replays queued return values per method."""

    def __init__(self, **script: list):
        self.script = {name: list(values) for name, values in script.items()}

    def _pop(self, name):
        if not self.script.get(name):
            raise AssertionError(f"unexpected rng call {name}")
        return self.script[name].pop(0)

    def randint(self, a, b):
        value = self._pop("randint")
        assert a <= value <= b, f"scripted randint {value} outside [{a}, {b}]"
        return value

    def randrange(self, n):
        value = self._pop("randrange")
        assert 0 <= value < n, f"scripted randrange {value} outside [0, {n})"
        return value

    def sample(self, population, k):
        value = self._pop("sample")
        assert len(value) == k
        return list(value)

    def choice(self, seq):
        value = self._pop("choice")
        assert value in seq, f"scripted choice {value!r} not in population"
        return value


WORDS = ("the", "a", "of", "and", "people", "gut", "diet", "sleep", "water",
         "stress", "fiber", "bread", "salad", "tea", "yoga", "doctor", "nurse")
VERB_BASES = ("cause", "help", "reduce", "improve", "diagnose", "have", "take",
              "eat", "go", "feel", "notice", "try", "increase", "walk", "treat")
NAMES = ("Sibo", "IBS", "Gerd", "Advil", "Zantac")
ALL_TENSES = tuple(morph.Tense)


def make_sentence(rng: random.Random, lexicon: morph.VerbLexicon, label: str = "CLA",
                  with_verb: bool = True, with_entity: bool = False,
                  doc_id: str = "doc", sent_index: int = 0) -> LabeledSentence:
    """A random labeled sentence for property tests."""
    texts = [rng.choice(WORDS).capitalize()]
    texts += [rng.choice(WORDS) for _ in range(rng.randint(2, 6))]
    if with_verb:
        base = rng.choice(VERB_BASES)
        tense = rng.choice(ALL_TENSES)
        texts.insert(rng.randint(1, len(texts)), morph.conjugate(base, tense, lexicon))
    if with_entity:
        kind = rng.randrange(3)
        if kind == 0:
            entity = [str(rng.randint(1, 99)), "%"]
        elif kind == 1:
            entity = [str(rng.randint(1, 999))]
        else:
            entity = [rng.choice(NAMES)]
        at = rng.randint(1, len(texts))
        texts[at:at] = entity
    texts.append(rng.choice([".", "!", "?"]))
    labels = [label] * len(texts)
    if rng.random() < 0.2:
        labels[-1] = "O"
    return LabeledSentence(
        doc_id=doc_id, sent_index=sent_index,
        tokens=tokens_from_texts(texts), token_labels=tuple(labels),
        sentence_label=label,
    )
