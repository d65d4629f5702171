"""Command-line front end.

Subcommands: stats, split, build-lexicons, augment, train-crf, train-clf,
eval, compare, make-fixture, run-experiment. Every command that consumes
randomness takes an explicit seed; nothing falls back to the wall clock.

Exit codes: 0 success, 2 input/parse/configuration problems, 3 augmentation
produced nothing, 4 training diverged.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import augment as aug
from . import crf as crf_mod
from . import metrics as metrics_mod
from . import morph
from . import senttok
from . import synth
from . import textclf
from .corpus import (
    Dataset,
    LabelSchema,
    dataset_stats,
    parse_schema_config,
    parse_token_label_file,
    serialize_token_label_file,
)
from .errors import (
    AugmentationError,
    ClaimaugError,
    ConfigurationError,
    TrainingDiverged,
)
from .llmclient import EchoLlmClient, HttpLlmClient
from .util import atomic_write_bytes, atomic_write_text, parse_kv_config

EXIT_INPUT = 2
EXIT_NO_AUGMENTATIONS = 3
EXIT_DIVERGED = 4


def _read_text(path: str) -> str:
    with open(path, encoding="utf-8") as f:
        return f.read()


def _load_schema(path: str) -> LabelSchema:
    return parse_schema_config(_read_text(path))


def _load_dataset(path: str, schema: LabelSchema) -> Dataset:
    with open(path, "rb") as f:
        return parse_token_label_file(f.read(), schema)


def _split_all(dataset: Dataset) -> list[senttok.LabeledSentence]:
    sentences = []
    for doc in dataset.documents:
        sentences.extend(senttok.split_sentences(doc, dataset.schema))
    return sentences


def _schema_with_freq(dataset: Dataset) -> LabelSchema:
    if dataset.schema.train_freq:
        return dataset.schema
    return dataset.schema.with_train_freq(dataset_stats(dataset).label_dist)


def cmd_stats(args) -> int:
    dataset = _load_dataset(args.data, _load_schema(args.schema))
    stats = dataset_stats(dataset)
    if args.format == "json":
        print(json.dumps({
            "n_texts": stats.n_texts,
            "n_unique_words": stats.n_unique_words,
            "max_length": stats.max_length,
            "label_dist": stats.label_dist,
        }, indent=2, sort_keys=True))
    else:
        print(f"texts: {stats.n_texts}")
        print(f"unique_words: {stats.n_unique_words}")
        print(f"max_length: {stats.max_length}")
        dist = " ".join(f"{l}={stats.label_dist[l]}" for l in dataset.schema.labels)
        print(f"label_dist: {dist}")
    return 0


def cmd_split(args) -> int:
    dataset = _load_dataset(args.data, _load_schema(args.schema))
    schema = _schema_with_freq(dataset)
    dataset = Dataset(schema=schema, documents=dataset.documents)
    sentences = _split_all(dataset)
    stats = senttok.purity_stats(sentences)
    if args.out:
        blocks = ["\n".join(f"{t.text}\t{l}" for t, l in zip(s.tokens, s.token_labels))
                  for s in sentences]
        atomic_write_text(args.out, "\n\n".join(blocks) + "\n" if blocks else "")
    print(f"sentences: {stats.n_sentences}")
    print(f"uniform: {stats.n_uniform} ({100.0 * stats.uniform_fraction:.1f}%)")
    per_class = " ".join(f"{l}={stats.per_class.get(l, 0)}" for l in schema.labels)
    print(f"per_class: {per_class}")
    return 0


def cmd_build_lexicons(args) -> int:
    dataset = _load_dataset(args.data, _load_schema(args.schema))
    sentences = _split_all(Dataset(schema=_schema_with_freq(dataset),
                                   documents=dataset.documents))
    lexicon = morph.load_default_verb_lexicon()
    pool = aug.build_verb_pool(sentences, lexicon)
    dictionary = aug.build_entity_dictionary(sentences)
    os.makedirs(args.out, exist_ok=True)
    rows = []
    for base in pool:
        forms = lexicon.entries[base]
        rows.append(f"{base}\t{forms.present_3sg}\t{forms.past}"
                    f"\t{forms.gerund}\t{forms.past_participle}")
    atomic_write_text(os.path.join(args.out, "verbs.tsv"),
                      "\n".join(rows) + "\n" if rows else "")
    entity_rows = [f"{category}\t{' '.join(form)}"
                   for category in sorted(dictionary.entries)
                   for form in dictionary.entries[category]]
    atomic_write_text(os.path.join(args.out, "entities.tsv"),
                      "\n".join(entity_rows) + "\n" if entity_rows else "")
    print(f"verbs: {len(pool)}")
    print(f"entities: {len(entity_rows)} in {len(dictionary.entries)} categories")
    return 0


def load_entity_dictionary_file(text: str) -> aug.EntityDictionary:
    entries: dict[str, list[tuple[str, ...]]] = {}
    for raw in text.splitlines():
        if not raw.strip():
            continue
        category, _, form = raw.partition("\t")
        tokens = tuple(form.split())
        if tokens and tokens not in entries.setdefault(category, []):
            entries[category].append(tokens)
    return aug.EntityDictionary(entries={c: tuple(v) for c, v in entries.items()})


def _make_resources(sentences, args) -> aug.Resources:
    lexicon = morph.load_default_verb_lexicon()
    if getattr(args, "entities", None):
        dictionary = load_entity_dictionary_file(_read_text(args.entities))
    else:
        dictionary = aug.build_entity_dictionary(sentences)
    if getattr(args, "offline", False) or not getattr(args, "llm_endpoint", None):
        client = EchoLlmClient()
    else:
        client = HttpLlmClient(args.llm_endpoint)
    return aug.Resources(
        verb_lexicon=lexicon,
        antonyms=morph.load_default_antonyms(),
        verb_pool=aug.build_verb_pool(sentences, lexicon),
        entity_dictionary=dictionary,
        llm_client=client,
    )


def _write_augmented(samples: list[aug.AugmentedSample], out_dir: str) -> None:
    os.makedirs(out_dir, exist_ok=True)
    blocks = []
    manifest = []
    for sample in samples:
        sentence = sample.sentence
        blocks.append("\n".join(f"{t.text}\t{l}"
                                for t, l in zip(sentence.tokens, sentence.token_labels)))
        manifest.append(json.dumps({
            "method": sample.method.value,
            "doc_id": sample.source_id[0],
            "sent_index": sample.source_id[1],
            "seed": sample.seed,
            "detail": sample.detail,
        }, sort_keys=True))
    atomic_write_text(os.path.join(out_dir, "augmented.tsv"),
                      "\n\n".join(blocks) + "\n" if blocks else "")
    atomic_write_text(os.path.join(out_dir, "manifest.jsonl"),
                      "\n".join(manifest) + "\n" if manifest else "")


def cmd_augment(args) -> int:
    dataset = _load_dataset(args.data, _load_schema(args.schema))
    sentences = _split_all(Dataset(schema=_schema_with_freq(dataset),
                                   documents=dataset.documents))
    config = aug.AugmentConfig(
        target_class=args.target_class,
        n_samples=args.n_samples,
        per_sentence=args.per_sentence,
        method=aug.Method(args.method),
        master_seed=args.seed,
    )
    resources = _make_resources(sentences, args)
    samples = aug.augment_minority(sentences, config, resources, workers=args.workers)
    _write_augmented(samples, args.out)
    print(f"method: {config.method.value}")
    print(f"requested: {config.n_samples * config.per_sentence}")
    print(f"produced: {len(samples)}")
    return 0


def cmd_make_fixture(args) -> int:
    sizes = None
    if args.sizes:
        sizes = {}
        for part in args.sizes.split(","):
            label, _, count = part.partition("=")
            sizes[label.strip()] = int(count)
    dataset, bookkeeping = synth.generate(sizes=sizes, seed=args.seed)
    os.makedirs(args.out, exist_ok=True)
    atomic_write_bytes(os.path.join(args.out, "corpus.tsv"),
                       serialize_token_label_file(dataset))
    from .corpus import format_schema_config
    atomic_write_text(os.path.join(args.out, "schema.cfg"),
                      format_schema_config(dataset.schema))
    atomic_write_text(os.path.join(args.out, "bookkeeping.json"),
                      json.dumps(bookkeeping.to_dict(), indent=2, sort_keys=True))
    print(f"texts: {bookkeeping.n_texts}")
    print(f"sentences: {bookkeeping.n_sentences}")
    per_class = " ".join(f"{l}={bookkeeping.per_class_sentences[l]}"
                         for l in synth.SCHEMA.labels)
    print(f"per_class: {per_class}")
    return 0


def _experiment_config(path: str) -> dict[str, str]:
    config = parse_kv_config(_read_text(path))
    for key in ("train", "schema"):
        if key not in config:
            raise ConfigurationError(f"experiment config missing {key!r}")
        if not os.path.exists(config[key]):
            raise ConfigurationError(f"{key} file not found: {config[key]}")
    if "seed" not in config:
        raise ConfigurationError("experiment config must set an explicit seed")
    return config


def _train_crf_model(sentences, schema, config) -> crf_mod.CrfModel:
    data = [(list(s.texts), list(s.token_labels)) for s in sentences]
    model = crf_mod.CrfModel.build(schema.labels, [texts for texts, _ in data],
                                   l2=float(config.get("l2", "0.0")))
    train_config = crf_mod.TrainConfig(
        epochs=int(config.get("epochs", "5")),
        learning_rate=float(config.get("learning_rate", "0.1")),
        decay=float(config.get("decay", "0.01")),
        seed=int(config["seed"]),
    )
    history = crf_mod.train(model, data, train_config)
    for epoch, nll in enumerate(history):
        print(f"epoch {epoch}: nll {nll:.4f}")
    return model


def _train_clf_model(sentences, schema, config) -> textclf.SoftmaxClassifier:
    adv = textclf.AdvConfig(
        epsilon=float(config.get("epsilon", "0.0")),
        adv_weight=float(config.get("adv_weight", "0.0")),
    )
    train_config = textclf.ClfTrainConfig(
        epochs=int(config.get("epochs", "15")),
        learning_rate=float(config.get("learning_rate", "0.5")),
        dim=int(config.get("dim", "32")),
        seed=int(config["seed"]),
    )
    table = None
    if config.get("embeddings"):
        table = textclf.EmbeddingTable.from_text(_read_text(config["embeddings"]))
    return textclf.train_classifier(
        [list(s.texts) for s in sentences],
        [s.sentence_label for s in sentences],
        schema.labels, train_config, adv, table=table)


def cmd_train_crf(args) -> int:
    config = _experiment_config(args.config)
    dataset = _load_dataset(config["train"], _load_schema(config["schema"]))
    schema = _schema_with_freq(dataset)
    sentences = _split_all(Dataset(schema=schema, documents=dataset.documents))
    model = _train_crf_model(sentences, schema, config)
    out = config.get("model_out", "crf-model.json")
    model.save(out)
    print(f"model: {out}")
    return 0


def cmd_train_clf(args) -> int:
    config = _experiment_config(args.config)
    dataset = _load_dataset(config["train"], _load_schema(config["schema"]))
    schema = _schema_with_freq(dataset)
    sentences = _split_all(Dataset(schema=schema, documents=dataset.documents))
    model = _train_clf_model(sentences, schema, config)
    out = config.get("model_out", "clf-model.json")
    model.save(out)
    print(f"model: {out}")
    return 0


def cmd_eval(args) -> int:
    schema = _load_schema(args.schema)
    gold = _load_dataset(args.gold, schema)
    pred = _load_dataset(args.pred, schema)
    gold_labels = [l for doc in gold.documents for l in doc.token_labels]
    pred_labels = [l for doc in pred.documents for l in doc.token_labels]
    report = metrics_mod.score(gold_labels, pred_labels, schema,
                               include_outside=not args.exclude_outside)
    output = report.to_json() if args.format == "json" else report.to_text()
    if args.out:
        atomic_write_text(args.out, output)
    print(output, end="" if output.endswith("\n") else "\n")
    return 0


def cmd_compare(args) -> int:
    reports = {}
    for spec_arg in args.reports:
        name, _, path = spec_arg.partition("=")
        if not path:
            raise ConfigurationError(f"expected NAME=PATH, got {spec_arg!r}")
        reports[name] = metrics_mod.MetricsReport.from_json(_read_text(path))
    comparison = metrics_mod.compare(reports)
    output = comparison.to_json() if args.format == "json" else comparison.to_text()
    if args.out:
        atomic_write_text(args.out, output)
    print(output, end="" if output.endswith("\n") else "\n")
    return 0


def run_experiment(config: dict[str, str], workers: int = 1) -> metrics_mod.MetricsReport:
    """Train the configured model on base + augmented sentences, score on dev."""
    schema = _load_schema(config["schema"])
    train_set = _load_dataset(config["train"], schema)
    schema = _schema_with_freq(train_set)
    train_set = Dataset(schema=schema, documents=train_set.documents)
    train_sentences = _split_all(train_set)

    method = config.get("augment.method", "none")
    if method != "none":
        augment_config = aug.AugmentConfig(
            target_class=config.get("augment.target_class", schema.categories[0]),
            n_samples=int(config.get("augment.n_samples", "100")),
            per_sentence=int(config.get("augment.per_sentence", "1")),
            method=aug.Method(method),
            master_seed=int(config["seed"]),
        )

        class _ResourceArgs:
            entities = config.get("entities")
            offline = config.get("offline", "true").lower() != "false"
            llm_endpoint = config.get("llm.endpoint")

        resources = _make_resources(train_sentences, _ResourceArgs())
        samples = aug.augment_minority(train_sentences, augment_config, resources,
                                       workers=workers)
        train_sentences = train_sentences + [s.sentence for s in samples]

    model_kind = config.get("model", "textclf")
    if model_kind == "crf":
        model = _train_crf_model(train_sentences, schema, config)

        def predict(texts):
            return model.predict(texts)
    elif model_kind == "textclf":
        clf = _train_clf_model(train_sentences, schema, config)

        def predict(texts):
            return senttok.project_labels(clf.predict(texts), len(texts))
    else:
        raise ConfigurationError(f"unknown model {model_kind!r} (use crf or textclf)")

    dev = _load_dataset(config["dev"], schema)
    gold: list[str] = []
    predicted: list[str] = []
    for doc in dev.documents:
        gold.extend(doc.token_labels)
        for sentence in senttok.split_sentences(doc, schema):
            predicted.extend(predict(list(sentence.texts)))
    return metrics_mod.score(gold, predicted, schema)


def cmd_run_experiment(args) -> int:
    config = _experiment_config(args.config)
    if "dev" not in config or not os.path.exists(config.get("dev", "")):
        raise ConfigurationError("experiment config needs an existing dev file")
    report = run_experiment(config, workers=args.workers)
    out_dir = config.get("outdir", ".")
    os.makedirs(out_dir, exist_ok=True)
    atomic_write_text(os.path.join(out_dir, "report.json"), report.to_json())
    atomic_write_text(os.path.join(out_dir, "report.txt"), report.to_text())
    print(report.to_text(), end="")
    print(f"reports written to {out_dir}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="claimaug",
                                     description="Text augmentation and labeling bench")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="corpus statistics")
    p.add_argument("--data", required=True)
    p.add_argument("--schema", required=True)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(fn=cmd_stats)

    p = sub.add_parser("split", help="sentence-split a corpus, report purity")
    p.add_argument("--data", required=True)
    p.add_argument("--schema", required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_split)

    p = sub.add_parser("build-lexicons", help="harvest verb pool and entity dictionary")
    p.add_argument("--data", required=True)
    p.add_argument("--schema", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_build_lexicons)

    p = sub.add_parser("augment", help="augment the minority class")
    p.add_argument("--data", required=True)
    p.add_argument("--schema", required=True)
    p.add_argument("--method", required=True,
                   choices=[m.value for m in aug.Method if m is not aug.Method.BAT])
    p.add_argument("--target-class", required=True)
    p.add_argument("--n-samples", type=int, required=True)
    p.add_argument("--per-sentence", type=int, default=1)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--entities", help="entity dictionary file (default: harvest)")
    p.add_argument("--offline", action="store_true",
                   help="use the deterministic offline LLM client")
    p.add_argument("--llm-endpoint")
    p.set_defaults(fn=cmd_augment)

    p = sub.add_parser("train-crf", help="train the CRF sequence labeler")
    p.add_argument("--config", required=True)
    p.set_defaults(fn=cmd_train_crf)

    p = sub.add_parser("train-clf", help="train the sentence classifier")
    p.add_argument("--config", required=True)
    p.set_defaults(fn=cmd_train_clf)

    p = sub.add_parser("eval", help="score predictions against gold labels")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    p.add_argument("--schema", required=True)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--exclude-outside", action="store_true")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("compare", help="rank methods across reports")
    p.add_argument("--reports", nargs="+", required=True, metavar="NAME=PATH")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("make-fixture", help="generate a synthetic imbalanced corpus")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--sizes", help="per-class sentence counts, e.g. CLA=40,EXP=192,...")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_make_fixture)

    p = sub.add_parser("run-experiment", help="train, evaluate, and report")
    p.add_argument("--config", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=cmd_run_experiment)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except AugmentationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_AUGMENTATIONS
    except TrainingDiverged as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVERGED
    except (ClaimaugError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
