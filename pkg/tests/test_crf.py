import itertools
import math
import random

import numpy as np
import pytest

from claimaug.crf import (
    CrfModel,
    TrainConfig,
    dataset_nll,
    extract_features,
    log_partition,
    nll_and_gradient,
    posterior_marginals,
    sequence_score,
    train,
    viterbi,
)
from claimaug.errors import TrainingDiverged


def all_sequence_scores(model, texts):
    """Brute-force score of every label sequence, in lexicographic order."""
    emissions = model.emissions(model.feature_ids(extract_features(texts)))
    transitions = model.transitions
    n, L = emissions.shape
    seqs = np.array(list(itertools.product(range(L), repeat=n)), dtype=np.intp)
    scores = emissions[np.arange(n), seqs].sum(axis=1)
    if n > 1:
        scores = scores + transitions[seqs[:, :-1], seqs[:, 1:]].sum(axis=1)
    return seqs, scores


def brute_log_partition(model, texts):
    _, scores = all_sequence_scores(model, texts)
    m = scores.max()
    return float(m + np.log(np.exp(scores - m).sum()))


def brute_viterbi(model, texts):
    seqs, scores = all_sequence_scores(model, texts)
    best = seqs[int(np.argmax(scores))]
    return [model.labels[i] for i in best]


def random_instance(rng, n_max=5, l_max=4, scale=1.0):
    vocabulary = ["80", "%", "IBS", "gut", "the", "Helped", "slept", "a", "B12"]
    n = rng.randint(1, n_max)
    n_labels = rng.randint(1, l_max)
    labels = [f"L{i}" for i in range(n_labels)]
    texts = [rng.choice(vocabulary) for _ in range(n)]
    model = CrfModel.build(labels, [texts])
    weights_rng = np.random.default_rng(rng.randrange(2 ** 31))
    model.weights = weights_rng.normal(0.0, scale, size=model.weights.shape)
    return model, texts, labels


class TestFeatures:
    def test_word_shape_features(self):
        feats = extract_features(["Sibo"])[0]
        for expected in ("w=Sibo", "suf1=o", "suf2=bo", "suf3=ibo",
                         "capInit=1", "allCap=0", "digit=0"):
            assert expected in feats

    def test_digit_flag(self):
        assert "digit=1" in extract_features(["80"])[0]

    def test_short_word_suffix_falls_back_to_word(self):
        feats = extract_features(["ab"])[0]
        assert "suf3=ab" in feats

    def test_position_zero_bigrams_use_boundary(self):
        feats = extract_features(["Sibo"])[0]
        assert "bw=<BOS>|Sibo" in feats
        assert "bcapInit=<BOS>|1" in feats

    def test_bigrams_conjoin_previous_values(self):
        feats = extract_features(["have", "Sibo"])[1]
        assert "bw=have|Sibo" in feats
        assert "bsuf2=ve|bo" in feats

    def test_deterministic(self):
        assert extract_features(["a", "b"]) == extract_features(["a", "b"])


class TestLogPartition:
    def test_zero_weights_closed_form(self):
        model = CrfModel.build(["A", "B", "C"], [["x", "y", "z"]])
        assert log_partition(model, ["x", "y", "z"]) == pytest.approx(3 * math.log(3))

    def test_single_label(self):
        model, texts, _ = None, None, None
        rng = random.Random(0)
        for _ in range(10):
            model, texts, _ = random_instance(rng, l_max=1)
            seqs, scores = all_sequence_scores(model, texts)
            assert log_partition(model, texts) == pytest.approx(float(scores[0]))

    def test_matches_brute_force(self):
        rng = random.Random(1)
        for _ in range(50):
            model, texts, _ = random_instance(rng)
            expected = brute_log_partition(model, texts)
            got = log_partition(model, texts)
            assert got == pytest.approx(expected, rel=1e-9, abs=1e-9)

    def test_sequence_probabilities_in_unit_interval(self):
        rng = random.Random(2)
        for _ in range(30):
            model, texts, _ = random_instance(rng)
            log_z = log_partition(model, texts)
            seqs, scores = all_sequence_scores(model, texts)
            probs = np.exp(scores - log_z)
            assert np.all(probs > 0) and np.all(probs <= 1 + 1e-12)
            assert probs.sum() == pytest.approx(1.0, rel=1e-9)


class TestMarginals:
    def test_rows_sum_to_one(self):
        rng = random.Random(3)
        for _ in range(30):
            model, texts, _ = random_instance(rng)
            marginals = posterior_marginals(model, texts)
            np.testing.assert_allclose(marginals.sum(axis=1), 1.0, atol=1e-9)


class TestGradient:
    def test_zero_weight_closed_form(self):
        # At w=0 with no l2 the expectation is uniform, so an emission
        # coordinate touched only at position 0 gets (1/L - is_gold).
        labels = ["A", "B"]
        texts = ["only", "two"]
        model = CrfModel.build(labels, [texts])
        _, grad = nll_and_gradient(model, texts, ["A", "B"])
        L = len(labels)
        fids = model.feature_ids(extract_features(texts))
        emission_grad = grad[:len(model.feature_index) * L].reshape(-1, L)
        first_only = set(fids[0]) - set(fids[1])
        assert first_only
        for fid in first_only:
            assert emission_grad[fid, 0] == pytest.approx(1 / L - 1)
            assert emission_grad[fid, 1] == pytest.approx(1 / L)

    def test_l2_only_component(self):
        model = CrfModel.build(["A", "B"], [["x"]], l2=0.5)
        rng = np.random.default_rng(0)
        model.weights = rng.normal(size=model.weights.shape)
        # "y" shares no features with the training vocabulary beyond shape
        # flags; transition/emission coordinates not touched by the example
        # must come out as exactly l2 * w.
        _, grad = nll_and_gradient(model, ["x"], ["A"])
        fids = set(model.feature_ids(extract_features(["x"]))[0])
        L = 2
        for fid in range(len(model.feature_index)):
            if fid not in fids:
                for l in range(L):
                    i = fid * L + l
                    assert grad[i] == pytest.approx(0.5 * model.weights[i])

    def test_matches_finite_differences(self):
        rng = random.Random(4)
        for _ in range(5):
            model, texts, labels = random_instance(rng, scale=0.5)
            gold = [model.labels[rng.randrange(len(model.labels))] for _ in texts]
            model.l2 = 0.1
            _, grad = nll_and_gradient(model, texts, gold)
            coords = rng.sample(range(model.weights.size),
                                min(20, model.weights.size))
            h = 1e-5
            for coord in coords:
                model.weights[coord] += h
                up = nll_and_gradient(model, texts, gold)[0]
                model.weights[coord] -= 2 * h
                down = nll_and_gradient(model, texts, gold)[0]
                model.weights[coord] += h
                numeric = (up - down) / (2 * h)
                denom = max(abs(numeric), abs(grad[coord]), 1e-8)
                assert abs(grad[coord] - numeric) / denom < 1e-4


class TestViterbi:
    def test_matches_enumeration(self):
        rng = random.Random(5)
        for _ in range(60):
            model, texts, _ = random_instance(rng)
            assert viterbi(model, texts) == brute_viterbi(model, texts)

    def test_single_label_constant(self):
        model = CrfModel.build(["A"], [["x", "y"]])
        assert viterbi(model, ["x", "y"]) == ["A", "A"]

    def test_zero_weights_first_label(self):
        model = CrfModel.build(["A", "B", "C"], [["x", "y"]])
        assert viterbi(model, ["x", "y"]) == ["A", "A"]

    def test_decoded_score_is_maximal(self):
        rng = random.Random(6)
        for _ in range(20):
            model, texts, _ = random_instance(rng)
            decoded = viterbi(model, texts)
            _, scores = all_sequence_scores(model, texts)
            assert sequence_score(model, texts, decoded) == pytest.approx(float(scores.max()))


def separable_data():
    # "aa"-words take label A, "bb"-words take label B.
    rng = random.Random(0)
    data = []
    for _ in range(12):
        n = rng.randint(1, 4)
        texts, labels = [], []
        for _ in range(n):
            if rng.random() < 0.5:
                texts.append(rng.choice(["aapple", "aanchor", "aamber"]))
                labels.append("A")
            else:
                texts.append(rng.choice(["bbanana", "bbeacon", "bbarrel"]))
                labels.append("B")
        data.append((texts, labels))
    return data


class TestTrain:
    def test_separable_toy_reaches_full_accuracy(self):
        data = separable_data()
        model = CrfModel.build(["A", "B"], [t for t, _ in data])
        train(model, data, TrainConfig(epochs=20, learning_rate=0.5, seed=0))
        for texts, labels in data:
            assert viterbi(model, texts) == labels

    def test_single_sequence_nll_to_zero(self):
        data = [(["aapple", "bbanana"], ["A", "B"])]
        model = CrfModel.build(["A", "B"], [data[0][0]])
        history = train(model, data, TrainConfig(epochs=200, learning_rate=1.0, seed=0))
        assert history[-1] < 1e-3

    def test_same_seed_same_weights(self):
        data = separable_data()
        weights = []
        for _ in range(2):
            model = CrfModel.build(["A", "B"], [t for t, _ in data])
            train(model, data, TrainConfig(epochs=3, learning_rate=0.2, seed=42))
            weights.append(model.weights.copy())
        assert np.array_equal(weights[0], weights[1])

    def test_nll_non_increasing_on_smoke_fixture(self):
        data = separable_data()
        model = CrfModel.build(["A", "B"], [t for t, _ in data])
        history = train(model, data,
                        TrainConfig(epochs=8, learning_rate=0.05, decay=0.01, seed=1))
        for before, after in zip(history, history[1:]):
            assert after <= before + 1e-9

    @pytest.mark.filterwarnings("ignore::RuntimeWarning")
    def test_divergence_aborts(self):
        # A step this large overflows the emission scores to inf, making the
        # NLL non-finite.
        data = [(["aapple"], ["A"])]
        model = CrfModel.build(["A", "B"], [data[0][0]])
        with pytest.raises(TrainingDiverged):
            train(model, data, TrainConfig(epochs=5, learning_rate=1e308, seed=0))

    def test_reported_history_matches_dataset_nll(self):
        data = separable_data()
        model = CrfModel.build(["A", "B"], [t for t, _ in data])
        history = train(model, data, TrainConfig(epochs=2, learning_rate=0.1, seed=0))
        assert history[-1] == pytest.approx(dataset_nll(model, data))


class TestSerialization:
    def test_round_trip_preserves_predictions(self, tmp_path):
        rng = random.Random(7)
        model, texts, _ = random_instance(rng)
        path = str(tmp_path / "model.json")
        model.save(path)
        loaded = CrfModel.load(path)
        assert loaded.labels == model.labels
        assert np.array_equal(loaded.weights, model.weights)
        assert viterbi(loaded, texts) == viterbi(model, texts)

    def test_unknown_version_rejected(self):
        from claimaug.errors import ValidationError
        with pytest.raises(ValidationError):
            CrfModel.from_dict({"format_version": 99})
