import numpy as np
import pytest

from ieegdec.classifiers import Hyperparameters, fit, predict, predict_score
from ieegdec.ensemble import (
    ChannelModel,
    EnsembleModel,
    best_channel,
    ensemble_from_dict,
    ensemble_to_dict,
    exhaustive_best_subset,
    greedy_select,
    majority_vote,
    predict_ensemble,
    select_from_votes,
)
from ieegdec.errors import Empty, MissingChannel, ShapeMismatch
from ieegdec.evaluation import f1_binary


def vote_oracle(votes, scores):
    """Row-by-row counting oracle with the documented tie rules."""
    out = []
    for v, s in zip(votes, scores):
        ones = sum(1 for b in v if b == 1)
        zeros = len(v) - ones
        if ones > zeros:
            out.append(1)
        elif zeros > ones:
            out.append(0)
        else:
            mean_pos = np.mean([si for si, vi in zip(s, v) if vi == 1])
            mean_neg = np.mean([si for si, vi in zip(s, v) if vi == 0])
            if abs(mean_pos - 0.5) > abs(mean_neg - 0.5):
                out.append(1)
            elif abs(mean_neg - 0.5) > abs(mean_pos - 0.5):
                out.append(0)
            else:
                out.append(v[0])
    return np.array(out)


def random_vote_fixture(rng, n_rows=None, n_members=None):
    n = n_rows or int(rng.integers(1, 12))
    m = n_members or int(rng.integers(1, 8))
    votes = rng.integers(0, 2, size=(n, m))
    scores = np.where(votes == 1, rng.uniform(0.5, 1.0, (n, m)), rng.uniform(0.0, 0.5, (n, m)))
    return votes, scores


class TestBestChannel:
    def _models(self, f1s):
        return [ChannelModel(i, None, f) for i, f in enumerate(f1s)]

    def test_argmax(self):
        assert best_channel(self._models([0.6, 0.9, 0.7])).channel_index == 1

    def test_tie_takes_lowest_index(self):
        assert best_channel(self._models([0.8, 0.8])).channel_index == 0

    def test_single(self):
        assert best_channel(self._models([0.3])).channel_index == 0

    def test_empty(self):
        with pytest.raises(Empty):
            best_channel([])


class TestMajorityVote:
    def test_simple_majority(self):
        votes = np.array([[1, 1, 0]])
        scores = np.array([[0.9, 0.8, 0.2]])
        assert majority_vote(votes, scores).tolist() == [1]

    def test_tie_goes_to_score_farther_from_half(self):
        votes = np.array([[1, 0]])
        scores = np.array([[0.9, 0.4]])
        assert majority_vote(votes, scores).tolist() == [1]
        votes = np.array([[1, 0]])
        scores = np.array([[0.6, 0.1]])
        assert majority_vote(votes, scores).tolist() == [0]

    def test_double_tie_follows_first_member(self):
        votes = np.array([[0, 1]])
        scores = np.array([[0.3, 0.7]])  # both 0.2 from the midpoint
        assert majority_vote(votes, scores).tolist() == [0]

    def test_matches_counting_oracle(self):
        rng = np.random.default_rng(50)
        for _ in range(500):
            votes, scores = random_vote_fixture(rng)
            got = majority_vote(votes, scores)
            np.testing.assert_array_equal(got, vote_oracle(votes, scores))

    def test_odd_members_never_tie(self):
        rng = np.random.default_rng(51)
        for _ in range(100):
            votes, scores = random_vote_fixture(rng, n_members=int(rng.integers(1, 4)) * 2 + 1)
            got = majority_vote(votes, scores)
            plain_count = (votes.sum(axis=1) * 2 > votes.shape[1]).astype(int)
            np.testing.assert_array_equal(got, plain_count)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            majority_vote(np.zeros((3, 2), dtype=int), np.zeros((3, 3)))
        with pytest.raises(ShapeMismatch):
            majority_vote(np.zeros((3, 0), dtype=int), np.zeros((3, 0)))


class TestGreedySelection:
    def test_single_channel(self):
        rng = np.random.default_rng(60)
        votes, scores = random_vote_fixture(rng, n_rows=20, n_members=1)
        selected, history = select_from_votes(votes, scores, rng.integers(0, 2, 20))
        assert selected == [0]
        assert len(history) == 1

    def test_starts_from_best_single_and_never_degrades(self):
        rng = np.random.default_rng(61)
        y = rng.integers(0, 2, 40)
        votes = rng.integers(0, 2, (40, 5))
        votes[:, 2] = np.where(rng.uniform(size=40) < 0.9, y, 1 - y)  # informative
        votes[:, 4] = np.where(rng.uniform(size=40) < 0.85, y, 1 - y)
        scores = np.where(votes == 1, 0.8, 0.2)
        selected, history = select_from_votes(votes, scores, y)
        singles = [f1_binary(y, votes[:, c]) for c in range(5)]
        assert history[0] == max(singles)
        assert selected[0] == int(np.argmax(singles))
        assert history[-1] >= history[0]

    def test_history_strictly_increasing(self):
        rng = np.random.default_rng(62)
        for _ in range(30):
            votes, scores = random_vote_fixture(rng, n_rows=25, n_members=6)
            y = rng.integers(0, 2, 25)
            _, history = select_from_votes(votes, scores, y)
            assert all(b > a for a, b in zip(history, history[1:]))

    def test_bounded_by_exhaustive_search(self):
        rng = np.random.default_rng(63)
        for _ in range(30):
            votes, scores = random_vote_fixture(rng, n_rows=25, n_members=6)
            y = rng.integers(0, 2, 25)
            selected, history = select_from_votes(votes, scores, y)
            singles = [f1_binary(y, votes[:, c]) for c in range(votes.shape[1])]
            best_subset_f1, _ = exhaustive_best_subset(votes, scores, y)
            assert history[-1] >= max(singles) - 1e-12
            assert history[-1] <= best_subset_f1 + 1e-12

    def test_max_channels_cap(self):
        rng = np.random.default_rng(64)
        votes, scores = random_vote_fixture(rng, n_rows=30, n_members=7)
        y = rng.integers(0, 2, 30)
        selected, _ = select_from_votes(votes, scores, y, max_channels=2)
        assert len(selected) <= 2

    def test_exhaustive_refuses_large_inputs(self):
        votes = np.zeros((4, 13), dtype=int)
        with pytest.raises(ValueError):
            exhaustive_best_subset(votes, np.zeros((4, 13)), np.zeros(4, dtype=int))


def trained_channel_models(seed=70, n_channels=3, n_trials=60, informative=(0, 1)):
    """Real fitted models on per-channel matrices with planted signal."""
    rng = np.random.default_rng(seed)
    y = rng.integers(0, 2, n_trials)
    X_val_per_channel = {}
    models = []
    feats = []
    for ch in range(n_channels):
        X = rng.standard_normal((n_trials, 18))
        if ch in informative:
            X[:, 0] += (2.0 - 0.4 * ch) * y
        feats.append(X)
        model = fit("logistic_regression", X, y, Hyperparameters(seed=seed + ch))
        val_f1 = f1_binary(y, predict(model, X))
        models.append(ChannelModel(ch, model, val_f1))
        X_val_per_channel[ch] = X
    return models, X_val_per_channel, y, feats


class TestGreedySelectWrapper:
    def test_permutation_invariant(self):
        models, X_val, y, _ = trained_channel_models()
        a = greedy_select(models, X_val, y)
        b = greedy_select(list(reversed(models)), X_val, y)
        assert a.selected == b.selected
        assert a.history == b.history

    def test_ensemble_invariants(self):
        models, X_val, y, _ = trained_channel_models()
        ens = greedy_select(models, X_val, y)
        assert len(ens.selected) == len(set(ens.selected))
        singles = [m.validation_f1 for m in models]
        assert ens.history[0] == max(singles)
        assert all(b > a for a, b in zip(ens.history, ens.history[1:]))


class TestPredictEnsemble:
    def test_single_member_equals_member_predict(self):
        models, X_val, y, feats = trained_channel_models(informative=(0,))
        ens = EnsembleModel([0], [models[0]], [models[0].validation_f1])
        out = predict_ensemble(ens, {0: feats[0]})
        np.testing.assert_array_equal(out, predict(models[0].model, feats[0]))

    def test_all_agree(self):
        models, X_val, y, feats = trained_channel_models()
        ens = EnsembleModel([0, 1, 2], models, [0.5, 0.6, 0.7])
        strong = np.tile(np.linspace(5, 6, 18), (4, 1))  # far positive for every member
        out = predict_ensemble(ens, {0: strong, 1: strong, 2: strong})
        member_preds = [predict(m.model, strong) for m in models]
        if all(np.array_equal(member_preds[0], p) for p in member_preds):
            np.testing.assert_array_equal(out, member_preds[0])

    def test_composition_matches_majority_vote(self):
        models, X_val, y, feats = trained_channel_models()
        ens = EnsembleModel([0, 1, 2], models, [0.5, 0.6, 0.7])
        probe = {ch: feats[ch][:10] for ch in range(3)}
        out = predict_ensemble(ens, probe)
        scores = np.column_stack([predict_score(m.model, probe[m.channel_index]) for m in models])
        votes = (scores > 0.5).astype(int)
        np.testing.assert_array_equal(out, majority_vote(votes, scores))

    def test_missing_channel(self):
        models, X_val, y, feats = trained_channel_models()
        ens = EnsembleModel([0, 2], [models[0], models[2]], [0.5, 0.6])
        with pytest.raises(MissingChannel) as exc:
            predict_ensemble(ens, {0: feats[0]})
        assert exc.value.channel_indices == [2]


class TestEnsembleModelChecks:
    def test_empty_selected_rejected(self):
        with pytest.raises(Empty):
            EnsembleModel([], [], [])

    def test_duplicates_rejected(self):
        models, _, _, _ = trained_channel_models(n_channels=2, informative=(0,))
        with pytest.raises(ValueError):
            EnsembleModel([0, 0], [models[0], models[0]], [0.5, 0.5])

    def test_serialization_round_trip(self, tmp_path):
        models, X_val, y, feats = trained_channel_models()
        ens = greedy_select(models, X_val, y)
        doc = ensemble_to_dict(ens)
        clone = ensemble_from_dict(doc)
        assert clone.selected == ens.selected
        assert clone.history == ens.history
        probe = {ch: feats[ch][:8] for ch in ens.selected}
        np.testing.assert_array_equal(predict_ensemble(clone, probe), predict_ensemble(ens, probe))
