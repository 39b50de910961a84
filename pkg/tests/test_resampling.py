import numpy as np
import pytest

from ieegdec.errors import SingleClass, TooFewMinority
from ieegdec.resampling import ResamplePlan, smote


def imbalanced(n_min=16, n_maj=73, dim=18, seed=0):
    rng = np.random.default_rng(seed)
    X = np.vstack(
        [
            rng.standard_normal((n_min, dim)) + 2.0,
            rng.standard_normal((n_maj, dim)),
        ]
    )
    y = np.array([1] * n_min + [0] * n_maj)
    return X, y


class TestBalancing:
    def test_balanced_input_is_a_no_op(self):
        rng = np.random.default_rng(1)
        X = rng.standard_normal((20, 4))
        y = np.array([0, 1] * 10)
        X_aug, y_aug = smote(X, y, ResamplePlan(seed=3))
        assert np.array_equal(X_aug, X)
        assert np.array_equal(y_aug, y)

    def test_sixteen_to_seventy_three(self):
        X, y = imbalanced(16, 73)
        X_aug, y_aug = smote(X, y, ResamplePlan(seed=0))
        _, counts = np.unique(y_aug, return_counts=True)
        assert counts.tolist() == [73, 73]
        assert X_aug.shape == (146, 18)

    def test_originals_verbatim_and_first(self):
        X, y = imbalanced(5, 9, dim=3)
        X_aug, y_aug = smote(X, y, ResamplePlan(k_neighbors=3, seed=7))
        assert np.array_equal(X_aug[: len(X)], X)
        assert np.array_equal(y_aug[: len(y)], y)

    def test_two_point_minority_synthetic_on_segment(self):
        X = np.array([[0.0, 0.0], [1.0, 1.0], [5.0, 5.0], [6.0, 4.0], [7.0, 5.5]])
        y = np.array([1, 1, 0, 0, 0])
        X_aug, y_aug = smote(X, y, ResamplePlan(k_neighbors=1, seed=11))
        assert y_aug.tolist() == [1, 1, 0, 0, 0, 1]
        s = X_aug[-1]
        assert s[0] == pytest.approx(s[1])  # on the segment (d, d)
        assert 0.0 <= s[0] <= 1.0


class TestGeometry:
    def test_synthetic_points_are_convex_combinations_of_knn_pairs(self):
        n_min, k = 50, 5
        X, y = imbalanced(n_min, n_min + 1000, dim=6, seed=21)
        X_aug, y_aug = smote(X, y, ResamplePlan(k_neighbors=k, seed=22))
        synthetic = X_aug[len(X) :]
        assert synthetic.shape[0] == 1000

        # independent kNN re-derivation in standardized space
        minority = X[y == 1]
        mean, scale = X.mean(0), X.std(0)
        z = (minority - mean) / scale
        matched = np.zeros(len(synthetic), dtype=bool)
        bounded = np.zeros(len(synthetic), dtype=bool)
        for a in range(n_min):
            d2 = np.sum((z - z[a]) ** 2, axis=1)
            d2[a] = np.inf
            for b in np.argsort(d2, kind="stable")[:k]:
                direction = minority[b] - minority[a]
                norm2 = direction @ direction
                delta = (synthetic - minority[a]) @ direction / norm2
                residual = synthetic - minority[a] - np.outer(delta, direction)
                on_segment = (np.linalg.norm(residual, axis=1) < 1e-8) & (
                    delta >= -1e-12
                ) & (delta <= 1 + 1e-12)
                matched |= on_segment
                lo = np.minimum(minority[a], minority[b]) - 1e-9
                hi = np.maximum(minority[a], minority[b]) + 1e-9
                bounded |= on_segment & np.all((synthetic >= lo) & (synthetic <= hi), axis=1)
        assert matched.all()
        assert bounded.all()

    def test_majority_rows_untouched(self):
        X, y = imbalanced(4, 11, dim=3, seed=31)
        X_aug, y_aug = smote(X, y, ResamplePlan(k_neighbors=2, seed=32))
        assert np.array_equal(X_aug[y_aug == 0], X[y == 0])
        assert int(np.sum(y_aug == 0)) == 11


class TestDeterminismAndErrors:
    def test_deterministic_under_fixed_seed(self):
        X, y = imbalanced(8, 30, seed=41)
        a = smote(X, y, ResamplePlan(seed=5))[0]
        b = smote(X, y, ResamplePlan(seed=5))[0]
        assert np.array_equal(a, b)

    def test_different_seeds_differ(self):
        X, y = imbalanced(8, 30, seed=42)
        a = smote(X, y, ResamplePlan(seed=1))[0]
        b = smote(X, y, ResamplePlan(seed=2))[0]
        assert not np.array_equal(a, b)

    def test_single_class_rejected(self):
        X = np.zeros((5, 2))
        with pytest.raises(SingleClass):
            smote(X, np.zeros(5, dtype=int))

    def test_one_minority_row_rejected(self):
        X = np.random.default_rng(0).standard_normal((6, 2))
        y = np.array([0, 0, 0, 0, 0, 1])
        with pytest.raises(TooFewMinority):
            smote(X, y)

    def test_k_clipped_with_warning(self):
        X, y = imbalanced(3, 10, dim=2, seed=43)
        with pytest.warns(UserWarning, match="clipped"):
            X_aug, _ = smote(X, y, ResamplePlan(k_neighbors=5, seed=44))
        assert X_aug.shape[0] == 20

    def test_plan_validation(self):
        with pytest.raises(ValueError):
            ResamplePlan(k_neighbors=0)
