"""Tests for the Fisher discriminant core."""

import json

import numpy as np
import pytest

from entflda.flda import (
    FldaModel,
    classify,
    compute_scatter,
    discriminant_direction_eig,
    evaluate,
    fisher_criterion,
    fit,
    load_model,
    model_from_document,
    model_to_document,
    project,
    save_model,
)


def two_gaussian_problem(rng, n_features=6, n_per_class=150, separation=3.0):
    """Well-conditioned synthetic two-class data."""
    basis = rng.normal(size=(n_features, n_features))
    cov_root = basis / np.sqrt(n_features) + 0.8 * np.eye(n_features)
    mu = rng.normal(size=n_features)
    delta = rng.normal(size=n_features)
    delta *= separation / np.linalg.norm(delta)
    x_neg = rng.normal(size=(n_per_class, n_features)) @ cov_root.T + mu
    x_pos = rng.normal(size=(n_per_class, n_features)) @ cov_root.T + mu + delta
    features = np.vstack([x_neg, x_pos])
    labels = np.array([-1] * n_per_class + [1] * n_per_class)
    return features, labels


class TestComputeScatter:
    def test_two_singletons_hand_expansion(self):
        features = np.array([[0.0, 0.0], [1.0, 0.0]])
        labels = np.array([-1, 1])
        scatter = compute_scatter(features, labels)
        np.testing.assert_allclose(scatter.s_within, np.zeros((2, 2)))
        np.testing.assert_allclose(scatter.s_between, 0.5 * np.array([[1.0, 0.0], [0.0, 0.0]]))
        np.testing.assert_allclose(scatter.overall_mean, [0.5, 0.0])
        assert scatter.class_counts == (1, 1)

    def test_identical_samples(self):
        features = np.ones((6, 3))
        labels = np.array([-1, -1, -1, 1, 1, 1])
        scatter = compute_scatter(features, labels)
        np.testing.assert_allclose(scatter.s_between, 0.0, atol=1e-12)
        np.testing.assert_allclose(scatter.s_within, 0.0, atol=1e-12)

    def test_translation_invariance(self):
        rng = np.random.default_rng(10)
        x, y = two_gaussian_problem(rng)
        shifted = compute_scatter(x + 17.3, y)
        base = compute_scatter(x, y)
        np.testing.assert_allclose(shifted.s_between, base.s_between, atol=1e-8)
        np.testing.assert_allclose(shifted.s_within, base.s_within, atol=1e-8)

    def test_single_class_rejected(self):
        with pytest.raises(ValueError, match="both classes"):
            compute_scatter(np.ones((4, 2)), np.array([1, 1, 1, 1]))

    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="nonempty"):
            compute_scatter(np.empty((0, 2)), np.array([]))

    def test_bad_labels_rejected(self):
        with pytest.raises(ValueError, match="labels"):
            compute_scatter(np.ones((2, 2)), np.array([0, 1]))


class TestFit:
    def test_one_dimensional_clusters(self):
        features = np.array([[-1.1], [-0.9], [0.9], [1.1]])
        labels = np.array([-1, -1, 1, 1])
        model = fit(features, labels, standardizer="none")
        assert abs(abs(model.w[0]) - 1.0) < 1e-12
        assert abs(model.threshold) < 1e-12
        assert model.train_accuracy == 1.0
        # brute-force threshold scan oracle
        best = max(
            np.mean(np.where(features[:, 0] > t, 1, -1) == labels) for t in np.linspace(-2, 2, 401)
        )
        assert model.train_accuracy == best

    def test_isotropic_within_scatter_gives_mean_difference(self):
        # cross-shaped clusters have exactly isotropic S_W
        cross = np.array([[0.3, 0.0], [-0.3, 0.0], [0.0, 0.3], [0.0, -0.3]])
        mu_neg, mu_pos = np.array([0.0, 0.0]), np.array([2.0, 1.0])
        features = np.vstack([cross + mu_neg, cross + mu_pos])
        labels = np.array([-1] * 4 + [1] * 4)
        model = fit(features, labels, epsilon=1e-9, standardizer="none")
        direction = (mu_pos - mu_neg) / np.linalg.norm(mu_pos - mu_neg)
        assert abs(model.w @ direction) > 1 - 1e-6

    def test_degenerate_scatter_regularized(self):
        features = np.array([[0.0, 1.0], [2.0, 3.0]])
        labels = np.array([-1, 1])
        model = fit(features, labels, epsilon=1e-6, standardizer="none")
        delta = features[1] - features[0]
        np.testing.assert_allclose(model.w, delta / np.linalg.norm(delta), atol=1e-9)

    def test_sign_convention(self):
        rng = np.random.default_rng(20)
        x, y = two_gaussian_problem(rng)
        model = fit(x, y)
        assert model.projected_means[1] > model.projected_means[0]
        assert model.projected_means[0] < model.threshold < model.projected_means[1]

    def test_unit_norm(self):
        rng = np.random.default_rng(21)
        x, y = two_gaussian_problem(rng)
        model = fit(x, y)
        assert abs(np.linalg.norm(model.w) - 1.0) < 1e-12

    def test_identical_means_rejected(self):
        rows = np.array([[0.0, 1.0], [0.0, -1.0]])
        with pytest.raises(ValueError, match="means coincide"):
            fit(np.vstack([rows, rows]), np.array([-1, -1, 1, 1]), standardizer="none")

    def test_negative_epsilon_rejected(self):
        with pytest.raises(ValueError, match="nonnegative"):
            fit(np.array([[0.0], [1.0]]), np.array([-1, 1]), epsilon=-1.0)


class TestProjectClassify:
    def test_project_class_mean_hits_projected_mean(self):
        rng = np.random.default_rng(30)
        x, y = two_gaussian_problem(rng)
        model = fit(x, y, standardizer="zscore")
        from entflda.measure import apply_standardizer

        mu_pos_std = apply_standardizer(model.standardizer, x[y == 1]).mean(axis=0)
        assert abs(mu_pos_std @ model.w - model.projected_means[1]) < 1e-12

    def test_linearity_without_standardizer(self):
        rng = np.random.default_rng(31)
        x, y = two_gaussian_problem(rng)
        model = fit(x, y, standardizer="none")
        a, b = rng.normal(size=(2, x.shape[1]))
        assert abs(project(model, a + b) - project(model, a) - project(model, b)) < 1e-12

    def test_zero_vector_projects_to_zero(self):
        rng = np.random.default_rng(32)
        x, y = two_gaussian_problem(rng)
        model = fit(x, y, standardizer="none")
        assert project(model, np.zeros(x.shape[1])) == 0.0

    def test_tie_resolves_separable(self):
        model = FldaModel(
            w=np.array([1.0]),
            projected_means=(-1.0, 1.0),
            threshold=0.0,
            epsilon=0.0,
            fisher_j=1.0,
            standardizer=__import__("entflda.measure", fromlist=["Standardizer"]).Standardizer.identity(1),
        )
        assert classify(model, np.array([0.0])) == 1
        assert classify(model, np.array([-1e-12])) == -1
        assert classify(model, np.array([1.0])) == 1
        assert classify(model, np.array([-1.0])) == -1

    def test_matches_nearest_projected_mean(self):
        rng = np.random.default_rng(33)
        x, y = two_gaussian_problem(rng)
        model = fit(x, y)
        yproj = project(model, x)
        nearest = np.where(
            np.abs(yproj - model.projected_means[1]) <= np.abs(yproj - model.projected_means[0]), 1, -1
        )
        np.testing.assert_array_equal(classify(model, x), nearest)


class TestFisherCriterion:
    def test_scale_invariance(self):
        rng = np.random.default_rng(40)
        x, y = two_gaussian_problem(rng)
        scatter = compute_scatter(x, y)
        w = rng.normal(size=x.shape[1])
        assert abs(fisher_criterion(scatter, 2 * w, 1e-3) - fisher_criterion(scatter, w, 1e-3)) < 1e-12

    def test_orthogonal_direction_scores_zero(self):
        cross = np.array([[0.3, 0.0], [-0.3, 0.0], [0.0, 0.3], [0.0, -0.3]])
        features = np.vstack([cross, cross + np.array([2.0, 0.0])])
        labels = np.array([-1] * 4 + [1] * 4)
        scatter = compute_scatter(features, labels)
        assert fisher_criterion(scatter, np.array([0.0, 1.0]), 0.0) < 1e-12

    def test_fitted_direction_beats_random(self):
        rng = np.random.default_rng(41)
        x, y = two_gaussian_problem(rng)
        model = fit(x, y, standardizer="none")
        scatter = compute_scatter(x, y)
        j_fit = fisher_criterion(scatter, model.w, model.epsilon)
        for _ in range(100):
            j_rand = fisher_criterion(scatter, rng.normal(size=x.shape[1]), model.epsilon)
            assert j_fit >= j_rand - 1e-10

    def test_zero_vector_rejected(self):
        rng = np.random.default_rng(42)
        x, y = two_gaussian_problem(rng)
        with pytest.raises(ValueError, match="zero"):
            fisher_criterion(compute_scatter(x, y), np.zeros(x.shape[1]), 0.0)

    def test_two_class_rank_one_identity(self):
        # J == (w . delta)^2 * (N- N+ / N) / (w (S_W + eps I) w)
        rng = np.random.default_rng(43)
        x, y = two_gaussian_problem(rng, n_per_class=80)
        scatter = compute_scatter(x, y)
        model = fit(x, y, standardizer="none")
        delta = scatter.class_means[1] - scatter.class_means[0]
        n_neg, n_pos = scatter.class_counts
        normalizer = n_neg * n_pos / (n_neg + n_pos)
        denom = model.w @ scatter.s_within @ model.w + model.epsilon
        expected = (model.w @ delta) ** 2 * normalizer / denom
        assert abs(model.fisher_j - expected) < 1e-8 * max(1.0, expected)


class TestSolverEquivalence:
    def test_closed_form_matches_generalized_eigenvector(self):
        rng = np.random.default_rng(50)
        for _ in range(50):
            x, y = two_gaussian_problem(rng, n_features=int(rng.integers(2, 9)))
            scatter = compute_scatter(x, y)
            eps = 1e-6 * float(np.mean(np.diag(scatter.s_within)))
            model = fit(x, y, epsilon=eps, standardizer="none")
            w_eig = discriminant_direction_eig(scatter, eps)
            assert abs(model.w @ w_eig) >= 1 - 1e-8


class TestAffineInvariance:
    def test_decisions_invariant_under_affine_map(self):
        rng = np.random.default_rng(60)
        x, y = two_gaussian_problem(rng)
        x_eval = rng.normal(size=(50, x.shape[1])) + x.mean(axis=0)
        model = fit(x, y, epsilon=0.0, standardizer="none")
        base = classify(model, x_eval)
        for _ in range(5):
            a = rng.normal(size=(x.shape[1], x.shape[1])) + 2 * np.eye(x.shape[1])
            b = rng.normal(size=x.shape[1])
            mapped_model = fit(x @ a + b, y, epsilon=0.0, standardizer="none")
            np.testing.assert_array_equal(classify(mapped_model, x_eval @ a + b), base)


class TestEvaluate:
    def test_perfect_separation(self):
        features = np.array([[-2.0], [-1.5], [1.5], [2.0]])
        labels = np.array([-1, -1, 1, 1])
        model = fit(features, labels, standardizer="none")
        metrics = evaluate(model, features, labels)
        assert metrics["accuracy"] == 1.0
        assert metrics["confusion"] == {"tp": 2, "tn": 2, "fp": 0, "fn": 0}

    def test_flipped_labels_complement(self):
        rng = np.random.default_rng(70)
        x, y = two_gaussian_problem(rng, separation=1.0)
        model = fit(x, y)
        acc = evaluate(model, x, y)["accuracy"]
        flipped = evaluate(model, x, -y)["accuracy"]
        assert abs(acc + flipped - 1.0) < 1e-12

    def test_empty_rejected(self):
        rng = np.random.default_rng(71)
        x, y = two_gaussian_problem(rng)
        model = fit(x, y)
        with pytest.raises(ValueError, match="empty"):
            evaluate(model, np.empty((0, x.shape[1])), np.array([]))

    def test_accuracy_beats_random_direction_with_best_threshold(self):
        rng = np.random.default_rng(72)
        wins = 0
        trials = 40
        for _ in range(trials):
            x, y = two_gaussian_problem(rng, n_features=5, n_per_class=60, separation=1.5)
            model = fit(x, y, standardizer="none")
            w_rand = rng.normal(size=5)
            proj = x @ (w_rand / np.linalg.norm(w_rand))
            cuts = np.concatenate([proj - 1e-9, proj + 1e-9])
            best_rand = max(
                max(np.mean(np.where(proj > t, 1, -1) == y), np.mean(np.where(proj > t, -1, 1) == y))
                for t in cuts
            )
            if model.train_accuracy >= best_rand:
                wins += 1
        assert wins >= 0.95 * trials


class TestSerialization:
    def test_document_round_trip_bit_exact(self):
        rng = np.random.default_rng(80)
        x, y = two_gaussian_problem(rng)
        model = fit(x, y, feature_names=[f"f{i}" for i in range(x.shape[1])], label_convention="paper")
        doc = model_to_document(model)
        text = json.dumps(doc, indent=2)
        again = json.dumps(model_to_document(model_from_document(json.loads(text))), indent=2)
        assert again == text

    def test_file_round_trip_preserves_decisions(self, tmp_path):
        rng = np.random.default_rng(81)
        x, y = two_gaussian_problem(rng)
        model = fit(x, y)
        path = tmp_path / "model.json"
        save_model(model, str(path))
        loaded = load_model(str(path))
        np.testing.assert_array_equal(loaded.w, model.w)
        assert loaded.threshold == model.threshold
        np.testing.assert_array_equal(classify(loaded, x), classify(model, x))
