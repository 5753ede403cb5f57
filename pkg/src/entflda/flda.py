"""Fisher linear discriminant analysis for the two-class problem.

The discriminant direction is the closed form w ~ (S_W + eps I)^-1 (mu_+ -
mu_-); because the between-class scatter has rank 1 for two classes this is
exactly the top generalized eigenvector of (S_B, S_W + eps I), and
:func:`discriminant_direction_eig` keeps the eigensolver route available as
an independent check. Class order is fixed as (-1, +1) = (entangled,
separable) everywhere.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace

import numpy as np
import scipy.linalg

from .measure import Standardizer, apply_standardizer, fit_standardizer

CLASS_ORDER = (-1, 1)

# Ties this close to the threshold go to +1 (separable), the conservative call.
TIE_TOL = 1e-15


@dataclass(frozen=True)
class ScatterPair:
    """Between/within scatter matrices with the per-class statistics."""

    s_between: np.ndarray
    s_within: np.ndarray
    class_means: np.ndarray  # shape (2, n), rows in CLASS_ORDER
    overall_mean: np.ndarray
    class_counts: tuple


@dataclass(frozen=True)
class FldaModel:
    """A fitted discriminant: unit direction, projected means, threshold.

    ``projected_means`` follows CLASS_ORDER; the sign of ``w`` is fixed so
    the separable mean projects above the entangled one, and the threshold
    is their midpoint. The standardizer used at fit time is stored so
    projection of raw vectors reproduces training-time coordinates.
    """

    w: np.ndarray
    projected_means: tuple
    threshold: float
    epsilon: float
    fisher_j: float
    standardizer: Standardizer
    feature_names: tuple | None = None
    label_convention: str | None = None
    train_accuracy: float | None = None


def _check_labels(labels: np.ndarray) -> None:
    present = set(np.unique(labels).tolist())
    if not present.issubset({-1, 1}):
        raise ValueError(f"labels must be -1 or +1, got {sorted(present)}")
    if len(present) < 2:
        raise ValueError("need both classes present to fit a discriminant")


def compute_scatter(features: np.ndarray, labels: np.ndarray) -> ScatterPair:
    """Between- and within-class scatter sums.

    S_B = sum_i N_i (mu_i - mu)(mu_i - mu)^T over classes,
    S_W = sum_i sum_{x in C_i} (x - mu_i)(x - mu_i)^T.
    Singleton classes are legal; they simply contribute nothing to S_W.
    """
    x = np.asarray(features, dtype=float)
    y = np.asarray(labels)
    if x.ndim != 2 or x.shape[0] == 0:
        raise ValueError("feature matrix must be 2-D and nonempty")
    if y.shape != (x.shape[0],):
        raise ValueError(f"label vector shape {y.shape} does not match {x.shape[0]} rows")
    _check_labels(y)

    n_features = x.shape[1]
    overall_mean = x.mean(axis=0)
    s_b = np.zeros((n_features, n_features))
    s_w = np.zeros((n_features, n_features))
    means = []
    counts = []
    for cls in CLASS_ORDER:
        rows = x[y == cls]
        mu = rows.mean(axis=0)
        means.append(mu)
        counts.append(rows.shape[0])
        d = mu - overall_mean
        s_b += rows.shape[0] * np.outer(d, d)
        centered = rows - mu
        s_w += centered.T @ centered
    return ScatterPair(
        s_between=s_b,
        s_within=s_w,
        class_means=np.array(means),
        overall_mean=overall_mean,
        class_counts=tuple(counts),
    )


def default_epsilon(scatter: ScatterPair) -> float:
    """Ridge used when the caller does not pick one.

    With ample data (ten samples per feature or more) the inverse of S_W is
    trustworthy and the ridge is a numerical floor, 1e-6 of the mean
    diagonal. Below that ratio the smallest sample eigenvalues of S_W are
    badly underestimated and the inverse rotates the discriminant into
    noise directions, so the ridge jumps to 100x the mean diagonal, which
    lands the solution at its heavy-shrinkage limit (the class-mean
    difference in standardized coordinates).
    """
    mean_diag = float(np.mean(np.diag(scatter.s_within)))
    n_samples = sum(scatter.class_counts)
    n_features = scatter.s_within.shape[0]
    if n_samples >= 10 * n_features:
        return 1e-6 * mean_diag
    return 100.0 * mean_diag


def fisher_criterion(scatter: ScatterPair, w: np.ndarray, epsilon: float = 0.0) -> float:
    """J(w) = (w^T S_B w) / (w^T (S_W + eps I) w); scale invariant."""
    w = np.asarray(w, dtype=float)
    if np.all(w == 0):
        raise ValueError("direction vector is zero")
    numer = float(w @ scatter.s_between @ w)
    denom = float(w @ scatter.s_within @ w + epsilon * (w @ w))
    return numer / denom


def discriminant_direction_eig(scatter: ScatterPair, epsilon: float) -> np.ndarray:
    """Top generalized eigenvector of (S_B, S_W + eps I), unit norm.

    Verification path for the closed form; two-class scatter only.
    """
    if scatter.class_means.shape[0] != 2:
        raise ValueError("generalized eigensolver path supports two classes only")
    regularized = scatter.s_within + epsilon * np.eye(scatter.s_within.shape[0])
    vals, vecs = scipy.linalg.eigh(scatter.s_between, regularized)
    w = vecs[:, -1]
    w = w / np.linalg.norm(w)
    if w @ (scatter.class_means[1] - scatter.class_means[0]) < 0:
        w = -w
    return w


def fit(
    features: np.ndarray,
    labels: np.ndarray,
    epsilon: float | None = None,
    standardizer: str | Standardizer = "zscore",
    feature_names=None,
    label_convention: str | None = None,
) -> FldaModel:
    """Fit the two-class discriminant.

    ``standardizer`` is a mode name fit here on the given (training) rows,
    or an already-fit :class:`Standardizer`. ``epsilon`` defaults to 1e-6
    times the mean diagonal of S_W; pass an explicit value when the
    within-class scatter is degenerate (e.g. one sample per class).
    """
    x = np.asarray(features, dtype=float)
    y = np.asarray(labels)
    if isinstance(standardizer, Standardizer):
        std = standardizer
    else:
        std = fit_standardizer(x, mode=standardizer) if standardizer != "none" else Standardizer.identity(x.shape[1])
    xs = apply_standardizer(std, x)

    scatter = compute_scatter(xs, y)
    eps = default_epsilon(scatter) if epsilon is None else float(epsilon)
    if eps < 0:
        raise ValueError(f"epsilon must be nonnegative, got {eps}")

    delta = scatter.class_means[1] - scatter.class_means[0]
    if np.linalg.norm(delta) == 0.0:
        raise ValueError("class means coincide; no discriminant direction exists")
    regularized = scatter.s_within + eps * np.eye(xs.shape[1])
    try:
        w = np.linalg.solve(regularized, delta)
    except np.linalg.LinAlgError:
        raise ValueError(
            "within-class scatter is singular; regularize by passing a positive epsilon"
        ) from None
    norm = np.linalg.norm(w)
    if not np.isfinite(norm) or norm == 0.0:
        raise ValueError(
            "within-class scatter is numerically singular; increase epsilon"
        )
    w = w / norm
    if w @ delta < 0:
        w = -w

    projected = (float(w @ scatter.class_means[0]), float(w @ scatter.class_means[1]))
    threshold = 0.5 * (projected[0] + projected[1])
    model = FldaModel(
        w=w,
        projected_means=projected,
        threshold=threshold,
        epsilon=eps,
        fisher_j=fisher_criterion(scatter, w, eps),
        standardizer=std,
        feature_names=tuple(feature_names) if feature_names is not None else None,
        label_convention=label_convention,
    )
    return replace(model, train_accuracy=evaluate(model, x, y)["accuracy"])


def project(model: FldaModel, x: np.ndarray) -> float | np.ndarray:
    """Scalar projection w^T x after the model's standardizer."""
    xs = apply_standardizer(model.standardizer, x)
    y = xs @ model.w
    return float(y) if np.ndim(y) == 0 else y


def classify(model: FldaModel, x: np.ndarray) -> int | np.ndarray:
    """Label of the nearer projected class mean (midpoint threshold)."""
    y = project(model, x)
    pred = np.where(np.asarray(y) - model.threshold > -TIE_TOL, 1, -1)
    return int(pred) if np.ndim(pred) == 0 else pred


def evaluate(model: FldaModel, features: np.ndarray, labels: np.ndarray) -> dict:
    """Accuracy, threshold, Fisher value and confusion counts on a set.

    Confusion keys treat +1 (separable) as the positive class: tp/tn/fp/fn.
    """
    x = np.asarray(features, dtype=float)
    y = np.asarray(labels)
    if x.shape[0] == 0:
        raise ValueError("evaluation set is empty")
    if y.shape != (x.shape[0],):
        raise ValueError(f"label vector shape {y.shape} does not match {x.shape[0]} rows")
    pred = classify(model, x)
    accuracy = float(np.mean(pred == y))
    confusion = {
        "tp": int(np.sum((y == 1) & (pred == 1))),
        "tn": int(np.sum((y == -1) & (pred == -1))),
        "fp": int(np.sum((y == -1) & (pred == 1))),
        "fn": int(np.sum((y == 1) & (pred == -1))),
    }
    return {
        "accuracy": accuracy,
        "threshold": model.threshold,
        "fisher_j": model.fisher_j,
        "confusion": confusion,
    }


def model_to_document(model: FldaModel) -> dict:
    """JSON-ready dict; floats survive a round trip bit-exactly."""
    return {
        "w": [float(v) for v in model.w],
        "projected_means": [float(v) for v in model.projected_means],
        "threshold": float(model.threshold),
        "epsilon": float(model.epsilon),
        "fisher_j": float(model.fisher_j),
        "standardizer": model.standardizer.to_dict(),
        "feature_names": list(model.feature_names) if model.feature_names is not None else None,
        "label_convention": model.label_convention,
        "train_accuracy": float(model.train_accuracy) if model.train_accuracy is not None else None,
    }


def model_from_document(doc: dict) -> FldaModel:
    return FldaModel(
        w=np.asarray(doc["w"], dtype=float),
        projected_means=tuple(doc["projected_means"]),
        threshold=doc["threshold"],
        epsilon=doc["epsilon"],
        fisher_j=doc["fisher_j"],
        standardizer=Standardizer.from_dict(doc["standardizer"]),
        feature_names=tuple(doc["feature_names"]) if doc.get("feature_names") is not None else None,
        label_convention=doc.get("label_convention"),
        train_accuracy=doc.get("train_accuracy"),
    )


def save_model(model: FldaModel, path: str) -> None:
    """Write the model document atomically (temp file + rename)."""
    text = json.dumps(model_to_document(model), indent=2) + "\n"
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def load_model(path: str) -> FldaModel:
    with open(path, "r", encoding="utf-8") as fh:
        return model_from_document(json.load(fh))
