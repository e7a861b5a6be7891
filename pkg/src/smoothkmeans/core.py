"""Dense data containers, pairwise distances, normalization, and imbalance stats.

Everything downstream works on plain float64 numpy arrays:

* data matrix ``X``: shape (n_points, n_features), finite entries
* centroid set ``C``: shape (n_clusters, n_features)
* distance matrix ``D``: shape (n_clusters, n_points) of *half* squared
  Euclidean distances
* label vector: shape (n_points,) of integers in [0, n_clusters)

All functions here are pure; arrays are never mutated in place.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np


class DimensionMismatch(ValueError):
    """Raised when array shapes are incompatible for an operation."""


def as_data_matrix(values, name: str = "X") -> np.ndarray:
    """Validate and convert to a float64 (N, P) matrix with finite entries."""
    X = np.asarray(values, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
        raise ValueError(f"{name} must be a non-empty 2-D matrix, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError(f"{name} contains non-finite entries")
    return X


def as_centroid_set(values, n_features: int | None = None) -> np.ndarray:
    """Validate and convert to a float64 (K, P) centroid matrix."""
    C = as_data_matrix(values, name="centroids")
    if n_features is not None and C.shape[1] != n_features:
        raise DimensionMismatch(
            f"centroids have {C.shape[1]} features, data has {n_features}"
        )
    return C


def as_label_vector(values, n_clusters: int | None = None) -> np.ndarray:
    labels = np.asarray(values)
    if labels.ndim != 1:
        raise ValueError(f"labels must be 1-D, got shape {labels.shape}")
    labels = labels.astype(np.int64)
    if labels.size and labels.min() < 0:
        raise ValueError("labels must be non-negative")
    if n_clusters is not None and labels.size and labels.max() >= n_clusters:
        raise ValueError(f"label {labels.max()} out of range for {n_clusters} clusters")
    return labels


def squared_distances(X: np.ndarray, C: np.ndarray) -> np.ndarray:
    """Half squared Euclidean distances, shape (K, N).

    Entry (k, n) is 0.5 * ||x_n - c_k||^2.  Computed from explicit
    differences (not the dot-product expansion) so a point coinciding with
    a centroid yields an exact zero.
    """
    X = as_data_matrix(X)
    C = as_centroid_set(C, n_features=X.shape[1])
    diff = C[:, None, :] - X[None, :, :]
    return 0.5 * np.einsum("knp,knp->kn", diff, diff)


def zscore_normalize(X: np.ndarray):
    """Standardize each feature to zero mean and unit variance.

    Uses the population (1/N) standard deviation.  Constant features are
    mapped to all-zeros with a sentinel std of 1.0 so they drop out of all
    distance computations.

    Returns
    -------
    (X_normalized, means, stds) : the fitted statistics can be re-applied
    to held-out rows with :func:`apply_zscore`.
    """
    X = as_data_matrix(X)
    if X.shape[0] < 2:
        raise ValueError("normalization needs at least 2 rows")
    means = X.mean(axis=0)
    stds = X.std(axis=0)
    constant = np.ptp(X, axis=0) == 0.0
    stds = np.where(constant, 1.0, stds)
    Xn = (X - means) / stds
    Xn[:, constant] = 0.0
    return Xn, means, stds


def apply_zscore(X: np.ndarray, means: np.ndarray, stds: np.ndarray) -> np.ndarray:
    """Apply previously fitted normalization statistics to fresh rows."""
    X = as_data_matrix(X)
    means = np.asarray(means, dtype=np.float64)
    stds = np.asarray(stds, dtype=np.float64)
    if means.shape != (X.shape[1],) or stds.shape != (X.shape[1],):
        raise DimensionMismatch("normalization statistics do not match data width")
    return (X - means) / stds


def coefficient_of_variation(class_sizes) -> float:
    """Sample std of class sizes divided by their mean.

    The standard deviation uses the (K-1) denominator.  Values above ~0.7
    mark a dataset as imbalanced in this package's protocol.
    """
    sizes = np.asarray(class_sizes, dtype=np.float64)
    if sizes.ndim != 1 or sizes.size < 2:
        raise ValueError("coefficient of variation needs at least 2 class sizes")
    if np.any(sizes < 1):
        raise ValueError("class sizes must be >= 1")
    mean = sizes.mean()
    s = np.sqrt(((sizes - mean) ** 2).sum() / (sizes.size - 1))
    return float(s / mean)


# ---------------------------------------------------------------------------
# CSV interchange.
#
# Data files: one row per observation, optional header line, optional final
# integer column named ``label`` (only recognized when a header is present).
# Label files: a single column of integers, optional ``label`` header.
# ---------------------------------------------------------------------------

LABEL_COLUMN = "label"


def _looks_like_header(fields) -> bool:
    for f in fields:
        try:
            float(f)
        except ValueError:
            return True
    return False


def read_data_csv(path):
    """Read a data CSV; returns (X, labels_or_None, feature_names_or_None)."""
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        for row in reader:
            if row:
                rows.append([f.strip() for f in row])
    if not rows:
        raise ValueError(f"{path}: empty CSV")
    header = None
    if _looks_like_header(rows[0]):
        header = rows[0]
        rows = rows[1:]
        if not rows:
            raise ValueError(f"{path}: header but no data rows")
    has_labels = header is not None and header[-1] == LABEL_COLUMN
    data = np.array([[float(f) for f in row] for row in rows], dtype=np.float64)
    if has_labels:
        labels = as_label_vector(data[:, -1])
        X = as_data_matrix(data[:, :-1], name=str(path))
        names = header[:-1]
    else:
        labels = None
        X = as_data_matrix(data, name=str(path))
        names = header
    return X, labels, names


def write_data_csv(path, X: np.ndarray, labels=None, feature_names=None) -> None:
    X = as_data_matrix(X)
    if feature_names is None:
        feature_names = [f"f{j}" for j in range(X.shape[1])]
    header = list(feature_names)
    if labels is not None:
        labels = as_label_vector(labels)
        if labels.shape[0] != X.shape[0]:
            raise DimensionMismatch("labels length does not match row count")
        header.append(LABEL_COLUMN)
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for i in range(X.shape[0]):
            row = [repr(v) for v in X[i]]
            if labels is not None:
                row.append(str(int(labels[i])))
            writer.writerow(row)


def read_labels_csv(path) -> np.ndarray:
    """Read a single-column label file (optional ``label`` header)."""
    values = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row:
                continue
            field = row[-1].strip()
            if field == LABEL_COLUMN:
                continue
            values.append(int(float(field)))
    if not values:
        raise ValueError(f"{path}: no labels found")
    return as_label_vector(values)


def write_labels_csv(path, labels) -> None:
    labels = as_label_vector(labels)
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow([LABEL_COLUMN])
        for v in labels:
            writer.writerow([int(v)])
