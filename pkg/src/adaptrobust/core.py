"""Shared domain types: points, labeled datasets, balls, classifiers, randomness.

Points live in R^d with the Euclidean metric; balls are open (membership is a
strict inequality). All randomness flows through explicitly passed
RandomStream objects, so every computation in the package can be replayed
bit-for-bit from a seed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Protocol, runtime_checkable

import numpy as np

Point = np.ndarray  # 1-D float64 array, length d >= 1
Label = int


def as_point(values) -> Point:
    """Coerce a coordinate sequence to a finite float64 point."""
    p = np.asarray(values, dtype=np.float64)
    if p.ndim != 1 or p.shape[0] < 1:
        raise ValueError(f"a point must be a 1-D sequence of length >= 1, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise ValueError("point coordinates must be finite")
    return p


def distance(p, q) -> float:
    """Euclidean (L2) distance between two points of equal dimension."""
    p = as_point(p)
    q = as_point(q)
    if p.shape[0] != q.shape[0]:
        raise ValueError(f"dimension mismatch: {p.shape[0]} vs {q.shape[0]}")
    return float(np.sqrt(np.sum((p - q) ** 2)))


def sq_dists_to(points: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Squared distances from every row of `points` to `q`.

    This kernel is the single source of point-to-point arithmetic for the
    nearest-neighbor machinery; accelerated index paths reuse it on subsets so
    their answers are bit-identical to a linear scan.
    """
    return np.sum((points - q) ** 2, axis=1)


class RandomStream:
    """Seeded random source with deterministic, platform-stable replay.

    Wraps PCG64 keyed by (seed, spawn_key). Equal key and equal call sequence
    give identical draws. `child` derives an independent stream from the key
    alone (not from the parent's draw position), so per-item child streams can
    be consumed in any order or in parallel without changing results.
    """

    def __init__(self, seed: int, spawn_key: tuple[int, ...] = ()):
        self.seed = int(seed)
        self.spawn_key = tuple(int(k) for k in spawn_key)
        self._gen = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(self.seed, spawn_key=self.spawn_key))
        )

    def child(self, *key: int) -> "RandomStream":
        return RandomStream(self.seed, self.spawn_key + key)

    def derive_seed(self) -> int:
        """A 64-bit integer seed determined by this stream's key alone."""
        ss = np.random.SeedSequence(self.seed, spawn_key=self.spawn_key)
        return int(ss.generate_state(1, np.uint64)[0])

    def uniform(self, size=None):
        """Draws in [0, 1)."""
        return self._gen.random(size)

    def normal(self, size=None):
        return self._gen.standard_normal(size)

    def integers(self, low: int, high: int, size=None):
        return self._gen.integers(low, high, size=size)

    def permutation(self, n: int) -> np.ndarray:
        return self._gen.permutation(n)

    def __repr__(self):
        return f"RandomStream(seed={self.seed}, spawn_key={self.spawn_key})"


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """A finite labeled sample: points (n, d), integer labels (n,).

    `diameter_bound` is an upper bound on pairwise distances and doubles as
    the sentinel value for nearest-opposite-label distances on single-class
    data. Defaults to max(sqrt(d), bounding-box diagonal), which is sqrt(d)
    for data normalized to [0, 1]^d.
    """

    points: np.ndarray
    labels: np.ndarray
    diameter_bound: float = 0.0

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        labs = np.asarray(self.labels, dtype=np.int64)
        if pts.ndim != 2 or pts.shape[1] < 1:
            raise ValueError(f"points must have shape (n, d) with d >= 1, got {pts.shape}")
        if labs.ndim != 1 or labs.shape[0] != pts.shape[0]:
            raise ValueError("labels must be a 1-D array matching the number of points")
        if pts.size and not np.all(np.isfinite(pts)):
            raise ValueError("all coordinates must be finite")
        if labs.size and labs.min() < 0:
            raise ValueError("labels must be nonnegative integers")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "labels", labs)
        if self.diameter_bound <= 0.0:
            object.__setattr__(self, "diameter_bound", _default_diameter(pts))

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def item(self, i: int) -> tuple[Point, Label]:
        return self.points[i], int(self.labels[i])

    def classes(self) -> np.ndarray:
        return np.unique(self.labels)

    def subset(self, idx) -> "LabeledDataset":
        return LabeledDataset(self.points[idx], self.labels[idx], self.diameter_bound)


def _default_diameter(points: np.ndarray) -> float:
    d = points.shape[1]
    if points.shape[0] == 0:
        return math.sqrt(d)
    span = points.max(axis=0) - points.min(axis=0)
    return max(math.sqrt(d), float(np.sqrt(np.sum(span**2))))


@dataclass(frozen=True, eq=False)
class LabeledBall:
    """An open ball with a constant label: {z : ||z - center|| < radius} -> label."""

    center: np.ndarray
    radius: float
    label: int

    def __post_init__(self):
        c = as_point(self.center)
        object.__setattr__(self, "center", c)
        if not (math.isfinite(self.radius) and self.radius >= 0.0):
            raise ValueError("ball radius must be finite and >= 0")

    def contains(self, x) -> bool:
        return distance(self.center, x) < self.radius


@runtime_checkable
class Classifier(Protocol):
    """A total deterministic predictor. Implementations may also provide
    `predict_batch(X) -> np.ndarray` for vectorized evaluation."""

    def predict(self, x: Point) -> Label: ...


def predict_batch(h: Classifier, X: np.ndarray) -> np.ndarray:
    """Evaluate `h` on rows of X, using its batch path when available."""
    X = np.asarray(X, dtype=np.float64)
    batch = getattr(h, "predict_batch", None)
    if batch is not None:
        return np.asarray(batch(X), dtype=np.int64)
    return np.fromiter((h.predict(x) for x in X), dtype=np.int64, count=X.shape[0])


@dataclass(frozen=True)
class FuncClassifier:
    """Wrap a plain function of one point as a Classifier."""

    fn: object
    name: str = "func"

    def predict(self, x) -> int:
        return int(self.fn(np.asarray(x, dtype=np.float64)))
