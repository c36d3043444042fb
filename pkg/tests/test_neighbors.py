import math

import numpy as np
import pytest

from adaptrobust.core import LabeledBall, LabeledDataset, RandomStream
from adaptrobust.neighbors import (
    BallSetClassifier,
    NnClassifier,
    NnIndex,
    nn_classify,
    nn_classify_balls,
    rho,
    rho_all,
)


# --- brute-force oracles -----------------------------------------------------

def oracle_rho(S, x, y):
    best = None
    for i in range(S.n):
        if int(S.labels[i]) != y:
            d = math.sqrt(sum((a - b) ** 2 for a, b in zip(S.points[i], x)))
            best = d if best is None else min(best, d)
    return S.diameter_bound if best is None else best


def oracle_nn(S, x):
    best_i, best_d2 = 0, math.inf
    for i in range(S.n):
        d2 = float(np.sum((S.points[i] - x) ** 2))
        if d2 < best_d2:
            best_i, best_d2 = i, d2
    return int(S.labels[best_i]), best_i, best_d2


def oracle_nn_balls(balls, x):
    best_i, best_d = 0, math.inf
    for i, b in enumerate(balls):
        d = max(0.0, float(np.sqrt(np.sum((b.center - x) ** 2))) - b.radius)
        if d < best_d:
            best_i, best_d = i, d
    return int(balls[best_i].label)


def random_dataset(rng, n, d, classes=2):
    pts = rng.random((n, d))
    labels = rng.integers(0, classes, n)
    labels[0], labels[1] = 0, 1  # keep both classes present
    return LabeledDataset(pts, labels)


# --- rho ----------------------------------------------------------------------

def test_rho_nearest_opposite():
    S = LabeledDataset(np.array([[0.0, 0.0], [1.0, 0.0], [3.0, 0.0]]), np.array([0, 1, 1]))
    assert rho(S, [0.0, 0.0], 0) == 1.0


def test_rho_single_class_sentinel():
    S = LabeledDataset(np.array([[0.2, 0.2], [0.8, 0.8]]), np.array([0, 0]))
    assert rho(S, [0.5, 0.5], 0) == pytest.approx(math.sqrt(2))


def test_rho_matches_bruteforce_exactly():
    rng = np.random.default_rng(0)
    S = random_dataset(rng, 200, 3)
    for _ in range(50):
        x = rng.random(3)
        y = int(rng.integers(0, 2))
        assert rho(S, x, y) == oracle_rho(S, x, y)


def test_rho_empty_dataset_errors():
    S = LabeledDataset(np.zeros((0, 2)), np.zeros(0, dtype=int))
    with pytest.raises(ValueError):
        rho(S, [0.0, 0.0], 0)


def test_rho_all_matches_pointwise_rho():
    rng = np.random.default_rng(1)
    for d in (1, 2, 5, 10):
        S = random_dataset(rng, 120, d)
        rhos = rho_all(S)
        for i in range(S.n):
            assert rhos[i] == rho(S, S.points[i], int(S.labels[i]))


def test_rho_is_one_lipschitz():
    rng = np.random.default_rng(2)
    for d in (1, 2, 5, 10):
        S = random_dataset(rng, 60, d)
        xs = rng.random((2500, d))
        xs2 = xs + rng.normal(size=xs.shape) * 0.1
        for x, x2 in zip(xs, xs2):
            gap = abs(rho(S, x, 0) - rho(S, x2, 0))
            assert gap <= math.sqrt(np.sum((x - x2) ** 2)) + 1e-12


def test_rho_positive_at_own_points_without_conflicting_duplicates():
    rng = np.random.default_rng(3)
    S = random_dataset(rng, 100, 2)
    for i in range(S.n):
        assert rho(S, S.points[i], int(S.labels[i])) > 0.0


# --- nn_classify ---------------------------------------------------------------

def test_nn_classify_training_point_returns_own_label():
    rng = np.random.default_rng(4)
    S = random_dataset(rng, 50, 2)
    for i in range(S.n):
        assert nn_classify(S, S.points[i]) == int(S.labels[i])


def test_nn_classify_1d():
    S = LabeledDataset(np.array([[0.0], [1.0]]), np.array([0, 1]))
    assert nn_classify(S, [0.4]) == 0


def test_nn_classify_matches_bruteforce():
    rng = np.random.default_rng(5)
    S = random_dataset(rng, 500, 4)
    for x in rng.random((120, 4)):
        assert nn_classify(S, x) == oracle_nn(S, x)[0]


def test_nn_tie_breaks_to_smallest_index():
    S = LabeledDataset(np.array([[0.5], [0.5], [0.9]]), np.array([1, 0, 0]))
    assert nn_classify(S, [0.5]) == 1  # index 0 wins the tie


def test_nn_training_error_zero_without_conflicts():
    rng = np.random.default_rng(6)
    S = random_dataset(rng, 200, 2)
    h = NnClassifier(S)
    assert np.array_equal(h.predict_batch(S.points), S.labels)


def test_nn_classifier_batch_equals_loop():
    rng = np.random.default_rng(7)
    S = random_dataset(rng, 150, 3)
    h = NnClassifier(S)
    X = rng.random((60, 3))
    assert np.array_equal(h.predict_batch(X), [h.predict(x) for x in X])


# --- balls ----------------------------------------------------------------------

def test_ball_classification_inside_unique_ball():
    balls = [LabeledBall(np.array([0.0, 0.0]), 0.5, 1), LabeledBall(np.array([3.0, 0.0]), 0.5, 0)]
    assert nn_classify_balls(balls, [0.1, 0.0]) == 1


def test_zero_radius_balls_reduce_to_point_nn():
    rng = np.random.default_rng(8)
    S = random_dataset(rng, 80, 2)
    balls = [LabeledBall(S.points[i], 0.0, int(S.labels[i])) for i in range(S.n)]
    for x in rng.random((40, 2)):
        assert nn_classify_balls(balls, x) == nn_classify(S, x)


def test_ball_classification_matches_bruteforce():
    rng = np.random.default_rng(9)
    balls = [
        LabeledBall(rng.random(3), float(rng.random() * 0.3), int(rng.integers(0, 2)))
        for _ in range(60)
    ]
    h = BallSetClassifier(tuple(balls))
    for x in rng.random((80, 3)):
        expect = oracle_nn_balls(balls, x)
        assert nn_classify_balls(balls, x) == expect
        assert h.predict(x) == expect
    X = rng.random((30, 3))
    assert np.array_equal(h.predict_batch(X), [oracle_nn_balls(balls, x) for x in X])


# --- exact grid index ------------------------------------------------------------

@pytest.mark.parametrize("d", [1, 2, 3])
def test_grid_index_equals_bruteforce(d):
    rng = np.random.default_rng(10 + d)
    pts = rng.random((500, d))
    S0 = LabeledDataset(pts, np.zeros(len(pts), dtype=int))
    index = NnIndex(pts)
    assert index._grid is not None  # the accelerated path must actually engage
    queries = np.vstack([
        rng.random((100, d)),            # inside the bounding box
        rng.random((20, d)) * 3.0 - 1.0, # partly outside
        pts[rng.integers(0, 500, 20)],   # exact hits
    ])
    for q in queries:
        _, want_i, want_d2 = oracle_nn(S0, q)
        assert index.nearest(q) == (want_i, want_d2)


def test_grid_index_tie_order_matches_scan():
    pts = np.array([[0.25, 0.25]] * 4 + [[0.75, 0.75]] * 64 + [[0.25, 0.75]] * 64)
    index = NnIndex(pts)
    i, d2 = index.nearest([0.25, 0.25])
    assert (i, d2) == (0, 0.0)
    i, _ = index.nearest([0.5, 0.5])
    assert i == 0  # equidistant clusters; smallest global index wins


def test_small_or_highdim_index_uses_exact_scan():
    rng = np.random.default_rng(13)
    pts = rng.random((30, 5))
    index = NnIndex(pts)
    assert index._grid is None
    q = rng.random(5)
    want = oracle_nn(LabeledDataset(pts, np.zeros(30, dtype=int)), q)
    assert index.nearest(q) == (want[1], want[2])
