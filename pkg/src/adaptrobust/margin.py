"""Nearest-set canonical predictors, margin-rate profiles, and the 1-NN
sample-size bound.

The margin rate of a distribution is the mass of points whose distance to the
canonical predictor's decision boundary is below r, as a function of r. It is
estimated here by Monte-Carlo over domain samples, combining random ball
probes with a directed bisection toward a witness point on the other side of
the boundary; the witness direction is exact for nearest-set classifiers
(which flip exactly once along the segment) and a heuristic for others.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Classifier, RandomStream, as_point, predict_batch, sq_dists_to
from .losses import _unit_ball_offsets


@dataclass(frozen=True, eq=False)
class NearestSetClassifier:
    """Nearest-set labeling over dense samplings of the two class regions.

    predict(x) is the label of the closer support set; exact ties go to 0.
    """

    support0: np.ndarray
    support1: np.ndarray

    def __post_init__(self):
        s0 = np.asarray(self.support0, dtype=np.float64)
        s1 = np.asarray(self.support1, dtype=np.float64)
        if s0.ndim != 2 or s1.ndim != 2 or s0.shape[0] == 0 or s1.shape[0] == 0:
            raise ValueError("both supports must be nonempty (m, d) arrays")
        if s0.shape[1] != s1.shape[1]:
            raise ValueError("supports must share a dimension")
        object.__setattr__(self, "support0", s0)
        object.__setattr__(self, "support1", s1)

    def predict(self, x) -> int:
        x = as_point(x)
        d0 = sq_dists_to(self.support0, x).min()
        d1 = sq_dists_to(self.support1, x).min()
        return 0 if d0 <= d1 else 1

    def _min_d2(self, X: np.ndarray, support: np.ndarray) -> np.ndarray:
        out = np.empty(X.shape[0])
        # chunked so the (chunk, m, d) intermediate stays small; the per-pair
        # arithmetic matches sq_dists_to, keeping batch and single-point
        # predictions bit-identical
        chunk = max(1, int(2e6 // max(1, support.shape[0] * support.shape[1])))
        for start in range(0, X.shape[0], chunk):
            stop = min(X.shape[0], start + chunk)
            diff = X[start:stop, None, :] - support[None, :, :]
            out[start:stop] = np.sum(diff**2, axis=2).min(axis=1)
        return out

    def predict_batch(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        d0 = self._min_d2(X, self.support0)
        d1 = self._min_d2(X, self.support1)
        return np.where(d0 <= d1, 0, 1).astype(np.int64)

    def opposite_witness(self, x) -> np.ndarray:
        """Nearest support point of the class this classifier does NOT assign to x."""
        x = as_point(x)
        opp = self.support1 if self.predict(x) == 0 else self.support0
        return opp[int(np.argmin(sq_dists_to(opp, x)))]


def canonical_bayes(support0, support1) -> NearestSetClassifier:
    """Margin-canonical predictor from dense class-region samplings."""
    return NearestSetClassifier(np.asarray(support0), np.asarray(support1))


def flip_distance(h: Classifier, x, witness, steps: int = 30) -> float:
    """Distance from x to a verified label flip along the segment to `witness`.

    Returns inf when the witness carries the same label as x. Assumes at most
    one flip on the segment (exact for nearest-set classifiers); the returned
    distance always points at an actually evaluated, flipped point.
    """
    x = as_point(x)
    w = as_point(witness)
    total = float(np.sqrt(np.sum((w - x) ** 2)))
    if total == 0.0:
        return math.inf
    hx = h.predict(x)
    if h.predict(w) == hx:
        return math.inf
    lo, hi = 0.0, total
    direction = (w - x) / total
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if h.predict(x + mid * direction) == hx:
            lo = mid
        else:
            hi = mid
    return hi


def _profile_offsets(stream: RandomStream, n: int, k: int, d: int) -> np.ndarray:
    """(n, k, d) unit-ball offsets drawn in one vectorized pass (profile
    estimation batches all points, so per-point streams would only add cost)."""
    dirs = stream.normal((n, k, d))
    norms = np.sqrt(np.sum(dirs**2, axis=2, keepdims=True))
    norms[norms == 0.0] = 1.0
    us = stream.uniform((n, k))
    return dirs / norms * us[..., None] ** (1.0 / d)


def _flip_distances_batch(h: Classifier, X: np.ndarray, W: np.ndarray,
                          preds: np.ndarray, steps: int = 30) -> np.ndarray:
    """Vectorized flip_distance over rows of X with per-row witnesses W;
    rows whose witness shares their label get inf."""
    diff = W - X
    total = np.sqrt(np.sum(diff**2, axis=1))
    valid = total > 0.0
    valid[valid] = predict_batch(h, W[valid]) != preds[valid]
    out = np.full(X.shape[0], math.inf)
    if not np.any(valid):
        return out
    idx = np.where(valid)[0]
    xs = X[idx]
    dirs = diff[idx] / total[idx, None]
    lo = np.zeros(idx.shape[0])
    hi = total[idx].copy()
    base = preds[idx]
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        same = predict_batch(h, xs + mid[:, None] * dirs) == base
        lo = np.where(same, mid, lo)
        hi = np.where(same, hi, mid)
    out[idx] = hi
    return out


def margin_membership(h: Classifier, x, r: float, probes: int = 100,
                      stream: RandomStream | None = None, witness=None) -> bool:
    """Is some point of the open radius-r ball around x labeled differently
    than x itself? Probe-based, so false negatives are possible (lower-bound
    semantics); a witness point on the other side makes the test exact for
    single-flip classifiers."""
    if r < 0.0:
        raise ValueError("radius must be >= 0")
    if r == 0.0:
        return False
    x = as_point(x)
    if witness is not None and flip_distance(h, x, witness) < r:
        return True
    if probes > 0:
        stream = stream if stream is not None else RandomStream(0)
        offsets = _unit_ball_offsets(stream, probes, x.shape[0])
        pred = predict_batch(h, x[None, :] + r * offsets)
        if np.any(pred != h.predict(x)):
            return True
    return False


@dataclass(frozen=True, eq=False)
class MarginProfile:
    """Tabulated margin-rate estimate: nondecreasing values over a radius grid."""

    radii: np.ndarray
    values: np.ndarray
    probes: int
    seed: int

    def __post_init__(self):
        r = np.asarray(self.radii, dtype=np.float64)
        v = np.asarray(self.values, dtype=np.float64)
        if r.ndim != 1 or r.shape != v.shape or r.shape[0] == 0:
            raise ValueError("radii and values must be matching nonempty 1-D arrays")
        if np.any(np.diff(r) <= 0.0):
            raise ValueError("radius grid must be strictly increasing")
        if np.any(v < 0.0) or np.any(v > 1.0) or np.any(np.diff(v) < 0.0):
            raise ValueError("profile values must be nondecreasing in [0, 1]")
        object.__setattr__(self, "radii", r)
        object.__setattr__(self, "values", v)

    def csv_lines(self) -> list[str]:
        lines = ["r,phi_hat"]
        lines += [f"{float(r)!r},{float(v)!r}" for r, v in zip(self.radii, self.values)]
        return lines

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(self.csv_lines()) + "\n")


def margin_profile(sampler, h: Classifier, radii, N: int, probes: int = 100,
                   stream: RandomStream | None = None, witness_fn=None) -> MarginProfile:
    """Monte-Carlo margin-rate profile of h over the sampler's distribution.

    For each of N sampled points, membership in the radius-r margin is tested
    with shared probe directions (scaled per radius, flags accumulated so the
    raw curve is already monotone) plus a witness bisection. `witness_fn`
    overrides the witness; nearest-set classifiers supply their own.
    """
    radii = np.asarray([float(r) for r in radii], dtype=np.float64)
    if radii.ndim != 1 or radii.shape[0] == 0 or np.any(np.diff(radii) <= 0.0):
        raise ValueError("need a strictly increasing radius grid")
    if radii[0] < 0.0:
        raise ValueError("radii must be >= 0")
    if N < 1:
        raise ValueError("need at least one sample point")
    stream = stream if stream is not None else RandomStream(0)
    X = np.asarray(sampler(stream.child(0), N), dtype=np.float64)
    preds = predict_batch(h, X)

    if witness_fn is None and isinstance(h, NearestSetClassifier):
        witness_fn = h.opposite_witness
    flips = np.full(N, math.inf)
    if witness_fn is not None:
        found = [witness_fn(x) for x in X]
        have = np.array([w is not None for w in found])
        if np.any(have):
            W = np.stack([np.asarray(w, dtype=np.float64) for w in found if w is not None])
            flips[have] = _flip_distances_batch(h, X[have], W, preds[have])

    member = np.zeros(N, dtype=bool)
    values = np.empty(radii.shape[0])
    offsets = _profile_offsets(stream.child(1), N, probes, X.shape[1]) if probes > 0 else None
    for j, r in enumerate(radii):
        if r > 0.0 and offsets is not None:
            Z = X[:, None, :] + r * offsets
            pred = predict_batch(h, Z.reshape(N * probes, X.shape[1])).reshape(N, probes)
            member = member | np.any(pred != preds[:, None], axis=1)
        values[j] = np.mean(member | (flips < r))
    # Monte-Carlo noise cannot break monotonicity here (flags accumulate), but
    # isotonic rounding keeps the invariant explicit for any construction path.
    values = np.maximum.accumulate(values)
    return MarginProfile(radii, values, probes, stream.seed)


def inverse_phi(profile: MarginProfile, epsilon: float) -> float:
    """Largest grid radius with profile value <= epsilon; 0 when there is none."""
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError("epsilon must lie in [0, 1]")
    ok = profile.values <= epsilon
    if not np.any(ok):
        return 0.0
    return float(profile.radii[np.where(ok)[0][-1]])


def nn_sample_bound(d: int, epsilon: float, delta: float, r_eps: float) -> float:
    """Sample size ensuring 1-NN on the 0.5-adaptive augmentation has binary
    loss at most epsilon with probability 1 - delta:
    3^d d^(d/2) / (e * r_eps^d * epsilon * delta)."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if not (0.0 < epsilon <= 1.0 and 0.0 < delta <= 1.0):
        raise ValueError("epsilon and delta must lie in (0, 1]")
    if r_eps <= 0.0:
        raise ValueError("the bound is undefined for r_eps = 0")
    return (3.0**d * d ** (0.5 * d)) / (math.e * r_eps**d * epsilon * delta)
