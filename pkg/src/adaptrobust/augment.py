"""Adaptive robust expansion (labeled balls) and sampled data augmentation.

Expansion replaces each sample with a constant-label open ball whose radius is
the expansion factor times the distance to the nearest differently-labeled
sample; augmentation draws points uniformly from those balls. A fixed-radius
variant (same machinery, constant radius) supports parameter sweeps.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import LabeledBall, LabeledDataset, RandomStream, as_point
from .neighbors import rho_all


@dataclass(frozen=True)
class ExpansionSpec:
    """Parameters for sampled augmentation.

    Exactly one of `c` (adaptive, radius = c * rho) and `fixed_radius` applies;
    setting fixed_radius overrides the adaptive rule with a constant.
    """

    c: float = 0.5
    m: int = 1
    include_originals: bool = True
    seed: int = 0
    fixed_radius: float | None = None

    def __post_init__(self):
        if self.fixed_radius is None and self.c < 0.0:
            raise ValueError("expansion factor c must be >= 0")
        if self.fixed_radius is not None and self.fixed_radius < 0.0:
            raise ValueError("fixed_radius must be >= 0")
        if self.m < 1:
            raise ValueError("need m >= 1 samples per ball")


def expand(S: LabeledDataset, c: float) -> list[LabeledBall]:
    """c-adaptive expansion: one ball per item, radius c * rho_S(x_i, y_i)."""
    if S.n == 0:
        raise ValueError("cannot expand an empty dataset")
    if c < 0.0:
        raise ValueError("expansion factor must be >= 0")
    rhos = rho_all(S)
    return [
        LabeledBall(S.points[i], c * float(rhos[i]), int(S.labels[i]))
        for i in range(S.n)
    ]


def expand_fixed(S: LabeledDataset, radius: float) -> list[LabeledBall]:
    """Fixed-radius expansion: every ball gets the same radius."""
    if S.n == 0:
        raise ValueError("cannot expand an empty dataset")
    if radius < 0.0:
        raise ValueError("radius must be >= 0")
    return [LabeledBall(S.points[i], radius, int(S.labels[i])) for i in range(S.n)]


def sample_ball_uniform(center, radius: float, stream: RandomStream) -> np.ndarray:
    """Uniform draw from the ball around `center`: normalized Gaussian direction
    scaled by radius * U^(1/d)."""
    center = as_point(center)
    if radius < 0.0:
        raise ValueError("radius must be >= 0")
    if radius == 0.0:
        return center.copy()
    d = center.shape[0]
    while True:
        direction = stream.normal(d)
        norm = float(np.sqrt(np.sum(direction**2)))
        if norm > 0.0:
            break
    u = float(stream.uniform())
    return center + direction * (radius * u ** (1.0 / d) / norm)


def augment(S: LabeledDataset, spec: ExpansionSpec) -> tuple[LabeledDataset, np.ndarray]:
    """m-sample augmentation of S: m uniform draws from each expansion ball,
    each labeled by its origin. Returns the augmented dataset plus an origin
    index per row (-1 marks retained originals, which come first)."""
    if S.n == 0:
        raise ValueError("cannot augment an empty dataset")
    if spec.fixed_radius is not None:
        balls = expand_fixed(S, spec.fixed_radius)
    else:
        balls = expand(S, spec.c)
    stream = RandomStream(spec.seed)
    rows, labels, origins = [], [], []
    if spec.include_originals:
        rows.extend(S.points)
        labels.extend(int(v) for v in S.labels)
        origins.extend([-1] * S.n)
    for i, ball in enumerate(balls):
        child = stream.child(i)
        for _ in range(spec.m):
            rows.append(sample_ball_uniform(ball.center, ball.radius, child))
            labels.append(ball.label)
            origins.append(i)
    out = LabeledDataset(np.stack(rows), np.asarray(labels, dtype=np.int64))
    return out, np.asarray(origins, dtype=np.int64)
