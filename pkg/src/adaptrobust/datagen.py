"""Synthetic manifold datasets, CSV ingestion with normalization, and splitting.

Each shape is a family of one-dimensional parametric curves in the plane, one
curve collection per class, sampled uniformly in arc length and affinely
mapped into [0, 1]^2. The parametric pieces are evaluated exactly (trig for
arcs, linear interpolation for polyline edges), so generated points lie on
their curves to machine precision after de-normalization.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import LabeledDataset, RandomStream

SHAPE_NAMES = ("sines", "sfigure", "nnn", "circles", "boxes")


@dataclass(frozen=True)
class ShapeSpec:
    shape: str
    n: int
    seed: int
    label_noise: float = 0.0

    def __post_init__(self):
        if self.shape not in SHAPE_NAMES:
            raise ValueError(f"unknown shape {self.shape!r}; expected one of {SHAPE_NAMES}")
        if self.n < 2:
            raise ValueError("need n >= 2 so both classes are represented")
        if not 0.0 <= self.label_noise < 1.0:
            raise ValueError("label_noise must lie in [0, 1)")


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.8
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError("train_fraction must lie strictly between 0 and 1")


# ---------------------------------------------------------------------------
# Parametric curve pieces (raw, un-normalized coordinates)


@dataclass(frozen=True)
class _Arc:
    center: tuple[float, float]
    radius: float
    a0: float
    a1: float

    @property
    def length(self) -> float:
        return abs(self.a1 - self.a0) * self.radius

    def point_at(self, s: float) -> np.ndarray:
        theta = self.a0 + (self.a1 - self.a0) * (s / self.length)
        return np.array(
            [self.center[0] + self.radius * math.cos(theta),
             self.center[1] + self.radius * math.sin(theta)]
        )


@dataclass(frozen=True)
class _Segment:
    p0: tuple[float, float]
    p1: tuple[float, float]

    @property
    def length(self) -> float:
        return math.hypot(self.p1[0] - self.p0[0], self.p1[1] - self.p0[1])

    def point_at(self, s: float) -> np.ndarray:
        t = s / self.length
        return np.array(
            [self.p0[0] + (self.p1[0] - self.p0[0]) * t,
             self.p0[1] + (self.p1[1] - self.p0[1]) * t]
        )


class _Graph:
    """Curve y = f(x) over [x0, x1]; arc length inverted via a dense table."""

    _TABLE = 4096

    def __init__(self, f, x0: float, x1: float):
        self.f = f
        xs = np.linspace(x0, x1, self._TABLE + 1)
        ys = np.array([f(x) for x in xs])
        seg = np.hypot(np.diff(xs), np.diff(ys))
        cum = np.concatenate([[0.0], np.cumsum(seg)])
        self._xs = xs
        self._cum = cum
        self.length = float(cum[-1])

    def point_at(self, s: float) -> np.ndarray:
        x = float(np.interp(s, self._cum, self._xs))
        return np.array([x, self.f(x)])


class ShapeGeometry:
    """A named shape: labeled curve pieces plus the affine map into [0, 1]^2."""

    def __init__(self, name: str, pieces: list[tuple[int, object]],
                 lo: tuple[float, float], hi: tuple[float, float]):
        self.name = name
        self.pieces = pieces
        self.lo = np.asarray(lo, dtype=np.float64)
        self.hi = np.asarray(hi, dtype=np.float64)
        self._by_class: dict[int, tuple[list, np.ndarray]] = {}
        for label in (0, 1):
            ps = [p for (lab, p) in pieces if lab == label]
            lengths = np.array([p.length for p in ps])
            self._by_class[label] = (ps, np.concatenate([[0.0], np.cumsum(lengths)]))

    def to_unit(self, raw: np.ndarray) -> np.ndarray:
        return (raw - self.lo) / (self.hi - self.lo)

    def from_unit(self, unit: np.ndarray) -> np.ndarray:
        return unit * (self.hi - self.lo) + self.lo

    def class_length(self, label: int) -> float:
        return float(self._by_class[label][1][-1])

    def sample_class(self, label: int, u: float) -> np.ndarray:
        """Point at arc-length fraction u in [0, 1) of the class's curves, in unit coords."""
        ps, cum = self._by_class[label]
        s = u * cum[-1]
        k = int(np.searchsorted(cum, s, side="right") - 1)
        k = min(k, len(ps) - 1)
        return self.to_unit(ps[k].point_at(s - cum[k]))

    def class_support(self, label: int, m: int) -> np.ndarray:
        """m points evenly spaced in arc length along the class's curves (unit coords)."""
        return np.stack([self.sample_class(label, (j + 0.5) / m) for j in range(m)])


def _build_sines() -> ShapeGeometry:
    pieces = [
        (0, _Graph(lambda x: 0.5 * math.sin(2 * math.pi * x), 0.0, 2.0)),
        (1, _Graph(lambda x: 0.5 * math.sin(2 * math.pi * x) + 0.6, 0.0, 2.0)),
    ]
    return ShapeGeometry("sines", pieces, lo=(0.0, -0.5), hi=(2.0, 1.1))


def _build_sfigure() -> ShapeGeometry:
    # Two interleaved chains of unit half-circles (an S per class), the second
    # chain offset by (1, 0.4).
    pieces = [
        (0, _Arc((0.0, 0.0), 1.0, 0.0, math.pi)),
        (0, _Arc((2.0, 0.0), 1.0, math.pi, 2 * math.pi)),
        (1, _Arc((1.0, 0.4), 1.0, 0.0, math.pi)),
        (1, _Arc((3.0, 0.4), 1.0, math.pi, 2 * math.pi)),
    ]
    return ShapeGeometry("sfigure", pieces, lo=(-1.0, -1.0), hi=(4.0, 1.4))


def _build_nnn() -> ShapeGeometry:
    # Three "N" strokes of width 0.5 and height 1, gap 0.3, alternating labels.
    w, gap = 0.5, 0.3
    pieces = []
    for k, label in enumerate((0, 1, 0)):
        x = k * (w + gap)
        pieces += [
            (label, _Segment((x, 0.0), (x, 1.0))),
            (label, _Segment((x, 1.0), (x + w, 0.0))),
            (label, _Segment((x + w, 0.0), (x + w, 1.0))),
        ]
    return ShapeGeometry("nnn", pieces, lo=(0.0, 0.0), hi=(2 * (w + gap) + w, 1.0))


def _build_circles() -> ShapeGeometry:
    pieces = [
        (0, _Arc((0.0, 0.0), 1.0, 0.0, 2 * math.pi)),
        (1, _Arc((0.0, 0.0), 2.0, 0.0, 2 * math.pi)),
    ]
    return ShapeGeometry("circles", pieces, lo=(-2.0, -2.0), hi=(2.0, 2.0))


def _build_boxes() -> ShapeGeometry:
    def square(half: float, label: int):
        c = [(-half, -half), (half, -half), (half, half), (-half, half)]
        return [(label, _Segment(c[i], c[(i + 1) % 4])) for i in range(4)]

    pieces = square(0.5, 0) + square(1.0, 1)
    return ShapeGeometry("boxes", pieces, lo=(-1.0, -1.0), hi=(1.0, 1.0))


_BUILDERS = {
    "sines": _build_sines,
    "sfigure": _build_sfigure,
    "nnn": _build_nnn,
    "circles": _build_circles,
    "boxes": _build_boxes,
}
_GEOMETRY_CACHE: dict[str, ShapeGeometry] = {}


def shape_geometry(name: str) -> ShapeGeometry:
    if name not in _BUILDERS:
        raise ValueError(f"unknown shape {name!r}; expected one of {SHAPE_NAMES}")
    if name not in _GEOMETRY_CACHE:
        _GEOMETRY_CACHE[name] = _BUILDERS[name]()
    return _GEOMETRY_CACHE[name]


def generate(spec: ShapeSpec) -> LabeledDataset:
    """Sample a shape dataset in [0, 1]^2; point i carries class i % 2 (before noise)."""
    geom = shape_geometry(spec.shape)
    stream = RandomStream(spec.seed)
    us = stream.uniform(spec.n)
    points = np.empty((spec.n, 2))
    labels = np.empty(spec.n, dtype=np.int64)
    for i in range(spec.n):
        labels[i] = i % 2
        points[i] = geom.sample_class(int(labels[i]), float(us[i]))
    if spec.label_noise > 0.0:
        flips = stream.uniform(spec.n) < spec.label_noise
        labels = np.where(flips, 1 - labels, labels)
    return LabeledDataset(points, labels)


def manifold_sampler(name: str):
    """Domain sampler over a shape's marginal: sampler(stream, count) -> (count, 2)."""
    geom = shape_geometry(name)

    def sampler(stream: RandomStream, count: int) -> np.ndarray:
        us = stream.uniform(count)
        return np.stack([geom.sample_class(i % 2, float(us[i])) for i in range(count)])

    return sampler


def split(ds: LabeledDataset, spec: SplitSpec) -> tuple[LabeledDataset, LabeledDataset]:
    """Deterministic shuffled split; train size = round(train_fraction * n)."""
    if ds.n < 2:
        raise ValueError("need at least 2 points to split")
    perm = RandomStream(spec.seed).permutation(ds.n)
    k = round(spec.train_fraction * ds.n)
    return ds.subset(perm[:k]), ds.subset(perm[k:])


# ---------------------------------------------------------------------------
# CSV schema: header x1,...,xd,label (optional trailing `origin` column for
# augmented data), labels as integers, UTF-8, LF line endings.


@dataclass(frozen=True)
class MinMaxScale:
    """Per-feature min-max parameters; constant features map to 0."""

    lo: np.ndarray
    span: np.ndarray  # hi - lo, zeros where the feature is constant

    def apply(self, points: np.ndarray) -> np.ndarray:
        span = np.where(self.span > 0.0, self.span, 1.0)
        scaled = (points - self.lo) / span
        return np.where(self.span > 0.0, scaled, 0.0)


def fit_minmax(points: np.ndarray) -> MinMaxScale:
    lo = points.min(axis=0)
    hi = points.max(axis=0)
    return MinMaxScale(lo=lo, span=hi - lo)


def save_csv(ds: LabeledDataset, path, origins: np.ndarray | None = None) -> None:
    d = ds.dim
    header = ",".join(f"x{j + 1}" for j in range(d)) + ",label"
    if origins is not None:
        header += ",origin"
    lines = [header]
    for i in range(ds.n):
        row = ",".join(repr(float(v)) for v in ds.points[i]) + f",{int(ds.labels[i])}"
        if origins is not None:
            row += f",{int(origins[i])}"
        lines.append(row)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def load_csv(path, normalize: bool = False) -> tuple[LabeledDataset, MinMaxScale | None]:
    """Read the dataset CSV schema. With normalize, min-max scale features to
    [0, 1] and return the fitted parameters for reuse on held-out data."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.rstrip("\n").rstrip("\r") for ln in fh if ln.strip()]
    if not lines:
        raise ValueError(f"{path}: empty file")
    header = lines[0].split(",")
    has_origin = header[-1] == "origin"
    cols = header[:-1] if has_origin else header
    if len(cols) < 2 or cols[-1] != "label" or cols[:-1] != [f"x{j + 1}" for j in range(len(cols) - 1)]:
        raise ValueError(f"{path}: malformed header {lines[0]!r}")
    d = len(cols) - 1
    width = d + 1 + (1 if has_origin else 0)
    points, labels = [], []
    for rownum, line in enumerate(lines[1:], start=1):
        parts = line.split(",")
        if len(parts) != width:
            raise ValueError(f"{path}: row {rownum}: expected {width} fields, got {len(parts)}")
        try:
            feats = [float(v) for v in parts[:d]]
        except ValueError as exc:
            raise ValueError(f"{path}: row {rownum}: bad feature value ({exc})") from None
        if any(math.isnan(v) or math.isinf(v) for v in feats):
            raise ValueError(f"{path}: row {rownum}: non-finite feature")
        try:
            label = int(parts[d])
        except ValueError:
            raise ValueError(f"{path}: row {rownum}: non-integer label {parts[d]!r}") from None
        points.append(feats)
        labels.append(label)
    if not points:
        raise ValueError(f"{path}: no data rows")
    pts = np.asarray(points, dtype=np.float64)
    scale = None
    if normalize:
        scale = fit_minmax(pts)
        pts = scale.apply(pts)
    return LabeledDataset(pts, np.asarray(labels, dtype=np.int64)), scale
