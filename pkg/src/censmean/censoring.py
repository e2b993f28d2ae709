"""Construction and ingestion of right-censored samples.

An observation is the pair (z, delta) with z = min(x, y) and delta = 1 when
x <= y (the value of interest was actually observed).  Samples are stored
sorted by z, with the indicator of each original pair carried along as the
concomitant of its order statistic.
"""

import csv
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParseError, ShapeError

__all__ = ["CensoredSample", "censor", "load_sample", "load_csv", "save_csv"]


@dataclass(frozen=True)
class CensoredSample:
    """A sorted censored sample: order statistics ``z`` and concomitant
    indicators ``delta`` (True means uncensored)."""

    z: np.ndarray
    delta: np.ndarray

    def __post_init__(self):
        z = np.ascontiguousarray(self.z, dtype=float)
        delta = np.ascontiguousarray(self.delta, dtype=bool)
        if z.ndim != 1 or delta.ndim != 1 or len(z) != len(delta):
            raise ShapeError("z and delta must be 1-D arrays of equal length")
        if len(z) < 2:
            raise DomainError(f"need at least 2 observations, got {len(z)}")
        if np.any(z <= 0.0):
            raise DomainError("all observations must be positive")
        if np.any(np.diff(z) < 0.0):
            raise DomainError("z must be sorted nondecreasing")
        z.setflags(write=False)
        delta.setflags(write=False)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "delta", delta)

    @property
    def n(self) -> int:
        return len(self.z)

    def to_rows(self) -> list[tuple[float, int]]:
        """Serialize as (z, delta) rows, delta in {0, 1}."""
        return [(float(z), int(d)) for z, d in zip(self.z, self.delta)]


def censor(x, y) -> CensoredSample:
    """Censor the x values by the y values: observe min(x, y) and whether
    x <= y, then sort by the observed value (stable in input order)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ShapeError(f"x and y must be 1-D of equal length, got {x.shape} vs {y.shape}")
    if np.any(x <= 0.0) or np.any(y <= 0.0):
        raise DomainError("all values must be positive")
    z = np.minimum(x, y)
    delta = x <= y
    order = np.argsort(z, kind="stable")
    return CensoredSample(z[order], delta[order])


def load_sample(rows) -> CensoredSample:
    """Build a sample from (z, delta) rows; delta must be 0 or 1."""
    zs, ds = [], []
    for i, row in enumerate(rows):
        try:
            z, d = row
        except (TypeError, ValueError):
            raise ParseError(f"row {i}: expected a (z, delta) pair, got {row!r}") from None
        if d not in (0, 1):
            raise ParseError(f"row {i}: delta must be 0 or 1, got {d!r}")
        z = float(z)
        if z <= 0.0:
            raise ParseError(f"row {i}: z must be positive, got {z}")
        zs.append(z)
        ds.append(bool(d))
    if len(zs) < 2:
        raise DomainError(f"need at least 2 observations, got {len(zs)}")
    z = np.array(zs)
    delta = np.array(ds)
    order = np.argsort(z, kind="stable")
    return CensoredSample(z[order], delta[order])


def load_csv(path) -> CensoredSample:
    """Read a censored sample from a CSV file with header columns z,delta."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"z", "delta"} <= set(reader.fieldnames):
            raise ParseError(f"{path}: header must contain columns 'z' and 'delta'")
        rows = []
        for i, rec in enumerate(reader):
            try:
                z = float(rec["z"])
            except (TypeError, ValueError):
                raise ParseError(f"row {i}: cannot parse z value {rec['z']!r}") from None
            d = (rec["delta"] or "").strip()
            if d not in ("0", "1"):
                raise ParseError(f"row {i}: delta must be 0 or 1, got {rec['delta']!r}")
            rows.append((z, int(d)))
    return load_sample(rows)


def save_csv(sample: CensoredSample, path) -> None:
    """Write a sample to CSV in the same z,delta format load_csv reads."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["z", "delta"])
        for z, d in sample.to_rows():
            writer.writerow([repr(z), d])
