"""Fund-return datasets: built-in Kauffman-style multiples, carry adjustment, stats.

Returns are gross multiples of invested principal (1.0 = money back). The two
built-in datasets are the 100-fund portfolio-of-funds sample and its
carry-adjusted revision, where every fund at or above breakeven is divided by
0.8 to undo the managers' 20% profit carry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

# 100 fund return multiples, sorted ascending. Mean is exactly 1.31.
_KAUFFMAN_ORIGINAL = (
    0.04, 0.1, 0.1, 0.15, 0.15, 0.2, 0.3, 0.3, 0.3, 0.3,
    0.4, 0.5, 0.6, 0.6, 0.6, 0.65, 0.65, 0.65, 0.65, 0.65,
    0.65, 0.65, 0.7, 0.7, 0.7, 0.7, 0.75, 0.75, 0.75, 0.75,
    0.75, 0.75, 0.8, 0.8, 0.85, 0.9, 0.9, 0.9, 0.9, 0.9,
    0.9, 0.9, 0.9, 0.9, 0.9, 0.9, 0.9, 0.99, 0.99, 0.99,
    1.05, 1.1, 1.1, 1.1, 1.1, 1.1, 1.2, 1.2, 1.24, 1.25,
    1.25, 1.3, 1.3, 1.3, 1.3, 1.35, 1.35, 1.35, 1.35, 1.35,
    1.35, 1.4, 1.5, 1.5, 1.5, 1.6, 1.6, 1.7, 1.7, 1.7,
    1.7, 1.7, 1.8, 2.1, 2.1, 2.2, 2.2, 2.2, 2.2, 2.3,
    2.3, 2.3, 2.6, 3.0, 3.2, 3.2, 3.2, 3.8, 6.0, 8.0,
)

# Same funds with winners (>= 1) divided by 0.8. Mean is exactly 1.555725.
_KAUFFMAN_REVISED = (
    0.04, 0.1, 0.1, 0.15, 0.15, 0.2, 0.3, 0.3, 0.3, 0.3,
    0.4, 0.5, 0.6, 0.6, 0.6, 0.65, 0.65, 0.65, 0.65, 0.65,
    0.65, 0.65, 0.7, 0.7, 0.7, 0.7, 0.75, 0.75, 0.75, 0.75,
    0.75, 0.75, 0.8, 0.8, 0.85, 0.9, 0.9, 0.9, 0.9, 0.9,
    0.9, 0.9, 0.9, 0.9, 0.9, 0.9, 0.9, 0.99, 0.99, 0.99,
    1.3125, 1.375, 1.375, 1.375, 1.375, 1.375, 1.5, 1.5, 1.55, 1.5625,
    1.5625, 1.625, 1.625, 1.625, 1.625, 1.6875, 1.6875, 1.6875, 1.6875, 1.6875,
    1.6875, 1.75, 1.875, 1.875, 1.875, 2.0, 2.0, 2.125, 2.125, 2.125,
    2.125, 2.125, 2.25, 2.625, 2.625, 2.75, 2.75, 2.75, 2.75, 2.875,
    2.875, 2.875, 3.25, 3.75, 4.0, 4.0, 4.0, 4.75, 7.5, 10.0,
)

BUILTIN_DATASETS = ("kauffman-original", "kauffman-revised")


@dataclass(frozen=True)
class ReturnDataset:
    """An ordered (ascending) collection of fund return multiples."""

    label: str
    returns: tuple[float, ...]

    def __post_init__(self) -> None:
        if any(not math.isfinite(r) or r < 0 for r in self.returns):
            raise ValueError(f"{self.label}: returns must be finite and >= 0")
        if any(a > b for a, b in zip(self.returns, self.returns[1:])):
            object.__setattr__(self, "returns", tuple(sorted(self.returns)))

    def __len__(self) -> int:
        return len(self.returns)

    @classmethod
    def from_values(cls, label: str, values: Iterable[float]) -> "ReturnDataset":
        return cls(label, tuple(sorted(float(v) for v in values)))


@dataclass(frozen=True)
class DatasetStats:
    """Summary statistics over a sorted return dataset."""

    mean: float
    octile_means: tuple[float, ...]
    quartile_means: tuple[float, ...]
    count: int


def load_dataset(name_or_path: str) -> ReturnDataset:
    """Load a built-in dataset by name, or a one-column CSV by path.

    CSV format: one numeric return per line; blank lines and ``#`` comments
    are ignored.
    """
    if name_or_path == "kauffman-original":
        return ReturnDataset("kauffman-original", _KAUFFMAN_ORIGINAL)
    if name_or_path == "kauffman-revised":
        return ReturnDataset("kauffman-revised", _KAUFFMAN_REVISED)

    path = Path(name_or_path)
    if not path.suffix and not path.exists():
        raise ValueError(
            f"unknown dataset {name_or_path!r}; built-ins are {', '.join(BUILTIN_DATASETS)}"
        )
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            try:
                value = float(text)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: non-numeric entry {text!r}") from None
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{path}:{lineno}: return must be finite and >= 0, got {text}")
            values.append(value)
    return ReturnDataset.from_values(path.stem, values)


def adjust_for_carry(ds: ReturnDataset, carry: float = 0.20) -> ReturnDataset:
    """Undo the managers' profit carry: divide every return >= 1 by (1 - carry).

    Values below breakeven are untouched (carry is only taken from profits).
    The division is computed as multiplication by the reciprocal, which keeps
    the canonical carry of 20% bit-exact on the built-in data.
    """
    if not 0.0 <= carry < 1.0:
        raise ValueError(f"carry must be in [0, 1), got {carry}")
    factor = 1.0 / (1.0 - carry)
    adjusted = tuple(r if r < 1.0 else r * factor for r in ds.returns)
    return ReturnDataset(f"{ds.label}+carry{carry:g}", adjusted)


def _chunk_means(values: Sequence[float], bins: int) -> tuple[float, ...]:
    # Contiguous index-space bins with edges at floor(i * n / bins); for
    # n = 100, bins = 8 this gives the alternating 12/13 split that matches
    # the published octile tables. Fewer values than bins just yields fewer
    # bins.
    n = len(values)
    bins = min(bins, n)
    edges = [i * n // bins for i in range(bins + 1)]
    return tuple(
        sum(values[lo:hi]) / (hi - lo) for lo, hi in zip(edges, edges[1:])
    )


def dataset_stats(ds: ReturnDataset) -> DatasetStats:
    """Mean plus octile/quartile bin means over the sorted returns."""
    if not ds.returns:
        raise ValueError(f"{ds.label}: dataset is empty")
    return DatasetStats(
        mean=sum(ds.returns) / len(ds.returns),
        octile_means=_chunk_means(ds.returns, 8),
        quartile_means=_chunk_means(ds.returns, 4),
        count=len(ds.returns),
    )
