"""
Joint samples of (X, Y) and the CSV file format that carries them.

File format: UTF-8, comma separated, no quoting. The header names the inner
columns first, then the outer ones: `x1,...,xJ,y1,...,yK`. Every body row
holds J+K finite decimal reals. Row order is meaningful: the stratifier
breaks ties between equal outer values by it.
"""
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np
import pandas as pd

from errors import FormatError, NestexError, ParseError, SizeError, UsageError

_DECIMAL = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?")


@dataclass(frozen=True, order=True)
class JointSample:
    x: tuple[float, ...]
    y: tuple[float, ...]


class Dataset:
    """Immutable set of N joint samples, held as two read-only arrays.

    `x` has shape (N, J), `y` has shape (N, K); row n of each belongs to
    the same draw.
    """

    def __init__(self, x: np.ndarray, y: np.ndarray):
        x = np.array(x, dtype=np.float64, copy=True)
        y = np.array(y, dtype=np.float64, copy=True)
        if x.ndim == 1:
            x = x[:, None]
        if y.ndim == 1:
            y = y[:, None]
        if x.ndim != 2 or y.ndim != 2:
            raise FormatError("x and y must be 2-d arrays of shape (N, J) and (N, K)")
        if x.shape[0] != y.shape[0]:
            raise FormatError(f"x has {x.shape[0]} rows but y has {y.shape[0]}")
        if x.shape[0] < 1:
            raise FormatError("a dataset needs at least one sample")
        if x.shape[1] < 1 or y.shape[1] < 1:
            raise FormatError("J and K must both be at least 1")
        if not (np.isfinite(x).all() and np.isfinite(y).all()):
            raise FormatError("samples must be finite")
        x.flags.writeable = False
        y.flags.writeable = False
        self.x = x
        self.y = y

    @classmethod
    def from_samples(cls, samples: Sequence[JointSample]) -> "Dataset":
        if not samples:
            raise FormatError("a dataset needs at least one sample")
        j_dim, k_dim = len(samples[0].x), len(samples[0].y)
        for n, s in enumerate(samples):
            if len(s.x) != j_dim or len(s.y) != k_dim:
                raise FormatError(f"sample {n} has (J,K)=({len(s.x)},{len(s.y)}), expected ({j_dim},{k_dim})")
        return cls(np.array([s.x for s in samples]), np.array([s.y for s in samples]))

    @property
    def n_total(self) -> int:
        return self.x.shape[0]

    @property
    def j_dim(self) -> int:
        return self.x.shape[1]

    @property
    def k_dim(self) -> int:
        return self.y.shape[1]

    @property
    def samples(self) -> list[JointSample]:
        return list(self)

    def __len__(self) -> int:
        return self.n_total

    def __getitem__(self, n: int) -> JointSample:
        return JointSample(tuple(self.x[n].tolist()), tuple(self.y[n].tolist()))

    def __iter__(self) -> Iterator[JointSample]:
        for n in range(self.n_total):
            yield self[n]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return np.array_equal(self.x, other.x) and np.array_equal(self.y, other.y)

    def __repr__(self) -> str:
        return f"Dataset(J={self.j_dim}, K={self.k_dim}, N={self.n_total})"


def header_for(j_dim: int, k_dim: int) -> list[str]:
    return [f"x{j}" for j in range(1, j_dim + 1)] + [f"y{k}" for k in range(1, k_dim + 1)]


def _parse_header(header: list[str]) -> tuple[int, int]:
    j_dim = 0
    while j_dim < len(header) and header[j_dim].startswith("x"):
        j_dim += 1
    k_dim = len(header) - j_dim
    if j_dim < 1 or k_dim < 1 or header != header_for(j_dim, k_dim):
        raise FormatError(
            f"header must read x1..xJ,y1..yK with J,K >= 1; got {','.join(header)!r}"
        )
    return j_dim, k_dim


def _reject_long_row(cells: list[str]):
    raise FormatError(f"a row has {len(cells)} cells, more than the header")


def _parse_cells(frame: pd.DataFrame) -> np.ndarray:
    """Convert a frame of raw cell strings to float64, naming the first bad cell.

    Missing trailing cells come back from the reader as NaN (nothing else can,
    since NA detection is off), which makes the row short.
    """
    missing = frame.isna().to_numpy()
    if missing.any():
        row = int(np.flatnonzero(missing.any(axis=1))[0])
        width = int((~missing[row]).sum())
        raise FormatError(f"row {row + 1} has {width} cells, expected {frame.shape[1]}")

    raw = frame.to_numpy(dtype=object)
    well_formed = frame.apply(lambda col: col.str.fullmatch(_DECIMAL.pattern)).to_numpy(dtype=bool)
    values = np.where(well_formed, raw, "nan").astype(np.float64)
    bad = ~np.isfinite(values)
    if bad.any():
        row, col = (int(i) for i in np.argwhere(bad)[0])
        reason = "out of floating-point range" if well_formed[row, col] else "not a finite decimal"
        raise ParseError(row + 1, frame.columns[col], raw[row, col], reason=reason)
    return values


def read_csv(path: str | Path) -> Dataset:
    """Read a joint-sample file; J and K come from the header.

    Rows are numbered from 1 for the first body row in error messages.
    """
    path = Path(path)
    try:
        frame = pd.read_csv(
            path,
            dtype=str,
            na_filter=False,
            engine="python",
            on_bad_lines=_reject_long_row,
            index_col=False,
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError as e:
        raise FormatError(f"{path}: file is empty, expected a header row") from e
    except pd.errors.ParserError as e:
        raise FormatError(f"{path}: {e}") from e
    except OSError as e:
        raise NestexError(f"cannot read {path}: {e}") from e
    except UnicodeDecodeError as e:
        raise FormatError(f"{path}: not valid UTF-8 ({e})") from e

    frame.columns = [str(c).strip() for c in frame.columns]
    j_dim, _ = _parse_header(list(frame.columns))
    if frame.empty:
        raise FormatError(f"{path}: no samples after the header (N >= 1 required)")
    try:
        body = _parse_cells(frame)
    except FormatError as e:
        if isinstance(e, ParseError):
            raise
        raise FormatError(f"{path}: {e}") from e
    return Dataset(body[:, :j_dim], body[:, j_dim:])


def format_float(value: float) -> str:
    """Shortest round-trip decimal; integral values drop the trailing `.0`."""
    text = repr(float(value))
    if text.endswith(".0"):
        text = text[:-2]
    return text


def format_frame(frame: pd.DataFrame) -> pd.DataFrame:
    """Copy of frame with float columns rendered by format_float, NaN as an empty cell."""
    out = frame.copy()
    for name in out.columns:
        if pd.api.types.is_float_dtype(out[name]):
            out[name] = out[name].map(lambda v: "" if np.isnan(v) else format_float(v))
    return out


def write_frame(frame: pd.DataFrame, path: str | Path):
    """Write a table as comma separated UTF-8 with LF line endings and no index."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        format_frame(frame).to_csv(path, index=False, lineterminator="\n", encoding="utf-8")
    except OSError as e:
        raise NestexError(f"cannot write {path}: {e}") from e


def write_csv(dataset: Dataset, path: str | Path):
    body = np.hstack([dataset.x, dataset.y])
    write_frame(pd.DataFrame(body, columns=header_for(dataset.j_dim, dataset.k_dim)), path)


def check_stratifiable(dataset: Dataset, m: int):
    """Raise SizeError unless N == m^(2K)."""
    if m < 2:
        raise UsageError(f"m must be an integer >= 2, got {m}")
    if dataset.n_total != m ** (2 * dataset.k_dim):
        raise SizeError(dataset.n_total, m, dataset.k_dim)
