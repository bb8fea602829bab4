"""
Outer functions f: R^J -> R applied to (approximate) inner means.
"""
from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from errors import DomainError, UsageError


class OuterKind(StrEnum):
    LOG = "log"
    MAX = "max"
    IDENTITY = "identity"
    LINEAR = "linear"


@dataclass(frozen=True)
class OuterFunction:
    kind: OuterKind
    weights: tuple[float, ...] | None = None

    @classmethod
    def log(cls) -> "OuterFunction":
        return cls(OuterKind.LOG)

    @classmethod
    def max_coordinate(cls) -> "OuterFunction":
        return cls(OuterKind.MAX)

    @classmethod
    def identity(cls) -> "OuterFunction":
        return cls(OuterKind.IDENTITY)

    @classmethod
    def linear(cls, weights) -> "OuterFunction":
        w = tuple(float(v) for v in weights)
        if not w or not all(np.isfinite(w)):
            raise UsageError("linear weights must be a non-empty vector of finite reals")
        return cls(OuterKind.LINEAR, w)

    def check_dim(self, j_dim: int):
        """Raise UsageError if f is not defined on R^j_dim."""
        if self.kind in (OuterKind.LOG, OuterKind.IDENTITY) and j_dim != 1:
            raise UsageError(f"outer function {self.kind} needs J=1, data has J={j_dim}")
        if self.kind is OuterKind.LINEAR and len(self.weights) != j_dim:
            raise UsageError(f"linear weights have length {len(self.weights)}, data has J={j_dim}")

    def __call__(self, values: np.ndarray, stratum_size: int | None = 1) -> np.ndarray:
        """Evaluate f row-wise on an (n, J) array.

        For log, a nonpositive argument raises DomainError naming the stratum
        of the first offending row (row // stratum_size); pass None when rows
        do not belong to strata.
        """
        values = np.atleast_2d(np.asarray(values, dtype=np.float64))
        self.check_dim(values.shape[1])
        match self.kind:
            case OuterKind.LOG:
                arg = values[:, 0]
                bad = np.flatnonzero(arg <= 0.0)
                if bad.size:
                    stratum = None if stratum_size is None else int(bad[0] // stratum_size)
                    raise DomainError(f"log of nonpositive inner mean {arg[bad[0]]!r}", stratum=stratum)
                return np.log(arg)
            case OuterKind.MAX:
                return values.max(axis=1)
            case OuterKind.IDENTITY:
                return values[:, 0].copy()
            case OuterKind.LINEAR:
                return values @ np.asarray(self.weights)
