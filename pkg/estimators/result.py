from dataclasses import dataclass
from enum import StrEnum

from errors import UsageError


class Method(StrEnum):
    POST_STRAT = "post_strat"
    POST_STRAT_REG = "post_strat_reg"
    NMC = "nmc"

    @classmethod
    def parse(cls, text: str) -> "Method":
        """Accept both `post_strat` and the CLI spelling `post-strat`."""
        try:
            return cls(str(text).strip().replace("-", "_"))
        except ValueError:
            raise UsageError(f"unknown method {text!r}; choose from {', '.join(m.value for m in cls)}") from None


@dataclass(frozen=True)
class EstimateResult:
    value: float
    method: Method
    n_total: int
    m: int | None
    n_outer: int
    n_inner: int
    # Grand element-wise mean of the X values consumed; the second EVSI term
    # is taken from it so both terms share one sample set.
    x_mean: tuple[float, ...]
    ridge_fits: int = 0
