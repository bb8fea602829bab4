"""
MSE convergence benchmark.

For each (method, m, replication) the harness draws a fresh sample of total
size m^(2K), estimates the nested term (minus the prior term for EVSI
problems), and records the squared error against the problem's reference.
Each replication gets its own stream derived from (base_seed, problem,
method, m, replication), and results are gathered in submission order, so a
table is a pure function of its config whatever the thread count.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
import pandas as pd

import config
from errors import DomainError, InsufficientDataError, RegressionError, UsageError
from estimators import Method
from logs import log, warn
from problems import estimate_nested, evsi_from_result, get_problem
from rng import derive_seed

RAW_COLUMNS = ["method", "m", "n_total", "replication", "estimate", "squared_error", "status"]
SUMMARY_COLUMNS = ["method", "n_total", "mse", "stderr", "count", "failures", "valid"]


@dataclass
class BenchConfig:
    problem: str
    methods: list[Method]
    m_grid: list[int]
    replications: int = config.DEFAULT_REPS
    base_seed: int = config.DEFAULT_SEED
    output_dir: Path = field(default_factory=lambda: Path(config.OUTPUT_DIR))

    def __post_init__(self):
        problem = get_problem(self.problem)
        self.methods = [Method.parse(m) for m in self.methods]
        self.output_dir = Path(self.output_dir)
        if not self.methods:
            raise UsageError("at least one method is required")
        if not self.m_grid:
            raise UsageError("m grid must not be empty")
        if any(m < 2 for m in self.m_grid):
            raise UsageError(f"every m must be >= 2, got {self.m_grid}")
        if any(b <= a for a, b in zip(self.m_grid, self.m_grid[1:])):
            raise UsageError(f"m grid must be strictly ascending, got {self.m_grid}")
        if self.replications < 2:
            raise UsageError(f"need at least 2 replications, got {self.replications}")
        if self.base_seed < 0:
            raise UsageError(f"seed must be >= 0, got {self.base_seed}")
        if Method.NMC in self.methods and not problem.has_conditional:
            warn(f"{problem.name} has no conditional sampler; dropping nmc")
            self.methods = [m for m in self.methods if m is not Method.NMC]
            if not self.methods:
                raise UsageError(f"no runnable methods left for {problem.name}")


@dataclass(frozen=True)
class BenchRow:
    method: Method
    m: int
    n_total: int
    replication: int
    estimate: float
    squared_error: float
    status: str


@dataclass(frozen=True)
class SummaryRow:
    method: Method
    m: int
    n_total: int
    mse: float
    stderr: float
    count: int
    failures: int

    @property
    def valid(self) -> bool:
        total = self.count + self.failures
        return self.count > 0 and self.failures <= config.MAX_FAILURE_SHARE * total


@dataclass
class MseTable:
    problem: str
    reference: float
    rows: list[BenchRow]
    summary: list[SummaryRow]

    def summary_for(self, method: Method) -> list[SummaryRow]:
        return [s for s in self.summary if s.method == method]

    @property
    def methods(self) -> list[Method]:
        return list(dict.fromkeys(s.method for s in self.summary))

    def raw_frame(self) -> pd.DataFrame:
        return rows_frame(self.rows)

    def summary_frame(self) -> pd.DataFrame:
        """Summary lines as in summary.csv, with the validity flag of each cell."""
        frame = pd.DataFrame(
            [{**asdict(s), "valid": s.valid} for s in self.summary],
            columns=["method", "m", *SUMMARY_COLUMNS[1:]],
        )
        frame["method"] = frame["method"].map(str)
        return frame[SUMMARY_COLUMNS].astype({"mse": "float64", "stderr": "float64"})


def _run_replication(problem_name: str, method: Method, m: int, rep: int, base_seed: int, reference: float) -> BenchRow:
    problem = get_problem(problem_name)
    n_total = m ** (2 * problem.k_dim)
    seed = derive_seed(base_seed, problem_name, str(method), m, rep)
    try:
        result = estimate_nested(problem, method, m, seed)
    except (DomainError, RegressionError):
        return BenchRow(method, m, n_total, rep, math.nan, math.nan, "failed")
    estimate = evsi_from_result(result) if problem.is_evsi else result.value
    return BenchRow(method, m, n_total, rep, estimate, (estimate - reference) ** 2, "ok")


def rows_frame(rows: list[BenchRow]) -> pd.DataFrame:
    """One line per replication, columns as in raw.csv."""
    frame = pd.DataFrame([asdict(r) for r in rows], columns=RAW_COLUMNS)
    frame["method"] = frame["method"].map(str)
    return frame.astype({"estimate": "float64", "squared_error": "float64"})


def summarize(rows: list[BenchRow]) -> list[SummaryRow]:
    """Per-(method, m) MSE over the successful replications of each cell."""
    if not rows:
        return []
    cells = (
        rows_frame(rows)
        .groupby(["method", "m", "n_total"], sort=False)["squared_error"]
        .agg(mse="mean", std="std", n_ok="count", n_all="size")
        .reset_index()
    )
    cells["stderr"] = cells["std"] / np.sqrt(cells["n_ok"])
    return [
        SummaryRow(
            method=Method(c.method),
            m=int(c.m),
            n_total=int(c.n_total),
            mse=float(c.mse),
            stderr=float(c.stderr),
            count=int(c.n_ok),
            failures=int(c.n_all - c.n_ok),
        )
        for c in cells.itertuples(index=False)
    ]


def run_benchmark(bench: BenchConfig, threads: int | None = None) -> MseTable:
    problem = get_problem(bench.problem)
    workers = config.resolve_threads(threads)
    tasks = [
        (problem.name, method, m, rep, bench.base_seed, problem.reference)
        for method in bench.methods
        for m in bench.m_grid
        for rep in range(bench.replications)
    ]
    log(
        f"benchmark {problem.name}: methods={','.join(bench.methods)} m={bench.m_grid} "
        f"reps={bench.replications} seed={bench.base_seed} threads={workers}"
    )

    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(lambda task: _run_replication(*task), tasks))

    summary = summarize(rows)
    for s in summary:
        if not s.valid:
            warn(f"{s.method} at m={s.m}: {s.failures} of {s.count + s.failures} replications failed; cell invalid")
    log(f"benchmark {problem.name}: {len(rows)} replications done")
    return MseTable(problem=problem.name, reference=problem.reference, rows=rows, summary=summary)


def fit_loglog_slope(table: MseTable, method: Method) -> float:
    """Least-squares slope of log(mse) against log(N) over valid cells."""
    points = [s for s in table.summary_for(Method(method)) if s.valid and s.mse > 0.0]
    if len(points) < 3:
        raise InsufficientDataError(f"{method}: need >= 3 valid summary points for a slope, have {len(points)}")
    log_n = np.log([float(s.n_total) for s in points])
    log_mse = np.log([s.mse for s in points])
    design = np.column_stack([log_n, np.ones_like(log_n)])
    slope, _ = np.linalg.lstsq(design, log_mse, rcond=None)[0]
    return float(slope)
