import os

from errors import UsageError

NESTEX_THREADS = int(os.environ.get("NESTEX_THREADS", "0"))
DEFAULT_REPS = int(os.environ.get("NESTEX_REPS", "100"))
DEFAULT_SEED = int(os.environ.get("NESTEX_SEED", "0"))
OUTPUT_DIR = os.environ.get("NESTEX_OUTPUT_DIR", "results")
QUIET = os.environ.get("NESTEX_QUIET", "0") not in ("", "0", "false", "no")

# Share of failed replications above which a bench cell is reported invalid.
MAX_FAILURE_SHARE = 0.10


def resolve_threads(requested: int | None = None) -> int:
    """Resolve the worker count for the benchmark pool.

    An explicit request wins over NESTEX_THREADS; 0 means one worker per CPU.
    """
    threads = NESTEX_THREADS if requested is None else requested
    if threads < 0:
        raise UsageError(f"thread count must be >= 0, got {threads}")
    if threads == 0:
        return os.cpu_count() or 1
    return threads
