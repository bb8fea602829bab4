"""
Console output for nestex.

Progress lines go to stderr tagged `[NESTEX]`; results go to stdout.
"""
from rich.console import Console

import config

err_console = Console(stderr=True, highlight=False)
out_console = Console(highlight=False)


def log(message: str):
    """Progress line, silenced by NESTEX_QUIET."""
    if config.QUIET:
        return
    err_console.print(f"[NESTEX] {message}", markup=False)


def warn(message: str):
    err_console.print(f"[NESTEX] warning: {message}", markup=False)
