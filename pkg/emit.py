"""
Benchmark artifacts: raw.csv, summary.csv and a log-log MSE chart mse.svg.

summary.csv carries one line per (method, N) with the replication count,
the number of failed replications and a `valid` flag; invalid cells are
also drawn as hollow markers in the chart.

In mse.svg every method is one line series inside a group whose id is
`series-<method>`; matplotlib renders the polyline as an SVG `<path>`
element rather than `<polyline>`.

Nothing time-dependent is written, so emitting the same table twice gives
identical bytes.
"""
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
from matplotlib.figure import Figure  # noqa: E402

from bench import MseTable  # noqa: E402
from dataset import write_frame  # noqa: E402
from errors import NestexError  # noqa: E402
from logs import log  # noqa: E402

SVG_STYLE = {"svg.hashsalt": "nestex", "svg.fonttype": "none"}


def plot_mse(table: MseTable, path: Path):
    fig = Figure(figsize=(6.4, 4.8))
    ax = fig.subplots()
    first = None
    for method in table.methods:
        points = table.summary_for(method)
        shown = [s for s in points if s.count > 0 and s.mse > 0.0]
        if not shown:
            continue
        ns = [s.n_total for s in shown]
        mses = [s.mse for s in shown]
        line, = ax.loglog(ns, mses, marker="o", label=str(method), gid=f"series-{method}")
        invalid = [s for s in shown if not s.valid]
        if invalid:
            ax.loglog(
                [s.n_total for s in invalid], [s.mse for s in invalid],
                linestyle="none", marker="o", markersize=10, markerfacecolor="none",
                markeredgecolor=line.get_color(), gid=f"invalid-{method}",
            )
        if first is None:
            first = (ns, mses[0])

    if first is not None and len(first[0]) > 1:
        ns, anchor = first
        guide = [anchor * (n / ns[0]) ** -0.5 for n in ns]
        ax.loglog(ns, guide, linestyle="--", color="grey", label="N^-1/2", gid="guide")

    ax.set_xlabel("total number of samples N")
    ax.set_ylabel("MSE")
    ax.set_title(f"{table.problem}: MSE against N")
    ax.legend()
    with matplotlib.rc_context(SVG_STYLE):
        fig.savefig(path, format="svg", metadata={"Date": None})


def emit_outputs(table: MseTable, out_dir: str | Path):
    out_dir = Path(out_dir)
    if not table.rows:
        raise NestexError("nothing to emit: benchmark table is empty")
    write_frame(table.raw_frame(), out_dir / "raw.csv")
    write_frame(table.summary_frame(), out_dir / "summary.csv")
    try:
        plot_mse(table, out_dir / "mse.svg")
    except OSError as e:
        raise NestexError(f"cannot write {out_dir / 'mse.svg'}: {e}") from e
    log(f"wrote raw.csv, summary.csv, mse.svg to {out_dir}")
