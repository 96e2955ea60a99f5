"""Trace figures written next to the text report."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .solver import TraceEvent  # noqa: E402

__all__ = ["plot_trace"]

PHASE_COLORS = {"init": "0.85", "phase1": "#dbe9f6", "phase2": "#e5f5e0", "phase3": "#fde0dd"}


def plot_trace(trace: list[TraceEvent], k: int, path: str, title: str | None = None) -> None:
    """Plot r(M), r(M') and |M ^ M'| per trace event, shading the phases."""
    events = [e for e in trace if e.r_m >= 0 and e.r_m2 >= 0]
    fig, (ax_r, ax_sd) = plt.subplots(2, 1, sharex=True, figsize=(7, 5))
    xs = list(range(len(events)))
    ax_r.step(xs, [e.r_m for e in events], where="post", label="r(M)")
    ax_r.step(xs, [e.r_m2 for e in events], where="post", label="r(M')")
    ax_r.axhline(k, color="k", lw=0.8, ls="--", label="k")
    ax_r.set_ylabel("red edges")
    ax_r.legend(loc="best", fontsize=8)
    ax_sd.step(xs, [e.sd for e in events], where="post", color="tab:gray")
    ax_sd.set_ylabel("|M ^ M'|")
    ax_sd.set_xlabel("trace event")
    start = 0
    for i in range(1, len(events) + 1):
        if i == len(events) or events[i].phase != events[start].phase:
            for ax in (ax_r, ax_sd):
                ax.axvspan(start - 0.5, i - 0.5, color=PHASE_COLORS.get(events[start].phase, "white"), lw=0)
            start = i
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
