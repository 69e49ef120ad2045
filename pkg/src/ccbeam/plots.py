"""Figure rendering for sweep tables and GA convergence traces."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .orchestrator import SweepRow


def _label(row: SweepRow) -> str:
    if row.method is None:
        return row.scheme.value
    return f"{row.scheme.value}/{row.method.value}"


def _grouped(rows: list[SweepRow]) -> dict[str, list[SweepRow]]:
    groups: dict[str, list[SweepRow]] = {}
    for row in rows:
        groups.setdefault(_label(row), []).append(row)
    for series in groups.values():
        series.sort(key=lambda r: r.power_db)
    return groups


def plot_sweep(rows: list[SweepRow], stp_path: str, throughput_path: str) -> None:
    """Render STP and throughput versus transmit power, one line per series."""
    groups = _grouped(rows)
    for path, attr, ylabel in ((stp_path, "stp", "STP"),
                               (throughput_path, "throughput_npcu", "Throughput (npcu)")):
        fig, ax = plt.subplots(figsize=(7, 5))
        for label, series in sorted(groups.items()):
            ax.plot([r.power_db for r in series], [getattr(r, attr) for r in series],
                    marker="o", markersize=3, label=label)
        ax.set_xlabel("Transmit power (dB)")
        ax.set_ylabel(ylabel)
        ax.grid(True, alpha=0.4)
        ax.legend(fontsize=8)
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)


def plot_convergence(traces: list[list[float]], path: str) -> None:
    """Render per-realization GA traces of min SINR versus iteration."""
    fig, ax = plt.subplots(figsize=(7, 5))
    for rid, trace in enumerate(traces):
        ax.plot(range(1, len(trace) + 1), trace, label=f"realization {rid}")
    ax.set_xlabel("GA iteration")
    ax.set_ylabel("Min SINR (dB)")
    ax.grid(True, alpha=0.4)
    if len(traces) <= 12:
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
