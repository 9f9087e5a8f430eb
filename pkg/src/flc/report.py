"""Figure rendering for run and sweep outputs.

Figures sit alongside the delimited outputs as a convenience; the
byte-identical determinism promise applies to the CSV/JSON files, not
the PNGs.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  backend must be set first


def render_run(summary, path: str | Path) -> Path:
    """Per-episode training curves, one line per seed."""
    path = Path(path)
    fig, (ax_ret, ax_viol) = plt.subplots(1, 2, figsize=(10, 4))
    for result in summary.results:
        episodes = [m.episode for m in result.episodes]
        ax_ret.plot(episodes, [m.ret for m in result.episodes],
                    label=f"seed {result.seed}", alpha=0.8)
        ax_viol.plot(episodes, [m.violations for m in result.episodes],
                     alpha=0.8)
    ax_ret.set_xlabel("episode")
    ax_ret.set_ylabel("return")
    ax_viol.set_xlabel("episode")
    ax_viol.set_ylabel("violations")
    if len(summary.results) <= 10:
        ax_ret.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def render_sweep(lams, aggregates, path: str | Path) -> Path:
    """Mean evaluation violations and return across the coefficient grid."""
    path = Path(path)
    viol = [agg["eval"]["violations"]["mean"] for agg in aggregates]
    viol_std = [agg["eval"]["violations"]["std"] for agg in aggregates]
    rets = [agg["eval"]["return"]["mean"] for agg in aggregates]
    rets_std = [agg["eval"]["return"]["std"] for agg in aggregates]
    fig, (ax_viol, ax_ret) = plt.subplots(1, 2, figsize=(10, 4))
    ax_viol.errorbar(lams, viol, yerr=viol_std, marker="o", capsize=3)
    ax_viol.set_xlabel("lambda")
    ax_viol.set_ylabel("eval violations / episode")
    ax_ret.errorbar(lams, rets, yerr=rets_std, marker="o", capsize=3)
    ax_ret.set_xlabel("lambda")
    ax_ret.set_ylabel("eval return")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
