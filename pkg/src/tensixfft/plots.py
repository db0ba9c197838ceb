"""Figure rendering for the CLI report path.

Each report-producing command can render a matplotlib figure next to its
JSON/CSV output. Figures are written with the Agg backend so the CLI works
headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

_COST_COLOR = "#2b6cb0"
_REF_COLOR = "#b05a2b"


def _cost_breakdown(report):
    parts = {}
    for name, count in report["counters"].items():
        contribution = count * report["weights"][name]
        if contribution > 0:
            parts[name] = contribution
    return parts


def ladder_figure(reports, path) -> None:
    """Modeled cost next to the published reference runtimes, per variant."""
    names = [r["variant"] for r in reports]
    costs = [r["modeled_cost"] for r in reports]
    ref_ms = [r.get("paper_ms") for r in reports]
    fig, (ax_cost, ax_ref) = plt.subplots(1, 2, figsize=(9, 3.6), sharey=False)
    ax_cost.bar(names, costs, color=_COST_COLOR)
    ax_cost.set_ylabel("modeled cost (weighted transactions)")
    ax_cost.set_title("simulated")
    if all(v is not None for v in ref_ms):
        ax_ref.bar(names, ref_ms, color=_REF_COLOR)
        ax_ref.set_ylabel("published runtime (ms)")
        ax_ref.set_title("reference")
    for ax in (ax_cost, ax_ref):
        ax.tick_params(axis="x", rotation=30)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def ablation_figure(reports, path) -> None:
    labels = [r["flags"] for r in reports]
    costs = [r["modeled_cost"] for r in reports]
    valid = [r["correctness"]["checked"] for r in reports]
    fig, ax = plt.subplots(figsize=(8, 3.6))
    bars = ax.bar(labels, costs, color=_COST_COLOR)
    for bar, ok in zip(bars, valid):
        if not ok:
            bar.set_hatch("//")
            bar.set_alpha(0.6)
    ax.set_xlabel("enabled components (read, read-reorder, compute, write-reorder, write)")
    ax.set_ylabel("modeled cost")
    ax.set_title("component ablation (hatched = numerically invalid)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def sweep_figure(reports, path) -> None:
    by_variant = {}
    for r in reports:
        by_variant.setdefault(r["variant"], []).append((r["n"], r["modeled_cost"]))
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for variant, points in by_variant.items():
        points.sort()
        ax.plot([p[0] for p in points], [p[1] for p in points], marker="o", label=variant)
    ax.set_xscale("log", base=2)
    ax.set_yscale("log")
    ax.set_xlabel("problem size")
    ax.set_ylabel("modeled cost")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def breakdown_figure(report, path) -> None:
    """Weighted cost contribution per ledger counter for a single run."""
    parts = _cost_breakdown(report)
    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    names = list(parts)
    ax.bar(names, [parts[n] for n in names], color=_COST_COLOR)
    ax.set_ylabel("weighted cost contribution")
    title = f"{report['variant']}, n={report['n']}"
    if "num_cores" in report:
        title += f", {report['num_cores']} cores"
    ax.set_title(title)
    ax.tick_params(axis="x", rotation=30)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
