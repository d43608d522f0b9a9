"""Render verification reports as a TSV table plus a few matplotlib figures."""

from __future__ import annotations

import csv
from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

COLUMNS = ["id", "status", "order", "valency", "connected", "two_connected", "jackson",
           "vertex_transitive", "lift_route", "cycle", "cycle_nodes", "path", "discrepancies",
           "wall_time"]

STATUS_COLORS = {"verified": "#4477aa", "discrepancy": "#cc3311", "unknown": "#ee7733",
                 "unreconstructable": "#bbbbbb"}


def _row(r: dict) -> dict:
    ham = r.get("hamilton") or {}
    path = r.get("hamilton_path") or {}
    return {
        "id": r["id"], "status": r["status"], "order": r.get("order"),
        "valency": r.get("valency_observed"), "connected": r.get("connected"),
        "two_connected": r.get("two_connected"), "jackson": r.get("jackson"),
        "vertex_transitive": r.get("vertex_transitive"), "lift_route": r.get("lift_route"),
        "cycle": ham.get("kind", ""), "cycle_nodes": ham.get("nodes_explored", ""),
        "path": path.get("kind", ""), "discrepancies": "; ".join(r.get("discrepancies", [])),
        "wall_time": r.get("wall_time", ""),
    }


def write_table(reports: list[dict], path: Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, COLUMNS, delimiter="\t", lineterminator="\n")
        w.writeheader()
        for r in reports:
            w.writerow({k: "" if v is None else v for k, v in _row(r).items()})


def plot_status(reports: list[dict], path: Path) -> None:
    counts = Counter(r["status"] for r in reports)
    keys = [k for k in STATUS_COLORS if counts.get(k)] + sorted(set(counts) - set(STATUS_COLORS))
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.bar(keys, [counts[k] for k in keys], color=[STATUS_COLORS.get(k, "#999999") for k in keys])
    for i, k in enumerate(keys):
        ax.annotate(str(counts[k]), (i, counts[k]), ha="center", va="bottom", fontsize=8)
    ax.set_ylabel("entries")
    ax.set_title("verification status")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_valency_order(reports: list[dict], path: Path) -> None:
    fig, ax = plt.subplots(figsize=(5.5, 4))
    for status, color in STATUS_COLORS.items():
        pts = [(r["order"], r["valency_observed"]) for r in reports
               if r["status"] == status and r.get("order") and r.get("valency_observed") is not None]
        if pts:
            xs, ys = zip(*pts)
            ax.scatter(xs, ys, s=22, color=color, label=status, alpha=0.8)
    xs = sorted({r["order"] for r in reports if r.get("order")})
    if xs:
        # Jackson's bound: valency >= n/3 guarantees a Hamilton cycle (2-connected, regular)
        ax.plot(xs, [x / 3 for x in xs], "k--", lw=0.8, label="n/3")
    ax.set_xlabel("order")
    ax.set_ylabel("valency")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_search_effort(reports: list[dict], path: Path) -> None:
    rows = [r for r in reports if r.get("hamilton")]
    fig, ax = plt.subplots(figsize=(max(6, 0.18 * len(rows)), 3.8))
    nodes = [max(1, r["hamilton"]["nodes_explored"]) for r in rows]
    colors = ["#228833" if r.get("lift_route") else "#4477aa" for r in rows]
    ax.bar(range(len(rows)), nodes, color=colors)
    ax.set_yscale("log")
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels([r["id"] for r in rows], rotation=90, fontsize=6)
    ax.set_ylabel("search nodes (1 = lifted)")
    ax.set_title("cycle search effort (green: lifted from quotient)")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render(reports: list[dict], outdir: str | Path) -> list[Path]:
    """Write summary.tsv and the figures into ``outdir``; returns the written paths."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    paths = [out / "summary.tsv", out / "status.png", out / "valency_vs_order.png",
             out / "search_effort.png"]
    write_table(reports, paths[0])
    plot_status(reports, paths[1])
    plot_valency_order(reports, paths[2])
    plot_search_effort(reports, paths[3])
    return paths
