"""Flat-file reports: CSV/TSV tables and matplotlib figures of verification runs."""
from __future__ import annotations

import csv
from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

PNG_META = {"Software": None}

COLUMNS = ["family", "rank", "grading", "black", "tau", "label", "satake", "verdict",
           "spherical", "dim_g", "dim_derived", "dim_k", "codim_min", "ok"]


def _flat(row: dict) -> dict:
    out = {c: row.get(c) for c in COLUMNS}
    out["grading"] = "".join(map(str, row["grading"]))
    out["black"] = " ".join(map(str, row["black"]))
    out["tau"] = " ".join(f"{i}-{j}" for i, j in row["tau"])
    out["codim_min"] = row["dim_derived"] - max(row["dim_k"])
    out["dim_k"] = " ".join(map(str, row["dim_k"]))
    return out


def write_tsv(rows: list, path: Path) -> Path:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, COLUMNS, delimiter="\t", lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow(_flat(r))
    return path


def satake_counts(rows: list) -> list:
    cnt = Counter((r["family"], r["rank"], r["label"]) for r in rows if r["satake"])
    return [{"family": f, "rank": k, "label": lab, "count": n} for (f, k, lab), n in sorted(cnt.items())]


def write_counts_csv(rows: list, path: Path) -> Path:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, ["family", "rank", "label", "count"], lineterminator="\n")
        w.writeheader()
        w.writerows(satake_counts(rows))
    return path


def plot_counts(rows: list, path: Path) -> Path:
    counts = satake_counts(rows)
    fams = sorted({c["family"] for c in counts})
    ranks = sorted({c["rank"] for c in counts})
    fig, ax = plt.subplots(figsize=(6, 3.5))
    width = 0.8 / max(len(fams), 1)
    for k, fam in enumerate(fams):
        ys = [sum(c["count"] for c in counts if c["family"] == fam and c["rank"] == r) for r in ranks]
        ax.bar([r + (k - (len(fams) - 1) / 2) * width for r in ranks], ys, width, label=fam)
    ax.set_xticks(ranks)
    ax.set_xlabel("rank")
    ax.set_ylabel("Satake diagrams")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, metadata=PNG_META)
    plt.close(fig)
    return path


def plot_dimensions(rows: list, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(5, 4))
    for verdict, marker in (("proper", "o"), ("trivial", "x"), ("mixed", "s")):
        pts = [(r["dim_derived"], k) for r in rows if r["verdict"] == verdict for k in r["dim_k"]]
        if pts:
            xs, ys = zip(*pts)
            ax.scatter(xs, ys, marker=marker, label=verdict, alpha=0.7)
    top = max([r["dim_derived"] for r in rows] + [1])
    ax.plot([0, top], [0, top], color="grey", lw=0.8)
    ax.set_xlabel("dim [g, g]")
    ax.set_ylabel("dim k")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, metadata=PNG_META)
    plt.close(fig)
    return path


def write_report(rows: list, out: Path) -> list:
    out.mkdir(parents=True, exist_ok=True)
    return [
        write_tsv(rows, out / "verification.tsv"),
        write_counts_csv(rows, out / "satake_counts.csv"),
        plot_counts(rows, out / "satake_counts.png"),
        plot_dimensions(rows, out / "dimensions.png"),
    ]
