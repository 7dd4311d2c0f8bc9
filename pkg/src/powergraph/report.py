"""Corpus report rendering: delimited table plus summary figures."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class CorpusRow:
    spec: str
    order: int
    u_count: int
    w_count: int
    exceptional: bool
    lower_bound: int
    dim_formula: int
    dim_oracle: int | None
    oracle_status: str  # match | mismatch | skipped | inconclusive
    checks_passed: int
    checks_total: int

    @property
    def ok(self) -> bool:
        return self.checks_passed == self.checks_total and self.oracle_status != "mismatch"

    def to_json_dict(self) -> dict:
        return {
            "spec": self.spec,
            "order": self.order,
            "u_count": self.u_count,
            "w_count": self.w_count,
            "exceptional": self.exceptional,
            "lower_bound": self.lower_bound,
            "dim_formula": self.dim_formula,
            "dim_oracle": self.dim_oracle,
            "oracle_status": self.oracle_status,
            "checks_passed": self.checks_passed,
            "checks_total": self.checks_total,
        }


_CSV_FIELDS = ["spec", "order", "u_count", "w_count", "exceptional", "lower_bound",
               "dim_formula", "dim_oracle", "oracle_status", "checks_passed", "checks_total"]


def write_csv(rows: list[CorpusRow], path: Path) -> Path:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=_CSV_FIELDS)
        writer.writeheader()
        for row in rows:
            record = row.to_json_dict()
            writer.writerow({k: record[k] for k in _CSV_FIELDS})
    return path


def _family_of(spec: str) -> str:
    if spec.startswith("E("):
        return "E(2,k)xZ(3^m)"
    return spec.split("(")[0]


def render_figures(rows: list[CorpusRow], directory: Path) -> list[Path]:
    """Write the report figures next to the CSV and return their paths."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []

    fig, ax = plt.subplots(figsize=(7, 4.5))
    families = sorted({_family_of(r.spec) for r in rows})
    for family in families:
        pts = [(r.order, r.dim_formula) for r in rows if _family_of(r.spec) == family]
        ax.scatter([p[0] for p in pts], [p[1] for p in pts], s=22, alpha=0.8, label=family)
    ax.plot([0, max(r.order for r in rows)], [0, max(r.order for r in rows)],
            ls="--", lw=0.8, color="gray", label="order")
    ax.set_xlabel("group order")
    ax.set_ylabel("metric dimension of the power graph")
    ax.set_title("Metric dimension across the corpus")
    ax.legend(fontsize=8)
    fig.tight_layout()
    out = directory / "dimension_vs_order.png"
    fig.savefig(out, dpi=150)
    plt.close(fig)
    paths.append(out)

    fig, ax = plt.subplots(figsize=(7, 4.5))
    orders = [r.order for r in rows]
    ax.scatter(orders, [r.u_count for r in rows], s=22, label="twin classes", alpha=0.8)
    ax.scatter(orders, [r.order - r.dim_formula for r in rows], s=22, marker="x",
               label="order minus dimension", alpha=0.8)
    ax.set_xlabel("group order")
    ax.set_ylabel("count")
    ax.set_title("How far twin classes compress the landmark count")
    ax.legend(fontsize=8)
    fig.tight_layout()
    out = directory / "twin_class_compression.png"
    fig.savefig(out, dpi=150)
    plt.close(fig)
    paths.append(out)
    return paths
