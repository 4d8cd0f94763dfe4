"""Report serialization (CSV/JSON) and the figures rendered next to them.

Whenever a report is written to a path, a matching PNG figure lands
alongside it (same stem).  CSV stays flat and scalar; JSON mirrors the CSV
fields one-to-one for benchmark records and carries the full structure for
audit reports.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Sequence

from .bench import BenchRecord
from .security import SecurityBudget
from .universality import CollisionReport

BENCH_CSV_COLUMNS = ("block_size", "algorithm", "trials", "elapsed_ms",
                     "throughput_mbps")

AUDIT_CSV_COLUMNS = ("alpha", "beta", "family_size", "seeds_examined", "sampled",
                     "worst_x", "worst_y", "worst_delta", "worst_ratio",
                     "bound_1_over_B", "bound_2_over_B",
                     "meets_1_over_B", "meets_2_over_B")


def _bench_row(rec: BenchRecord) -> dict:
    return {
        "block_size": rec.block_size,
        "algorithm": rec.algorithm,
        "trials": rec.trials,
        "elapsed_ms": round(rec.elapsed_median * 1e3, 6),
        "throughput_mbps": round(rec.throughput_mbps, 6),
    }


def bench_csv(records: Sequence[BenchRecord]) -> str:
    lines = [",".join(BENCH_CSV_COLUMNS)]
    for rec in records:
        row = _bench_row(rec)
        lines.append(",".join(str(row[c]) for c in BENCH_CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def bench_json(records: Sequence[BenchRecord]) -> str:
    return json.dumps([_bench_row(r) for r in records], indent=2) + "\n"


def _audit_row(rep: CollisionReport) -> dict:
    return {
        "alpha": rep.alpha,
        "beta": rep.beta,
        "family_size": rep.family_size,
        "seeds_examined": rep.seeds_examined,
        "sampled": rep.sampled,
        "worst_x": rep.worst_pair[0],
        "worst_y": rep.worst_pair[1],
        "worst_delta": rep.worst_delta,
        "worst_ratio": rep.worst_ratio,
        "bound_1_over_B": rep.bound_1_over_B,
        "bound_2_over_B": rep.bound_2_over_B,
        "meets_1_over_B": rep.meets_1_over_B,
        "meets_2_over_B": rep.meets_2_over_B,
    }


def audit_csv(rep: CollisionReport) -> str:
    row = _audit_row(rep)
    return (",".join(AUDIT_CSV_COLUMNS) + "\n"
            + ",".join(str(row[c]) for c in AUDIT_CSV_COLUMNS) + "\n")


def audit_json(rep: CollisionReport) -> str:
    row = _audit_row(rep)
    row["delta_by_difference"] = list(rep.delta_by_difference)
    return json.dumps(row, indent=2) + "\n"


def audit_summary(rep: CollisionReport) -> str:
    mode = (f"sampled {rep.seeds_examined} of {rep.family_size} seeds"
            if rep.sampled else f"exhaustive over {rep.family_size} seeds")
    lines = [
        f"collision audit alpha={rep.alpha} beta={rep.beta} ({mode})",
        f"  worst pair {rep.worst_pair}: {rep.worst_delta} colliding seeds, "
        f"ratio {rep.worst_ratio:.6g}",
        f"  2/|B| bound ({rep.bound_2_over_B:.6g}): "
        f"{'met' if rep.meets_2_over_B else 'VIOLATED'}",
        f"  1/|B| bound ({rep.bound_1_over_B:.6g}): "
        f"{'met' if rep.meets_1_over_B else 'not met'} (measured, not assumed)",
    ]
    if rep.sampled:
        lines.append("  note: seed-sampled estimate; treat the ratio as "
                     "approximate, not a census")
    return "\n".join(lines) + "\n"


def budget_summary(budget: SecurityBudget | None) -> str:
    if budget is None:
        return "security budget: none supplied; bound enforcement disabled\n"
    return (f"security budget: h_min={budget.h_min:g} bits, "
            f"epsilon={budget.epsilon:g}, r={budget.r}, "
            f"eps_bar=2^{budget.eps_bar.log2:.6g}\n")


def security_json(h_min: float, epsilon: float, r_max: int,
                  r: int | None, eps_bar_log2: float | None) -> str:
    doc = {"h_min": h_min, "epsilon": epsilon, "r_max": r_max}
    if r is not None:
        doc["r"] = r
        doc["eps_bar_log2"] = eps_bar_log2
    return json.dumps(doc, indent=2) + "\n"


def figure_path(out_path: str | Path) -> Path:
    return Path(out_path).with_suffix(".png")


def render_bench_figure(records: Sequence[BenchRecord], path: str | Path) -> Path:
    """Throughput and elapsed-time curves over the block-size ladder."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    sizes = [r.block_size for r in records]
    tput = [r.throughput_mbps for r in records]
    ms = [r.elapsed_median * 1e3 for r in records]

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    ax1.plot(sizes, tput, "o-")
    ax1.set_xscale("log")
    ax1.set_xlabel("block size (bits)")
    ax1.set_ylabel("throughput (Mbps)")
    ax1.set_title("hashing throughput")
    ax1.grid(True, which="both", alpha=0.3)

    ax2.plot(sizes, ms, "s-")
    ax2.set_xscale("log")
    ax2.set_yscale("log")
    ax2.set_xlabel("block size (bits)")
    ax2.set_ylabel("median elapsed (ms)")
    ax2.set_title("round time")
    ax2.grid(True, which="both", alpha=0.3)

    fig.tight_layout()
    out = Path(path)
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return out


def render_audit_figure(rep: CollisionReport, path: str | Path) -> Path:
    """Collision fraction per input difference, with both candidate bounds."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    diffs = range(1, len(rep.delta_by_difference))
    ratios = [rep.delta_by_difference[w] / rep.seeds_examined for w in diffs]

    fig, ax = plt.subplots(figsize=(7, 3.6))
    ax.bar(list(diffs), ratios, width=0.9)
    ax.axhline(rep.bound_1_over_B, color="tab:green", ls="--", label="1/|B|")
    ax.axhline(rep.bound_2_over_B, color="tab:red", ls=":", label="2/|B|")
    ax.set_xlabel("input difference (x - y) mod 2^alpha")
    ax.set_ylabel("collision fraction")
    mode = "sampled" if rep.sampled else "exhaustive"
    ax.set_title(f"collision profile, alpha={rep.alpha} beta={rep.beta} ({mode})")
    ax.legend()
    fig.tight_layout()
    out = Path(path)
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return out
