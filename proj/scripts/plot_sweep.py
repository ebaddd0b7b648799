#!/usr/bin/env python3
"""Plot secrecy-rate sweep CSVs produced by `wiretap sweep`.

Usage: plot_sweep.py sweep.csv [-o out.png]

One curve per (family, variant), plus the second-order upper/lower
benchmarks and the secrecy capacity.
"""

import argparse
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

STYLES = {
    "polar": "tab:blue",
    "rm": "tab:orange",
    "mk": "tab:green",
    "abs": "tab:red",
    "rl": "tab:purple",
}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv", help="sweep CSV file")
    ap.add_argument("-o", "--out", default="sweep.png", help="output image")
    args = ap.parse_args()

    rows = []
    with open(args.csv, newline="") as f:
        for row in csv.DictReader(f):
            if row["status"] == "ok":
                rows.append(row)
    if not rows:
        print("no usable rows", file=sys.stderr)
        return 1

    fig, ax = plt.subplots(figsize=(7, 5))
    by_curve = {}
    for row in rows:
        by_curve.setdefault((row["family"], row["variant"]), []).append(
            (int(row["n"]), float(row["R_s"]))
        )
    for (family, variant), pts in sorted(by_curve.items()):
        pts.sort()
        ax.plot(
            [p[0] for p in pts],
            [p[1] for p in pts],
            marker="o" if variant == "bound2" else "s",
            linestyle="-" if variant == "bound2" else "--",
            color=STYLES.get(family, "gray"),
            label=f"{family} ({variant})",
        )

    bench = {}
    for row in rows:
        bench[int(row["n"])] = (
            float(row["cs"]),
            float(row["upper2nd"]),
            float(row["lower2nd"]),
        )
    ns = sorted(bench)
    ax.plot(ns, [bench[n][1] for n in ns], "k-.", label="2nd-order upper")
    ax.plot(ns, [bench[n][2] for n in ns], "k:", label="2nd-order lower")
    ax.axhline(bench[ns[0]][0], color="k", linewidth=0.8, label="C_s")

    ax.set_xscale("log", base=2)
    ax.set_xlabel("blocklength n")
    ax.set_ylabel("secrecy rate R_s")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
