#!/usr/bin/env python3
"""Plot mean regret curves (solid) and mean+std (dashed) from results.csv."""
import csv
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "results.csv"
series = defaultdict(lambda: ([], [], []))
with open(path) as fh:
    for row in csv.DictReader(fh):
        t, mean, std = series[row["policy"]]
        t.append(int(row["checkpoint"]))
        mean.append(float(row["regret_mean"]))
        std.append(float(row["regret_std"]))

fig, ax = plt.subplots(figsize=(7, 5))
for policy, (t, mean, std) in sorted(series.items()):
    (line,) = ax.plot(t, mean, label=policy)
    ax.plot(t, [m + s for m, s in zip(mean, std)], "--", color=line.get_color(), alpha=0.6)
ax.set_xscale("log")
ax.set_xlabel("round")
ax.set_ylabel("regret")
ax.legend()
fig.tight_layout()
out = path.rsplit(".", 1)[0] + ".png"
fig.savefig(out, dpi=150)
print(out)
