"""Survey all classes up to a length and plot entropy against volume."""
import argparse

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from entvol.hypvol import RATIO_LOWER_BOUND
from entvol.survey import default_jobs, emit, run


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-len", type=int, default=10)
    ap.add_argument("--out", default="survey.png")
    ap.add_argument("--csv", default=None)
    args = ap.parse_args()
    records = [r for r in run(2, args.max_len, jobs=default_jobs()) if r.ok]
    if args.csv:
        emit(records, args.csv, "csv")
    vols = [r.volume for r in records]
    ents = [r.entropy for r in records]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.scatter(vols, ents, s=6, c=[r.length for r in records], cmap="viridis")
    xs = [0, max(vols) * 1.05]
    ax.plot(xs, [RATIO_LOWER_BOUND * x for x in xs], "r--", lw=1, label="lower bound")
    ax.set_xlabel("volume")
    ax.set_ylabel("entropy")
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(f"{len(records)} classes -> {args.out}")


if __name__ == "__main__":
    main()
