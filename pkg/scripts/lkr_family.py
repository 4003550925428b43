"""Entropy, volume and their ratio along L^k R.

Entropy grows like log k while the volume saturates below v8, so the
ratio eventually exceeds 1. Prints the first k where it does.
"""
import argparse

from entvol import V8, entropy, volume


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-max", type=int, default=50)
    args = ap.parse_args()
    first = None
    print("k,entropy,volume,ratio")
    for k in range(1, args.k_max + 1):
        w = "L" * k + "R"
        ent, vol = entropy(w), volume(w).volume
        print(f"{k},{ent:.12g},{vol:.12g},{ent / vol:.12g}")
        if first is None and ent / vol > 1:
            first = k
    print(f"# v8 = {V8:.12g}; ratio first exceeds 1 at k = {first}")


if __name__ == "__main__":
    main()
