"""Entropy/volume ratio over the block-length-1 family L^m R^n."""
import argparse

from entvol.survey import scan_block1


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-mn", type=int, default=31)
    args = ap.parse_args()
    rows, best = scan_block1(args.max_mn)
    print("m,n,dilatation,volume,ratio")
    for m, n, lam, vol, ratio in rows:
        print(f"{m},{n},{lam:.12g},{vol:.12g},{ratio:.12g}")
    print(f"# minimum at m={best[0]} n={best[1]} ratio={best[4]:.15g}")


if __name__ == "__main__":
    main()
