"""Order probabilities against w for one and two gratings (V_Q0 / V_D0 = 0.8).

    python3 scripts/order_sweep.py --out orders.csv [--plot orders.png]
"""

import argparse
from collections import defaultdict

from kdquad.raman_nath import SweepConfig, pattern_sweep
from kdquad.serialize import serialize_sweep


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--w-max", type=float, default=12.0)
    parser.add_argument("--samples", type=int, default=500)
    parser.add_argument("--ratio", type=float, default=0.8)
    parser.add_argument("--out", default="orders.csv")
    parser.add_argument("--plot", help="PNG path; needs matplotlib")
    args = parser.parse_args()

    rows = pattern_sweep(SweepConfig(0.0, args.w_max, args.samples, args.ratio))
    with open(args.out, "w") as fh:
        fh.write(serialize_sweep(rows, "csv"))
    print(f"wrote {len(rows)} rows to {args.out}")

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        curves = defaultdict(lambda: ([], []))
        for r in rows:
            curves[r.label][0].append(r.w)
            curves[r.label][1].append(r.probability)
        fig, ax = plt.subplots(figsize=(6, 4))
        for label, (w, p) in sorted(curves.items()):
            ax.plot(w, p, "--" if label.startswith("single") else "-", label=label)
        ax.set_xlabel("w = V_D0 tau / hbar")
        ax.set_ylabel("probability")
        ax.legend(fontsize=8)
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)
        print(f"wrote {args.plot}")


if __name__ == "__main__":
    main()
