#!/usr/bin/env python3
"""Plot columns of a trajectory CSV produced by `symthermo simulate`.

The CSV schema is `t,S,V,N,T,P,mu,E,H,onshell,eos,euler`: the affine process
parameter, the base coordinates, the display momenta (P, not -P), the energy,
the Hamiltonian value, and the three equilibrium residuals.

Examples:
    plot_trajectory.py out/trajectory.csv
    plot_trajectory.py out/trajectory.csv --columns P mu --output pressure.png
    plot_trajectory.py out/trajectory.csv --log --columns onshell eos euler
"""

import argparse
import csv
import sys


def read_table(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        sys.exit(f"{path}: empty file")
    header, body = rows[0], rows[1:]
    columns = {name: [float(r[i]) for r in body] for i, name in enumerate(header)}
    return header, columns


def main():
    parser = argparse.ArgumentParser(description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("csv", help="trajectory CSV from `symthermo simulate`")
    parser.add_argument("--columns", nargs="+", default=["S", "V", "N", "T", "P", "mu", "E"],
                        help="column names to plot against t (default: state variables)")
    parser.add_argument("--log", action="store_true", help="logarithmic y axis")
    parser.add_argument("--output", help="write a PNG instead of opening a window")
    args = parser.parse_args()

    header, columns = read_table(args.csv)
    missing = [c for c in args.columns if c not in columns]
    if missing:
        sys.exit(f"unknown columns {missing}; available: {header}")

    try:
        import matplotlib
        if args.output:
            matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        sys.exit("matplotlib is required for plotting: pip install matplotlib")

    t = columns["t"]
    fig, ax = plt.subplots(figsize=(8, 5))
    for name in args.columns:
        ax.plot(t, columns[name], label=name)
    ax.set_xlabel("affine parameter t")
    if args.log:
        ax.set_yscale("log")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    if args.output:
        fig.savefig(args.output, dpi=150)
        print(f"wrote {args.output}")
    else:
        plt.show()


if __name__ == "__main__":
    main()
