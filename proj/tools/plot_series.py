#!/usr/bin/env python3
"""Render a cavsim CSV time series with matplotlib."""

import argparse
import csv
import sys


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csv_file")
    parser.add_argument("-o", "--output", help="image file (default: show interactively)")
    parser.add_argument("--channels", nargs="*", help="subset of channels to plot")
    args = parser.parse_args()

    with open(args.csv_file, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(cell) for cell in row] for row in reader]
    if header[0] != "time":
        print("not a cavsim time series (first column must be 'time')", file=sys.stderr)
        return 1

    columns = {name: [row[i] for row in rows] for i, name in enumerate(header)}
    names = args.channels or [n for n in header[1:] if not n.endswith("_stderr")]

    import matplotlib

    if args.output:
        matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8, 5))
    for name in names:
        if name not in columns:
            print(f"no channel '{name}' in {args.csv_file}", file=sys.stderr)
            return 1
        stderr_name = name + "_stderr"
        if stderr_name in columns:
            ax.errorbar(columns["time"], columns[name], yerr=columns[stderr_name],
                        label=name, errorevery=max(1, len(rows) // 50))
        else:
            ax.plot(columns["time"], columns[name], label=name)
    ax.set_xlabel("time [1/g]")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    if args.output:
        fig.savefig(args.output, dpi=150)
        print(f"wrote {args.output}")
    else:
        plt.show()
    return 0


if __name__ == "__main__":
    sys.exit(main())
