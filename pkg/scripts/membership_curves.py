"""Write one membership-curve CSV per ITE kind.

    python scripts/membership_curves.py --t "30 days" --w 0.6 --out curves/
"""

import argparse
import csv
from pathlib import Path

from fuzzytemporal.fuzzy import sample_curve
from fuzzytemporal.ite import ITEKind, fuzzify
from fuzzytemporal.temporal import parse_duration


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--t", default="30 days")
    parser.add_argument("--w", type=float, default=0.6)
    parser.add_argument("--samples", type=int, default=121)
    parser.add_argument("--out", default="curves")
    args = parser.parse_args()

    T = parse_duration(args.t)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    # a shared x-range so the five curves line up when plotted together
    lo, hi = 0.0, 2.0 * T.count
    for kind in ITEKind:
        iv = fuzzify(kind, T, args.w)
        path = out / f"{kind.value}.csv"
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["x", "mu"])
            for x, mu in sample_curve(iv.mf_in(), lo, hi, args.samples):
                writer.writerow([f"{x:.10g}", f"{mu:.10g}"])
        a, b = iv.bounds()
        print(f"{kind.value:7s} {iv.mf.family:8s} [{a:g}, {b:g}] {T.granularity.value} -> {path}")


if __name__ == "__main__":
    main()
