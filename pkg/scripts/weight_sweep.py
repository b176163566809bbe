"""Decision-interval width as the weight degree goes from vague to crisp.

Prints a CSV of (w, kind, minFT, maxFT) for a fixed valid time, which makes
the nesting of intervals under increasing w easy to eyeball or plot.
"""

import argparse
import sys
import warnings

import numpy as np

from fuzzytemporal.errors import WeightRangeWarning
from fuzzytemporal.ite import ITEKind, fuzzify
from fuzzytemporal.temporal import parse_duration


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--t", default="14 days")
    parser.add_argument("--steps", type=int, default=10)
    args = parser.parse_args()

    T = parse_duration(args.t)
    warnings.simplefilter("ignore", WeightRangeWarning)
    print("w,kind,minFT,maxFT")
    for w in np.linspace(0.1, 1.0, args.steps):
        for kind in ITEKind:
            lo, hi = fuzzify(kind, T, float(w)).bounds()
            sys.stdout.write(f"{w:.3g},{kind.value},{lo:.6g},{hi:.6g}\n")


if __name__ == "__main__":
    main()
