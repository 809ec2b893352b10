#!/usr/bin/env python3
"""Print critical-line ordinates with raw and unfolded spacings.

Usage: python scripts/zero_spacing_table.py [COUNT]

The unfolded column rescales each gap by the local mean density
log(gamma / 2 pi) / 2 pi, which makes the sequence fluctuate around 1.
"""

import math
import sys

from qmodular import lseries


def main() -> None:
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 20
    zeros = lseries.zeta_zero_spacings(count)
    print(f"{'n':>3}  {'gamma':>14}  {'spacing':>12}  {'unfolded':>10}")
    for (n, gamma, spacing) in zeros.rows():
        if spacing is None:
            print(f"{n:>3}  {gamma:>14.8f}")
            continue
        density = math.log(gamma / (2 * math.pi)) / (2 * math.pi)
        print(
            f"{n:>3}  {gamma:>14.8f}  {spacing:>12.8f}  {spacing * density:>10.6f}"
        )
    mean = sum(zeros.spacings) / len(zeros.spacings)
    print(f"mean spacing over first {count} ordinates: {mean:.6f}")


if __name__ == "__main__":
    main()
