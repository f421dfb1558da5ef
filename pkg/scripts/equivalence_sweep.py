"""Compare the mode sum with the image sum on the standard grid.

Writes one JSON record per grid point and prints the worst disagreement
per boundary combination.

    python scripts/equivalence_sweep.py [out.jsonl]
"""

import itertools
import json
import sys

from segprop.core import SegmentConfig, make_euclidean
from segprop.kernels import compare_kernels

GRID = [0.1, 0.3, 0.5, 0.7, 0.9]
TAUS = [0.05, 0.2, 1.0]


def main(path="equivalence_sweep.jsonl"):
    worst = {}
    with open(path, "w") as fh:
        for bc, x, y, tau in itertools.product(["DD", "NN", "ND", "DN"], GRID, GRID, TAUS):
            rep = compare_kernels(SegmentConfig.from_bc(bc), x, y, make_euclidean(tau))
            fh.write(json.dumps(rep.to_record()) + "\n")
            worst[bc] = max(worst.get(bc, 0.0), rep.rel_diff)
    for bc, rel in worst.items():
        print(f"{bc}: max rel_diff {rel:.3e}")


if __name__ == "__main__":
    main(*sys.argv[1:])
