"""Finite-well levels from the wall reflection phase vs. even/odd matching."""

import numpy as np

from segprop.barrier import well_levels_oracle, well_levels_quantization

rng = np.random.default_rng(7)
print(f"{'L':>6} {'h':>8} {'levels':>6} {'max |dE|':>10}")
for L, h in zip(rng.uniform(0.5, 2.0, 20), rng.uniform(1.0, 200.0, 20)):
    q = well_levels_quantization(L, h)
    o = well_levels_oracle(L, h)
    diff = np.max(np.abs(q.energies - o.energies)) if len(q) == len(o) else float("nan")
    print(f"{L:6.3f} {h:8.2f} {len(q):3d}/{len(o):<2d} {diff:10.2e}")

deep = well_levels_quantization(1.0, 1e6).energies[:5]
box = np.arange(1, 6) ** 2 * np.pi**2 / 2
print("h = 1e6, E_n / (n^2 pi^2 / 2):", np.round(deep / box, 5))
