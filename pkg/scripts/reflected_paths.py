"""Polylines of the reflected classical paths r = -2..2 as (r, t, x) CSV,
ready for plotting alongside the unfolded image points."""

import csv
import sys

from segprop.images import classical_path, image_point

x, y, L = 0.2, 0.6, 1.0
writer = csv.writer(sys.stdout)
writer.writerow(["r", "y_r", "t", "x"])
for r in range(-2, 3):
    for t, pos in classical_path(r, x, y, 0.0, 1.0, L):
        writer.writerow([r, repr(image_point(r, y, L)), repr(t), repr(pos)])
