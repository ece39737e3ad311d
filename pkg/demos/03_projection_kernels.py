#!/usr/bin/env python3
# The four projection kernels the splitting solver is made of.

import numpy as np

from scpsolve import (
    RotamerPartition,
    gangster_indices,
    project_box_gangster,
    project_psd_trace,
    project_simplex,
    zero_border_diag,
)

# 1. Scaled simplex: nearest nonnegative vector with a fixed coordinate sum.
print("simplex projection of (3, 1) with total 2:", project_simplex([3.0, 1.0], 2.0))
print("simplex projection of (5, -1, 0) with total 3:", project_simplex([5.0, -1.0, 0.0], 3.0))

# 2. PSD with fixed trace: eigendecompose, project the spectrum, reassemble.
M = np.diag([3.0, 1.0])
print("\nPSD/trace projection of diag(3, 1) to trace 2:")
print(project_psd_trace(M, 2.0))
M = np.diag([-1.0, -1.0])
print("negative spectrum lifts to the uniform one:")
print(project_psd_trace(M, 2.0))

# 3. Box with gangster pattern: clamp into [0, 1], then pin the gangster
# entries (0 inside blocks, 1 at the corner).
partition = RotamerPartition((2, 2))
gangster = gangster_indices(partition)
rng = np.random.default_rng(0)
M = rng.normal(scale=2.0, size=(5, 5))
boxed = project_box_gangster(M, gangster)
print("\nbox/gangster projection of a random matrix:")
print(np.round(boxed, 3))
print("corner:", boxed[0, 0], " pinned zeros:", boxed[1, 2], boxed[3, 4])

# 4. Border/diagonal mask: the dual coordinates with known optimal values
# are zeroed out of every dual residual, so they never drift.
print("\nmask applied to the identity (all support is pinned):")
print(zero_border_diag(np.eye(4)))
