"""Exact reference solver and dead-end elimination preprocessing.

``brute_force`` enumerates every feasible assignment, so it only runs on
desk-scale instances; it is the ground truth the relaxation bounds are
verified against.  ``goldstein_reduce`` removes rotamers that provably
cannot occur in any optimal assignment, which shrinks instances without
changing the optimal value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .instances import (
    Assignment,
    EnergyMatrix,
    RotamerPartition,
    ScpInstance,
    objective,
)


class OracleSizeError(ValueError):
    """Instance too large for exhaustive enumeration."""


@dataclass(frozen=True)
class OracleResult:
    optimum: float
    argmin: Assignment
    enumerated: int


def brute_force(instance: ScpInstance, limit: int = 1_000_000) -> OracleResult:
    """Exact minimum energy over all feasible assignments.

    Enumerates the full product of rotamer choices (must not exceed
    ``limit``); ties are broken by the lexicographically smallest
    assignment.
    """
    partition = instance.partition
    count = math.prod(partition.m)
    if count > limit:
        raise OracleSizeError(
            f"{count} feasible assignments exceed the enumeration limit {limit}"
        )
    E = instance.energy.entries
    grids = np.meshgrid(
        *[np.arange(mi, dtype=np.intp) for mi in partition.m], indexing="ij"
    )
    local = [g.reshape(-1) for g in grids]
    glob = [off + loc for off, loc in zip(partition.offsets, local)]
    values = np.zeros(count)
    for i in range(partition.p):
        values += E[glob[i], glob[i]]
        for j in range(i + 1, partition.p):
            values += 2.0 * E[glob[i], glob[j]]
    idx = int(np.argmin(values))
    argmin = Assignment(tuple(int(loc[idx]) + 1 for loc in local))
    optimum = objective(argmin.to_indicator(partition), instance.energy)
    return OracleResult(optimum=optimum, argmin=argmin, enumerated=count)


@dataclass(frozen=True)
class DeeReduction:
    """Result of dead-end elimination: per-block survivors and the reduced
    instance.  ``kept[i]`` lists the surviving 1-based original indices of
    block i, which is also the reduced-to-original index mapping."""

    kept: tuple[tuple[int, ...], ...]
    reduced: ScpInstance

    @property
    def mapping(self) -> tuple[tuple[int, ...], ...]:
        return self.kept

    def to_original(self, assignment: Assignment) -> Assignment:
        """Translate an assignment on the reduced instance back to original
        block-local indices."""
        return Assignment(
            tuple(block[c - 1] for block, c in zip(self.kept, assignment.choice))
        )


def goldstein_reduce(instance: ScpInstance) -> DeeReduction:
    """Iterated dead-end elimination with the Goldstein dominance test.

    Rotamer r of block i is eliminated when some surviving t in the same
    block satisfies

        (E_rr - E_tt) + sum_{j != i} min_{s surviving in j} 2 (E_rs - E_ts) > 0,

    i.e. swapping r for t strictly lowers the energy whatever the other
    blocks choose.  The pair terms carry a factor 2 because the quadratic
    form counts each cross pair twice.  Scanning is deterministic (blocks
    ascending, rotamers ascending) and repeats until a fixed point; a block
    is never emptied because elimination needs a surviving witness.
    """
    partition = instance.partition
    E = instance.energy.entries
    offsets = partition.offsets
    surviving: list[list[int]] = [list(range(mi)) for mi in partition.m]

    def dominates(i: int, r: int, t: int) -> bool:
        gr, gt = offsets[i] + r, offsets[i] + t
        score = E[gr, gr] - E[gt, gt]
        for j in range(partition.p):
            if j == i:
                continue
            others = offsets[j] + np.asarray(surviving[j], dtype=np.intp)
            score += 2.0 * float(np.min(E[gr, others] - E[gt, others]))
        return score > 0.0

    changed = True
    while changed:
        changed = False
        for i in range(partition.p):
            for r in list(surviving[i]):
                if any(t != r and dominates(i, r, t) for t in surviving[i]):
                    surviving[i].remove(r)
                    changed = True

    kept = tuple(tuple(r + 1 for r in block) for block in surviving)
    keep_global = np.concatenate(
        [offsets[i] + np.asarray(surviving[i], dtype=np.intp) for i in range(partition.p)]
    )
    reduced_partition = RotamerPartition(tuple(len(block) for block in surviving))
    reduced_entries = E[np.ix_(keep_global, keep_global)].copy()
    reduced_entries.flags.writeable = False
    reduced = ScpInstance(
        reduced_partition, EnergyMatrix(reduced_entries), instance.name
    )
    return DeeReduction(kept=kept, reduced=reduced)
