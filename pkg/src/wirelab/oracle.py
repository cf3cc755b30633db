"""Brute-force and dynamic-programming Subset Sum references.

Nothing here knows about wires; these are the ground truth the network
queries are checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

ENUMERATION_LIMIT = 24


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class SubsetWitness:
    index_set: frozenset[int]
    sum: int

    def sorted_indices(self) -> list[int]:
        return sorted(self.index_set)


def _all_sums(values: Sequence[int]) -> np.ndarray:
    """Subset sums indexed by bitmask (bit i set <=> element i chosen)."""
    if len(values) > ENUMERATION_LIMIT:
        raise OracleError(f"too large for enumeration: n={len(values)} > {ENUMERATION_LIMIT}")
    sums = np.zeros(1, dtype=np.int64)
    for v in values:
        sums = np.concatenate([sums, sums + int(v)])
    return sums


def subsets_summing_to(values: Sequence[int], q: int) -> list[SubsetWitness]:
    """All nonempty index subsets summing to ``q``, in ascending bitmask order."""
    sums = _all_sums(values)
    masks = np.flatnonzero(sums == q)
    out = []
    for mask in masks:
        mask = int(mask)
        if mask == 0:
            continue
        idx = frozenset(i for i in range(len(values)) if mask >> i & 1)
        out.append(SubsetWitness(idx, q))
    return out


def count_subsets(values: Sequence[int], q: int) -> int:
    sums = _all_sums(values)
    return int(np.count_nonzero(sums[1:] == q))


def _reachable_bits(values: Sequence[int]) -> int:
    # bit s set <=> some nonempty subset sums to s
    bits = 0
    for v in values:
        bits |= (bits << v) | (1 << v)
    return bits


def decide_subset_sum(values: Sequence[int], q: int) -> bool:
    if q < 1:
        return False
    return bool(_reachable_bits(values) >> q & 1)


def distinct_sums(values: Sequence[int]) -> set[int]:
    bits = _reachable_bits(values)
    out = set()
    s = 0
    while bits:
        if bits & 1:
            out.add(s)
        bits >>= 1
        s += 1
    return out
