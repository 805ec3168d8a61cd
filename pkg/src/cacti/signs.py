"""Koszul signs of reorderings."""

from __future__ import annotations

from typing import Hashable, Sequence


def koszul_sign(degrees: Sequence[int], order: Sequence[int]) -> int:
    """Sign of rearranging items with the given degrees into the sequence ``order``.

    ``order`` lists original indices in their new sequence.
    """
    odd = [degrees[i] % 2 for i in order]
    s = 0
    for a in range(len(order)):
        if not odd[a]:
            continue
        for b in range(a + 1, len(order)):
            if odd[b] and order[a] > order[b]:
                s ^= 1
    return -1 if s else 1


def reorder_sign(before: Sequence[Hashable], after: Sequence[Hashable], degree: dict) -> int:
    """Sign of moving the items listed in ``before`` into the order ``after``."""
    pos = {x: i for i, x in enumerate(before)}
    degs = [degree[x] for x in before]
    return koszul_sign(degs, [pos[x] for x in after])
